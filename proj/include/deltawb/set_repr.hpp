#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deltawb/certificate.hpp"
#include "deltawb/ep.hpp"
#include "deltawb/group.hpp"

namespace deltawb {

/// A (possibly infinite) subset of one of the shipped groups, in one of
/// three representations:
///   - ExplicitFinite: a sorted duplicate-free list of elements;
///   - EventuallyPeriodic: exact closed form, Z only (see ep.hpp);
///   - Enumerated: a named monotone built-in generator, or a lazy
///     union / translate / inverse / difference over such generators.
///
/// Values are immutable; all operations are pure.
class SetRepr {
 public:
  enum class Kind { ExplicitFinite, EventuallyPeriodic, Enumerated };

  SetRepr();  // empty finite Z set

  static SetRepr finite(GroupTag group, std::vector<GroupElement> elements);
  static SetRepr periodic(EventuallyPeriodic ep);
  /// Resolves a built-in generator by name, e.g. "pow10" or "fg_xSy(a,b)".
  static SetRepr generator(std::string_view name);

  GroupTag group() const;
  Kind kind() const;

  bool contains(const GroupElement& g) const;

  /// Exactly this-set intersect ball(W), canonically sorted.
  std::vector<GroupElement> enumerate(const Window& w) const;

  /// Whether the representation is known to denote an infinite set
  /// (periodic tails nonempty, or an infinite built-in generator).
  bool declaredInfinite() const;

  /// First `count` members of an infinite generator in its natural
  /// enumeration order, independent of any window. Used by evidence
  /// procedures to probe membership far beyond a ball. Empty optional
  /// when the representation has no index-ordered enumeration.
  std::optional<std::vector<GroupElement>> firstMembers(size_t count) const;

  const EventuallyPeriodic* periodicRep() const;  // null unless Kind::EventuallyPeriodic
  const std::vector<GroupElement>* finiteElements() const;

  /// For built-ins whose construction rule pins their exact derivation
  /// set, the declared closed form of Delta(this). Validated against
  /// windowed evidence before any engine relies on it.
  std::optional<SetRepr> deltaClosure() const;

  /// Canonical description in the set-spec mini-format; parsing it back
  /// yields an equal representation.
  std::string describe() const;

  bool sameRepresentation(const SetRepr& other) const;

  struct Node;  // implementation detail, defined in set_repr.cpp

 private:
  explicit SetRepr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;

  friend SetRepr translateSet(const GroupElement& g, const SetRepr& a);
  friend SetRepr inverseSet(const SetRepr& a);
  friend SetRepr unionSet(const SetRepr& a, const SetRepr& b);
  friend SetRepr differenceSet(const SetRepr& a, const SetRepr& b);
};

SetRepr translateSet(const GroupElement& g, const SetRepr& a);
SetRepr inverseSet(const SetRepr& a);
SetRepr unionSet(const SetRepr& a, const SetRepr& b);
/// a minus b; exact when both sides are closed-form, lazy otherwise.
SetRepr differenceSet(const SetRepr& a, const SetRepr& b);
/// Union of translates fA over f in F. Requires |F| <= 64.
SetRepr productSet(const std::vector<GroupElement>& f, const SetRepr& a);

/// Proven/Refuted exactly for closed-form representations; Refuted with
/// an exact witness whenever one lies inside the window; otherwise
/// EvidenceAt(W).
Certificate isSymmetric(const SetRepr& a, const Window& w);

/// Parses the set-spec mini-format:
///   periodic p=<int> pos={r,..} neg={r,..} [m=<int>] [add={..}] [remove={..}]
///   finite {g,..} | gen <name> | union(<spec>;<spec>)
///   translate <g> (<spec>) | inverse(<spec>)
/// Throws ParseError with offset on malformed input.
SetRepr parseSetSpec(std::string_view text);

/// Convenience: the full group as a periodic set (Z only).
SetRepr allOfZ();

}  // namespace deltawb
