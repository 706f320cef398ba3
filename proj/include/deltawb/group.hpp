#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace deltawb {

/// The three concrete groups the workbench ships.
enum class GroupTag { Z, Z2, F2 };

std::string groupName(GroupTag tag);
GroupTag groupFromName(std::string_view name);

/// A single group element. The payload depends on the group:
/// an integer for Z, an integer pair for Z2, and a reduced word over
/// {a, a^-1, b, b^-1} for F2 (letters 'a','A','b','B'; 'A' = a^-1).
///
/// Elements carry a canonical total order per group:
///   Z  : by |x|, negatives before positives (0, -1, 1, -2, 2, ...)
///   Z2 : by max-norm, then lexicographic on (x, y)
///   F2 : shortlex with letter order a < A < b < B
class GroupElement {
 public:
  GroupElement() = default;  // Z zero

  static GroupElement zOf(int64_t v);
  static GroupElement z2Of(int64_t x, int64_t y);
  static GroupElement f2Of(std::string_view letters);  // reduces eagerly
  static GroupElement identityOf(GroupTag tag);

  GroupTag tag() const { return tag_; }
  int64_t intValue() const;
  std::pair<int64_t, int64_t> pairValue() const;
  const std::string& wordValue() const;

  bool isIdentity() const;

  /// |x| for Z, max-norm for Z2, reduced length for F2. This is the
  /// radius notion used by Window/ball throughout.
  int64_t norm() const;

  /// Render: decimal, "(x,y)", or the letter string ("e" for identity).
  std::string str() const;
  static GroupElement parse(GroupTag tag, std::string_view text);

  bool operator==(const GroupElement& other) const;
  bool operator!=(const GroupElement& other) const { return !(*this == other); }

  /// Canonical order. Comparing elements of different groups is a usage
  /// error and throws.
  bool operator<(const GroupElement& other) const;

 private:
  GroupTag tag_ = GroupTag::Z;
  int64_t a_ = 0;
  int64_t b_ = 0;
  std::string word_;
};

struct GroupElementHash {
  size_t operator()(const GroupElement& g) const;
};

GroupElement combine(const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupElement& g);

/// A group presented computably: identity, generators, ball enumeration.
struct GroupContext {
  GroupTag tag = GroupTag::Z;

  GroupElement identity() const { return GroupElement::identityOf(tag); }
  std::vector<GroupElement> generators() const;
};

/// The finite truncation all evidence computations run inside:
/// [-R, R] for Z, the max-norm ball for Z2, reduced words of length <= R
/// for F2.
struct Window {
  int64_t radius = 0;
};

/// Number of elements of ball(R), in closed form.
uint64_t ballSize(GroupTag tag, int64_t radius);

/// All elements of the ball, sorted by canonical order, no duplicates.
/// Throws std::length_error when the ball would be unreasonably large to
/// materialize.
std::vector<GroupElement> ball(const GroupContext& ctx, int64_t radius);

}  // namespace deltawb
