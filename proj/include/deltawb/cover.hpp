#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "deltawb/certificate.hpp"
#include "deltawb/delta.hpp"
#include "deltawb/set_repr.hpp"

namespace deltawb {

/// Result of checking whether the translates FA cover the group.
struct CoverOutcome {
  enum class Kind { Covers, CofiniteWithResidual, FailsAt };
  Kind kind = Kind::FailsAt;
  std::vector<GroupElement> residual;   // the finite miss set H, canonical order
  std::optional<GroupElement> failsAt;  // canonically least uncovered element
  Provenance provenance;

  bool cofiniteOrBetter() const { return kind != Kind::FailsAt; }
};

/// Exact for closed-form Z sets (the complement of FA is computed in
/// closed form); for enumerated sets the scan region is ball(W) with
/// per-element membership still exact. F must be nonempty.
CoverOutcome verifyCover(const std::vector<GroupElement>& f, const SetRepr& a, const Window& w);

struct CoverWitness {
  std::vector<GroupElement> cover;
  std::vector<GroupElement> residual;
  Provenance provenance;
};

/// Certificate that the translates of the derivation set cover the
/// checked region (all of G when exact).
struct DeltaLargeCert {
  std::vector<GroupElement> translates;
  bool exact = false;
  int64_t checkedRadius = 0;
  int64_t threshold = 0;
  Provenance provenance;
};

/// Re-verifies a certificate from scratch against the set it was issued
/// for.
bool replayDeltaLargeCert(const DeltaLargeCert& cert, const SetRepr& a);

struct DeltaLargeResult {
  std::optional<DeltaLargeCert> cert;
  std::optional<GroupElement> unwitnessed;  // first region element with no witness
  bool established() const { return cert.has_value(); }
};

/// Largeness transfers to the derivation set with the same translate
/// set: a verified cofinite cover FA yields F Delta(A) = G. Exact on
/// closed forms; windowed evidence otherwise. Throws CoverNotEstablished
/// when verifyCover fails.
DeltaLargeResult deltaLargeFromCofinite(const std::vector<GroupElement>& f, const SetRepr& a,
                                        const Window& w, int64_t threshold);

struct MaximalDisjointResult {
  std::vector<GroupElement> family;  // the grown pairwise almost-disjoint translates
  bool exhausted = false;            // family exceeded the cap before saturating
  std::optional<DeltaLargeCert> cert;
  Provenance provenance;
};

/// Greedily grows a maximal family of pairwise almost-disjoint
/// translates in canonical order; on saturation inside ball(W) every
/// rejected shift is witnessed inside F Delta(A), which yields the
/// certificate. Exceeding the cap reports exhaustion instead (the set
/// behaves almost P-small at this scale).
MaximalDisjointResult maximalAlmostDisjoint(const SetRepr& a, const Window& w, int64_t threshold,
                                            int64_t cap);

struct CoverSearchOptions {
  size_t poolSize = 25;  // canonical prefix of the group used as candidate translates
};

/// Breadth-first search for a small cover: minimal size first, then
/// lexicographically least over the canonical candidate pool. maxSize
/// must be <= 8.
std::optional<CoverWitness> coverSearch(const SetRepr& a, size_t maxSize, const Window& w,
                                        const CoverSearchOptions& opts = {});

}  // namespace deltawb
