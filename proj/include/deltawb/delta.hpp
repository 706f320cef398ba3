#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "deltawb/certificate.hpp"
#include "deltawb/group.hpp"
#include "deltawb/set_repr.hpp"

namespace deltawb {

/// Windowed multiplicity: |gA intersect A intersect ball(W)|, i.e. the
/// number of x in A intersect ball(W) whose g-preimage also lies in A
/// (anywhere, not just inside the ball). Monotone in W, so membership in
/// the true derivation set can only gain evidence as the window grows.
int64_t multiplicity(const SetRepr& a, const GroupElement& g, const Window& w);

struct MultiplicityTable {
  int64_t window = 0;
  std::vector<std::pair<GroupElement, int64_t>> counts;  // canonical order
};

MultiplicityTable multiplicityTable(const SetRepr& a, const Window& w,
                                    const std::vector<GroupElement>& candidates);

/// Exact derivation set of a closed-form representation: for an
/// eventually periodic A the result is fully periodic with residues
/// (R+ - R+) u (R- - R-) mod p; finite sets derive to the empty set.
/// Cross-sign tail overlaps contribute only finitely many intersections
/// per shift and so never enter the result.
SetRepr deltaExact(const SetRepr& a);

struct DeltaScanOptions {
  /// Candidate shifts to score; defaults to the full ball(W).
  std::optional<std::vector<GroupElement>> candidates;
  int threads = 1;
};

/// Windowed lower-evidence derivation: members are the candidates whose
/// multiplicity within ball(W) reaches the threshold. Never silently
/// treated as exact; results carry their (W, t) provenance.
struct DeltaEvidence {
  int64_t window = 0;
  int64_t threshold = 0;
  bool stabilized = false;  // confirmed by the doubled-window check
  std::vector<GroupElement> members;                     // canonical order
  std::vector<std::pair<GroupElement, int64_t>> counts;  // per member
};

DeltaEvidence deltaWindow(const SetRepr& a, const Window& w, int64_t threshold,
                          const DeltaScanOptions& opts = {});

/// Doubling filter distinguishing linear-growth evidence from saturated
/// finite-multiplicity artifacts: keeps a member of deltaWindow(W, t)
/// only when its count within ball(2W) reaches 2t. On eventually
/// periodic sets this matches the exact engine on interior regions.
DeltaEvidence deltaWindowStabilized(const SetRepr& a, const Window& w, int64_t threshold,
                                    const DeltaScanOptions& opts = {});

/// One step of an iterated-derivation trace. The windowed hand-off step
/// carries both the evidence and the validated exact closure.
struct DeltaStep {
  std::optional<SetRepr> exactSet;
  std::optional<DeltaEvidence> evidence;
};

enum class IterationMode { Exact, WindowHandoff };

struct DeltaIteration {
  std::vector<DeltaStep> trace;        // Delta^1 .. Delta^k
  std::optional<int> fixedPointAt;     // 1-based index where the trace stabilized
  bool handoff = false;                // first step validated against a declared closure
  bool exactTail = false;              // steps after the first are exact
};

/// Runs the trace Delta^1(A), ..., Delta^n(A), stopping early at a fixed
/// point. Exact mode requires a closed-form A. WindowHandoff computes
/// the first step as windowed evidence and, when the representation
/// declares an exact closure, validates the evidence against it
/// (members must be contained in the closure) and continues exactly.
DeltaIteration iterateDelta(const SetRepr& a, int n, IterationMode mode, const Window& w,
                            int64_t threshold);

/// Z only: checks Delta(FA) = F Delta(A) F^-1 (which in an abelian group
/// reduces to Delta(F+A) = Delta(A)), exactly on closed forms.
bool conjugationCheck(const std::vector<GroupElement>& f, const SetRepr& a);

}  // namespace deltawb
