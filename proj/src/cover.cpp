#include "deltawb/cover.hpp"

#include <algorithm>

namespace deltawb {
namespace {

constexpr size_t kResidualCap = 64;

int64_t maxNorm(const std::vector<GroupElement>& f) {
  int64_t m = 0;
  for (const GroupElement& g : f) m = std::max(m, g.norm());
  return m;
}

bool coveredBy(const std::vector<GroupElement>& f, const SetRepr& a, const GroupElement& g) {
  for (const GroupElement& t : f) {
    if (a.contains(combine(invert(t), g))) return true;
  }
  return false;
}

// Canonical enumeration of the ambient group out to `radius`, streamed
// through `fn` until it returns false.
template <typename Fn>
void scanCanonical(GroupTag tag, int64_t radius, Fn fn) {
  if (tag == GroupTag::Z) {
    if (!fn(GroupElement::zOf(0))) return;
    for (int64_t r = 1; r <= radius; ++r) {
      if (!fn(GroupElement::zOf(-r))) return;
      if (!fn(GroupElement::zOf(r))) return;
    }
    return;
  }
  for (const GroupElement& g : ball(GroupContext{tag}, radius)) {
    if (!fn(g)) return;
  }
}

bool isClosedFormZ(const SetRepr& a) {
  return a.group() == GroupTag::Z && a.kind() != SetRepr::Kind::Enumerated;
}

// Windowed multiplicity with the window enumeration computed once.
class CachedMultiplicity {
 public:
  CachedMultiplicity(const SetRepr& a, const Window& w)
      : set_(a), closedForm_(a.periodicRep() != nullptr), window_(w) {
    if (!closedForm_) elems_ = a.enumerate(w);
  }

  int64_t operator()(const GroupElement& shift) const {
    if (closedForm_) return multiplicity(set_, shift, window_);
    GroupElement inv = invert(shift);
    int64_t c = 0;
    for (const GroupElement& x : elems_) {
      if (set_.contains(combine(inv, x))) ++c;
    }
    return c;
  }

 private:
  const SetRepr& set_;
  bool closedForm_;
  Window window_;
  std::vector<GroupElement> elems_;
};

CoverOutcome verifyCoverExact(const std::vector<GroupElement>& f, const SetRepr& a) {
  SetRepr fa = productSet(f, a);
  EventuallyPeriodic comp = epComplement(*fa.periodicRep());
  CoverOutcome out;
  out.provenance = Provenance::exactly();
  if (comp.isEmpty()) {
    out.kind = CoverOutcome::Kind::Covers;
    return out;
  }
  if (comp.isFinite()) {
    out.kind = CoverOutcome::Kind::CofiniteWithResidual;
    for (int64_t x : epFiniteElements(comp)) out.residual.push_back(GroupElement::zOf(x));
    std::sort(out.residual.begin(), out.residual.end());
    return out;
  }
  out.kind = CoverOutcome::Kind::FailsAt;
  out.failsAt = GroupElement::zOf(*epMinCanonical(comp));
  return out;
}

}  // namespace

CoverOutcome verifyCover(const std::vector<GroupElement>& f, const SetRepr& a, const Window& w) {
  if (f.empty()) throw std::invalid_argument("cover set must be nonempty");
  for (const GroupElement& g : f) {
    if (g.tag() != a.group()) throw std::invalid_argument("cover element group mismatch");
  }
  if (isClosedFormZ(a)) return verifyCoverExact(f, a);

  // Enumerated: membership is exact per element; the window only bounds
  // the region scanned.
  CoverOutcome out;
  out.provenance = Provenance::windowed(w.radius, 0);
  std::vector<GroupElement> uncovered;
  scanCanonical(a.group(), w.radius, [&](const GroupElement& g) {
    if (!coveredBy(f, a, g)) {
      uncovered.push_back(g);
      if (uncovered.size() > kResidualCap) return false;
    }
    return true;
  });
  if (uncovered.empty()) {
    out.kind = CoverOutcome::Kind::Covers;
  } else if (uncovered.size() <= kResidualCap) {
    out.kind = CoverOutcome::Kind::CofiniteWithResidual;
    out.residual = uncovered;
    std::sort(out.residual.begin(), out.residual.end());
  } else {
    out.kind = CoverOutcome::Kind::FailsAt;
    out.failsAt = uncovered.front();
  }
  return out;
}

bool replayDeltaLargeCert(const DeltaLargeCert& cert, const SetRepr& a) {
  if (cert.exact) {
    SetRepr covered = productSet(cert.translates, deltaExact(a));
    return covered.sameRepresentation(allOfZ());
  }
  CachedMultiplicity mult(a, Window{cert.provenance.window});
  bool ok = true;
  scanCanonical(a.group(), cert.checkedRadius, [&](const GroupElement& g) {
    bool witnessed = false;
    for (const GroupElement& f : cert.translates) {
      if (mult(combine(invert(f), g)) >= cert.threshold) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) ok = false;
    return ok;
  });
  return ok;
}

DeltaLargeResult deltaLargeFromCofinite(const std::vector<GroupElement>& f, const SetRepr& a,
                                        const Window& w, int64_t threshold) {
  CoverOutcome cover = verifyCover(f, a, w);
  if (!cover.cofiniteOrBetter()) {
    throw CoverNotEstablished("translates do not cover cofinitely; first miss at " +
                              cover.failsAt->str());
  }

  DeltaLargeResult result;
  if (isClosedFormZ(a)) {
    SetRepr covered = productSet(f, deltaExact(a));
    if (!covered.sameRepresentation(allOfZ())) {
      // The lemma guarantees this never happens once the cover premise
      // holds exactly.
      throw std::logic_error("exact cover established but F Delta(A) != Z");
    }
    DeltaLargeCert cert;
    cert.translates = f;
    cert.exact = true;
    cert.provenance = Provenance::exactly();
    result.cert = cert;
    return result;
  }

  // Windowed: witness every element of the interior region.
  int64_t region = std::max<int64_t>(0, w.radius - maxNorm(f));
  CachedMultiplicity mult(a, w);
  std::optional<GroupElement> missing;
  scanCanonical(a.group(), region, [&](const GroupElement& g) {
    for (const GroupElement& t : f) {
      if (mult(combine(invert(t), g)) >= threshold) return true;
    }
    missing = g;
    return false;
  });
  if (missing) {
    result.unwitnessed = missing;
    return result;
  }
  DeltaLargeCert cert;
  cert.translates = f;
  cert.exact = false;
  cert.checkedRadius = region;
  cert.threshold = threshold;
  cert.provenance = Provenance::windowed(w.radius, threshold);
  result.cert = cert;
  return result;
}

MaximalDisjointResult maximalAlmostDisjoint(const SetRepr& a, const Window& w, int64_t threshold,
                                            int64_t cap) {
  MaximalDisjointResult result;
  const bool exact = isClosedFormZ(a);
  std::optional<SetRepr> exactDelta;
  if (exact) exactDelta = deltaExact(a);
  result.provenance = exact ? Provenance::exactly() : Provenance::windowed(w.radius, threshold);

  // |fA intersect gA| = |(f^-1 g)A intersect A|: almost-disjoint iff the
  // shift f^-1 g falls outside the derivation set.
  CachedMultiplicity mult(a, w);
  auto almostDisjoint = [&](const GroupElement& f, const GroupElement& g) {
    GroupElement shift = combine(invert(f), g);
    if (exact) return !exactDelta->contains(shift);
    return mult(shift) < threshold;
  };

  bool exceeded = false;
  scanCanonical(a.group(), w.radius, [&](const GroupElement& g) {
    for (const GroupElement& f : result.family) {
      if (!almostDisjoint(f, g)) return true;  // overlaps; skip candidate
    }
    result.family.push_back(g);
    if (static_cast<int64_t>(result.family.size()) > cap) {
      exceeded = true;
      return false;
    }
    return true;
  });

  if (exceeded) {
    result.exhausted = true;
    return result;
  }

  // Saturated: every rejected g overlaps some family member, i.e. lies
  // inside F Delta(A); accepted members are witnessed by the identity
  // shift. Upgrade to an exact full-group certificate when possible.
  DeltaLargeCert cert;
  cert.translates = result.family;
  cert.checkedRadius = w.radius;
  cert.threshold = threshold;
  cert.provenance = result.provenance;
  if (exact) {
    SetRepr covered = productSet(result.family, *exactDelta);
    cert.exact = covered.sameRepresentation(allOfZ());
  }
  result.cert = cert;
  return result;
}

std::optional<CoverWitness> coverSearch(const SetRepr& a, size_t maxSize, const Window& w,
                                        const CoverSearchOptions& opts) {
  if (maxSize < 1 || maxSize > 8) throw std::invalid_argument("cover search size must be in 1..8");
  std::vector<GroupElement> pool;
  scanCanonical(a.group(), w.radius, [&](const GroupElement& g) {
    pool.push_back(g);
    return pool.size() < opts.poolSize;
  });

  std::vector<size_t> pick;
  std::optional<CoverWitness> found;
  // lexicographic subsets of fixed size over the candidate pool
  auto search = [&](auto&& self, size_t start, size_t remaining) -> bool {
    if (remaining == 0) {
      std::vector<GroupElement> f;
      for (size_t idx : pick) f.push_back(pool[idx]);
      CoverOutcome outcome = verifyCover(f, a, w);
      if (outcome.cofiniteOrBetter()) {
        found = CoverWitness{f, outcome.residual, outcome.provenance};
        return true;
      }
      return false;
    }
    for (size_t i = start; i + remaining <= pool.size(); ++i) {
      pick.push_back(i);
      if (self(self, i + 1, remaining - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (size_t size = 1; size <= maxSize; ++size) {
    if (search(search, 0, size)) break;
  }
  return found;
}

}  // namespace deltawb
