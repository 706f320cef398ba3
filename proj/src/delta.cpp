#include "deltawb/delta.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <map>
#include <unordered_map>

namespace deltawb {
namespace {

constexpr size_t kSparsePairLimit = 4000;
constexpr int64_t kDenseWindowCap = 4'000'000;

bool sortedHas(const std::vector<int64_t>& v, int64_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// #{x in [lo, hi] : x == r (mod p)}
int64_t countCongruent(int64_t lo, int64_t hi, int64_t p, int64_t r) {
  if (lo > hi) return 0;
  int64_t first = lo + floorMod(r - lo, p);
  if (first > hi) return 0;
  return (hi - first) / p + 1;
}

// Exact windowed multiplicity for an eventually periodic set, by residue
// counting over sign-constant segments plus finite exception fixups.
int64_t epMultiplicity(const EventuallyPeriodic& ep, int64_t g, int64_t w) {
  const int64_t p = ep.modulus;
  auto pat = [&](int64_t x) {
    int64_t r = floorMod(x, p);
    return x >= 0 ? sortedHas(ep.posResidues, r) : sortedHas(ep.negResidues, r);
  };

  // Segment [-W, W] so that sign(x) and sign(x - g) are constant inside
  // each piece; cut points at 0 and g.
  std::vector<int64_t> cuts = {-w, w + 1};
  for (int64_t c : {int64_t{0}, g}) {
    if (c > -w && c <= w) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  int64_t total = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    int64_t s = cuts[i], e = cuts[i + 1] - 1;  // inclusive segment [s, e]
    if (s > e) continue;
    const std::vector<int64_t>& side1 = s >= 0 ? ep.posResidues : ep.negResidues;
    const std::vector<int64_t>& side2 = s - g >= 0 ? ep.posResidues : ep.negResidues;
    for (int64_t r = 0; r < p; ++r) {
      if (!sortedHas(side1, r)) continue;
      if (!sortedHas(side2, floorMod(r - g, p))) continue;
      total += countCongruent(s, e, p, r);
    }
  }

  // Exceptions perturb membership at x = e and at x = e + g; x = 0 and
  // x = g are where contains() can consult the negative residue side
  // while the segment model above used the positive one.
  std::vector<int64_t> affected = {0, g};
  for (const std::vector<int64_t>* exc : {&ep.addExceptions, &ep.removeExceptions}) {
    for (int64_t e : *exc) {
      affected.push_back(e);
      affected.push_back(e + g);
    }
  }
  std::sort(affected.begin(), affected.end());
  affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
  for (int64_t x : affected) {
    if (x < -w || x > w) continue;
    bool real = ep.contains(x) && ep.contains(x - g);
    bool model = pat(x) && pat(x - g);
    total += (real ? 1 : 0) - (model ? 1 : 0);
  }
  return total;
}

// --- dense Z path: packed bitmask over [-2W, 2W] -------------------------

struct BitWindow {
  int64_t halfSpan;  // bits cover [-halfSpan, halfSpan]
  std::vector<uint64_t> bits;

  explicit BitWindow(int64_t half) : halfSpan(half), bits((2 * half + 1 + 63) / 64 + 2, 0) {}

  void set(int64_t x) {
    uint64_t idx = static_cast<uint64_t>(x + halfSpan);
    bits[idx >> 6] |= uint64_t{1} << (idx & 63);
  }
  // 64 bits starting at signed bit position pos (may be out of range;
  // out-of-range bits read as zero).
  uint64_t fetch(int64_t pos) const {
    int64_t span = 2 * halfSpan + 1;
    if (pos + 63 < 0 || pos >= span) return 0;
    auto bitAt = [&](int64_t p) -> uint64_t {
      if (p < 0 || p >= span) return 0;
      return (bits[p >> 6] >> (p & 63)) & 1;
    };
    if (pos >= 0 && pos + 63 < span) {
      uint64_t q = static_cast<uint64_t>(pos);
      size_t word = q >> 6;
      unsigned sh = q & 63;
      if (sh == 0) return bits[word];
      return (bits[word] >> sh) | (bits[word + 1] << (64 - sh));
    }
    uint64_t out = 0;
    for (int i = 0; i < 64; ++i) out |= bitAt(pos + i) << i;
    return out;
  }
};

int64_t bitCount(const BitWindow& inner, const BitWindow& outer, int64_t g) {
  // count x with inner bit at x and outer bit at x - g
  int64_t total = 0;
  int64_t span = 2 * inner.halfSpan + 1;
  int64_t words = (span + 63) / 64;
  // inner bit index i corresponds to x = i - inner.halfSpan; the matching
  // outer bit index is x - g + outer.halfSpan = i + (outer.halfSpan -
  // inner.halfSpan - g).
  int64_t offset = outer.halfSpan - inner.halfSpan - g;
  for (int64_t wd = 0; wd < words; ++wd) {
    uint64_t lhs = inner.bits[wd];
    if (!lhs) continue;
    total += std::popcount(lhs & outer.fetch(64 * wd + offset));
  }
  return total;
}

std::vector<int64_t> enumerateZWindow(const SetRepr& a, int64_t radius) {
  std::vector<int64_t> out;
  for (const GroupElement& g : a.enumerate(Window{radius})) out.push_back(g.intValue());
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Fn>
std::vector<int64_t> mapCounts(const std::vector<GroupElement>& candidates, int threads, Fn fn) {
  std::vector<int64_t> counts(candidates.size());
  if (threads <= 1 || candidates.size() < 64) {
    for (size_t i = 0; i < candidates.size(); ++i) counts[i] = fn(candidates[i]);
    return counts;
  }
  size_t chunk = (candidates.size() + threads - 1) / threads;
  std::vector<std::future<void>> work;
  for (int tIdx = 0; tIdx < threads; ++tIdx) {
    size_t lo = tIdx * chunk;
    size_t hi = std::min(candidates.size(), lo + chunk);
    if (lo >= hi) break;
    work.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (size_t i = lo; i < hi; ++i) counts[i] = fn(candidates[i]);
    }));
  }
  for (auto& f : work) f.get();
  return counts;
}

std::vector<GroupElement> defaultCandidatesZ(int64_t w) {
  if (w > kDenseWindowCap) {
    throw std::length_error("candidate ball too large; pass explicit candidates");
  }
  return ball(GroupContext{GroupTag::Z}, w);
}

DeltaEvidence buildEvidence(int64_t w, int64_t t, std::vector<GroupElement> candidates,
                            std::vector<int64_t> counts) {
  DeltaEvidence ev;
  ev.window = w;
  ev.threshold = t;
  std::vector<std::pair<GroupElement, int64_t>> kept;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (counts[i] >= t) kept.emplace_back(candidates[i], counts[i]);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [g, c] : kept) {
    ev.members.push_back(g);
    ev.counts.emplace_back(g, c);
  }
  return ev;
}

}  // namespace

int64_t multiplicity(const SetRepr& a, const GroupElement& g, const Window& w) {
  if (g.tag() != a.group()) throw std::invalid_argument("multiplicity: group mismatch");
  if (const EventuallyPeriodic* ep = a.periodicRep()) {
    return epMultiplicity(*ep, g.intValue(), w.radius);
  }
  int64_t count = 0;
  GroupElement gi = invert(g);
  for (const GroupElement& x : a.enumerate(w)) {
    if (a.contains(combine(gi, x))) ++count;
  }
  return count;
}

MultiplicityTable multiplicityTable(const SetRepr& a, const Window& w,
                                    const std::vector<GroupElement>& candidates) {
  MultiplicityTable table;
  table.window = w.radius;
  std::vector<GroupElement> sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const GroupElement& g : sorted) {
    table.counts.emplace_back(g, multiplicity(a, g, w));
  }
  return table;
}

SetRepr deltaExact(const SetRepr& a) {
  if (a.kind() == SetRepr::Kind::ExplicitFinite) {
    return SetRepr::periodic(EventuallyPeriodic{});
  }
  const EventuallyPeriodic* ep = a.periodicRep();
  if (!ep) {
    throw std::invalid_argument(
        "delta_exact requires an eventually periodic (or finite) representation");
  }
  if (ep->isFinite()) return SetRepr::periodic(EventuallyPeriodic{});

  EventuallyPeriodic out;
  out.modulus = ep->modulus;
  std::vector<char> mark(ep->modulus, 0);
  for (const std::vector<int64_t>* side : {&ep->posResidues, &ep->negResidues}) {
    for (int64_t r : *side) {
      for (int64_t s : *side) {
        mark[floorMod(r - s, ep->modulus)] = 1;
      }
    }
  }
  for (int64_t r = 0; r < ep->modulus; ++r) {
    if (mark[r]) {
      out.posResidues.push_back(r);
      out.negResidues.push_back(r);
    }
  }
  return SetRepr::periodic(out);
}

DeltaEvidence deltaWindow(const SetRepr& a, const Window& w, int64_t threshold,
                          const DeltaScanOptions& opts) {
  if (threshold < 1) throw std::invalid_argument("threshold must be >= 1");
  const int64_t W = w.radius;

  if (a.group() == GroupTag::Z) {
    // Probe the doubled window; lacunary sets stay tiny there and admit
    // exact pair counting with no dense scan.
    bool sparse = false;
    std::vector<int64_t> support;
    if (a.kind() != SetRepr::Kind::EventuallyPeriodic || W > kDenseWindowCap) {
      support = enumerateZWindow(a, 2 * W);
      sparse = support.size() <= kSparsePairLimit;
      if (!sparse && W > kDenseWindowCap) {
        throw std::length_error("window too large for a dense scan on this representation");
      }
    }

    if (sparse) {
      std::unordered_map<int64_t, int64_t> counts;
      for (int64_t x : support) {
        if (std::abs(x) > W) continue;
        for (int64_t s : support) {
          int64_t d = x - s;
          if (std::abs(d) <= W) ++counts[d];
        }
      }
      std::vector<GroupElement> cands;
      std::vector<int64_t> vals;
      if (opts.candidates) {
        for (const GroupElement& g : *opts.candidates) {
          if (g.norm() > W) continue;
          auto it = counts.find(g.intValue());
          cands.push_back(g);
          vals.push_back(it == counts.end() ? 0 : it->second);
        }
      } else {
        for (const auto& [d, c] : counts) {
          cands.push_back(GroupElement::zOf(d));
          vals.push_back(c);
        }
      }
      return buildEvidence(W, threshold, std::move(cands), std::move(vals));
    }

    // Dense: packed-bit counting over [-2W, 2W].
    if (W > kDenseWindowCap) throw std::length_error("window too large for dense scan");
    BitWindow outer(2 * W);
    BitWindow inner(W);
    if (const EventuallyPeriodic* ep = a.periodicRep()) {
      for (int64_t x = -2 * W; x <= 2 * W; ++x) {
        if (ep->contains(x)) {
          outer.set(x);
          if (std::abs(x) <= W) inner.set(x);
        }
      }
    } else {
      for (int64_t x : support) {
        outer.set(x);
        if (std::abs(x) <= W) inner.set(x);
      }
    }
    std::vector<GroupElement> cands =
        opts.candidates ? *opts.candidates : defaultCandidatesZ(W);
    std::erase_if(cands, [&](const GroupElement& g) { return g.norm() > W; });
    std::vector<int64_t> vals = mapCounts(cands, opts.threads, [&](const GroupElement& g) {
      return bitCount(inner, outer, g.intValue());
    });
    return buildEvidence(W, threshold, std::move(cands), std::move(vals));
  }

  // Z2 / F2: score candidates by direct membership tests.
  std::vector<GroupElement> members = a.enumerate(w);
  std::vector<GroupElement> cands =
      opts.candidates ? *opts.candidates : ball(GroupContext{a.group()}, W);
  std::erase_if(cands, [&](const GroupElement& g) { return g.norm() > W; });
  std::vector<int64_t> vals = mapCounts(cands, opts.threads, [&](const GroupElement& g) {
    GroupElement gi = invert(g);
    int64_t c = 0;
    for (const GroupElement& x : members) {
      if (a.contains(combine(gi, x))) ++c;
    }
    return c;
  });
  return buildEvidence(W, threshold, std::move(cands), std::move(vals));
}

DeltaEvidence deltaWindowStabilized(const SetRepr& a, const Window& w, int64_t threshold,
                                    const DeltaScanOptions& opts) {
  DeltaEvidence first = deltaWindow(a, w, threshold, opts);
  DeltaScanOptions confirm;
  confirm.candidates = first.members;
  confirm.threads = opts.threads;
  DeltaEvidence doubled = deltaWindow(a, Window{2 * w.radius}, 1, confirm);
  std::map<GroupElement, int64_t> grownTo;
  for (const auto& [g, c] : doubled.counts) grownTo.emplace(g, c);

  DeltaEvidence out;
  out.window = w.radius;
  out.threshold = threshold;
  out.stabilized = true;
  for (size_t i = 0; i < first.members.size(); ++i) {
    const GroupElement& g = first.members[i];
    auto it = grownTo.find(g);
    int64_t atDouble = it == grownTo.end() ? 0 : it->second;
    if (atDouble >= first.counts[i].second + threshold) {
      out.members.push_back(g);
      out.counts.push_back(first.counts[i]);
    }
  }
  return out;
}

DeltaIteration iterateDelta(const SetRepr& a, int n, IterationMode mode, const Window& w,
                            int64_t threshold) {
  if (n < 1) throw std::invalid_argument("iteration count must be >= 1");
  DeltaIteration iter;

  SetRepr current = a;
  int start = 1;
  if (mode == IterationMode::WindowHandoff) {
    DeltaEvidence ev = deltaWindow(a, w, threshold);
    DeltaStep step;
    step.evidence = ev;
    std::optional<SetRepr> closure = a.deltaClosure();
    if (closure) {
      for (const GroupElement& g : ev.members) {
        if (!closure->contains(g)) {
          throw DomainError("windowed evidence member " + g.str() +
                            " falls outside the declared derivation closure");
        }
      }
      step.exactSet = *closure;
      iter.handoff = true;
      iter.exactTail = true;
      current = *closure;
    }
    iter.trace.push_back(std::move(step));
    if (!closure) return iter;  // cannot continue soundly without an exact form
    start = 2;
  } else {
    iter.exactTail = true;
  }

  for (int i = start; i <= n; ++i) {
    SetRepr next = deltaExact(current);
    DeltaStep step;
    step.exactSet = next;
    iter.trace.push_back(std::move(step));
    if (next.sameRepresentation(current) && (mode == IterationMode::Exact || i > 1)) {
      iter.fixedPointAt = i;
      break;
    }
    current = next;
  }
  return iter;
}

bool conjugationCheck(const std::vector<GroupElement>& f, const SetRepr& a) {
  if (a.group() != GroupTag::Z) {
    throw std::invalid_argument("conjugation check is implemented for Z representations");
  }
  SetRepr lhs = deltaExact(productSet(f, a));
  SetRepr rhs = deltaExact(a);
  return lhs.sameRepresentation(rhs);
}

}  // namespace deltawb
