#include "deltawb/ep.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace deltawb {
namespace {

bool sortedContains(const std::vector<int64_t>& v, int64_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

int64_t maxAbs(const std::vector<int64_t>& v, int64_t acc) {
  for (int64_t x : v) acc = std::max(acc, std::abs(x));
  return acc;
}

constexpr int64_t kMaxModulus = 1'000'000;
constexpr int64_t kMaxScan = 80'000'000;

}  // namespace

int64_t floorMod(int64_t x, int64_t p) {
  int64_t r = x % p;
  return r < 0 ? r + p : r;
}

bool EventuallyPeriodic::contains(int64_t x) const {
  if (sortedContains(addExceptions, x)) return true;
  if (sortedContains(removeExceptions, x)) return false;
  int64_t r = floorMod(x, modulus);
  if (x >= tailStart && sortedContains(posResidues, r)) return true;
  if (x <= -tailStart && sortedContains(negResidues, r)) return true;
  return false;
}

int64_t EventuallyPeriodic::irregularBound() const {
  int64_t b = tailStart;
  b = maxAbs(addExceptions, b);
  b = maxAbs(removeExceptions, b);
  return b;
}

EventuallyPeriodic epFromOracle(int64_t period, int64_t bound,
                                const std::function<bool(int64_t)>& member) {
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  if (period > kMaxModulus) throw std::length_error("eventual period too large");
  if (bound < 0) bound = 0;
  if (bound > kMaxScan) throw std::length_error("irregular bound too large to scan");

  // Sample the tails beyond the bound.
  int64_t anchor = ((bound / period) + 3) * period;  // aligned, > bound + 2p
  std::vector<char> posPat(period), negPat(period);
  for (int64_t r = 0; r < period; ++r) {
    posPat[r] = member(anchor + r) ? 1 : 0;
    negPat[r] = member(r - anchor - period) ? 1 : 0;
  }

  // Reduce to the minimal eventual period (joint for both tails).
  int64_t d = period;
  for (int64_t cand = 1; cand < period; ++cand) {
    if (period % cand != 0) continue;
    bool ok = true;
    for (int64_t r = 0; r < period && ok; ++r) {
      if (posPat[r] != posPat[(r + cand) % period]) ok = false;
      if (negPat[r] != negPat[(r + cand) % period]) ok = false;
    }
    if (ok) {
      d = cand;
      break;
    }
  }

  EventuallyPeriodic out;
  out.modulus = d;
  out.tailStart = 0;
  for (int64_t r = 0; r < d; ++r) {
    if (posPat[r]) out.posResidues.push_back(r);
    if (negPat[r]) out.negResidues.push_back(r);
  }

  // Same convention as contains() at tailStart 0: x = 0 is covered by
  // either residue side.
  auto pattern = [&](int64_t x) {
    int64_t r = floorMod(x, d);
    return (x >= 0 && sortedContains(out.posResidues, r)) ||
           (x <= 0 && sortedContains(out.negResidues, r));
  };

  // Fold everything inside the scan region into minimal exception sets.
  for (int64_t x = -anchor; x <= anchor; ++x) {
    bool m = member(x), p = pattern(x);
    if (m && !p) out.addExceptions.push_back(x);
    if (!m && p) out.removeExceptions.push_back(x);
  }
  return out;
}

EventuallyPeriodic epNormalize(const EventuallyPeriodic& ep) {
  if (ep.modulus < 1) throw std::invalid_argument("modulus must be >= 1");
  for (int64_t r : ep.posResidues) {
    if (r < 0 || r >= ep.modulus) throw std::invalid_argument("positive residue out of range");
  }
  for (int64_t r : ep.negResidues) {
    if (r < 0 || r >= ep.modulus) throw std::invalid_argument("negative residue out of range");
  }
  if (ep.tailStart < 0) throw std::invalid_argument("tailStart must be >= 0");
  EventuallyPeriodic src = ep;
  std::sort(src.posResidues.begin(), src.posResidues.end());
  std::sort(src.negResidues.begin(), src.negResidues.end());
  std::sort(src.addExceptions.begin(), src.addExceptions.end());
  std::sort(src.removeExceptions.begin(), src.removeExceptions.end());
  return epFromOracle(src.modulus, src.irregularBound(),
                      [&src](int64_t x) { return src.contains(x); });
}

EventuallyPeriodic epTranslate(const EventuallyPeriodic& ep, int64_t g) {
  return epFromOracle(ep.modulus, ep.irregularBound() + std::abs(g),
                      [&](int64_t x) { return ep.contains(x - g); });
}

EventuallyPeriodic epInverse(const EventuallyPeriodic& ep) {
  return epFromOracle(ep.modulus, ep.irregularBound(),
                      [&](int64_t x) { return ep.contains(-x); });
}

EventuallyPeriodic epComplement(const EventuallyPeriodic& ep) {
  return epFromOracle(ep.modulus, ep.irregularBound(),
                      [&](int64_t x) { return !ep.contains(x); });
}

namespace {

EventuallyPeriodic epCombine(const EventuallyPeriodic& a, const EventuallyPeriodic& b,
                             const std::function<bool(bool, bool)>& op) {
  int64_t l = std::lcm(a.modulus, b.modulus);
  if (l > kMaxModulus) throw std::length_error("combined eventual period too large");
  int64_t bound = std::max(a.irregularBound(), b.irregularBound());
  return epFromOracle(l, bound,
                      [&](int64_t x) { return op(a.contains(x), b.contains(x)); });
}

}  // namespace

EventuallyPeriodic epUnion(const EventuallyPeriodic& a, const EventuallyPeriodic& b) {
  return epCombine(a, b, [](bool x, bool y) { return x || y; });
}

EventuallyPeriodic epIntersect(const EventuallyPeriodic& a, const EventuallyPeriodic& b) {
  return epCombine(a, b, [](bool x, bool y) { return x && y; });
}

EventuallyPeriodic epDifference(const EventuallyPeriodic& a, const EventuallyPeriodic& b) {
  return epCombine(a, b, [](bool x, bool y) { return x && !y; });
}

EventuallyPeriodic epProduct(const std::vector<int64_t>& shifts, const EventuallyPeriodic& ep) {
  if (shifts.empty()) return EventuallyPeriodic{};  // empty product set
  int64_t maxShift = 0;
  for (int64_t f : shifts) maxShift = std::max(maxShift, std::abs(f));
  return epFromOracle(ep.modulus, ep.irregularBound() + maxShift, [&](int64_t x) {
    for (int64_t f : shifts) {
      if (ep.contains(x - f)) return true;
    }
    return false;
  });
}

std::vector<int64_t> epFiniteElements(const EventuallyPeriodic& ep) {
  if (!ep.isFinite()) throw std::invalid_argument("set is not finite");
  return ep.addExceptions;
}

std::optional<int64_t> epMinCanonical(const EventuallyPeriodic& ep) {
  if (ep.isEmpty()) return std::nullopt;
  // Any nonempty set has a member within irregularBound + modulus of 0.
  int64_t cap = ep.irregularBound() + ep.modulus + 1;
  for (int64_t r = 0; r <= cap; ++r) {
    if (r > 0 && ep.contains(-r)) return -r;
    if (ep.contains(r)) return r;
  }
  throw std::logic_error("nonempty periodic set with no member in scan range");
}

std::vector<int64_t> epEnumerate(const EventuallyPeriodic& ep, int64_t radius) {
  if (radius < 0) throw std::invalid_argument("negative window radius");
  if (radius > 20'000'000) throw std::length_error("window too large for dense enumeration");
  std::vector<int64_t> out;
  for (int64_t x = -radius; x <= radius; ++x) {
    if (ep.contains(x)) out.push_back(x);
  }
  return out;
}

}  // namespace deltawb
