#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace deltawb {

/// Eventually periodic subset of Z:
///   {x >= tailStart : x mod p in posResidues}
///   u {x <= -tailStart : x mod p in negResidues}
/// adjusted by finite add/remove exception sets.
///
/// Normal form (produced by epNormalize and by every constructor in this
/// library): modulus is the minimal eventual period, tailStart is 0, the
/// sign convention is x >= 0 -> posResidues / x < 0 -> negResidues, and
/// the exception sets are the minimal symmetric difference against that
/// pattern. Two representations denote the same subset of Z iff their
/// normal forms are field-wise equal.
struct EventuallyPeriodic {
  int64_t modulus = 1;
  std::vector<int64_t> posResidues;  // sorted, within [0, modulus)
  std::vector<int64_t> negResidues;  // sorted, within [0, modulus)
  int64_t tailStart = 0;
  std::vector<int64_t> addExceptions;     // sorted
  std::vector<int64_t> removeExceptions;  // sorted

  bool contains(int64_t x) const;

  bool isEmpty() const { return posResidues.empty() && negResidues.empty() && addExceptions.empty(); }
  bool isFinite() const { return posResidues.empty() && negResidues.empty(); }

  /// Largest |x| at which this set can disagree with its pure residue
  /// pattern (0 for fully periodic sets).
  int64_t irregularBound() const;

  bool operator==(const EventuallyPeriodic& other) const = default;
};

int64_t floorMod(int64_t x, int64_t p);

/// Canonical form; see the struct comment. Input fields may be any valid
/// representation (tailStart > 0, redundant exceptions, non-minimal
/// modulus).
EventuallyPeriodic epNormalize(const EventuallyPeriodic& ep);

/// Builds the canonical representation of a set given a membership
/// oracle, a period that the set is eventually periodic with, and a
/// bound B such that membership agrees with the tail pattern for all
/// |x| > B. This is the single construction path for all exact set
/// algebra (translate, union, intersection, complement, ...).
EventuallyPeriodic epFromOracle(int64_t period, int64_t bound,
                                const std::function<bool(int64_t)>& member);

EventuallyPeriodic epTranslate(const EventuallyPeriodic& ep, int64_t g);
EventuallyPeriodic epInverse(const EventuallyPeriodic& ep);
EventuallyPeriodic epComplement(const EventuallyPeriodic& ep);
EventuallyPeriodic epUnion(const EventuallyPeriodic& a, const EventuallyPeriodic& b);
EventuallyPeriodic epIntersect(const EventuallyPeriodic& a, const EventuallyPeriodic& b);
EventuallyPeriodic epDifference(const EventuallyPeriodic& a, const EventuallyPeriodic& b);
EventuallyPeriodic epProduct(const std::vector<int64_t>& shifts, const EventuallyPeriodic& ep);

/// Elements of a finite representation (throws if infinite).
std::vector<int64_t> epFiniteElements(const EventuallyPeriodic& ep);

/// Least member in canonical Z order (0, -1, 1, -2, 2, ...), when any.
std::optional<int64_t> epMinCanonical(const EventuallyPeriodic& ep);

std::vector<int64_t> epEnumerate(const EventuallyPeriodic& ep, int64_t radius);

}  // namespace deltawb
