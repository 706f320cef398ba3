#include "deltawb/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace deltawb {

int64_t scheduleBlock(int64_t i) {
  if (i < 1) throw std::invalid_argument("schedule position must be >= 1");
  // Smallest n with n(n+1)/2 >= i; start from the float estimate and fix up.
  int64_t n = static_cast<int64_t>((std::sqrt(8.0 * static_cast<double>(i) + 1.0) - 1.0) / 2.0);
  while (n * (n + 1) / 2 < i) ++n;
  while (n > 1 && (n - 1) * n / 2 >= i) --n;
  return n;
}

int64_t scheduleIndex(int64_t i) {
  int64_t n = scheduleBlock(i);
  return i - n * (n - 1) / 2;
}

}  // namespace deltawb
