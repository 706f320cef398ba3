#pragma once

#include <cstdint>

namespace deltawb {

/// The triangular revisiting schedule: position i >= 1 maps to index
/// j = i - n(n-1)/2 where n is the block with n(n-1)/2 < i <= n(n+1)/2.
/// The induced index stream is 1; 1,2; 1,2,3; 1,2,3,4; ... so every
/// index recurs once per later block, hence infinitely often.
int64_t scheduleIndex(int64_t i);

/// Block number n of position i (the n above).
int64_t scheduleBlock(int64_t i);

}  // namespace deltawb
