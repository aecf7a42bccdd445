#pragma once

#include <cstdint>

namespace mkcut {

using VertexId = std::int32_t;
using SubsetId = std::int32_t;

// Edge weights, gains and objective values. All arithmetic is exact integer
// arithmetic; |w| is bounded at parse time so that sums cannot overflow.
using Weight = std::int64_t;

inline constexpr Weight kMaxAbsEdgeWeight = (Weight{1} << 31) - 1;

}  // namespace mkcut
