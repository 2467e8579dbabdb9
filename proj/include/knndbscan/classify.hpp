#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "knndbscan/knng.hpp"

namespace knndbscan {

/// eps: neighborhood radius; m_pts: minimum neighborhood size, counting the point itself.
struct Params {
  double eps = 0.0;
  std::size_t m_pts = 2;
};

/// Throws InvalidArgument unless eps is finite and positive and 2 <= m_pts <= k_max.
void validate(const Params& params, std::size_t k_max);

enum class PointClass : std::uint8_t { Core, Border, Noise };

/// Core iff the M-th entry of the self-inclusive list lies within eps. Border iff not core
/// and some listed neighbor within eps is core. Two data-parallel passes.
std::vector<PointClass> classify_points(const NeighborGraph& graph, const Params& params,
                                        int threads = 1);

struct ClassCounts {
  std::size_t core = 0;
  std::size_t border = 0;
  std::size_t noise = 0;
};
ClassCounts count_classes(const std::vector<PointClass>& classes);

}  // namespace knndbscan
