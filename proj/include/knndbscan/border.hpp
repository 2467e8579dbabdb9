#pragma once

#include <span>
#include <vector>

#include "knndbscan/classify.hpp"
#include "knndbscan/knng.hpp"

namespace knndbscan {

/// Gives each border point the label of its nearest core neighbor within eps (the first
/// qualifying entry of its row). Core labels are left untouched; noise stays kNoise.
/// Throws InternalError if a border point has no qualifying entry.
void cluster_border(std::span<Index> labels, std::span<const PointClass> classes,
                    const NeighborGraph& graph, const Params& params, int threads = 1);

}  // namespace knndbscan
