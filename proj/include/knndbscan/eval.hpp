#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knndbscan/common.hpp"

namespace knndbscan {

/// Normalized mutual information 2 I(A;B) / (H(A) + H(B)). Noise points of each labeling
/// form one shared pseudo-cluster. Two zero-entropy labelings give 1; I = 0 gives 0.
double nmi(std::span<const Index> a, std::span<const Index> b);

/// Number of distinct non-noise labels.
std::size_t cluster_count(std::span<const Index> labels);

/// True when the two labelings induce the same partition (noise compared as a label).
bool same_partition(std::span<const Index> a, std::span<const Index> b);

/// True when every fine cluster, restricted to `mask` points, falls inside a single coarse
/// cluster. Points outside the mask or noise in either labeling are ignored.
bool refines(std::span<const Index> fine, std::span<const Index> coarse,
             std::span<const std::uint8_t> mask = {});

/// Renumbers clusters 0, 1, ... in order of their smallest member; noise stays kNoise.
std::vector<Index> canonical_labels(std::span<const Index> labels);

}  // namespace knndbscan
