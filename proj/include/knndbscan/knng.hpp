#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knndbscan/common.hpp"
#include "knndbscan/point_set.hpp"

namespace knndbscan {

struct Neighbor {
  Index j = kNone;
  double w = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Directed k-nearest-neighbor graph. Row i lists exactly k() entries, the first being
/// (i, 0.0), sorted ascending by (w, j) after that.
class NeighborGraph {
 public:
  NeighborGraph() = default;

  /// Builds a graph from explicit rows (each of length k). Validates the row invariants:
  /// self entry first, in-range targets, non-decreasing finite non-negative weights.
  static NeighborGraph from_rows(const std::vector<std::vector<Neighbor>>& rows);

  std::size_t size() const { return n_; }
  std::size_t k() const { return k_; }

  std::span<const Neighbor> neighbors(std::size_t i) const {
    return {entries_.data() + i * k_, k_};
  }
  /// Entry at 0-indexed position m of row i.
  const Neighbor& at(std::size_t i, std::size_t m) const { return entries_[i * k_ + m]; }

  /// Same graph truncated to the first k_new entries of every row.
  NeighborGraph prefix(std::size_t k_new) const;

  friend bool operator==(const NeighborGraph&, const NeighborGraph&) = default;

 private:
  NeighborGraph(std::size_t n, std::size_t k, std::vector<Neighbor> entries)
      : n_(n), k_(k), entries_(std::move(entries)) {}

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Neighbor> entries_;

  friend NeighborGraph build_exact_knng(const PointSet&, std::size_t, int);
};

/// Exact brute-force kNN graph under the Euclidean metric. Parallel over points;
/// the result does not depend on `threads`.
NeighborGraph build_exact_knng(const PointSet& points, std::size_t k_max, int threads = 1);

struct NeighborStats {
  std::size_t k = 0;
  double median_dist = 0.0;
  double mean_dist = 0.0;
};

/// Median and mean over all points of the distance stored at 1-indexed position k of the
/// self-inclusive list (k = 2 is the nearest non-self neighbor).
NeighborStats neighbor_stats(const NeighborGraph& graph, std::size_t k);

}  // namespace knndbscan
