#pragma once

#include <cstddef>
#include <vector>

#include "knndbscan/classify.hpp"
#include "knndbscan/common.hpp"
#include "knndbscan/knng.hpp"
#include "knndbscan/point_set.hpp"

// Brute-force reference clusterings. They share no code with the parallel pipeline and are
// meant for small inputs (a few thousand points).
namespace knndbscan::oracle {

struct Reference {
  std::vector<Index> labels;  // cluster id = smallest core index of the cluster; kNoise
  std::vector<PointClass> classes;
};

/// Classic DBSCAN: eps-ball counting (self-inclusive), breadth-first expansion over core
/// pairs within eps, border points to their nearest core point within eps.
Reference dbscan_reference(const PointSet& points, const Params& params);

/// kNN-DBSCAN by union-find: core points joined whenever one lies among the other's first
/// M neighbors. Border points take the label of their first core entry within eps.
Reference knn_dbscan_reference(const NeighborGraph& graph, const Params& params);

/// Undirected core-core edges (p, q, w) with q among p's first M entries, p < q, deduplicated.
std::vector<EdgeRecord> symmetrized_core_edges(const NeighborGraph& graph,
                                               const std::vector<PointClass>& classes,
                                               std::size_t m_pts);

/// Kruskal forest over n nodes; returns the smallest node index of each node's tree.
std::vector<Index> mst_components_reference(std::size_t n, std::vector<EdgeRecord> edges);

}  // namespace knndbscan::oracle
