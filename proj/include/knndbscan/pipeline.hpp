#pragma once

#include <cstddef>
#include <vector>

#include "knndbscan/classify.hpp"
#include "knndbscan/cut_mst.hpp"
#include "knndbscan/exchange.hpp"
#include "knndbscan/knng.hpp"
#include "knndbscan/partition.hpp"
#include "knndbscan/point_set.hpp"

namespace knndbscan {

struct ClusterOptions {
  Params params;
  int parts = 1;
  PartitionStrategy strategy = PartitionStrategy::block();
  int threads = 1;
  RankExecution execution = RankExecution::Sequential;
  bool record_rosters = false;
};

/// Wall-clock seconds per phase. local, min_edges, pointer_jumping and update_ecut follow
/// the usual breakdown of the distributed algorithm; the rest cover the surrounding stages.
struct PhaseTimings {
  double knng = 0.0;
  double classify = 0.0;
  double partition = 0.0;
  double local = 0.0;
  double min_edges = 0.0;
  double pointer_jumping = 0.0;
  double update_ecut = 0.0;
  double border = 0.0;
  double total = 0.0;
};

struct ClusterResult {
  std::vector<Index> labels;  // clusters numbered 0.. by smallest member; kNoise for noise
  std::vector<PointClass> classes;
  ClassCounts counts;
  std::size_t n_clusters = 0;
  std::size_t cut_edges = 0;     // cut edges collected by the local phase, all groups
  std::size_t local_rounds = 0;  // maximum over groups
  std::size_t local_cycles = 0;
  std::size_t cut_rounds = 0;
  std::size_t cut_cycles = 0;
  PhaseTimings timings;
  std::vector<CutRoundTrace> trace;
  ExchangeStats exchange;
};

/// Full clustering over a prebuilt graph: classify, partition, local Boruvka per group, cut
/// Boruvka across groups, border assignment. When M exceeds k and the graph is complete
/// (k = N, so fewer than M points exist) every point is noise; otherwise M > k is an
/// InvalidArgument.
ClusterResult cluster_graph(const PointSet& points, const NeighborGraph& graph,
                            const ClusterOptions& options);

/// Builds the exact graph with k_max = min(k, N) and clusters it.
ClusterResult cluster_points(const PointSet& points, std::size_t k, const ClusterOptions& options);

/// Absolute eps for a value relative to the median distance to the nearest non-self neighbor.
double resolve_relative_eps(const NeighborGraph& graph, double eps_rel);

/// Smallest eps at which every point is core: max over points of the M-th entry's weight.
double saturation_eps(const NeighborGraph& graph, std::size_t m_pts);

}  // namespace knndbscan
