#include "knndbscan/pipeline.hpp"

#include <algorithm>
#include <string>

#include "knndbscan/border.hpp"
#include "knndbscan/eval.hpp"
#include "knndbscan/local_mst.hpp"
#include "knndbscan/timer.hpp"

namespace knndbscan {

ClusterResult cluster_graph(const PointSet& points, const NeighborGraph& graph,
                            const ClusterOptions& options) {
  if (points.size() != graph.size()) throw InvalidArgument("points and graph sizes differ");
  const std::size_t n = graph.size();
  const Params& params = options.params;
  ClusterResult res;
  Stopwatch total;
  Stopwatch clock;

  if (params.m_pts > graph.k() && graph.k() == n && params.m_pts >= 2 && params.eps > 0.0) {
    res.labels.assign(n, kNoise);
    res.classes.assign(n, PointClass::Noise);
    res.counts = count_classes(res.classes);
    res.timings.total = total.lap();
    return res;
  }
  if (options.parts < 1) throw InvalidArgument("parts must be at least 1");
  if (options.threads < 1) throw InvalidArgument("threads must be at least 1");

  res.classes = classify_points(graph, params, options.threads);
  res.counts = count_classes(res.classes);
  std::vector<Index> labels(n, kNoise);
  for (std::size_t i = 0; i < n; ++i) {
    if (res.classes[i] == PointClass::Core) labels[i] = static_cast<Index>(i);
  }
  res.timings.classify = clock.lap();

  const int p = options.parts;
  const auto owner = make_partition(points, p, options.strategy);
  const auto layout = group_layout(owner, p);
  res.timings.partition = clock.lap();

  // Local Boruvka, one independent run per group.
  const auto up = static_cast<std::size_t>(p);
  std::vector<LocalMstResult> local(up);
  for_each_rank(p, options.execution, options.threads, [&](int g, int inner) {
    const GroupView view{g,
                         &graph,
                         owner,
                         layout.members[static_cast<std::size_t>(g)],
                         layout.local_pos,
                         params.m_pts};
    local[static_cast<std::size_t>(g)] = parallel_local_mst(view, labels, inner);
  });
  std::vector<std::vector<EdgeRecord>> cut(up);
  std::vector<std::vector<Index>> subtrees(up);
  for (std::size_t g = 0; g < up; ++g) {
    res.cut_edges += local[g].cut_edges.size();
    res.local_rounds = std::max(res.local_rounds, local[g].rounds);
    res.local_cycles += local[g].cycles_broken;
    cut[g] = std::move(local[g].cut_edges);
    subtrees[g] = std::move(local[g].subtrees);
  }
  res.timings.local = clock.lap();

  // Cut Boruvka across groups.
  BulkSyncExchange exchange(p);
  auto relabeled = relabel_cut_edges(cut, labels, owner, exchange);
  const double relabel_time = clock.lap();
  CutMstOptions cut_opts;
  cut_opts.threads = options.threads;
  cut_opts.execution = options.execution;
  cut_opts.record_rosters = options.record_rosters;
  auto cut_res = distributed_cut_mst(std::move(relabeled), subtrees, layout.members, owner,
                                     labels, exchange, cut_opts);
  clock.lap();
  res.timings.min_edges = cut_res.timings.min_edges;
  res.timings.pointer_jumping = cut_res.timings.pointer_jumping;
  res.timings.update_ecut = relabel_time + cut_res.timings.update_ecut;
  res.cut_rounds = cut_res.rounds;
  res.cut_cycles = cut_res.cycles_broken;
  res.trace = std::move(cut_res.trace);
  res.exchange = exchange.stats();

  cluster_border(labels, res.classes, graph, params, options.threads);
  res.timings.border = clock.lap();

  res.labels = canonical_labels(labels);
  res.n_clusters = cluster_count(res.labels);
  res.timings.total = total.lap();
  return res;
}

ClusterResult cluster_points(const PointSet& points, std::size_t k, const ClusterOptions& options) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (options.params.m_pts > k) {
    throw InvalidArgument("M = " + std::to_string(options.params.m_pts) + " exceeds k = " +
                          std::to_string(k));
  }
  Stopwatch clock;
  const auto graph = build_exact_knng(points, std::min(k, points.size()), options.threads);
  const double t = clock.lap();
  auto res = cluster_graph(points, graph, options);
  res.timings.knng = t;
  res.timings.total += t;
  return res;
}

double resolve_relative_eps(const NeighborGraph& graph, double eps_rel) {
  if (graph.k() < 2) throw InvalidArgument("relative eps needs k >= 2");
  if (!(eps_rel > 0.0)) throw InvalidArgument("relative eps must be positive");
  return eps_rel * neighbor_stats(graph, 2).median_dist;
}

double saturation_eps(const NeighborGraph& graph, std::size_t m_pts) {
  if (m_pts < 1 || m_pts > graph.k()) throw InvalidArgument("M out of range");
  double e = 0.0;
  for (std::size_t i = 0; i < graph.size(); ++i) e = std::max(e, graph.at(i, m_pts - 1).w);
  return e;
}

}  // namespace knndbscan
