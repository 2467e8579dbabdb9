#include "knndbscan/border.hpp"

#include <atomic>
#include <string>

namespace knndbscan {

void cluster_border(std::span<Index> labels, std::span<const PointClass> classes,
                    const NeighborGraph& graph, const Params& params, int threads) {
  const auto n = static_cast<std::int64_t>(graph.size());
  if (labels.size() != graph.size() || classes.size() != graph.size()) {
    throw InvalidArgument("cluster_border: labels and classes must cover the graph");
  }
  // Border labels are written to a separate buffer so the pass only reads core labels.
  std::vector<Index> assigned(graph.size(), kNoise);
  std::atomic<Index> orphan{kNone};

#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1)
  for (std::int64_t s = 0; s < n; ++s) {
    const auto i = static_cast<std::size_t>(s);
    if (classes[i] != PointClass::Border) continue;
    for (const auto& nb : graph.neighbors(i)) {
      if (nb.w > params.eps) break;
      if (classes[static_cast<std::size_t>(nb.j)] == PointClass::Core) {
        assigned[i] = labels[static_cast<std::size_t>(nb.j)];
        break;
      }
    }
    if (assigned[i] == kNoise) orphan.store(s);
  }
  if (orphan.load() != kNone) {
    throw InternalError("border point " + std::to_string(orphan.load()) +
                        " has no core neighbor within eps");
  }
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (classes[i] == PointClass::Border) labels[i] = assigned[i];
  }
}

}  // namespace knndbscan
