#include "knndbscan/classify.hpp"

#include <cmath>
#include <string>

namespace knndbscan {

void validate(const Params& params, std::size_t k_max) {
  if (!std::isfinite(params.eps) || !(params.eps > 0.0)) {
    throw InvalidArgument("eps must be finite and positive");
  }
  if (params.m_pts < 2) throw InvalidArgument("minimum points M must be at least 2");
  if (params.m_pts > k_max) {
    throw InvalidArgument("M = " + std::to_string(params.m_pts) + " exceeds k = " +
                          std::to_string(k_max));
  }
}

std::vector<PointClass> classify_points(const NeighborGraph& graph, const Params& params,
                                        int threads) {
  validate(params, graph.k());
  const auto n = static_cast<std::int64_t>(graph.size());
  const std::size_t k = graph.k();
  std::vector<PointClass> cls(graph.size(), PointClass::Noise);
  std::vector<std::uint8_t> core(graph.size(), 0);
  const int nt = threads > 0 ? threads : 1;

#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::int64_t i = 0; i < n; ++i) {
    if (graph.at(static_cast<std::size_t>(i), params.m_pts - 1).w <= params.eps) {
      cls[static_cast<std::size_t>(i)] = PointClass::Core;
      core[static_cast<std::size_t>(i)] = 1;
    }
  }

#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (core[ui]) continue;
    for (std::size_t m = 1; m < k; ++m) {
      const auto& nb = graph.at(ui, m);
      if (nb.w > params.eps) break;
      if (core[static_cast<std::size_t>(nb.j)]) {
        cls[ui] = PointClass::Border;
        break;
      }
    }
  }
  return cls;
}

ClassCounts count_classes(const std::vector<PointClass>& classes) {
  ClassCounts c;
  for (auto x : classes) {
    switch (x) {
      case PointClass::Core: ++c.core; break;
      case PointClass::Border: ++c.border; break;
      case PointClass::Noise: ++c.noise; break;
    }
  }
  return c;
}

}  // namespace knndbscan
