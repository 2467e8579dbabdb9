#include "knndbscan/knng.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

namespace knndbscan {

NeighborGraph NeighborGraph::from_rows(const std::vector<std::vector<Neighbor>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("graph needs at least one row");
  const std::size_t k = rows.front().size();
  if (k < 1 || k > n) throw InvalidArgument("row length must lie in [1, N]");

  std::vector<Neighbor> entries;
  entries.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (row.size() != k) throw InvalidArgument("row " + std::to_string(i) + " has wrong length");
    if (row[0].j != static_cast<Index>(i) || row[0].w != 0.0) {
      throw InvalidData("row " + std::to_string(i) + " must start with its self entry");
    }
    for (std::size_t m = 0; m < k; ++m) {
      const auto& e = row[m];
      if (e.j < 0 || e.j >= static_cast<Index>(n)) {
        throw InvalidData("row " + std::to_string(i) + " has out-of-range target");
      }
      if (!std::isfinite(e.w) || e.w < 0.0) {
        throw InvalidData("row " + std::to_string(i) + " has invalid weight");
      }
      if (m > 0 && e.w < row[m - 1].w) {
        throw InvalidData("row " + std::to_string(i) + " weights decrease");
      }
      entries.push_back(e);
    }
  }
  return NeighborGraph(n, k, std::move(entries));
}

NeighborGraph NeighborGraph::prefix(std::size_t k_new) const {
  if (k_new < 1 || k_new > k_) throw InvalidArgument("prefix length out of range");
  std::vector<Neighbor> out;
  out.reserve(n_ * k_new);
  for (std::size_t i = 0; i < n_; ++i) {
    auto row = neighbors(i);
    out.insert(out.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k_new));
  }
  return NeighborGraph(n_, k_new, std::move(out));
}

NeighborGraph build_exact_knng(const PointSet& points, std::size_t k_max, int threads) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("empty point set");
  if (k_max < 1 || k_max > n) {
    throw InvalidArgument("k_max = " + std::to_string(k_max) + " must lie in [1, " +
                          std::to_string(n) + "]");
  }
  const auto coords = points.coords();
  for (double c : coords) {
    if (!std::isfinite(c)) throw InvalidData("non-finite coordinate");
  }

  std::vector<Neighbor> entries(n * k_max);
  const std::size_t others = k_max - 1;
  const auto nn = static_cast<std::int64_t>(n);

#pragma omp parallel num_threads(threads > 0 ? threads : 1)
  {
    // Max-heap on (squared distance, index) holding the best `others` candidates.
    using Candidate = std::pair<double, Index>;
    std::vector<Candidate> heap;
    heap.reserve(others + 1);

#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < nn; ++i) {
      heap.clear();
      const auto pi = points[static_cast<std::size_t>(i)];
      if (others > 0) {
        for (std::int64_t j = 0; j < nn; ++j) {
          if (j == i) continue;
          const Candidate c{squared_distance(pi, points[static_cast<std::size_t>(j)]), j};
          if (heap.size() < others) {
            heap.push_back(c);
            std::push_heap(heap.begin(), heap.end());
          } else if (c < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = c;
            std::push_heap(heap.begin(), heap.end());
          }
        }
        std::sort_heap(heap.begin(), heap.end());
      }
      Neighbor* row = entries.data() + static_cast<std::size_t>(i) * k_max;
      row[0] = {i, 0.0};
      for (std::size_t m = 0; m < heap.size(); ++m) {
        row[m + 1] = {heap[m].second, std::sqrt(heap[m].first)};
      }
    }
  }
  return NeighborGraph(n, k_max, std::move(entries));
}

NeighborStats neighbor_stats(const NeighborGraph& graph, std::size_t k) {
  if (k < 1 || k > graph.k()) {
    throw InvalidArgument("neighbor_stats: k = " + std::to_string(k) + " outside [1, " +
                          std::to_string(graph.k()) + "]");
  }
  const std::size_t n = graph.size();
  std::vector<double> d(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = graph.at(i, k - 1).w;
    sum += d[i];
  }
  std::sort(d.begin(), d.end());
  const double median = (n % 2 == 1) ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]);
  return {k, median, sum / static_cast<double>(n)};
}

}  // namespace knndbscan
