#include "knndbscan/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "knndbscan/datasets.hpp"

namespace knndbscan {

PartitionStrategy parse_strategy(std::string_view name, std::uint64_t seed) {
  if (name == "block") return PartitionStrategy::block();
  if (name == "random") return PartitionStrategy::random(seed);
  if (name == "geometric") return PartitionStrategy::geometric();
  throw InvalidArgument("unknown partition strategy '" + std::string(name) + "'");
}

std::string_view strategy_name(PartitionStrategy::Kind kind) {
  switch (kind) {
    case PartitionStrategy::Kind::Block: return "block";
    case PartitionStrategy::Kind::Random: return "random";
    case PartitionStrategy::Kind::Geometric: return "geometric";
  }
  return "unknown";
}

namespace {

// Assigns order[pos] to the group whose contiguous run covers pos.
void assign_runs(const std::vector<Index>& order, int p, std::vector<int>& owner) {
  const std::size_t n = order.size();
  const std::size_t base = n / static_cast<std::size_t>(p);
  const std::size_t extra = n % static_cast<std::size_t>(p);
  std::size_t pos = 0;
  for (int g = 0; g < p; ++g) {
    const std::size_t len = base + (static_cast<std::size_t>(g) < extra ? 1 : 0);
    for (std::size_t t = 0; t < len; ++t) owner[order[pos++]] = g;
  }
}

void bisect(const PointSet& points, std::vector<Index>& ids, std::size_t lo, std::size_t hi,
            int first_group, int parts, std::vector<int>& owner) {
  if (parts == 1) {
    for (std::size_t t = lo; t < hi; ++t) owner[ids[t]] = first_group;
    return;
  }
  const std::size_t d = points.dim();
  const double count = static_cast<double>(hi - lo);
  std::size_t axis = 0;
  double best = -1.0;
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (std::size_t t = lo; t < hi; ++t) mean += points[ids[t]][c];
    mean /= count;
    double var = 0.0;
    for (std::size_t t = lo; t < hi; ++t) {
      const double diff = points[ids[t]][c] - mean;
      var += diff * diff;
    }
    if (var > best) {
      best = var;
      axis = c;
    }
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  auto first = ids.begin() + static_cast<std::ptrdiff_t>(lo);
  std::nth_element(first, ids.begin() + static_cast<std::ptrdiff_t>(mid),
                   ids.begin() + static_cast<std::ptrdiff_t>(hi), [&](Index a, Index b) {
                     const double ca = points[a][axis];
                     const double cb = points[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });
  bisect(points, ids, lo, mid, first_group, parts / 2, owner);
  bisect(points, ids, mid, hi, first_group + parts / 2, parts / 2, owner);
}

}  // namespace

std::vector<int> make_partition(const PointSet& points, int p, PartitionStrategy strategy) {
  const std::size_t n = points.size();
  if (p < 1 || static_cast<std::size_t>(p) > n) {
    throw InvalidArgument("partition count p = " + std::to_string(p) + " must lie in [1, " +
                          std::to_string(n) + "]");
  }
  std::vector<int> owner(n, 0);
  std::vector<Index> ids(n);
  std::iota(ids.begin(), ids.end(), Index{0});

  switch (strategy.kind) {
    case PartitionStrategy::Kind::Block:
      assign_runs(ids, p, owner);
      break;
    case PartitionStrategy::Kind::Random: {
      Rng rng(strategy.seed);
      for (std::size_t t = n; t > 1; --t) {
        std::swap(ids[t - 1], ids[rng.below(t)]);
      }
      assign_runs(ids, p, owner);
      break;
    }
    case PartitionStrategy::Kind::Geometric:
      if ((p & (p - 1)) != 0) {
        throw InvalidArgument("geometric partitioning needs a power-of-two p, got " +
                              std::to_string(p));
      }
      bisect(points, ids, 0, n, 0, p, owner);
      break;
  }
  return owner;
}

GroupLayout group_layout(const std::vector<int>& owner, int p) {
  GroupLayout layout;
  layout.members.resize(static_cast<std::size_t>(p));
  layout.local_pos.resize(owner.size());
  for (std::size_t i = 0; i < owner.size(); ++i) {
    const int g = owner[i];
    if (g < 0 || g >= p) throw InvalidArgument("owner map entry out of range");
    auto& m = layout.members[static_cast<std::size_t>(g)];
    layout.local_pos[i] = static_cast<Index>(m.size());
    m.push_back(static_cast<Index>(i));
  }
  return layout;
}

std::size_t PartitionedGraph::total_edges() const {
  std::size_t s = 0;
  for (const auto& e : local_edges) s += e.size();
  for (const auto& e : cut_edges) s += e.size();
  return s;
}

PartitionedGraph split_edges(const NeighborGraph& graph, const std::vector<int>& owner, int p,
                             std::size_t max_position) {
  if (owner.size() != graph.size()) throw InvalidArgument("owner map does not cover the graph");
  if (p < 1) throw InvalidArgument("p must be positive");
  const std::size_t limit = max_position == 0 ? graph.k() : std::min(max_position, graph.k());

  PartitionedGraph out;
  out.p = p;
  out.owner = owner;
  out.local_edges.resize(static_cast<std::size_t>(p));
  out.cut_edges.resize(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const int g = owner[i];
    if (g < 0 || g >= p) throw InvalidArgument("owner map entry out of range");
    for (std::size_t m = 0; m < limit; ++m) {
      const auto& nb = graph.at(i, m);
      if (nb.j == static_cast<Index>(i)) continue;
      const EdgeRecord e{static_cast<Index>(i), nb.j, nb.w};
      auto& bucket = owner[static_cast<std::size_t>(nb.j)] == g ? out.local_edges : out.cut_edges;
      bucket[static_cast<std::size_t>(g)].push_back(e);
    }
  }
  return out;
}

}  // namespace knndbscan
