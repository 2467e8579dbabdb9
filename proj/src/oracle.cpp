#include "knndbscan/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

namespace knndbscan::oracle {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Index{0}); }
  Index find(Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& px = parent[static_cast<std::size_t>(x)];
      px = parent[static_cast<std::size_t>(px)];
      x = px;
    }
    return x;
  }
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;  // smaller index stays the representative
    return true;
  }
  std::vector<Index> parent;
};

}  // namespace

Reference dbscan_reference(const PointSet& points, const Params& params) {
  const std::size_t n = points.size();
  Reference ref;
  ref.classes.assign(n, PointClass::Noise);
  ref.labels.assign(n, kNoise);

  std::vector<std::vector<Index>> ball(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (distance(points[p], points[q]) <= params.eps) ball[p].push_back(static_cast<Index>(q));
    }
    if (ball[p].size() >= params.m_pts) ref.classes[p] = PointClass::Core;
  }

  for (std::size_t s = 0; s < n; ++s) {
    if (ref.classes[s] != PointClass::Core || ref.labels[s] != kNoise) continue;
    const auto id = static_cast<Index>(s);
    std::deque<Index> queue{id};
    ref.labels[s] = id;
    while (!queue.empty()) {
      const auto p = static_cast<std::size_t>(queue.front());
      queue.pop_front();
      for (Index q : ball[p]) {
        const auto uq = static_cast<std::size_t>(q);
        if (ref.classes[uq] == PointClass::Core && ref.labels[uq] == kNoise) {
          ref.labels[uq] = id;
          queue.push_back(q);
        }
      }
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    if (ref.classes[p] == PointClass::Core) continue;
    double best = 0.0;
    Index nearest = kNone;
    for (Index q : ball[p]) {
      if (ref.classes[static_cast<std::size_t>(q)] != PointClass::Core) continue;
      const double d = distance(points[p], points[static_cast<std::size_t>(q)]);
      if (nearest == kNone || d < best) {
        best = d;
        nearest = q;
      }
    }
    if (nearest != kNone) {
      ref.classes[p] = PointClass::Border;
      ref.labels[p] = ref.labels[static_cast<std::size_t>(nearest)];
    }
  }
  return ref;
}

Reference knn_dbscan_reference(const NeighborGraph& graph, const Params& params) {
  validate(params, graph.k());
  const std::size_t n = graph.size();
  const std::size_t m = params.m_pts;
  Reference ref;
  ref.classes.assign(n, PointClass::Noise);
  ref.labels.assign(n, kNoise);
  for (std::size_t p = 0; p < n; ++p) {
    if (graph.neighbors(p)[m - 1].w <= params.eps) ref.classes[p] = PointClass::Core;
  }

  DisjointSets sets(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (ref.classes[p] != PointClass::Core) continue;
    for (std::size_t t = 0; t < m; ++t) {
      const Index q = graph.neighbors(p)[t].j;
      if (ref.classes[static_cast<std::size_t>(q)] == PointClass::Core) {
        sets.unite(static_cast<Index>(p), q);
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (ref.classes[p] == PointClass::Core) ref.labels[p] = sets.find(static_cast<Index>(p));
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (ref.classes[p] == PointClass::Core) continue;
    for (const auto& nb : graph.neighbors(p)) {
      if (nb.w <= params.eps && ref.classes[static_cast<std::size_t>(nb.j)] == PointClass::Core) {
        ref.classes[p] = PointClass::Border;
        ref.labels[p] = ref.labels[static_cast<std::size_t>(nb.j)];
        break;
      }
    }
  }
  return ref;
}

std::vector<EdgeRecord> symmetrized_core_edges(const NeighborGraph& graph,
                                               const std::vector<PointClass>& classes,
                                               std::size_t m_pts) {
  std::vector<EdgeRecord> edges;
  for (std::size_t p = 0; p < graph.size(); ++p) {
    if (classes[p] != PointClass::Core) continue;
    for (std::size_t t = 0; t < m_pts && t < graph.k(); ++t) {
      const auto& nb = graph.neighbors(p)[t];
      if (nb.j == static_cast<Index>(p)) continue;
      if (classes[static_cast<std::size_t>(nb.j)] != PointClass::Core) continue;
      const auto a = std::min<Index>(static_cast<Index>(p), nb.j);
      const auto b = std::max<Index>(static_cast<Index>(p), nb.j);
      edges.push_back({a, b, nb.w});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
    return std::tie(x.i, x.j) < std::tie(y.i, y.j);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const EdgeRecord& x, const EdgeRecord& y) { return x.i == y.i && x.j == y.j; }),
              edges.end());
  return edges;
}

std::vector<Index> mst_components_reference(std::size_t n, std::vector<EdgeRecord> edges) {
  std::sort(edges.begin(), edges.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
    return std::tie(x.w, x.i, x.j) < std::tie(y.w, y.i, y.j);
  });
  DisjointSets sets(n);
  std::vector<std::vector<Index>> forest(n);
  for (const auto& e : edges) {
    if (sets.unite(e.i, e.j)) {
      forest[static_cast<std::size_t>(e.i)].push_back(e.j);
      forest[static_cast<std::size_t>(e.j)].push_back(e.i);
    }
  }
  // Label each tree of the forest by walking it, not through the disjoint sets.
  std::vector<Index> comp(n, kNone);
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != kNone) continue;
    std::vector<Index> stack{static_cast<Index>(s)};
    comp[s] = static_cast<Index>(s);
    while (!stack.empty()) {
      const auto x = static_cast<std::size_t>(stack.back());
      stack.pop_back();
      for (Index y : forest[x]) {
        if (comp[static_cast<std::size_t>(y)] == kNone) {
          comp[static_cast<std::size_t>(y)] = static_cast<Index>(s);
          stack.push_back(y);
        }
      }
    }
  }
  return comp;
}

}  // namespace knndbscan::oracle
