#include "knndbscan/local_mst.hpp"

#include <algorithm>
#include <tuple>

#include "knndbscan/forest.hpp"

namespace knndbscan {

FindMinOutcome find_min(const GroupView& view, Index i, std::size_t m,
                        std::span<const Index> labels, MinSlots& slots,
                        std::vector<EdgeRecord>& cut_out) {
  const Neighbor& e = view.graph->at(static_cast<std::size_t>(i), m);
  if (!view.is_local(e.j)) {
    cut_out.push_back({i, e.j, e.w});
    return FindMinOutcome::CutEdge;
  }
  const Index ri = labels[static_cast<std::size_t>(i)];
  const Index rj = labels[static_cast<std::size_t>(e.j)];
  if (rj != kNoise && rj != ri) {
    slots.offer(static_cast<std::size_t>(view.local_pos[static_cast<std::size_t>(ri)]),
                edge_handle(*view.graph, i, m), GraphEdgeLess{view.graph});
    return FindMinOutcome::Offered;
  }
  return FindMinOutcome::Skip;
}

LocalMstResult parallel_local_mst(const GroupView& view, std::span<Index> labels, int threads) {
  const NeighborGraph& graph = *view.graph;
  const int nt = threads > 0 ? threads : 1;
  const std::size_t scan_end = std::min(view.m_pts, graph.k());

  std::vector<Index> core;
  for (Index i : view.members) {
    if (labels[static_cast<std::size_t>(i)] != kNoise) core.push_back(i);
  }
  LocalMstResult res;
  std::vector<Index> subtrees = core;
  std::vector<std::size_t> scan(core.size(), 0);
  const auto n_core = static_cast<std::int64_t>(core.size());

  MinSlots slots;
  std::vector<Index> dense_of(view.members.size(), kNone);
  std::vector<Index> successor;
  std::vector<Index> parent;

  while (!subtrees.empty()) {
    ++res.rounds;
    res.subtree_counts.push_back(subtrees.size());
    slots.reset(view.members.size());

    // Find minimum edges.
#pragma omp parallel num_threads(nt)
    {
      std::vector<EdgeRecord> cut_local;
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t c = 0; c < n_core; ++c) {
        const auto uc = static_cast<std::size_t>(c);
        const Index i = core[uc];
        while (scan[uc] < scan_end) {
          if (find_min(view, i, scan[uc], labels, slots, cut_local) == FindMinOutcome::Offered) {
            break;
          }
          ++scan[uc];
        }
      }
      if (!cut_local.empty()) {
#pragma omp critical(knndbscan_local_cut)
        res.cut_edges.insert(res.cut_edges.end(), cut_local.begin(), cut_local.end());
      }
    }

    // Successor of every subtree along its minimum outgoing edge.
    const std::size_t t = subtrees.size();
    for (std::size_t x = 0; x < t; ++x) {
      dense_of[static_cast<std::size_t>(view.local_pos[static_cast<std::size_t>(subtrees[x])])] =
          static_cast<Index>(x);
    }
    successor.assign(t, kNone);
    parent.assign(t, kNone);
    for (std::size_t x = 0; x < t; ++x) {
      const auto slot = static_cast<std::size_t>(view.local_pos[static_cast<std::size_t>(subtrees[x])]);
      if (slots.empty(slot)) continue;
      const std::uint64_t h = slots.get(slot);
      const Index j = graph.at(h / graph.k(), h % graph.k()).j;
      const Index rj = labels[static_cast<std::size_t>(j)];
      successor[x] = dense_of[static_cast<std::size_t>(view.local_pos[static_cast<std::size_t>(rj)])];
    }

    const RootResult roots = find_roots(successor, parent, nt);
    res.cycles_broken += roots.cycles;

    // Update labels and the subtree list.
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::int64_t c = 0; c < n_core; ++c) {
      const auto i = static_cast<std::size_t>(core[static_cast<std::size_t>(c)]);
      const Index d = dense_of[static_cast<std::size_t>(view.local_pos[static_cast<std::size_t>(labels[i])])];
      labels[i] = subtrees[static_cast<std::size_t>(parent[static_cast<std::size_t>(d)])];
    }
    std::vector<Index> next;
    next.reserve(t);
    for (std::size_t x = 0; x < t; ++x) {
      if (parent[x] == static_cast<Index>(x)) next.push_back(subtrees[x]);
    }
    const bool shrunk = next.size() < t;
    subtrees = std::move(next);
    if (!shrunk) break;
  }

  std::sort(res.cut_edges.begin(), res.cut_edges.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
    return std::tie(a.i, a.w, a.j) < std::tie(b.i, b.w, b.j);
  });
  res.subtrees = std::move(subtrees);
  return res;
}

}  // namespace knndbscan
