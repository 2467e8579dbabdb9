#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "knndbscan/common.hpp"
#include "knndbscan/knng.hpp"
#include "knndbscan/min_slot.hpp"

namespace knndbscan {

/// One partition group as seen by the local Boruvka phase.
struct GroupView {
  int group = 0;
  const NeighborGraph* graph = nullptr;
  std::span<const int> owner;        // group id of every point
  std::span<const Index> members;    // ascending point ids of this group
  std::span<const Index> local_pos;  // position of every point inside its group's member list
  std::size_t m_pts = 2;             // only the first m_pts entries of a row carry MST edges

  bool is_local(Index j) const { return owner[static_cast<std::size_t>(j)] == group; }
};

/// Handle of the edge at 0-indexed position m of row i.
inline std::uint64_t edge_handle(const NeighborGraph& g, Index i, std::size_t m) {
  return static_cast<std::uint64_t>(i) * g.k() + m;
}

/// (w, j, i) order over edge handles of a neighbor graph.
struct GraphEdgeLess {
  const NeighborGraph* graph;
  bool operator()(std::uint64_t a, std::uint64_t b) const {
    const std::size_t k = graph->k();
    const auto ia = static_cast<Index>(a / k), ib = static_cast<Index>(b / k);
    const Neighbor& ea = graph->at(static_cast<std::size_t>(ia), a % k);
    const Neighbor& eb = graph->at(static_cast<std::size_t>(ib), b % k);
    return edge_less({ia, ea.j, ea.w}, {ib, eb.j, eb.w});
  }
};

enum class FindMinOutcome {
  CutEdge,  // remote target: edge recorded in the cut list, scan advances
  Offered,  // local core target in another subtree: offered to the source subtree's slot
  Skip,     // local non-core target or same subtree: scan advances
};

/// Examines the edge at position m of core point i. Slots are indexed by the local position
/// of a subtree's root.
FindMinOutcome find_min(const GroupView& view, Index i, std::size_t m,
                        std::span<const Index> labels, MinSlots& slots,
                        std::vector<EdgeRecord>& cut_out);

struct LocalMstResult {
  std::vector<EdgeRecord> cut_edges;  // sorted by (i, w, j); endpoints are point ids
  std::vector<Index> subtrees;        // ascending root ids of local components
  std::size_t rounds = 0;
  std::size_t cycles_broken = 0;
  std::vector<std::size_t> subtree_counts;  // |T| at the start of each round
};

/// Boruvka forest over the group's core-core local edges. On entry labels[i] = i for core
/// members and kNoise otherwise; on exit each core member carries the root of its local
/// component. Writes only labels of the group's members.
LocalMstResult parallel_local_mst(const GroupView& view, std::span<Index> labels,
                                  int threads = 1);

}  // namespace knndbscan
