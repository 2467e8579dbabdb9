#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knndbscan/common.hpp"
#include "knndbscan/exchange.hpp"

namespace knndbscan {

/// Per-round record of the cut phase.
struct CutRoundTrace {
  std::size_t round = 0;
  std::size_t active_cut_edges = 0;  // at the start of the round, summed over ranks
  std::size_t messages = 0;          // rank-to-rank transfers during the round
  std::size_t items = 0;
  std::size_t n_root = 0;  // global root count after the round
  // Filled when CutMstOptions::record_rosters is set: per rank, the roots referenced by its
  // input subtrees and the subset it owns, after the round.
  std::vector<std::vector<Index>> referenced_roots;
  std::vector<std::vector<Index>> owned_roots;
};

struct CutPhaseTimings {
  double min_edges = 0.0;        // local and global minimum cut-edge search
  double pointer_jumping = 0.0;  // distributed root finding
  double update_ecut = 0.0;      // label exchange and cut-edge rewriting
};

struct CutMstOptions {
  int threads = 1;
  RankExecution execution = RankExecution::Sequential;
  bool record_rosters = false;
};

struct CutMstResult {
  std::vector<CutRoundTrace> trace;
  CutPhaseTimings timings;
  std::size_t rounds = 0;
  std::size_t cycles_broken = 0;
  std::size_t initial_subtrees = 0;
};

/// Rewrites every rank's cut edges to subtree labels: e.i from the rank's own labels, e.j
/// from the label held by j's owner (one request/reply exchange). Edges whose target is not
/// a core point come back inactive (j = kNone). Throws ProtocolError when a source is not
/// owned by its rank or a target index is out of range.
std::vector<std::vector<EdgeRecord>> relabel_cut_edges(
    const std::vector<std::vector<EdgeRecord>>& cut_edges, std::span<const Index> labels,
    std::span<const int> owner, BulkSyncExchange& exchange);

/// Global roots of the successor map held as per-rank slices. owned[r] lists the subtrees
/// rank r owns; successors[r][x] is the subtree owned[r][x] points to (or kNone). Mutual
/// pairs root at the smaller index; longer cycles root at their minimum member. Returns the
/// resolved root of every owned subtree, rank by rank. `cycles_out` receives the number of
/// cycles broken.
std::vector<std::vector<Index>> distributed_find_roots(
    const std::vector<std::vector<Index>>& owned,
    const std::vector<std::vector<Index>>& successors, BulkSyncExchange& exchange,
    std::size_t* cycles_out = nullptr);

/// Boruvka rounds over subtrees using relabeled cut edges only. subtrees[r] are rank r's
/// local roots; members[r] are its points. On exit every core point's label is the root of
/// its global component.
CutMstResult distributed_cut_mst(std::vector<std::vector<EdgeRecord>> cut_edges,
                                 const std::vector<std::vector<Index>>& subtrees,
                                 const std::vector<std::vector<Index>>& members,
                                 std::span<const int> owner, std::span<Index> labels,
                                 BulkSyncExchange& exchange, const CutMstOptions& options = {});

}  // namespace knndbscan
