#include "knndbscan/cut_mst.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "knndbscan/forest.hpp"
#include "knndbscan/min_slot.hpp"
#include "knndbscan/timer.hpp"

namespace knndbscan {

namespace {

using Pair = std::pair<Index, Index>;

// Read-only key -> value table assembled from an all-gather.
class RootTable {
 public:
  explicit RootTable(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t t = 1; t < pairs_.size(); ++t) {
      if (pairs_[t].first == pairs_[t - 1].first) {
        throw ProtocolError("subtree " + std::to_string(pairs_[t].first) +
                            " is owned by more than one rank");
      }
    }
  }
  Index at(Index key) const {
    const auto pos = find(key);
    if (pos == pairs_.size()) {
      throw ProtocolError("no rank holds subtree " + std::to_string(key));
    }
    return pairs_[pos].second;
  }
  std::size_t find(Index key) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{key, std::numeric_limits<Index>::min()});
    if (it == pairs_.end() || it->first != key) return pairs_.size();
    return static_cast<std::size_t>(it - pairs_.begin());
  }
  const std::vector<Pair>& pairs() const { return pairs_; }

 private:
  std::vector<Pair> pairs_;
};

std::size_t position_of(const std::vector<Index>& sorted, Index key, const char* what) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
  if (it == sorted.end() || *it != key) {
    throw ProtocolError(std::string(what) + ": unknown subtree " + std::to_string(key));
  }
  return static_cast<std::size_t>(it - sorted.begin());
}

std::vector<std::vector<Pair>> zip_slices(const std::vector<std::vector<Index>>& keys,
                                          const std::vector<std::vector<Index>>& values) {
  std::vector<std::vector<Pair>> out(keys.size());
  for (std::size_t r = 0; r < keys.size(); ++r) {
    out[r].reserve(keys[r].size());
    for (std::size_t x = 0; x < keys[r].size(); ++x) out[r].emplace_back(keys[r][x], values[r][x]);
  }
  return out;
}

struct RankState {
  std::vector<Index> inputs;      // local subtrees handed over by the local phase, ascending
  std::vector<Index> input_root;  // current root of inputs[x]
  std::vector<EdgeRecord> edges;  // relabeled cut edges; inactive when j == kNone
  std::vector<Index> referenced;  // distinct current roots of inputs
  std::vector<Index> owned;       // referenced roots owned by this rank
};

}  // namespace

std::vector<std::vector<EdgeRecord>> relabel_cut_edges(
    const std::vector<std::vector<EdgeRecord>>& cut_edges, std::span<const Index> labels,
    std::span<const int> owner, BulkSyncExchange& exchange) {
  const auto p = static_cast<std::size_t>(exchange.ranks());
  if (cut_edges.size() != p) throw ProtocolError("relabel: one cut list per rank expected");
  const auto n = static_cast<Index>(owner.size());

  // Requests: the distinct remote targets of each rank, bucketed by owner.
  std::vector<std::vector<std::vector<Index>>> requests(p, std::vector<std::vector<Index>>(p));
  for (std::size_t r = 0; r < p; ++r) {
    for (const auto& e : cut_edges[r]) {
      if (e.i < 0 || e.i >= n || owner[static_cast<std::size_t>(e.i)] != static_cast<int>(r)) {
        throw ProtocolError("cut edge source " + std::to_string(e.i) + " is not owned by rank " +
                            std::to_string(r));
      }
      if (e.j < 0 || e.j >= n) {
        throw ProtocolError("cut edge target " + std::to_string(e.j) + " is dangling");
      }
      requests[r][static_cast<std::size_t>(owner[static_cast<std::size_t>(e.j)])].push_back(e.j);
    }
    for (auto& bucket : requests[r]) {
      std::sort(bucket.begin(), bucket.end());
      bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
    }
  }
  const auto asked = exchange.all_to_all(requests);

  // Replies: owners answer with their labels, in request order.
  std::vector<std::vector<std::vector<Index>>> replies(p, std::vector<std::vector<Index>>(p));
  for (std::size_t dst = 0; dst < p; ++dst) {
    for (std::size_t src = 0; src < p; ++src) {
      for (Index j : asked[dst][src]) {
        if (owner[static_cast<std::size_t>(j)] != static_cast<int>(dst)) {
          throw ProtocolError("label request for " + std::to_string(j) + " sent to wrong rank");
        }
        replies[dst][src].push_back(labels[static_cast<std::size_t>(j)]);
      }
    }
  }
  const auto answered = exchange.all_to_all(std::move(replies));

  std::vector<std::vector<EdgeRecord>> out(p);
  for (std::size_t r = 0; r < p; ++r) {
    out[r].reserve(cut_edges[r].size());
    for (const auto& e : cut_edges[r]) {
      const auto dst = static_cast<std::size_t>(owner[static_cast<std::size_t>(e.j)]);
      const auto& req = requests[r][dst];
      const auto& ans = answered[r][dst];
      if (ans.size() != req.size()) throw ProtocolError("label reply has wrong length");
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(req.begin(), req.end(), e.j) - req.begin());
      const Index src_label = labels[static_cast<std::size_t>(e.i)];
      if (src_label == kNoise) throw ProtocolError("cut edge leaves a non-core point");
      out[r].push_back({src_label, ans[pos] == kNoise ? kNone : ans[pos], e.w});
    }
  }
  return out;
}

std::vector<std::vector<Index>> distributed_find_roots(
    const std::vector<std::vector<Index>>& owned,
    const std::vector<std::vector<Index>>& successors, BulkSyncExchange& exchange,
    std::size_t* cycles_out) {
  const auto p = static_cast<std::size_t>(exchange.ranks());
  if (owned.size() != p || successors.size() != p) {
    throw ProtocolError("find_roots: one slice per rank expected");
  }
  std::size_t total = 0;
  for (std::size_t r = 0; r < p; ++r) {
    if (owned[r].size() != successors[r].size()) throw ProtocolError("find_roots: ragged slice");
    total += owned[r].size();
  }
  if (cycles_out) *cycles_out = 0;

  const RootTable succ(exchange.all_gather(zip_slices(owned, successors)));

  // Break symmetry.
  std::vector<std::vector<Index>> parent(p);
  for (std::size_t r = 0; r < p; ++r) {
    parent[r].resize(owned[r].size());
    for (std::size_t x = 0; x < owned[r].size(); ++x) {
      const Index u = owned[r][x];
      const Index v = successors[r][x];
      const bool root = v == kNone || (succ.at(v) == u && u < v);
      parent[r][x] = root ? u : v;
    }
  }
  RootTable table(exchange.all_gather(zip_slices(owned, parent)));
  const RootTable seeds = table;
  auto is_root = [&](Index key) { return seeds.at(key) == key; };

  // Pointer jumping; every sweep reads the table gathered after the previous one.
  std::vector<std::vector<std::uint8_t>> flags(p);
  for (std::size_t r = 0; r < p; ++r) flags[r].assign(owned[r].size(), 1);
  std::size_t flagged = total;
  std::size_t sweeps = 0;
  while (true) {
    std::vector<std::size_t> cleared(p, 0);
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t x = 0; x < owned[r].size(); ++x) {
        if (!flags[r][x]) continue;
        const Index pu = parent[r][x];
        if (is_root(pu)) {
          flags[r][x] = 0;
          ++cleared[r];
        } else {
          parent[r][x] = table.at(pu);
        }
      }
    }
    table = RootTable(exchange.all_gather(zip_slices(owned, parent)));
    const std::size_t done = exchange.all_reduce_sum(cleared);
    flagged -= done;
    if (done == 0) break;
    if (++sweeps > total + 2) throw InternalError("distributed pointer jumping did not converge");
  }

  if (flagged > 0) {
    // Cycle breaking on a coordinator: gather the flagged subtrees, resolve, broadcast.
    std::vector<std::vector<Index>> flagged_keys(p);
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t x = 0; x < owned[r].size(); ++x) {
        if (flags[r][x]) flagged_keys[r].push_back(owned[r][x]);
      }
    }
    const auto gathered = exchange.all_gather(flagged_keys);

    const auto& all = succ.pairs();  // sorted by subtree id: dense ids are positions
    std::vector<Index> dense_succ(all.size(), kNone);
    std::vector<Index> dense_parent(all.size());
    std::vector<std::uint8_t> dense_flags(all.size(), 0);
    for (std::size_t x = 0; x < all.size(); ++x) {
      if (all[x].second != kNone) dense_succ[x] = static_cast<Index>(succ.find(all[x].second));
      dense_parent[x] = static_cast<Index>(succ.find(table.at(all[x].first)));
    }
    for (Index key : gathered) dense_flags[succ.find(key)] = 1;
    const std::size_t cycles = break_cycles(dense_parent, dense_succ, dense_flags);
    if (cycles_out) *cycles_out = cycles;

    std::vector<std::vector<Pair>> decisions(p);
    for (Index key : gathered) {
      decisions[0].emplace_back(key, all[static_cast<std::size_t>(dense_parent[succ.find(key)])].first);
    }
    const RootTable resolved(exchange.all_gather(decisions));
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t x = 0; x < owned[r].size(); ++x) {
        if (flags[r][x]) parent[r][x] = resolved.at(owned[r][x]);
      }
    }
  }
  return parent;
}

CutMstResult distributed_cut_mst(std::vector<std::vector<EdgeRecord>> cut_edges,
                                 const std::vector<std::vector<Index>>& subtrees,
                                 const std::vector<std::vector<Index>>& members,
                                 std::span<const int> owner, std::span<Index> labels,
                                 BulkSyncExchange& exchange, const CutMstOptions& options) {
  const int p = exchange.ranks();
  const auto up = static_cast<std::size_t>(p);
  if (cut_edges.size() != up || subtrees.size() != up || members.size() != up) {
    throw ProtocolError("cut MST: one slice per rank expected");
  }
  auto owner_of = [&](Index u) -> int {
    if (u < 0 || static_cast<std::size_t>(u) >= owner.size()) {
      throw ProtocolError("subtree id " + std::to_string(u) + " out of range");
    }
    return owner[static_cast<std::size_t>(u)];
  };

  CutMstResult res;
  std::vector<RankState> ranks(up);
  for (std::size_t r = 0; r < up; ++r) {
    auto& st = ranks[r];
    st.inputs = subtrees[r];
    std::sort(st.inputs.begin(), st.inputs.end());
    for (Index u : st.inputs) {
      if (owner_of(u) != static_cast<int>(r)) {
        throw ProtocolError("input subtree " + std::to_string(u) + " not owned by rank " +
                            std::to_string(r));
      }
    }
    st.input_root = st.inputs;
    st.referenced = st.inputs;
    st.owned = st.inputs;
    st.edges = std::move(cut_edges[r]);
  }

  std::vector<std::size_t> owned_counts(up);
  for (std::size_t r = 0; r < up; ++r) owned_counts[r] = ranks[r].owned.size();
  std::size_t n_root = exchange.all_reduce_sum(owned_counts);
  res.initial_subtrees = n_root;

  Stopwatch clock;
  while (true) {
    ++res.rounds;
    CutRoundTrace tr;
    tr.round = res.rounds;
    const ExchangeStats before = exchange.stats();
    for (const auto& st : ranks) {
      tr.active_cut_edges += static_cast<std::size_t>(
          std::count_if(st.edges.begin(), st.edges.end(), [](const EdgeRecord& e) { return e.j != kNone; }));
    }
    clock.lap();

    // Local minimum cut edge per referenced root, routed to the root's owner.
    std::vector<std::vector<std::vector<EdgeRecord>>> outgoing(up, std::vector<std::vector<EdgeRecord>>(up));
    for_each_rank(p, options.execution, options.threads, [&](int r, int inner) {
      auto& st = ranks[static_cast<std::size_t>(r)];
      MinSlots slots;
      slots.reset(st.referenced.size());
      const EdgeTableLess less{st.edges};
      const auto n_edges = static_cast<std::int64_t>(st.edges.size());
      std::vector<std::size_t> slot_of(st.edges.size());
      for (std::size_t t = 0; t < st.edges.size(); ++t) {
        if (st.edges[t].j != kNone) slot_of[t] = position_of(st.referenced, st.edges[t].i, "local min");
      }
#pragma omp parallel for schedule(static) num_threads(inner)
      for (std::int64_t t = 0; t < n_edges; ++t) {
        const auto ut = static_cast<std::size_t>(t);
        if (st.edges[ut].j != kNone) slots.offer(slot_of[ut], static_cast<std::uint64_t>(ut), less);
      }
      auto& row = outgoing[static_cast<std::size_t>(r)];
      for (std::size_t x = 0; x < st.referenced.size(); ++x) {
        if (slots.empty(x)) continue;
        const EdgeRecord& e = st.edges[slots.get(x)];
        row[static_cast<std::size_t>(owner_of(e.i))].push_back(e);
      }
    });
    const auto received = exchange.all_to_all(std::move(outgoing));

    // Global minimum per owned root.
    std::vector<std::vector<Index>> successors(up);
    for_each_rank(p, options.execution, options.threads, [&](int r, int) {
      const auto ur = static_cast<std::size_t>(r);
      auto& st = ranks[ur];
      std::vector<EdgeRecord> flat;
      for (const auto& from : received[ur]) flat.insert(flat.end(), from.begin(), from.end());
      MinSlots slots;
      slots.reset(st.owned.size());
      const EdgeTableLess less{flat};
      for (std::size_t t = 0; t < flat.size(); ++t) {
        slots.offer(position_of(st.owned, flat[t].i, "global min"), t, less);
      }
      successors[ur].assign(st.owned.size(), kNone);
      for (std::size_t x = 0; x < st.owned.size(); ++x) {
        if (!slots.empty(x)) successors[ur][x] = flat[slots.get(x)].j;
      }
    });
    res.timings.min_edges += clock.lap();

    std::vector<std::vector<Index>> owned_now(up);
    for (std::size_t r = 0; r < up; ++r) owned_now[r] = ranks[r].owned;
    std::size_t cycles = 0;
    const auto roots = distributed_find_roots(owned_now, successors, exchange, &cycles);
    res.cycles_broken += cycles;
    res.timings.pointer_jumping += clock.lap();

    // Broadcast new roots; rewrite subtree rosters and cut edges.
    const RootTable all_roots(exchange.all_gather(zip_slices(owned_now, roots)));
    for_each_rank(p, options.execution, options.threads, [&](int r, int) {
      auto& st = ranks[static_cast<std::size_t>(r)];
      for (auto& root : st.input_root) root = all_roots.at(root);
      st.referenced = st.input_root;
      std::sort(st.referenced.begin(), st.referenced.end());
      st.referenced.erase(std::unique(st.referenced.begin(), st.referenced.end()), st.referenced.end());
      st.owned.clear();
      for (Index u : st.referenced) {
        if (owner_of(u) == r) st.owned.push_back(u);
      }
      for (auto& e : st.edges) {
        if (e.j == kNone) continue;
        e.i = all_roots.at(e.i);
        e.j = all_roots.at(e.j);
        if (e.i == e.j) e.j = kNone;
      }
      owned_counts[static_cast<std::size_t>(r)] = st.owned.size();
    });
    const std::size_t n_root_old = n_root;
    n_root = exchange.all_reduce_sum(owned_counts);
    res.timings.update_ecut += clock.lap();

    tr.n_root = n_root;
    tr.messages = exchange.stats().messages - before.messages;
    tr.items = exchange.stats().items - before.items;
    if (options.record_rosters) {
      for (const auto& st : ranks) {
        tr.referenced_roots.push_back(st.referenced);
        tr.owned_roots.push_back(st.owned);
      }
    }
    res.trace.push_back(std::move(tr));
    if (!(n_root < n_root_old)) break;
  }

  // Core points adopt the root of their input subtree.
  for_each_rank(p, options.execution, options.threads, [&](int r, int) {
    const auto& st = ranks[static_cast<std::size_t>(r)];
    for (Index i : members[static_cast<std::size_t>(r)]) {
      auto& label = labels[static_cast<std::size_t>(i)];
      if (label == kNoise) continue;
      label = st.input_root[position_of(st.inputs, label, "final labels")];
    }
  });
  return res;
}

}  // namespace knndbscan
