#pragma once

#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "knndbscan/common.hpp"

namespace knndbscan {

struct ExchangeStats {
  std::size_t phases = 0;
  std::size_t messages = 0;  // non-empty rank-to-rank transfers, self-sends excluded
  std::size_t items = 0;     // records carried by those transfers
};

/// In-process bulk-synchronous transport between logical ranks. Every collective consumes
/// the complete output of a compute phase, so no rank observes a message before all sends
/// of that phase exist.
class BulkSyncExchange {
 public:
  explicit BulkSyncExchange(int ranks) : ranks_(ranks) {
    if (ranks < 1) throw InvalidArgument("exchange needs at least one rank");
  }

  int ranks() const { return ranks_; }
  const ExchangeStats& stats() const { return stats_; }

  /// Delivers outgoing[src][dst] as incoming[dst][src].
  template <class T>
  std::vector<std::vector<std::vector<T>>> all_to_all(
      std::vector<std::vector<std::vector<T>>> outgoing) {
    check_shape(outgoing.size());
    const auto p = static_cast<std::size_t>(ranks_);
    std::vector<std::vector<std::vector<T>>> incoming(p, std::vector<std::vector<T>>(p));
    for (std::size_t src = 0; src < p; ++src) {
      auto& row = outgoing[src];
      if (row.size() != p) {
        throw ProtocolError("all_to_all: rank " + std::to_string(src) + " addressed " +
                            std::to_string(row.size()) + " destinations");
      }
      for (std::size_t dst = 0; dst < p; ++dst) {
        auto& buf = row[dst];
        if (!buf.empty() && src != dst) {
          ++stats_.messages;
          stats_.items += buf.size();
        }
        incoming[dst][src] = std::move(buf);
      }
    }
    ++stats_.phases;
    return incoming;
  }

  /// Concatenation of every rank's contribution in rank order, delivered to all ranks.
  template <class T>
  std::vector<T> all_gather(const std::vector<std::vector<T>>& contributions) {
    check_shape(contributions.size());
    std::vector<T> out;
    for (const auto& c : contributions) {
      if (!c.empty()) {
        stats_.messages += static_cast<std::size_t>(ranks_ - 1);
        stats_.items += c.size() * static_cast<std::size_t>(ranks_ - 1);
      }
      out.insert(out.end(), c.begin(), c.end());
    }
    ++stats_.phases;
    return out;
  }

  template <class T>
  T all_reduce_sum(const std::vector<T>& contributions) {
    check_shape(contributions.size());
    stats_.messages += static_cast<std::size_t>(ranks_) * static_cast<std::size_t>(ranks_ - 1);
    stats_.items += static_cast<std::size_t>(ranks_) * static_cast<std::size_t>(ranks_ - 1);
    ++stats_.phases;
    return std::accumulate(contributions.begin(), contributions.end(), T{});
  }

 private:
  void check_shape(std::size_t n) const {
    if (n != static_cast<std::size_t>(ranks_)) {
      throw ProtocolError("collective called with " + std::to_string(n) + " contributions for " +
                          std::to_string(ranks_) + " ranks");
    }
  }

  int ranks_;
  ExchangeStats stats_;
};

enum class RankExecution { Sequential, Concurrent };

/// Runs fn(rank, inner_threads) for every rank. Concurrent execution spreads ranks over
/// `threads` workers and gives each rank one inner thread; sequential execution runs ranks
/// in order and hands each the full thread budget.
void for_each_rank(int ranks, RankExecution mode, int threads,
                   const std::function<void(int, int)>& fn);

}  // namespace knndbscan
