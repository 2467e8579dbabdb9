#include <condition_variable>
#include <mutex>
#include <thread>

#include "doctest.h"
#include "min_slot_stress.hpp"
#include "knndbscan/min_slot.hpp"

using namespace knndbscan;

namespace {

// Runs writers in lockstep: a writer may only proceed past a gate (its start, and every
// point just ahead of a CAS) when the driver hands it the turn. Each step therefore holds
// exactly one load or one CAS per writer, and `choose` decides the interleaving.
class Lockstep {
 public:
  explicit Lockstep(int writers) : parked_(static_cast<std::size_t>(writers), false),
                                   finished_(static_cast<std::size_t>(writers), false) {}

  void gate(int id) {
    std::unique_lock lk(mu_);
    parked_[static_cast<std::size_t>(id)] = true;
    cv_.notify_all();
    cv_.wait(lk, [&] { return turn_ == id; });
    turn_ = -1;
    parked_[static_cast<std::size_t>(id)] = false;
  }
  void finish(int id) {
    std::lock_guard lk(mu_);
    finished_[static_cast<std::size_t>(id)] = true;
    cv_.notify_all();
  }
  /// Returns the runnable writers once everyone is parked or done.
  std::vector<int> runnable() {
    std::unique_lock lk(mu_);
    cv_.wait(lk, [&] {
      if (turn_ != -1) return false;
      for (std::size_t w = 0; w < parked_.size(); ++w) {
        if (!parked_[w] && !finished_[w]) return false;
      }
      return true;
    });
    std::vector<int> r;
    for (std::size_t w = 0; w < parked_.size(); ++w) {
      if (parked_[w]) r.push_back(static_cast<int>(w));
    }
    return r;
  }
  void release(int id) {
    std::lock_guard lk(mu_);
    turn_ = id;
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int turn_ = -1;
  std::vector<bool> parked_, finished_;
};

struct Schedule {
  std::vector<std::size_t> choices;
  std::vector<std::size_t> options;
};

// Executes one interleaving: follows `prefix`, then always picks the first runnable writer.
Schedule run_interleaving(const std::vector<EdgeRecord>& table, std::uint64_t initial,
                          const std::vector<std::size_t>& prefix, std::uint64_t& result) {
  const int n = static_cast<int>(table.size());
  std::atomic<std::uint64_t> slot{initial};
  const EdgeTableLess less{table};
  Lockstep ls(n);
  std::vector<std::thread> pool;
  for (int w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      ls.gate(w);
      offer_min(slot, static_cast<std::uint64_t>(w), less, [&] { ls.gate(w); });
      ls.finish(w);
    });
  }
  Schedule s;
  while (true) {
    const auto r = ls.runnable();
    if (r.empty()) break;
    const std::size_t pick = s.choices.size() < prefix.size() ? prefix[s.choices.size()] : 0;
    s.choices.push_back(pick);
    s.options.push_back(r.size());
    ls.release(r[pick]);
  }
  for (auto& th : pool) th.join();
  result = slot.load();
  return s;
}

// Depth-first enumeration of every interleaving; returns the final slot of each.
std::vector<std::uint64_t> all_interleavings(const std::vector<EdgeRecord>& table,
                                             std::uint64_t initial) {
  std::vector<std::uint64_t> results;
  std::vector<std::size_t> prefix;
  while (true) {
    std::uint64_t r = 0;
    const auto s = run_interleaving(table, initial, prefix, r);
    results.push_back(r);
    std::size_t pos = s.choices.size();
    while (pos > 0 && s.choices[pos - 1] + 1 >= s.options[pos - 1]) --pos;
    if (pos == 0) break;
    prefix.assign(s.choices.begin(), s.choices.begin() + static_cast<std::ptrdiff_t>(pos));
    ++prefix.back();
  }
  return results;
}

}  // namespace

TEST_SUITE("min_slot") {
  TEST_CASE("single offer against an empty slot wins") {
    const std::vector<EdgeRecord> table{{0, 4, 0.7}};
    std::atomic<std::uint64_t> slot{kEmptySlot};
    CHECK(offer_min(slot, 0, EdgeTableLess{table}));
    CHECK(slot.load() == 0);
    CHECK_FALSE(offer_min(slot, 0, EdgeTableLess{table}));
  }

  TEST_CASE("equal weights fall back to the target index") {
    const std::vector<EdgeRecord> table{{1, 5, 0.2}, {1, 3, 0.2}};
    for (std::uint64_t first : {0u, 1u}) {
      std::atomic<std::uint64_t> slot{kEmptySlot};
      offer_min(slot, first, EdgeTableLess{table});
      offer_min(slot, 1 - first, EdgeTableLess{table});
      CHECK(table[slot.load()].j == 3);
    }
    const std::vector<EdgeRecord> same_target{{9, 3, 0.2}, {2, 3, 0.2}};
    std::atomic<std::uint64_t> slot{kEmptySlot};
    offer_min(slot, 0, EdgeTableLess{same_target});
    offer_min(slot, 1, EdgeTableLess{same_target});
    CHECK(slot.load() == 1);
  }

  TEST_CASE("every interleaving of two writers keeps the smaller weight") {
    const std::vector<EdgeRecord> table{{0, 1, 0.5}, {0, 2, 0.3}};
    const auto results = all_interleavings(table, kEmptySlot);
    // Load/CAS orderings with retries after a lost race.
    CHECK(results.size() >= 6);
    for (auto r : results) CHECK(r == 1);
  }

  TEST_CASE("every interleaving of three writers keeps the minimum") {
    const std::vector<EdgeRecord> table{{0, 1, 0.5}, {0, 2, 0.3}, {0, 3, 0.4}};
    for (auto r : all_interleavings(table, kEmptySlot)) CHECK(r == 1);
  }

  TEST_CASE("a resident smaller offer is never displaced") {
    const std::vector<EdgeRecord> table{{0, 1, 0.5}, {0, 2, 0.3}, {0, 7, 0.1}};
    for (auto r : all_interleavings(table, 2)) CHECK(r == 2);
  }

  TEST_CASE("eight writers reach the sequential minimum") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      CAPTURE(trial);
      CHECK(testing::min_slot_trial(trial));
    }
  }

  TEST_CASE("slot array reset") {
    const std::vector<EdgeRecord> table{{0, 1, 0.5}, {0, 2, 0.3}};
    MinSlots slots;
    slots.reset(3);
    CHECK(slots.size() == 3);
    CHECK(slots.empty(1));
    slots.offer(1, 0, EdgeTableLess{table});
    slots.offer(1, 1, EdgeTableLess{table});
    CHECK(slots.get(1) == 1);
    slots.reset(3);
    CHECK(slots.empty(1));
  }
}
