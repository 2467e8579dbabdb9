#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "knndbscan/common.hpp"

namespace knndbscan {

// A min-edge slot stores a 64-bit handle naming an edge rather than the edge itself, so a
// single-word CAS suffices; the comparator resolves handles to their (w, j, i) keys.
inline constexpr std::uint64_t kEmptySlot = ~std::uint64_t{0};

struct NoHook {
  void operator()() const noexcept {}
};

/// Lock-free minimum update: retries the CAS until it succeeds or the resident offer is no
/// longer larger than `handle`. `less(a, b)` compares two non-empty handles. `before_cas` runs
/// ahead of every CAS attempt (tests use it to force interleavings). Returns whether the slot
/// was written.
template <class Less, class Hook = NoHook>
bool offer_min(std::atomic<std::uint64_t>& slot, std::uint64_t handle, Less&& less,
               Hook&& before_cas = {}) {
  static_assert(std::atomic<std::uint64_t>::is_always_lock_free);
  std::uint64_t cur = slot.load(std::memory_order_acquire);
  while (cur == kEmptySlot || less(handle, cur)) {
    before_cas();
    if (slot.compare_exchange_weak(cur, handle, std::memory_order_acq_rel,
                                   std::memory_order_acquire)) {
      return true;
    }
  }
  return false;
}

/// Orders handles that index into an edge table.
struct EdgeTableLess {
  std::span<const EdgeRecord> table;
  bool operator()(std::uint64_t a, std::uint64_t b) const {
    return edge_less(table[a], table[b]);
  }
};

/// Array of min-edge slots, reset to empty at the start of every round.
class MinSlots {
 public:
  void reset(std::size_t n) {
    if (slots_.size() != n) slots_ = std::vector<std::atomic<std::uint64_t>>(n);
    for (auto& s : slots_) s.store(kEmptySlot, std::memory_order_relaxed);
  }
  std::size_t size() const { return slots_.size(); }

  template <class Less>
  bool offer(std::size_t slot, std::uint64_t handle, Less&& less) {
    return offer_min(slots_[slot], handle, less);
  }
  std::uint64_t get(std::size_t slot) const {
    return slots_[slot].load(std::memory_order_acquire);
  }
  bool empty(std::size_t slot) const { return get(slot) == kEmptySlot; }

 private:
  std::vector<std::atomic<std::uint64_t>> slots_;
};

}  // namespace knndbscan
