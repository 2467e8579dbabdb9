#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "knndbscan/common.hpp"

namespace knndbscan {

// Root finding over one Boruvka round. Subtrees are numbered densely 0..n-1; successor[u]
// is the subtree that u's minimum outgoing edge reaches, or kNone.

/// parent[u] = successor[u], except that u becomes its own root when it has no successor or
/// when u and successor[u] point at each other and u is the smaller index.
void break_symmetry(std::span<const Index> successor, std::span<Index> parent, int threads = 1);

struct JumpResult {
  std::size_t residual = 0;     // subtrees that never reached a root (cycle members)
  std::size_t jump_sweeps = 0;  // sweeps that changed at least one pointer
  std::size_t sweeps = 0;       // total sweeps, including the final stable one
};

/// Synchronous pointer jumping parent[u] <- parent[parent[u]]. A subtree's flag clears once
/// its pointer reaches a root (a subtree that was self-rooted on entry); sweeps continue
/// while the flag count keeps changing. Subtrees on or behind a cycle stay flagged.
/// `flags` is resized and filled with the final flags.
JumpResult pointer_jump(std::span<Index> parent, std::vector<std::uint8_t>& flags,
                        int threads = 1);

/// Resolves every flagged subtree: walks successors until a node repeats, roots the cycle
/// at its minimum index and points every node on the walk at that root. Sequential.
/// Returns the number of cycles broken.
std::size_t break_cycles(std::span<Index> parent, std::span<const Index> successor,
                         std::vector<std::uint8_t>& flags);

struct RootResult {
  JumpResult jump;
  std::size_t cycles = 0;
};

/// break_symmetry, pointer_jump and (if needed) break_cycles; afterwards every parent[u] is
/// a self-rooted subtree.
RootResult find_roots(std::span<const Index> successor, std::span<Index> parent,
                      int threads = 1);

}  // namespace knndbscan
