#include "knndbscan/forest.hpp"

#include <algorithm>

namespace knndbscan {

void break_symmetry(std::span<const Index> successor, std::span<Index> parent, int threads) {
  const auto n = static_cast<std::int64_t>(successor.size());
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1)
  for (std::int64_t u = 0; u < n; ++u) {
    const Index v = successor[static_cast<std::size_t>(u)];
    const bool root = v == kNone || (successor[static_cast<std::size_t>(v)] == u && u < v);
    parent[static_cast<std::size_t>(u)] = root ? u : v;
  }
}

JumpResult pointer_jump(std::span<Index> parent, std::vector<std::uint8_t>& flags,
                        int threads) {
  const std::size_t n = parent.size();
  const auto nn = static_cast<std::int64_t>(n);
  const int nt = threads > 0 ? threads : 1;

  std::vector<std::uint8_t> is_root(n);
  for (std::size_t u = 0; u < n; ++u) is_root[u] = parent[u] == static_cast<Index>(u);
  flags.assign(n, 1);
  std::vector<Index> next(parent.begin(), parent.end());

  JumpResult res;
  std::size_t flagged = n;
  while (true) {
    std::size_t cleared = 0;
    std::size_t moved = 0;
#pragma omp parallel for schedule(static) num_threads(nt) reduction(+ : cleared, moved)
    for (std::int64_t s = 0; s < nn; ++s) {
      const auto u = static_cast<std::size_t>(s);
      if (!flags[u]) continue;
      const Index pu = parent[u];
      if (is_root[static_cast<std::size_t>(pu)]) {
        flags[u] = 0;
        ++cleared;
      } else {
        const Index ppu = parent[static_cast<std::size_t>(pu)];
        next[u] = ppu;
        if (ppu != pu) ++moved;
      }
    }
    std::copy(next.begin(), next.end(), parent.begin());
    ++res.sweeps;
    if (moved > 0) ++res.jump_sweeps;
    flagged -= cleared;
    if (cleared == 0) break;
  }
  res.residual = flagged;
  return res;
}

std::size_t break_cycles(std::span<Index> parent, std::span<const Index> successor,
                         std::vector<std::uint8_t>& flags) {
  const std::size_t n = parent.size();
  enum : std::uint8_t { Unseen, OnPath, Done };
  std::vector<std::uint8_t> state(n, Unseen);
  std::vector<Index> path;
  std::size_t cycles = 0;

  for (std::size_t start = 0; start < n; ++start) {
    if (!flags[start] || state[start] != Unseen) continue;
    path.clear();
    auto x = static_cast<Index>(start);
    while (flags[static_cast<std::size_t>(x)] && state[static_cast<std::size_t>(x)] == Unseen) {
      state[static_cast<std::size_t>(x)] = OnPath;
      path.push_back(x);
      x = successor[static_cast<std::size_t>(x)];
    }
    Index root;
    if (flags[static_cast<std::size_t>(x)] && state[static_cast<std::size_t>(x)] == OnPath) {
      auto first = std::find(path.begin(), path.end(), x);
      root = *std::min_element(first, path.end());
      ++cycles;
    } else {
      // Walk ran into a subtree that already knows its root.
      root = parent[static_cast<std::size_t>(x)];
    }
    for (Index y : path) {
      parent[static_cast<std::size_t>(y)] = root;
      state[static_cast<std::size_t>(y)] = Done;
      flags[static_cast<std::size_t>(y)] = 0;
    }
  }
  return cycles;
}

RootResult find_roots(std::span<const Index> successor, std::span<Index> parent, int threads) {
  break_symmetry(successor, parent, threads);
  std::vector<std::uint8_t> flags;
  RootResult res;
  res.jump = pointer_jump(parent, flags, threads);
  if (res.jump.residual > 0) {
    res.cycles = break_cycles(parent, successor, flags);
    // Cycle members now point straight at their roots; nothing is left to jump.
    std::vector<std::uint8_t> check;
    if (pointer_jump(parent, check, threads).residual != 0) {
      throw InternalError("cycle breaking left unresolved subtrees");
    }
  }
  return res;
}

}  // namespace knndbscan
