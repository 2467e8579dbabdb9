#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace knndbscan {

using Index = std::int64_t;

/// Label carried by points that belong to no cluster.
inline constexpr Index kNoise = -1;
/// Missing edge target (empty min-edge slot, inactive cut edge).
inline constexpr Index kNone = -1;
/// Orders above every finite weight.
inline constexpr double kSentinelWeight = std::numeric_limits<double>::infinity();

// Error categories. The CLI maps each onto a distinct exit code.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidData : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Directed weighted edge {i, j, w}. During the cut phase i and j hold subtree labels.
struct EdgeRecord {
  Index i = kNone;
  Index j = kNone;
  double w = kSentinelWeight;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Strict total order used by every min-edge fold: (w, j, i) ascending.
inline bool edge_less(const EdgeRecord& a, const EdgeRecord& b) {
  return std::tie(a.w, a.j, a.i) < std::tie(b.w, b.j, b.i);
}

}  // namespace knndbscan
