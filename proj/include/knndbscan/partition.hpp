#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "knndbscan/common.hpp"
#include "knndbscan/knng.hpp"
#include "knndbscan/point_set.hpp"

namespace knndbscan {

struct PartitionStrategy {
  enum class Kind { Block, Random, Geometric };
  Kind kind = Kind::Block;
  std::uint64_t seed = 0;  // used by Random only

  static PartitionStrategy block() { return {Kind::Block, 0}; }
  static PartitionStrategy random(std::uint64_t seed) { return {Kind::Random, seed}; }
  static PartitionStrategy geometric() { return {Kind::Geometric, 0}; }
};

/// Parses "block", "random" or "geometric".
PartitionStrategy parse_strategy(std::string_view name, std::uint64_t seed = 0);
std::string_view strategy_name(PartitionStrategy::Kind kind);

/// Group id in [0, p) for every point.
///  - block: contiguous runs, sizes within one of N/p.
///  - random: a seeded permutation cut into block-sized runs.
///  - geometric: recursive median bisection along the axis of largest variance (p a power
///    of two).
std::vector<int> make_partition(const PointSet& points, int p, PartitionStrategy strategy);

/// Point lists per group plus each point's position inside its group's list.
struct GroupLayout {
  std::vector<std::vector<Index>> members;  // ascending point indices per group
  std::vector<Index> local_pos;             // position of point i inside members[owner[i]]
};
GroupLayout group_layout(const std::vector<int>& owner, int p);

struct PartitionedGraph {
  int p = 1;
  std::vector<int> owner;
  std::vector<std::vector<EdgeRecord>> local_edges;  // owner(i) = owner(j) = group
  std::vector<std::vector<EdgeRecord>> cut_edges;    // owner(i) = group != owner(j)

  std::size_t total_edges() const;
};

/// Splits every non-self edge among the first `max_position` entries of each row
/// (default: all entries) into local and cut edges of the source's group.
PartitionedGraph split_edges(const NeighborGraph& graph, const std::vector<int>& owner, int p,
                             std::size_t max_position = 0);

}  // namespace knndbscan
