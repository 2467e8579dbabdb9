#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "instances.hpp"
#include "knndbscan/datasets.hpp"
#include "knndbscan/knng.hpp"
#include "knndbscan/partition.hpp"

using namespace knndbscan;

namespace {
PointSet line(std::vector<double> xs) {
  const auto n = xs.size();
  return PointSet(n, 1, std::move(xs));
}

std::vector<std::size_t> group_sizes(const std::vector<int>& owner, int p) {
  std::vector<std::size_t> s(static_cast<std::size_t>(p), 0);
  for (int g : owner) ++s[static_cast<std::size_t>(g)];
  return s;
}
}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("block halves") {
    const auto pts = line({0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(make_partition(pts, 2, PartitionStrategy::block()) == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1});
  }

  TEST_CASE("one group for any strategy") {
    const auto pts = line({3, 1, 4, 1, 5, 9, 2, 6});
    for (auto s : {PartitionStrategy::block(), PartitionStrategy::random(7), PartitionStrategy::geometric()}) {
      CHECK(make_partition(pts, 1, s) == std::vector<int>(8, 0));
    }
  }

  TEST_CASE("geometric split keeps separated blobs whole") {
    const auto data = gen_gaussian_blobs(2, 50, 2, 1.0, 30.0, 12);
    const auto owner = make_partition(data.points, 2, PartitionStrategy::geometric());
    std::map<Index, std::set<int>> groups_of_blob;
    for (std::size_t i = 0; i < owner.size(); ++i) groups_of_blob[data.labels[i]].insert(owner[i]);
    REQUIRE(groups_of_blob.size() == 2);
    CHECK(groups_of_blob[0].size() == 1);
    CHECK(groups_of_blob[1].size() == 1);
    CHECK(groups_of_blob[0] != groups_of_blob[1]);
  }

  TEST_CASE("group sizes within one of N/p") {
    const auto pts = gen_sphere(103, 3, 1.0, 2).points;
    for (int p : {1, 2, 3, 7, 10, 103}) {
      for (auto s : {PartitionStrategy::block(), PartitionStrategy::random(p)}) {
        const auto sizes = group_sizes(make_partition(pts, p, s), p);
        const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
        CHECK(*lo >= 1);
        CHECK(*hi - *lo <= 1);
      }
    }
    for (int p : {2, 4, 8, 16}) {
      const auto sizes = group_sizes(make_partition(pts, p, PartitionStrategy::geometric()), p);
      CHECK(*std::min_element(sizes.begin(), sizes.end()) >= 1);
    }
  }

  TEST_CASE("random strategy is a function of its seed") {
    const auto pts = gen_sphere(64, 2, 1.0, 1).points;
    CHECK(make_partition(pts, 4, PartitionStrategy::random(3)) == make_partition(pts, 4, PartitionStrategy::random(3)));
    CHECK(make_partition(pts, 4, PartitionStrategy::random(3)) != make_partition(pts, 4, PartitionStrategy::random(4)));
    CHECK(make_partition(pts, 4, PartitionStrategy::random(3)) != make_partition(pts, 4, PartitionStrategy::block()));
  }

  TEST_CASE("invalid group counts") {
    const auto pts = line({0, 1, 2, 3, 4});
    CHECK_THROWS_AS(make_partition(pts, 6, PartitionStrategy::block()), InvalidArgument);
    CHECK_THROWS_AS(make_partition(pts, 0, PartitionStrategy::block()), InvalidArgument);
    CHECK_THROWS_AS(make_partition(pts, 3, PartitionStrategy::geometric()), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("metis"), InvalidArgument);
    CHECK(parse_strategy("random", 5).seed == 5);
    CHECK(strategy_name(parse_strategy("geometric").kind) == "geometric");
  }

  TEST_CASE("group layout") {
    const std::vector<int> owner{1, 0, 1, 1, 0};
    const auto layout = group_layout(owner, 2);
    CHECK(layout.members[0] == std::vector<Index>{1, 4});
    CHECK(layout.members[1] == std::vector<Index>{0, 2, 3});
    CHECK(layout.local_pos == std::vector<Index>{0, 0, 1, 2, 1});
  }

  TEST_CASE("one group has no cut edges") {
    const auto g = build_exact_knng(gen_sphere(40, 3, 1.0, 0).points, 6);
    const auto split = split_edges(g, std::vector<int>(40, 0), 1);
    CHECK(split.cut_edges[0].empty());
    CHECK(split.local_edges[0].size() == 40 * 5);
  }

  TEST_CASE("path split in the middle crosses twice") {
    // Points 1 and 2 are mutual nearest neighbors; 0 and 3 point inwards.
    const auto g = build_exact_knng(line({0, 2, 3, 5}), 2);
    const auto split = split_edges(g, {0, 0, 1, 1}, 2);
    CHECK(split.cut_edges[0] == std::vector<EdgeRecord>{{1, 2, 1.0}});
    CHECK(split.cut_edges[1] == std::vector<EdgeRecord>{{2, 1, 1.0}});
    CHECK(split.local_edges[0] == std::vector<EdgeRecord>{{0, 1, 2.0}});
    CHECK(split.local_edges[1] == std::vector<EdgeRecord>{{3, 2, 2.0}});
  }

  TEST_CASE("split conserves every non-self edge") {
    const auto pts = gen_gaussian_blobs(3, 34, 2, 1.0, 3.0, 8).points;
    const auto g = build_exact_knng(pts, 9);
    const auto owner = make_partition(pts, 4, PartitionStrategy::random(1));
    const auto split = split_edges(g, owner, 4);
    CHECK(split.total_edges() == g.size() * (g.k() - 1));

    std::multiset<std::tuple<Index, Index, double>> seen, expect;
    for (int grp = 0; grp < 4; ++grp) {
      for (const auto& e : split.local_edges[static_cast<std::size_t>(grp)]) {
        CHECK(owner[static_cast<std::size_t>(e.i)] == grp);
        CHECK(owner[static_cast<std::size_t>(e.j)] == grp);
        seen.insert({e.i, e.j, e.w});
      }
      for (const auto& e : split.cut_edges[static_cast<std::size_t>(grp)]) {
        CHECK(owner[static_cast<std::size_t>(e.i)] == grp);
        CHECK(owner[static_cast<std::size_t>(e.j)] != grp);
        seen.insert({e.i, e.j, e.w});
      }
      // Per-source order of the graph survives.
      const auto& le = split.local_edges[static_cast<std::size_t>(grp)];
      for (std::size_t t = 1; t < le.size(); ++t) {
        if (le[t].i == le[t - 1].i) CHECK(le[t - 1].w <= le[t].w);
      }
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t m = 1; m < g.k(); ++m) expect.insert({static_cast<Index>(i), g.at(i, m).j, g.at(i, m).w});
    }
    CHECK(seen == expect);

    const auto head = split_edges(g, owner, 4, 4);
    CHECK(head.total_edges() == g.size() * 3);
  }
}
