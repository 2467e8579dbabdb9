#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "instances.hpp"
#include "knndbscan/datasets.hpp"
#include "knndbscan/knng.hpp"

using namespace knndbscan;

namespace {

PointSet unit_square() { return PointSet(4, 2, {0, 0, 1, 0, 0, 1, 1, 1}); }

// Full sort of every pairwise distance by (distance, index).
std::vector<std::vector<Neighbor>> full_sort_oracle(const PointSet& pts, std::size_t k) {
  std::vector<std::vector<Neighbor>> rows(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Neighbor> all;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double s = 0;
      for (std::size_t c = 0; c < pts.dim(); ++c) {
        const double diff = pts[i][c] - pts[j][c];
        s += diff * diff;
      }
      all.push_back({static_cast<Index>(j), std::sqrt(s)});
    }
    std::sort(all.begin(), all.end(), [&](const Neighbor& a, const Neighbor& b) {
      const bool self_a = a.j == static_cast<Index>(i), self_b = b.j == static_cast<Index>(i);
      if (self_a != self_b) return self_a;
      return std::tie(a.w, a.j) < std::tie(b.w, b.j);
    });
    all.resize(k);
    rows[i] = all;
  }
  return rows;
}

PointSet uniform_square(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> c(2 * n);
  for (auto& x : c) x = rng.uniform();
  return PointSet(n, 2, std::move(c));
}

}  // namespace

TEST_SUITE("knng") {
  TEST_CASE("unit square breaks the distance tie by index") {
    const auto g = build_exact_knng(unit_square(), 3);
    const auto row = g.neighbors(0);
    REQUIRE(row.size() == 3);
    CHECK(row[0] == Neighbor{0, 0.0});
    CHECK(row[1] == Neighbor{1, 1.0});
    CHECK(row[2] == Neighbor{2, 1.0});
  }

  TEST_CASE("k_max = 1 keeps only the self entry") {
    const auto g = build_exact_knng(uniform_square(20, 3), 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      REQUIRE(g.neighbors(i).size() == 1);
      CHECK(g.at(i, 0) == Neighbor{static_cast<Index>(i), 0.0});
    }
  }

  TEST_CASE("matches a full pairwise sort") {
    const auto pts = uniform_square(50, 11);
    const auto g = build_exact_knng(pts, 5);
    CHECK(g == NeighborGraph::from_rows(full_sort_oracle(pts, 5)));
  }

  TEST_CASE("duplicated points still list self first") {
    const PointSet pts(3, 1, {2.0, 2.0, 2.0});
    const auto g = build_exact_knng(pts, 3);
    CHECK(g.at(1, 0) == Neighbor{1, 0.0});
    CHECK(g.at(1, 1) == Neighbor{0, 0.0});
    CHECK(g.at(1, 2) == Neighbor{2, 0.0});
  }

  TEST_CASE("weights equal recomputed distances") {
    const auto pts = gen_gaussian_blobs(3, 40, 5, 1.0, 4.0, 9).points;
    const auto g = build_exact_knng(pts, 12);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (const auto& e : g.neighbors(i)) {
        const double d = distance(pts[i], pts[static_cast<std::size_t>(e.j)]);
        CHECK(std::abs(e.w - d) <= 1e-12 * std::max(1.0, d));
      }
    }
  }

  TEST_CASE("smaller k is a prefix of larger k") {
    const auto pts = uniform_square(80, 5);
    const auto big = build_exact_knng(pts, 15);
    for (std::size_t k : {1u, 2u, 7u, 15u}) CHECK(build_exact_knng(pts, k) == big.prefix(k));
  }

  TEST_CASE("relabeling points permutes the graph") {
    const auto pts = uniform_square(60, 21);
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(4);
    for (std::size_t t = perm.size() - 1; t > 0; --t) std::swap(perm[t], perm[rng.below(t + 1)]);
    std::vector<double> c(pts.coords().size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t d = 0; d < 2; ++d) c[perm[i] * 2 + d] = pts[i][d];
    }
    const PointSet moved(pts.size(), 2, std::move(c));
    const auto g = build_exact_knng(pts, 6);
    const auto h = build_exact_knng(moved, 6);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      // Continuous coordinates: no ties, so images match entry by entry.
      for (std::size_t m = 0; m < 6; ++m) {
        CHECK(h.at(perm[i], m).j == static_cast<Index>(perm[static_cast<std::size_t>(g.at(i, m).j)]));
        CHECK(h.at(perm[i], m).w == g.at(i, m).w);
      }
    }
  }

  TEST_CASE("thread count does not change the graph") {
    const auto pts = gen_sphere(300, 4, 1.0, 2).points;
    CHECK(build_exact_knng(pts, 10, 1) == build_exact_knng(pts, 10, 4));
  }

  TEST_CASE("argument errors") {
    CHECK_THROWS_AS(build_exact_knng(unit_square(), 5), InvalidArgument);
    CHECK_THROWS_AS(build_exact_knng(unit_square(), 0), InvalidArgument);
    CHECK_THROWS_AS(NeighborGraph::from_rows({{{1, 0.0}}, {{1, 0.0}}}), InvalidData);
    CHECK_THROWS_AS(NeighborGraph::from_rows({{{0, 0.0}, {1, 2.0}}, {{1, 0.0}, {0, -1.0}}}),
                    InvalidData);
    CHECK_THROWS_AS(NeighborGraph::from_rows({{{0, 0.0}, {5, 1.0}}, {{1, 0.0}, {0, 1.0}}}),
                    InvalidData);
    CHECK_THROWS_AS(build_exact_knng(unit_square(), 3).prefix(4), InvalidArgument);
  }

  TEST_CASE("neighbor stats on three collinear points") {
    const auto g = build_exact_knng(PointSet(3, 1, {0.0, 1.0, 3.0}), 2);
    const auto s = neighbor_stats(g, 2);
    CHECK(s.median_dist == doctest::Approx(1.0));
    CHECK(s.mean_dist == doctest::Approx(4.0 / 3.0));
    const auto self = neighbor_stats(g, 1);
    CHECK(self.median_dist == 0.0);
    CHECK(self.mean_dist == 0.0);
    CHECK_THROWS_AS(neighbor_stats(g, 3), InvalidArgument);
    CHECK_THROWS_AS(neighbor_stats(g, 0), InvalidArgument);
  }

  TEST_CASE("median nearest distance on a 10-sphere agrees with a pairwise pass") {
    const auto pts = gen_sphere(1000, 10, 1.0, 77).points;
    std::vector<double> nearest(pts.size(), kSentinelWeight);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i != j) nearest[i] = std::min(nearest[i], std::sqrt(squared_distance(pts[i], pts[j])));
      }
    }
    std::sort(nearest.begin(), nearest.end());
    const double oracle = 0.5 * (nearest[499] + nearest[500]);
    const double got = neighbor_stats(build_exact_knng(pts, 2), 2).median_dist;
    CHECK(std::abs(got - oracle) <= 0.2 * oracle);
  }
}
