#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "knndbscan/common.hpp"
#include "knndbscan/point_set.hpp"

namespace knndbscan {

/// Portable seeded generator: std::mt19937_64 (algorithm fixed by the C++ standard),
/// 53-bit uniform doubles and Box-Muller normals. Standard library distributions are not
/// used because their algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal; variates are produced in Box-Muller pairs.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct LabeledPoints {
  PointSet points;
  std::vector<Index> labels;
};

/// n points uniform on the (d-1)-sphere of the given radius centred at the origin.
LabeledPoints gen_sphere(std::size_t n, std::size_t d, double radius, std::uint64_t seed);

/// Two concentric spheres; the first n_inner points (label 0) lie on the inner one.
LabeledPoints gen_two_spheres(std::size_t n_inner, std::size_t n_outer, std::size_t d,
                              double r_inner, double r_outer, std::uint64_t seed);

/// k isotropic Gaussian blobs with centres pairwise at least `separation` apart.
LabeledPoints gen_gaussian_blobs(std::size_t k, std::size_t n_per, std::size_t d, double spread,
                                 double separation, std::uint64_t seed);

}  // namespace knndbscan
