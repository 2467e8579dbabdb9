#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knndbscan/common.hpp"

namespace knndbscan {

/// N points in d dimensions, row-major.
class PointSet {
 public:
  PointSet() = default;
  /// Throws InvalidArgument on shape mismatch and InvalidData on non-finite coordinates.
  PointSet(std::size_t n_points, std::size_t dim, std::vector<double> coords);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  bool empty() const { return n_ == 0; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * d_, d_};
  }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> coords_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

}  // namespace knndbscan
