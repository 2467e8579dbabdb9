#include "knndbscan/point_set.hpp"

#include <cmath>
#include <string>

namespace knndbscan {

PointSet::PointSet(std::size_t n_points, std::size_t dim, std::vector<double> coords)
    : n_(n_points), d_(dim), coords_(std::move(coords)) {
  if (n_ < 1 || d_ < 1) throw InvalidArgument("point set needs N >= 1 and d >= 1");
  if (coords_.size() != n_ * d_) {
    throw InvalidArgument("coordinate buffer has " + std::to_string(coords_.size()) +
                          " values, expected " + std::to_string(n_ * d_));
  }
  for (std::size_t c = 0; c < coords_.size(); ++c) {
    if (!std::isfinite(coords_[c])) {
      throw InvalidData("non-finite coordinate at point " + std::to_string(c / d_));
    }
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double t = a[c] - b[c];
    s += t * t;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace knndbscan
