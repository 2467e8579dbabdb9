#include "knndbscan/datasets.hpp"

#include <cmath>
#include <numbers>

namespace knndbscan {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

namespace {

void append_sphere(Rng& rng, std::size_t n, std::size_t d, double radius,
                   std::vector<double>& out) {
  std::vector<double> v(d);
  for (std::size_t p = 0; p < n; ++p) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& x : v) {
        x = rng.normal();
        norm2 += x * x;
      }
    } while (norm2 == 0.0);
    const double scale = radius / std::sqrt(norm2);
    for (double x : v) out.push_back(x * scale);
  }
}

void check_sphere_args(std::size_t n, std::size_t d, double radius) {
  if (n < 1) throw InvalidArgument("sphere needs n >= 1");
  if (d < 2) throw InvalidArgument("sphere needs d >= 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("radius must be > 0");
}

}  // namespace

LabeledPoints gen_sphere(std::size_t n, std::size_t d, double radius, std::uint64_t seed) {
  check_sphere_args(n, d, radius);
  Rng rng(seed);
  std::vector<double> coords;
  coords.reserve(n * d);
  append_sphere(rng, n, d, radius, coords);
  return {PointSet(n, d, std::move(coords)), std::vector<Index>(n, 0)};
}

LabeledPoints gen_two_spheres(std::size_t n_inner, std::size_t n_outer, std::size_t d,
                              double r_inner, double r_outer, std::uint64_t seed) {
  check_sphere_args(n_inner, d, r_inner);
  check_sphere_args(n_outer, d, r_outer);
  if (!(r_inner < r_outer)) throw InvalidArgument("inner radius must be below outer radius");
  Rng rng(seed);
  std::vector<double> coords;
  coords.reserve((n_inner + n_outer) * d);
  append_sphere(rng, n_inner, d, r_inner, coords);
  append_sphere(rng, n_outer, d, r_outer, coords);
  std::vector<Index> labels(n_inner, 0);
  labels.resize(n_inner + n_outer, 1);
  return {PointSet(n_inner + n_outer, d, std::move(coords)), std::move(labels)};
}

LabeledPoints gen_gaussian_blobs(std::size_t k, std::size_t n_per, std::size_t d, double spread,
                                 double separation, std::uint64_t seed) {
  if (k < 1 || n_per < 1 || d < 1) throw InvalidArgument("blobs need k, n_per, d >= 1");
  if (!(spread >= 0.0) || !(separation >= 0.0)) {
    throw InvalidArgument("spread and separation must be non-negative");
  }
  Rng rng(seed);

  // Rejection-sample centres inside a box large enough to hold k of them; fall back to a
  // line arrangement if a centre cannot be placed.
  const double side =
      2.0 * separation * std::max(1.0, std::ceil(std::pow(static_cast<double>(k), 1.0 / d)));
  std::vector<double> centres;
  centres.reserve(k * d);
  std::vector<double> c(d);
  for (std::size_t b = 0; b < k; ++b) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      for (auto& x : c) x = side * rng.uniform();
      placed = true;
      for (std::size_t o = 0; o < b && placed; ++o) {
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
          const double diff = c[t] - centres[o * d + t];
          s += diff * diff;
        }
        placed = std::sqrt(s) >= separation;
      }
    }
    if (!placed) {
      std::fill(c.begin(), c.end(), 0.0);
      c[0] = side + separation * static_cast<double>(b + 1);
    }
    centres.insert(centres.end(), c.begin(), c.end());
  }

  std::vector<double> coords;
  coords.reserve(k * n_per * d);
  std::vector<Index> labels;
  labels.reserve(k * n_per);
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t p = 0; p < n_per; ++p) {
      for (std::size_t t = 0; t < d; ++t) coords.push_back(centres[b * d + t] + spread * rng.normal());
      labels.push_back(static_cast<Index>(b));
    }
  }
  return {PointSet(k * n_per, d, std::move(coords)), std::move(labels)};
}

}  // namespace knndbscan
