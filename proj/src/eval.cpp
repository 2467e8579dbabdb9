#include "knndbscan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace knndbscan {

namespace {

// Compact ids; every noise point shares one id.
std::vector<std::size_t> compact(std::span<const Index> labels, std::size_t& count) {
  std::unordered_map<Index, std::size_t> ids;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    auto [it, inserted] = ids.try_emplace(labels[t], ids.size());
    out[t] = it->second;
  }
  count = ids.size();
  return out;
}

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= (c / n) * std::log(c / n);
  }
  return h;
}

}  // namespace

double nmi(std::span<const Index> a, std::span<const Index> b) {
  if (a.size() != b.size()) throw InvalidArgument("nmi: labelings differ in length");
  if (a.empty()) return 1.0;
  std::size_t ka = 0, kb = 0;
  const auto ca = compact(a, ka);
  const auto cb = compact(b, kb);
  const auto n = static_cast<double>(a.size());

  std::vector<double> na(ka, 0.0), nb(kb, 0.0);
  std::map<std::pair<std::size_t, std::size_t>, double> joint;
  for (std::size_t t = 0; t < a.size(); ++t) {
    na[ca[t]] += 1.0;
    nb[cb[t]] += 1.0;
    joint[{ca[t], cb[t]}] += 1.0;
  }
  const double ha = entropy(na, n);
  const double hb = entropy(nb, n);
  if (ha + hb == 0.0) return 1.0;

  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    mi += (c / n) * std::log(c * n / (na[key.first] * nb[key.second]));
  }
  if (mi <= 0.0) return 0.0;
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

std::size_t cluster_count(std::span<const Index> labels) {
  std::unordered_set<Index> seen;
  for (Index l : labels) {
    if (l != kNoise) seen.insert(l);
  }
  return seen.size();
}

bool same_partition(std::span<const Index> a, std::span<const Index> b) {
  if (a.size() != b.size()) throw InvalidArgument("same_partition: labelings differ in length");
  std::unordered_map<Index, Index> ab, ba;
  for (std::size_t t = 0; t < a.size(); ++t) {
    auto [x, fx] = ab.try_emplace(a[t], b[t]);
    auto [y, fy] = ba.try_emplace(b[t], a[t]);
    if (x->second != b[t] || y->second != a[t]) return false;
  }
  return true;
}

bool refines(std::span<const Index> fine, std::span<const Index> coarse,
             std::span<const std::uint8_t> mask) {
  if (fine.size() != coarse.size()) throw InvalidArgument("refines: labelings differ in length");
  if (!mask.empty() && mask.size() != fine.size()) throw InvalidArgument("refines: mask length");
  std::unordered_map<Index, Index> image;
  for (std::size_t t = 0; t < fine.size(); ++t) {
    if (!mask.empty() && !mask[t]) continue;
    if (fine[t] == kNoise || coarse[t] == kNoise) continue;
    auto [it, inserted] = image.try_emplace(fine[t], coarse[t]);
    if (it->second != coarse[t]) return false;
  }
  return true;
}

std::vector<Index> canonical_labels(std::span<const Index> labels) {
  std::unordered_map<Index, Index> ids;
  std::vector<Index> out(labels.size(), kNoise);
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (labels[t] == kNoise) continue;
    auto [it, inserted] = ids.try_emplace(labels[t], static_cast<Index>(ids.size()));
    out[t] = it->second;
  }
  return out;
}

}  // namespace knndbscan
