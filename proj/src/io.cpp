#include "knndbscan/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace knndbscan::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void dump(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

class Tokens {
 public:
  Tokens(const std::string& text, std::string where) : text_(text), where_(std::move(where)) {}

  bool next(std::string_view& tok) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return false;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok = std::string_view(text_).substr(start, pos_ - start);
    return true;
  }

  template <class T>
  T read(const char* what) {
    std::string_view tok;
    if (!next(tok)) throw InvalidData(where_ + ": missing " + what);
    T value{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw InvalidData(where_ + ": bad " + what + " '" + std::string(tok) + "'");
    }
    return value;
  }

  void expect_end() {
    std::string_view tok;
    if (next(tok)) throw InvalidData(where_ + ": trailing content '" + std::string(tok) + "'");
  }

 private:
  const std::string& text_;
  std::string where_;
  std::size_t pos_ = 0;
};

}  // namespace

PointSet read_points(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  Tokens tok(text, path.string());
  const auto n = tok.read<std::size_t>("point count");
  const auto d = tok.read<std::size_t>("dimension");
  if (n < 1 || d < 1) throw InvalidData(path.string() + ": header needs N >= 1 and d >= 1");
  std::vector<double> coords;
  coords.reserve(n * d);
  for (std::size_t t = 0; t < n * d; ++t) coords.push_back(tok.read<double>("coordinate"));
  tok.expect_end();
  return PointSet(n, d, std::move(coords));
}

std::string format_points(const PointSet& points) {
  std::string out = std::to_string(points.size()) + " " + std::to_string(points.dim()) + "\n";
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = points[i];
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      if (c > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_points(const std::filesystem::path& path, const PointSet& points) {
  dump(path, format_points(points));
}

std::vector<Index> read_labels(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  Tokens tok(text, path.string());
  std::vector<Index> labels;
  std::string_view t;
  while (tok.next(t)) {
    Index v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || v < kNoise) {
      throw InvalidData(path.string() + ": bad label '" + std::string(t) + "'");
    }
    labels.push_back(v);
  }
  return labels;
}

std::string format_labels(std::span<const Index> labels) {
  std::string out;
  out.reserve(labels.size() * 3);
  for (Index l : labels) {
    out += std::to_string(l);
    out += '\n';
  }
  return out;
}

void write_labels(const std::filesystem::path& path, std::span<const Index> labels) {
  dump(path, format_labels(labels));
}

nlohmann::json timings_record(const PhaseTimings& t) {
  return {
      {"knng", t.knng},
      {"classify", t.classify},
      {"partition", t.partition},
      {"local", t.local},
      {"min-edges", t.min_edges},
      {"pointer jumping", t.pointer_jumping},
      {"update E_cut", t.update_ecut},
      {"border", t.border},
      {"total", t.total},
  };
}

nlohmann::json metrics_record(const ClusterResult& result, const ClusterOptions& options,
                              std::size_t k, bool include_trace) {
  nlohmann::json rec = {
      {"n_points", result.labels.size()},
      {"eps", options.params.eps},
      {"minpts", options.params.m_pts},
      {"k", k},
      {"parts", options.parts},
      {"strategy", std::string(strategy_name(options.strategy.kind))},
      {"threads", options.threads},
      {"n_clusters", result.n_clusters},
      {"n_core", result.counts.core},
      {"n_border", result.counts.border},
      {"n_noise", result.counts.noise},
      {"n_cut_edges", result.cut_edges},
      {"local_rounds", result.local_rounds},
      {"cut_rounds", result.cut_rounds},
      {"cycles_broken", result.local_cycles + result.cut_cycles},
      {"messages", result.exchange.messages},
      {"timings", timings_record(result.timings)},
  };
  if (include_trace) {
    auto rounds = nlohmann::json::array();
    for (const auto& r : result.trace) {
      rounds.push_back({{"round", r.round},
                        {"active_cut_edges", r.active_cut_edges},
                        {"messages", r.messages},
                        {"items", r.items},
                        {"n_root", r.n_root}});
    }
    rec["trace"] = std::move(rounds);
  }
  return rec;
}

}  // namespace knndbscan::io
