#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "knndbscan/datasets.hpp"
#include "knndbscan/eval.hpp"
#include "knndbscan/io.hpp"
#include "knndbscan/pipeline.hpp"
#include "knndbscan/timer.hpp"

namespace knndbscan::cli {

namespace {

struct GenerateArgs {
  std::string kind = "sphere";
  std::size_t n = 1000;
  std::size_t d = 3;
  std::uint64_t seed = 0;
  double radius = 1.0;
  std::size_t n_inner = 4000;
  std::size_t n_outer = 12000;
  double r_inner = 0.1;
  double r_outer = 1.0;
  std::size_t blobs = 3;
  double spread = 1.0;
  double separation = 20.0;
  std::string out;
  std::string labels;
};

struct ClusterArgs {
  std::string points;
  std::optional<double> eps;
  std::optional<double> eps_rel;
  std::size_t minpts = 10;
  std::size_t k = 20;
  int parts = 1;
  std::string strategy = "block";
  std::uint64_t seed = 0;
  int threads = 1;
  bool trace = false;
  std::string out;
  std::string metrics;
};

struct SweepArgs {
  std::string points;
  std::string truth;
  std::vector<double> eps;
  std::vector<double> eps_rel;
  std::size_t minpts = 10;
  std::size_t k = 20;
  int parts = 1;
  std::string strategy = "block";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path + " failed");
}

ClusterOptions make_options(std::size_t minpts, int parts, const std::string& strategy,
                            std::uint64_t seed, int threads) {
  ClusterOptions o;
  o.params.m_pts = minpts;
  o.parts = parts;
  o.strategy = parse_strategy(strategy, seed);
  o.threads = threads;
  o.execution = threads > 1 ? RankExecution::Concurrent : RankExecution::Sequential;
  return o;
}

void run_generate(const GenerateArgs& a, std::ostream& out) {
  LabeledPoints data;
  if (a.kind == "sphere") {
    data = gen_sphere(a.n, a.d, a.radius, a.seed);
  } else if (a.kind == "two-spheres") {
    data = gen_two_spheres(a.n_inner, a.n_outer, a.d, a.r_inner, a.r_outer, a.seed);
  } else if (a.kind == "blobs") {
    data = gen_gaussian_blobs(a.blobs, a.n, a.d, a.spread, a.separation, a.seed);
  } else {
    throw InvalidArgument("unknown dataset kind '" + a.kind + "'");
  }
  emit(a.out, io::format_points(data.points), out);
  if (!a.labels.empty()) emit(a.labels, io::format_labels(data.labels), out);
}

void run_cluster(const ClusterArgs& a, std::ostream& out) {
  if (a.eps.has_value() == a.eps_rel.has_value()) {
    throw InvalidArgument("give exactly one of --eps and --eps-rel");
  }
  if (a.minpts > a.k) {
    throw InvalidArgument("--minpts " + std::to_string(a.minpts) + " exceeds --k " +
                          std::to_string(a.k));
  }
  auto options = make_options(a.minpts, a.parts, a.strategy, a.seed, a.threads);
  const auto points = io::read_points(a.points);

  Stopwatch clock;
  const auto graph = build_exact_knng(points, std::min(a.k, points.size()), a.threads);
  const double knng_time = clock.lap();
  if (a.eps_rel) {
    options.params.eps = graph.k() >= 2 ? resolve_relative_eps(graph, *a.eps_rel) : *a.eps_rel;
  } else {
    options.params.eps = *a.eps;
  }
  auto result = cluster_graph(points, graph, options);
  result.timings.knng = knng_time;
  result.timings.total += knng_time;

  auto rec = io::metrics_record(result, options, graph.k(), a.trace);
  if (a.eps_rel) rec["eps_rel"] = *a.eps_rel;
  if (!a.out.empty()) io::write_labels(a.out, result.labels);
  emit(a.metrics, rec.dump(2) + "\n", out);
}

void run_compare(const std::string& path_a, const std::string& path_b, std::ostream& out) {
  const auto a = io::read_labels(path_a);
  const auto b = io::read_labels(path_b);
  if (a.size() != b.size()) {
    throw InvalidArgument("label files differ in length (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  const nlohmann::json rep = {
      {"n_points", a.size()},
      {"nmi", nmi(a, b)},
      {"clusters_a", cluster_count(a)},
      {"clusters_b", cluster_count(b)},
      {"identical", same_partition(a, b)},
      {"a_refines_b", refines(a, b)},
      {"b_refines_a", refines(b, a)},
  };
  out << rep.dump(2) << "\n";
}

void run_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.eps.empty() == a.eps_rel.empty()) {
    throw InvalidArgument("give exactly one of --eps and --eps-rel");
  }
  if (a.minpts > a.k) throw InvalidArgument("--minpts exceeds --k");
  auto options = make_options(a.minpts, a.parts, a.strategy, a.seed, a.threads);
  const auto points = io::read_points(a.points);
  const auto truth = io::read_labels(a.truth);
  if (truth.size() != points.size()) {
    throw InvalidArgument("ground-truth labels do not match the point count");
  }

  Stopwatch clock;
  const auto graph = build_exact_knng(points, std::min(a.k, points.size()), a.threads);
  double knng_time = clock.lap();

  const bool relative = !a.eps_rel.empty();
  const auto& grid = relative ? a.eps_rel : a.eps;
  std::string text;
  for (double value : grid) {
    options.params.eps = relative ? resolve_relative_eps(graph, value) : value;
    auto result = cluster_graph(points, graph, options);
    result.timings.knng = knng_time;
    result.timings.total += knng_time;
    knng_time = 0.0;  // the graph is shared by every later row
    nlohmann::json row = {
        {"eps", options.params.eps},
        {"nmi", nmi(result.labels, truth)},
        {"n_clusters", result.n_clusters},
        {"n_core", result.counts.core},
        {"n_noise", result.counts.noise},
        {"timings", io::timings_record(result.timings)},
    };
    if (relative) row["eps_rel"] = value;
    text += row.dump() + "\n";
  }
  emit(a.out, text, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"kNN-DBSCAN clustering over exact k-nearest-neighbor graphs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a synthetic point file and its ground truth");
  g->add_option("--kind", gen.kind, "sphere | two-spheres | blobs")->capture_default_str();
  g->add_option("--n", gen.n, "points (sphere) or points per blob (blobs)")->capture_default_str();
  g->add_option("--d", gen.d, "dimension")->capture_default_str();
  g->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  g->add_option("--radius", gen.radius, "sphere radius")->capture_default_str();
  g->add_option("--n-inner", gen.n_inner, "two-spheres: inner point count")->capture_default_str();
  g->add_option("--n-outer", gen.n_outer, "two-spheres: outer point count")->capture_default_str();
  g->add_option("--r-inner", gen.r_inner, "two-spheres: inner radius")->capture_default_str();
  g->add_option("--r-outer", gen.r_outer, "two-spheres: outer radius")->capture_default_str();
  g->add_option("--blobs", gen.blobs, "blobs: number of blobs")->capture_default_str();
  g->add_option("--spread", gen.spread, "blobs: standard deviation")->capture_default_str();
  g->add_option("--separation", gen.separation, "blobs: minimum centre distance")->capture_default_str();
  g->add_option("--out", gen.out, "point file ('-' for stdout)")->required();
  g->add_option("--labels", gen.labels, "ground-truth label file");

  ClusterArgs cl;
  auto* c = app.add_subcommand("cluster", "cluster a point file");
  c->add_option("--points", cl.points, "input point file")->required();
  auto* eps_opt = c->add_option("--eps", cl.eps, "absolute radius");
  c->add_option("--eps-rel", cl.eps_rel, "radius relative to the median 2nd-neighbor distance")
      ->excludes(eps_opt);
  c->add_option("--minpts", cl.minpts, "M, counting the point itself")->capture_default_str();
  c->add_option("--k", cl.k, "neighbors per point in the graph")->capture_default_str();
  c->add_option("--parts", cl.parts, "partition groups (logical ranks)")->capture_default_str();
  c->add_option("--strategy", cl.strategy, "block | random | geometric")->capture_default_str();
  c->add_option("--seed", cl.seed, "seed of the random strategy")->capture_default_str();
  c->add_option("--threads", cl.threads, "worker threads")->capture_default_str();
  c->add_flag("--trace", cl.trace, "add per-round cut-phase records to the metrics");
  c->add_option("--out", cl.out, "label file to write");
  c->add_option("--metrics", cl.metrics, "metrics file (default stdout)");

  std::string cmp_a, cmp_b;
  auto* cmp = app.add_subcommand("compare", "compare two label files");
  cmp->add_option("labels_a", cmp_a)->required();
  cmp->add_option("labels_b", cmp_b)->required();

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "NMI and cluster count over an eps grid, one graph");
  s->add_option("--points", sw.points, "input point file")->required();
  s->add_option("--truth", sw.truth, "ground-truth label file")->required();
  auto* sweep_eps = s->add_option("--eps", sw.eps, "absolute radii")->delimiter(',');
  s->add_option("--eps-rel", sw.eps_rel, "relative radii")->delimiter(',')->excludes(sweep_eps);
  s->add_option("--minpts", sw.minpts)->capture_default_str();
  s->add_option("--k", sw.k)->capture_default_str();
  s->add_option("--parts", sw.parts)->capture_default_str();
  s->add_option("--strategy", sw.strategy)->capture_default_str();
  s->add_option("--seed", sw.seed)->capture_default_str();
  s->add_option("--threads", sw.threads)->capture_default_str();
  s->add_option("--out", sw.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidArgument;
  }

  try {
    if (*g) run_generate(gen, out);
    if (*c) run_cluster(cl, out);
    if (*cmp) run_compare(cmp_a, cmp_b, out);
    if (*s) run_sweep(sw, out);
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitInvalidArgument;
  } catch (const InvalidData& e) {
    err << "invalid data: " << e.what() << "\n";
    return kExitInvalidArgument;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace knndbscan::cli
