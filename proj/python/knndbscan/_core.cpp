// Python bindings. Arrays cross the boundary as contiguous float64 / int64 numpy arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "knndbscan/datasets.hpp"
#include "knndbscan/eval.hpp"
#include "knndbscan/pipeline.hpp"

namespace py = pybind11;
using namespace knndbscan;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IndexArray = py::array_t<Index, py::array::c_style | py::array::forcecast>;

PointSet to_points(const DoubleArray& a) {
  if (a.ndim() != 2) throw InvalidArgument("points must be a 2-d array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const auto d = static_cast<std::size_t>(a.shape(1));
  return PointSet(n, d, std::vector<double>(a.data(), a.data() + n * d));
}

std::span<const Index> as_span(const IndexArray& a) {
  if (a.ndim() != 1) throw InvalidArgument("labels must be a 1-d array");
  return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::tuple labeled(const LabeledPoints& lp) {
  py::array_t<double> pts({static_cast<py::ssize_t>(lp.points.size()), static_cast<py::ssize_t>(lp.points.dim())});
  std::copy(lp.points.coords().begin(), lp.points.coords().end(), pts.mutable_data());
  return py::make_tuple(pts, to_array(lp.labels));
}

py::tuple knn_graph(const DoubleArray& points, std::size_t k, int threads) {
  const auto pts = to_points(points);
  NeighborGraph g;
  {
    py::gil_scoped_release release;
    g = build_exact_knng(pts, k, threads);
  }
  const auto n = static_cast<py::ssize_t>(g.size()), kk = static_cast<py::ssize_t>(g.k());
  py::array_t<Index> idx({n, kk});
  py::array_t<double> dist({n, kk});
  auto* ip = idx.mutable_data();
  auto* dp = dist.mutable_data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t m = 0; m < g.k(); ++m) {
      *ip++ = g.at(i, m).j;
      *dp++ = g.at(i, m).w;
    }
  }
  return py::make_tuple(idx, dist);
}

py::dict cluster(const DoubleArray& points, std::optional<double> eps, std::optional<double> eps_rel,
                 std::size_t minpts, std::size_t k, int parts, const std::string& strategy,
                 std::uint64_t seed, int threads) {
  if (eps.has_value() == eps_rel.has_value()) throw InvalidArgument("give exactly one of eps and eps_rel");
  if (minpts > k) throw InvalidArgument("minpts exceeds k");
  const auto pts = to_points(points);
  ClusterOptions opts;
  opts.params.m_pts = minpts;
  opts.parts = parts;
  opts.strategy = parse_strategy(strategy, seed);
  opts.threads = threads;
  opts.execution = threads > 1 ? RankExecution::Concurrent : RankExecution::Sequential;

  ClusterResult r;
  {
    py::gil_scoped_release release;
    const auto graph = build_exact_knng(pts, std::min(k, pts.size()), threads);
    opts.params.eps = eps ? *eps : (graph.k() >= 2 ? resolve_relative_eps(graph, *eps_rel) : *eps_rel);
    r = cluster_graph(pts, graph, opts);
  }
  std::vector<std::uint8_t> cls(r.classes.size());
  for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = static_cast<std::uint8_t>(r.classes[i]);

  py::dict out;
  out["labels"] = to_array(r.labels);
  out["classes"] = to_array(cls);
  out["eps"] = opts.params.eps;
  out["n_clusters"] = r.n_clusters;
  out["n_core"] = r.counts.core;
  out["n_border"] = r.counts.border;
  out["n_noise"] = r.counts.noise;
  out["cut_edges"] = r.cut_edges;
  out["cut_rounds"] = r.cut_rounds;
  return out;
}

double saturation(const DoubleArray& points, std::size_t minpts, std::size_t k, int threads) {
  const auto pts = to_points(points);
  py::gil_scoped_release release;
  return saturation_eps(build_exact_knng(pts, std::min(k, pts.size()), threads), minpts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "kNN-DBSCAN clustering over exact k-nearest-neighbor graphs";
  py::register_exception<InvalidData>(m, "InvalidData", PyExc_ValueError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.attr("NOISE") = kNoise;
  m.attr("CORE") = static_cast<int>(PointClass::Core);
  m.attr("BORDER") = static_cast<int>(PointClass::Border);
  m.attr("NOISE_POINT") = static_cast<int>(PointClass::Noise);

  m.def("knn_graph", &knn_graph, py::arg("points"), py::arg("k"), py::arg("threads") = 1,
        "Exact self-inclusive k-NN lists as (indices, distances), each of shape (n, k).");
  m.def("cluster", &cluster, py::arg("points"), py::kw_only(), py::arg("eps") = py::none(),
        py::arg("eps_rel") = py::none(), py::arg("minpts") = 10, py::arg("k") = 20, py::arg("parts") = 1,
        py::arg("strategy") = "block", py::arg("seed") = 0, py::arg("threads") = 1);
  m.def("saturation_eps", &saturation, py::arg("points"), py::arg("minpts"), py::arg("k") = 20,
        py::arg("threads") = 1, "Smallest eps above which every point is core.");
  m.def("nmi", [](const IndexArray& a, const IndexArray& b) { return nmi(as_span(a), as_span(b)); });
  m.def("cluster_count", [](const IndexArray& a) { return cluster_count(as_span(a)); });
  m.def("same_partition",
        [](const IndexArray& a, const IndexArray& b) { return same_partition(as_span(a), as_span(b)); });

  m.def("sphere", [](std::size_t n, std::size_t d, double radius, std::uint64_t seed) {
    return labeled(gen_sphere(n, d, radius, seed));
  }, py::arg("n"), py::arg("d"), py::arg("radius") = 1.0, py::arg("seed") = 0);
  m.def("two_spheres", [](std::size_t n_inner, std::size_t n_outer, std::size_t d, double r_inner,
                          double r_outer, std::uint64_t seed) {
    return labeled(gen_two_spheres(n_inner, n_outer, d, r_inner, r_outer, seed));
  }, py::arg("n_inner"), py::arg("n_outer"), py::arg("d"), py::arg("r_inner") = 0.1,
     py::arg("r_outer") = 1.0, py::arg("seed") = 0);
  m.def("blobs", [](std::size_t k, std::size_t n_per, std::size_t d, double spread, double separation,
                    std::uint64_t seed) {
    return labeled(gen_gaussian_blobs(k, n_per, d, spread, separation, seed));
  }, py::arg("k"), py::arg("n_per"), py::arg("d"), py::arg("spread") = 1.0, py::arg("separation") = 20.0,
     py::arg("seed") = 0);
}
