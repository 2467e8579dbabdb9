#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "knndbscan/io.hpp"

using namespace knndbscan;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "knn-dbscan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = knndbscan::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Workdir {
  fs::path path = fs::temp_directory_path() / ("knndbscan_cli_" + std::to_string(::getpid()));
  Workdir() { fs::create_directories(path); }
  ~Workdir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generate writes the requested shape, reproducibly") {
    Workdir w;
    const auto r = invoke({"generate", "--kind", "sphere", "--n", "100", "--d", "3", "--seed", "4",
                        "--out", w / "a.txt", "--labels", w / "a.lab"});
    REQUIRE(r.code == 0);
    const auto pts = io::read_points(w / "a.txt");
    CHECK(pts.size() == 100);
    CHECK(pts.dim() == 3);
    CHECK(io::read_labels(w / "a.lab") == std::vector<Index>(100, 0));
    REQUIRE(invoke({"generate", "--kind", "sphere", "--n", "100", "--d", "3", "--seed", "4", "--out", w / "b.txt"}).code == 0);
    CHECK(slurp(w / "a.txt") == slurp(w / "b.txt"));
    // Reading and writing again reproduces the same bytes.
    io::write_points(w / "c.txt", pts);
    CHECK(slurp(w / "a.txt") == slurp(w / "c.txt"));
  }

  TEST_CASE("cluster: one part and eight parts give the same labels") {
    Workdir w;
    REQUIRE(invoke({"generate", "--kind", "blobs", "--blobs", "3", "--n", "150", "--d", "2", "--seed", "1",
                 "--separation", "8", "--out", w / "p.txt", "--labels", w / "t.txt"}).code == 0);
    const auto one = invoke({"cluster", "--points", w / "p.txt", "--eps-rel", "3", "--minpts", "5",
                          "--k", "10", "--out", w / "l1.txt", "--metrics", w / "m1.json"});
    REQUIRE(one.code == 0);
    const auto eight = invoke({"cluster", "--points", w / "p.txt", "--eps-rel", "3", "--minpts", "5",
                            "--k", "10", "--parts", "8", "--strategy", "geometric", "--threads", "2",
                            "--out", w / "l8.txt", "--trace"});
    REQUIRE(eight.code == 0);
    CHECK(slurp(w / "l1.txt") == slurp(w / "l8.txt"));

    const auto m1 = nlohmann::json::parse(slurp(w / "m1.json"));
    CHECK(m1["parts"] == 1);
    CHECK(m1["n_points"] == 450);
    CHECK(m1["eps_rel"] == 3.0);
    CHECK_FALSE(m1.contains("trace"));
    const auto m8 = nlohmann::json::parse(eight.out);
    CHECK(m8["parts"] == 8);
    CHECK(m8["strategy"] == "geometric");
    CHECK(m8["trace"].size() == m8["cut_rounds"].get<std::size_t>());
    CHECK(m8["n_clusters"] == m1["n_clusters"]);

    const auto cmp = invoke({"compare", w / "l1.txt", w / "l8.txt"});
    REQUIRE(cmp.code == 0);
    const auto rep = nlohmann::json::parse(cmp.out);
    CHECK(rep["identical"] == true);
    CHECK(rep["nmi"].get<double>() == doctest::Approx(1.0));
  }

  TEST_CASE("a single point is noise") {
    Workdir w;
    std::ofstream(w / "one.txt") << "1 2\n0.5 0.5\n";
    REQUIRE(invoke({"cluster", "--points", w / "one.txt", "--eps", "1", "--minpts", "2", "--out", w / "l.txt"}).code == 0);
    CHECK(slurp(w / "l.txt") == "-1\n");
  }

  TEST_CASE("compare reports NMI, counts and refinement") {
    Workdir w;
    std::ofstream(w / "single.txt") << "0\n1\n2\n3\n";
    std::ofstream(w / "whole.txt") << "0\n0\n0\n0\n";
    std::ofstream(w / "short.txt") << "0\n0\n";
    const auto self = nlohmann::json::parse(invoke({"compare", w / "single.txt", w / "single.txt"}).out);
    CHECK(self["nmi"] == 1.0);
    CHECK(self["identical"] == true);
    const auto r = invoke({"compare", w / "single.txt", w / "whole.txt"});
    const auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["nmi"] == 0.0);
    CHECK(rep["clusters_a"] == 4);
    CHECK(rep["clusters_b"] == 1);
    CHECK(rep["identical"] == false);
    CHECK(rep["a_refines_b"] == true);
    CHECK(rep["b_refines_a"] == false);
    CHECK(invoke({"compare", w / "single.txt", w / "short.txt"}).code == cli::kExitInvalidArgument);
  }

  TEST_CASE("sweep builds the graph once") {
    Workdir w;
    REQUIRE(invoke({"generate", "--kind", "blobs", "--blobs", "2", "--n", "100", "--d", "2", "--out",
                 w / "p.txt", "--labels", w / "t.txt"}).code == 0);
    const auto single = invoke({"sweep", "--points", w / "p.txt", "--truth", w / "t.txt", "--eps-rel", "2"});
    REQUIRE(single.code == 0);
    CHECK(std::count(single.out.begin(), single.out.end(), '\n') == 1);

    const auto r = invoke({"sweep", "--points", w / "p.txt", "--truth", w / "t.txt", "--eps-rel", "1,2,4",
                        "--minpts", "4", "--k", "8"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<nlohmann::json> rows;
    while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["timings"]["knng"].get<double>() > 0.0);
    CHECK(rows[1]["timings"]["knng"] == 0.0);
    CHECK(rows[2]["timings"]["knng"] == 0.0);
    CHECK(rows[0]["eps"].get<double>() < rows[2]["eps"].get<double>());
    for (const auto& row : rows) {
      CHECK(row.contains("nmi"));
      CHECK(row.contains("n_clusters"));
    }
  }

  TEST_CASE("exit codes") {
    Workdir w;
    std::ofstream(w / "bad.txt") << "2 2\n1 2\n";
    std::ofstream(w / "ok.txt") << "3 1\n0\n1\n2\n";
    CHECK(invoke({}).code == cli::kExitInvalidArgument);
    CHECK(invoke({"--help"}).code == cli::kExitOk);
    CHECK(invoke({"cluster", "--bogus"}).code == cli::kExitInvalidArgument);
    // M > k is rejected before the input is opened.
    CHECK(invoke({"cluster", "--points", w / "absent.txt", "--eps", "1", "--minpts", "30", "--k", "20"}).code ==
          cli::kExitInvalidArgument);
    CHECK(invoke({"cluster", "--points", w / "absent.txt", "--eps", "1"}).code == cli::kExitIoError);
    CHECK(invoke({"cluster", "--points", w / "bad.txt", "--eps", "1"}).code == cli::kExitInvalidArgument);
    CHECK(invoke({"cluster", "--points", w / "ok.txt"}).code == cli::kExitInvalidArgument);
    CHECK(invoke({"cluster", "--points", w / "ok.txt", "--eps", "1", "--eps-rel", "1"}).code ==
          cli::kExitInvalidArgument);
    CHECK(invoke({"cluster", "--points", w / "ok.txt", "--eps", "1", "--minpts", "2", "--strategy", "metis"}).code ==
          cli::kExitInvalidArgument);
    CHECK(invoke({"cluster", "--points", w / "ok.txt", "--eps", "1", "--minpts", "2", "--out",
               w / "no/such/dir/l.txt"}).code == cli::kExitIoError);
    CHECK(invoke({"generate", "--kind", "cube", "--out", w / "x.txt"}).code == cli::kExitInvalidArgument);
    CHECK(invoke({"generate", "--out", w / "no/such/dir/p.txt"}).code == cli::kExitIoError);
  }
}
