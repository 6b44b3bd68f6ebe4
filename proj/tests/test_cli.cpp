#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arcdelta/config.hpp"
#include "arcdelta/runner.hpp"

using namespace arcdelta;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("arcdelta_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

RunConfig parse_or_die(const std::string& text) {
  ParseResult res = parse_config(text);
  REQUIRE_MESSAGE(res.errors.empty(), text);
  return *res.config;
}

}  // namespace

TEST_CASE("curve-info run writes the polyline and the summary") {
  RunConfig cfg = parse_or_die(R"(
[curve]
kind = circular_arc
radius = 1.0
angle = 1.5707963267948966

[task]
type = curve-info

[output]
quiet = true
)");
  fs::path dir = fresh_dir("info");
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK(run(cfg, opt) == 0);
  CHECK(fs::exists(dir / "curve.csv"));
  CHECK(fs::exists(dir / "curve_info.json"));
  CHECK(fs::exists(dir / "manifest.json"));
  std::string info = slurp(dir / "curve_info.json");
  CHECK(info.find("\"max_curvature\": 1.0") != std::string::npos);
  std::string csv = slurp(dir / "curve.csv");
  CHECK(csv.rfind("s,x,y,kappa\n", 0) == 0);
}

TEST_CASE("effective run exports the 1D spectrum") {
  RunConfig cfg = parse_or_die(R"(
[curve]
kind = segment
length = 3.14159265358979323846

[task]
type = effective
j_max = 3

[output]
quiet = true
)");
  fs::path dir = fresh_dir("eff");
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK(run(cfg, opt) == 0);
  std::string csv = slurp(dir / "effective.csv");
  CHECK(csv.rfind("j,mu,error_estimate\n", 0) == 0);
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  int j = 0;
  double mu = 0.0, err = 0.0;
  CHECK(std::sscanf(first.c_str(), "%d,%lf,%lf", &j, &mu, &err) == 3);
  CHECK(j == 1);
  CHECK(mu == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("spectrum run reports missing levels and keeps the partial table") {
  RunConfig cfg = parse_or_die(R"(
[curve]
kind = segment
length = 1.0

[task]
type = spectrum
betas = 1
j_max = 2
n = 64

[output]
quiet = true
)");
  fs::path dir = fresh_dir("spec_partial");
  RunOptions opt;
  opt.out_dir = dir.string();
  int status = run(cfg, opt);
  CHECK(status == 1);  // one row fails
  std::string csv = slurp(dir / "spectrum.csv");
  CHECK(csv.rfind("beta,j,E,N,tol,residual\n", 0) == 0);
  CHECK(csv.find("\n1,1,") != std::string::npos);   // level 1 present
  CHECK(csv.find("\n1,2,") == std::string::npos);   // level 2 absent
  std::string manifest = slurp(dir / "manifest.json");
  CHECK(manifest.find("NoSuchLevel") != std::string::npos);
}

TEST_CASE("identical runs produce byte-identical CSV outputs") {
  const char* text = R"(
[curve]
kind = segment
length = 1.0

[task]
type = sweep
betas = 30,40,60
j_max = 1
n = 128
tol = 0.0001

[output]
quiet = true
)";
  RunConfig cfg = parse_or_die(text);
  fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2"), d3 = fresh_dir("det3");
  RunOptions o1, o2, o3;
  o1.out_dir = d1.string();
  o2.out_dir = d2.string();
  o3.out_dir = d3.string();
  o3.workers = 2;
  CHECK(run(cfg, o1) == 0);
  CHECK(run(cfg, o2) == 0);
  CHECK(run(cfg, o3) == 0);
  CHECK(slurp(d1 / "sweep.csv") == slurp(d2 / "sweep.csv"));
  CHECK(slurp(d1 / "sweep.csv") == slurp(d3 / "sweep.csv"));
  CHECK(slurp(d1 / "sweep.csv").rfind("beta,j,E,mu,delta,N,tol\n", 0) == 0);
}

TEST_CASE("eigenfunction run writes the grid") {
  RunConfig cfg = parse_or_die(R"(
[curve]
kind = segment
length = 1.0

[task]
type = eigenfunction
betas = 40
level = 1
n = 128
bbox = -1,2,-1,1
resolution = 21,21

[output]
quiet = true
)");
  fs::path dir = fresh_dir("grid");
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK(run(cfg, opt) == 0);
  std::string csv = slurp(dir / "grid.csv");
  CHECK(csv.rfind("x,y,u,flag\n", 0) == 0);
  size_t rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 21 * 21 + 1);
}
