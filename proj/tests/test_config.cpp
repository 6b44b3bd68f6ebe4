#include <doctest.h>

#include <string>

#include "arcdelta/config.hpp"

using namespace arcdelta;

namespace {

const char* kMinimal = R"(# minimal run
[curve]
kind = segment
length = 1.0

[task]
type = spectrum
betas = 100
)";

}  // namespace

TEST_CASE("minimal config parses with defaults filled") {
  ParseResult res = parse_config(kMinimal);
  REQUIRE(res.errors.empty());
  REQUIRE(res.config.has_value());
  const RunConfig& c = *res.config;
  CHECK(c.curve.kind == "segment");
  CHECK(c.curve.length == 1.0);
  CHECK(c.task == TaskKind::spectrum);
  CHECK(c.betas == std::vector<double>{100.0});
  CHECK(c.j_max == 1);
  CHECK(c.n == 0);
  CHECK(c.tol == 1e-5);
  CHECK(c.out_dir == "out");
  CHECK(c.workers == 1);
  CHECK_FALSE(c.quiet);
}

TEST_CASE("negative beta is a semantic error") {
  std::string text = std::string(kMinimal);
  text.replace(text.find("betas = 100"), 11, "betas = -5");
  ParseResult res = parse_config(text);
  CHECK_FALSE(res.config.has_value());
  bool found = false;
  for (const std::string& e : res.errors) found = found || e.find("beta must be positive") != std::string::npos;
  CHECK(found);
}

TEST_CASE("two task blocks are rejected") {
  std::string text = std::string(kMinimal) + "\n[task]\ntype = sweep\nbetas = 50,100,200\n";
  ParseResult res = parse_config(text);
  CHECK_FALSE(res.config.has_value());
  bool found = false;
  for (const std::string& e : res.errors) found = found || e.find("exactly one task") != std::string::npos;
  CHECK(found);
}

TEST_CASE("all semantic errors are aggregated, not just the first") {
  const char* broken = R"(
[curve]
kind = segment
length = -1

[task]
type = spectrum
betas = -5
j_max = 0
tol = -1e-5
)";
  ParseResult res = parse_config(broken);
  CHECK_FALSE(res.config.has_value());
  CHECK(res.errors.size() >= 4);
}

TEST_CASE("syntax errors carry line numbers") {
  const char* broken = R"([curve]
kind = segment
length 1.0

[task]
type = curve-info
)";
  ParseResult res = parse_config(broken);
  CHECK_FALSE(res.config.has_value());
  REQUIRE(res.errors.size() >= 1);
  CHECK(res.errors[0].find("line 3") != std::string::npos);
}

TEST_CASE("unknown keys and sections are reported") {
  std::string text = std::string(kMinimal) + "\n[output]\nshiny = yes\n";
  ParseResult res = parse_config(text);
  CHECK_FALSE(res.config.has_value());
  bool found = false;
  for (const std::string& e : res.errors) found = found || e.find("unknown key output.shiny") != std::string::npos;
  CHECK(found);

  ParseResult res2 = parse_config("[curves]\nkind = segment\n");
  CHECK_FALSE(res2.config.has_value());
}

TEST_CASE("curve keys are validated per kind") {
  std::string text = std::string(kMinimal);
  text.insert(text.find("\n[task]"), "radius = 2.0\n");
  ParseResult res = parse_config(text);
  CHECK_FALSE(res.config.has_value());
  bool found = false;
  for (const std::string& e : res.errors)
    found = found || e.find("curve.radius is not valid for segment") != std::string::npos;
  CHECK(found);
}

TEST_CASE("config round-trips through serialize and parse") {
  RunConfig configs[3];

  configs[0].curve.kind = "segment";
  configs[0].curve.length = 1.0;
  configs[0].task = TaskKind::sweep;
  configs[0].betas = {50.0, 100.0, 200.0, 400.0};
  configs[0].j_max = 2;
  configs[0].tol = 1e-6;

  configs[1].curve.kind = "circular_arc";
  configs[1].curve.radius = 1.0;
  configs[1].curve.angle = 1.5707963267948966;
  configs[1].curve.margin = 0.3;
  configs[1].task = TaskKind::eigenfunction;
  configs[1].betas = {100.0};
  configs[1].bbox = {-1.0, 2.0, -1.0, 1.0};
  configs[1].bbox_set = true;
  configs[1].resolution = {40, 30};
  configs[1].level = 2;
  configs[1].workers = 3;
  configs[1].quiet = true;

  configs[2].curve.kind = "parametric";
  configs[2].curve.x_poly = {0.0, 1.0};
  configs[2].curve.y_poly = {0.0, 0.0, 0.5};
  configs[2].curve.u0 = -1.0;
  configs[2].curve.u1 = 1.0;
  configs[2].task = TaskKind::effective;
  configs[2].interval = std::array<double, 2>{0.0, 1.5};
  configs[2].grid_size = 3000;

  for (const RunConfig& c : configs) {
    std::string text = serialize_config(c);
    ParseResult res = parse_config(text);
    REQUIRE_MESSAGE(res.errors.empty(), text);
    CHECK(*res.config == c);
    // serialization is canonical: a second round trip is byte-identical
    CHECK(serialize_config(*res.config) == text);
  }
}

TEST_CASE("task requirements are validated") {
  const char* no_betas = R"(
[curve]
kind = segment
length = 1

[task]
type = sweep
)";
  CHECK_FALSE(parse_config(no_betas).config.has_value());

  const char* no_bbox = R"(
[curve]
kind = segment
length = 1

[task]
type = eigenfunction
betas = 100
)";
  CHECK_FALSE(parse_config(no_bbox).config.has_value());
}

TEST_CASE("curves instantiate from specs") {
  CurveSpec seg;
  seg.kind = "segment";
  seg.length = 2.0;
  CHECK(make_curve(seg).length() == 2.0);

  CurveSpec par;
  par.kind = "parametric";
  par.x_poly = {0.0, 1.0};
  par.y_poly = {0.0, 0.0, 0.5};
  par.u0 = -1.0;
  par.u1 = 1.0;
  ArcCurve c = make_curve(par);
  CHECK(c.kind() == ArcCurve::Kind::parametric);
  CHECK(c.length() > 2.0);  // parabola arc is longer than its chord
}
