#ifndef ARCDELTA_CONFIG_HPP
#define ARCDELTA_CONFIG_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arcdelta/geometry.hpp"

namespace arcdelta {

struct CurveSpec {
  std::string kind;  // segment | circular_arc | parametric
  double length = 0.0;
  double radius = 0.0;
  double angle = 0.0;
  std::vector<double> x_poly, y_poly;  // ascending polynomial coefficients
  double u0 = 0.0, u1 = 0.0;
  std::optional<double> margin;

  bool operator==(const CurveSpec&) const = default;
};

enum class TaskKind { curve_info, effective, spectrum, sweep, eigenfunction };

const char* task_name(TaskKind t);

struct RunConfig {
  CurveSpec curve;
  TaskKind task = TaskKind::curve_info;
  std::vector<double> betas;
  int j_max = 1;
  int n = 0;          // 0 = default resolution
  double tol = 1e-5;
  int grid_size = 0;  // 0 = default 1D grid
  std::optional<std::array<double, 2>> interval;      // effective
  std::array<double, 4> bbox{0.0, 0.0, 0.0, 0.0};     // eigenfunction: x0,x1,y0,y1
  bool bbox_set = false;
  std::array<int, 2> resolution{50, 50};              // eigenfunction grid
  int level = 1;                                      // eigenfunction j
  std::string out_dir = "out";
  std::string format = "csv,json";
  int workers = 1;
  bool quiet = false;

  bool operator==(const RunConfig&) const = default;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;  // all of them, not just the first
};

// Parses the structured key-value run description (ini-style sections
// [curve], [task], [output]). Syntax errors carry line numbers; semantic
// errors are aggregated.
ParseResult parse_config(const std::string& text);

// Canonical serialization; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

ArcCurve make_curve(const CurveSpec& spec);

}  // namespace arcdelta

#endif
