#include "arcdelta/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "arcdelta/errors.hpp"

namespace arcdelta {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc{} && res.ptr == e;
}

bool parse_int(const std::string& s, int& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc{} && res.ptr == e;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct KeyValue {
  std::string value;
  int line;
  bool used = false;
};

}  // namespace

const char* task_name(TaskKind t) {
  switch (t) {
    case TaskKind::curve_info: return "curve-info";
    case TaskKind::effective: return "effective";
    case TaskKind::spectrum: return "spectrum";
    case TaskKind::sweep: return "sweep";
    case TaskKind::eigenfunction: return "eigenfunction";
  }
  return "?";
}

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  auto& errors = result.errors;

  std::map<std::string, KeyValue> kv;  // "section.key" -> value
  std::map<std::string, int> section_count;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "curve" && section != "task" && section != "output") {
        errors.push_back("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
        section.clear();
        continue;
      }
      section_count[section]++;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    if (section.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": key outside any section");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::string full = section + "." + key;
    if (kv.count(full)) {
      errors.push_back("line " + std::to_string(lineno) + ": duplicate key " + full);
      continue;
    }
    kv[full] = {value, lineno, false};
  }

  if (section_count["task"] > 1) errors.push_back("exactly one task block is allowed");
  if (section_count["task"] == 0) errors.push_back("missing [task] section");
  if (section_count["curve"] > 1) errors.push_back("exactly one curve block is allowed");
  if (section_count["curve"] == 0) errors.push_back("missing [curve] section");
  if (section_count["output"] > 1) errors.push_back("exactly one output block is allowed");

  RunConfig cfg;

  auto get = [&](const std::string& full) -> KeyValue* {
    auto it = kv.find(full);
    if (it == kv.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  };
  auto get_double = [&](const std::string& full, double& out) {
    KeyValue* v = get(full);
    if (!v) return false;
    if (!parse_double(v->value, out)) {
      errors.push_back("line " + std::to_string(v->line) + ": " + full + " must be a number");
      return false;
    }
    return true;
  };
  auto get_int = [&](const std::string& full, int& out) {
    KeyValue* v = get(full);
    if (!v) return false;
    if (!parse_int(v->value, out)) {
      errors.push_back("line " + std::to_string(v->line) + ": " + full + " must be an integer");
      return false;
    }
    return true;
  };
  auto get_list = [&](const std::string& full, std::vector<double>& out) {
    KeyValue* v = get(full);
    if (!v) return false;
    out.clear();
    for (const std::string& part : split(v->value, ',')) {
      double d;
      if (!parse_double(part, d)) {
        errors.push_back("line " + std::to_string(v->line) + ": " + full +
                         " must be a comma-separated number list");
        return false;
      }
      out.push_back(d);
    }
    return true;
  };

  // [curve]
  if (KeyValue* v = get("curve.kind")) {
    cfg.curve.kind = v->value;
    if (v->value != "segment" && v->value != "circular_arc" && v->value != "parametric")
      errors.push_back("line " + std::to_string(v->line) +
                       ": curve.kind must be segment, circular_arc or parametric");
  } else if (section_count["curve"] == 1) {
    errors.push_back("curve.kind is required");
  }
  get_double("curve.length", cfg.curve.length);
  get_double("curve.radius", cfg.curve.radius);
  get_double("curve.angle", cfg.curve.angle);
  get_list("curve.x_poly", cfg.curve.x_poly);
  get_list("curve.y_poly", cfg.curve.y_poly);
  get_double("curve.u0", cfg.curve.u0);
  get_double("curve.u1", cfg.curve.u1);
  {
    double m;
    if (get_double("curve.margin", m)) {
      cfg.curve.margin = m;
      if (!(m > 0.0)) errors.push_back("curve.margin must be positive");
    }
  }
  auto reject_keys = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (kv.count(k))
        errors.push_back(std::string(k) + " is not valid for " + cfg.curve.kind + " curves");
  };
  if (cfg.curve.kind == "segment") {
    if (!(cfg.curve.length > 0.0)) errors.push_back("segment curves need a positive curve.length");
    reject_keys({"curve.radius", "curve.angle", "curve.x_poly", "curve.y_poly", "curve.u0",
                 "curve.u1"});
  }
  if (cfg.curve.kind == "circular_arc") {
    if (!(cfg.curve.radius > 0.0)) errors.push_back("circular_arc curves need a positive curve.radius");
    if (!(cfg.curve.angle > 0.0)) errors.push_back("circular_arc curves need a positive curve.angle");
    reject_keys({"curve.length", "curve.x_poly", "curve.y_poly", "curve.u0", "curve.u1"});
  }
  if (cfg.curve.kind == "parametric") {
    if (cfg.curve.x_poly.empty() || cfg.curve.y_poly.empty())
      errors.push_back("parametric curves need curve.x_poly and curve.y_poly");
    if (!(cfg.curve.u1 > cfg.curve.u0))
      errors.push_back("parametric curves need curve.u1 > curve.u0");
    reject_keys({"curve.length", "curve.radius", "curve.angle"});
  }

  // [task]
  if (KeyValue* v = get("task.type")) {
    if (v->value == "curve-info") cfg.task = TaskKind::curve_info;
    else if (v->value == "effective") cfg.task = TaskKind::effective;
    else if (v->value == "spectrum") cfg.task = TaskKind::spectrum;
    else if (v->value == "sweep") cfg.task = TaskKind::sweep;
    else if (v->value == "eigenfunction") cfg.task = TaskKind::eigenfunction;
    else
      errors.push_back("line " + std::to_string(v->line) + ": unknown task.type " + v->value);
  } else if (section_count["task"] == 1) {
    errors.push_back("task.type is required");
  }
  get_list("task.betas", cfg.betas);
  for (double b : cfg.betas)
    if (!(b > 0.0)) {
      errors.push_back("beta must be positive");
      break;
    }
  get_int("task.j_max", cfg.j_max);
  if (cfg.j_max < 1) errors.push_back("task.j_max must be at least 1");
  get_int("task.n", cfg.n);
  if (cfg.n < 0) errors.push_back("task.n must be non-negative (0 = default)");
  get_double("task.tol", cfg.tol);
  if (!(cfg.tol > 0.0)) errors.push_back("task.tol must be positive");
  get_int("task.grid_size", cfg.grid_size);
  if (cfg.grid_size < 0) errors.push_back("task.grid_size must be non-negative (0 = default)");
  {
    std::vector<double> iv;
    if (get_list("task.interval", iv)) {
      if (iv.size() != 2 || !(iv[1] > iv[0]))
        errors.push_back("task.interval must be two ascending numbers");
      else
        cfg.interval = std::array<double, 2>{iv[0], iv[1]};
    }
  }
  {
    std::vector<double> bb;
    if (get_list("task.bbox", bb)) {
      if (bb.size() != 4 || !(bb[1] > bb[0]) || !(bb[3] > bb[2])) {
        errors.push_back("task.bbox must be x0,x1,y0,y1 with x1 > x0 and y1 > y0");
      } else {
        cfg.bbox = {bb[0], bb[1], bb[2], bb[3]};
        cfg.bbox_set = true;
      }
    }
  }
  {
    std::vector<double> res;
    if (get_list("task.resolution", res)) {
      if (res.size() != 2 || res[0] < 2 || res[1] < 2)
        errors.push_back("task.resolution must be two integers >= 2");
      else
        cfg.resolution = {static_cast<int>(res[0]), static_cast<int>(res[1])};
    }
  }
  get_int("task.level", cfg.level);
  if (cfg.level < 1) errors.push_back("task.level must be at least 1");

  // task-specific requirements
  if (errors.empty()) {
    if ((cfg.task == TaskKind::spectrum || cfg.task == TaskKind::sweep ||
         cfg.task == TaskKind::eigenfunction) &&
        cfg.betas.empty())
      errors.push_back(std::string(task_name(cfg.task)) + " tasks need task.betas");
    if (cfg.task == TaskKind::eigenfunction && cfg.betas.size() != 1)
      errors.push_back("eigenfunction tasks need exactly one beta");
    if (cfg.task == TaskKind::eigenfunction && !cfg.bbox_set)
      errors.push_back("eigenfunction tasks need task.bbox");
  }

  // [output]
  if (KeyValue* v = get("output.dir")) cfg.out_dir = v->value;
  if (KeyValue* v = get("output.format")) {
    cfg.format = v->value;
    for (const std::string& part : split(v->value, ','))
      if (part != "csv" && part != "json")
        errors.push_back("line " + std::to_string(v->line) + ": unknown output format " + part);
  }
  get_int("output.workers", cfg.workers);
  if (cfg.workers < 1) errors.push_back("output.workers must be at least 1");
  if (KeyValue* v = get("output.quiet")) {
    if (v->value == "true") cfg.quiet = true;
    else if (v->value == "false") cfg.quiet = false;
    else errors.push_back("line " + std::to_string(v->line) + ": output.quiet must be true or false");
  }

  for (const auto& [full, v] : kv)
    if (!v.used) errors.push_back("line " + std::to_string(v.line) + ": unknown key " + full);

  if (errors.empty()) result.config = std::move(cfg);
  return result;
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  auto line = [&out](const std::string& s) { out += s + "\n"; };
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); i++) s += (i ? "," : "") + fmt(v[i]);
    return s;
  };

  line("[curve]");
  line("kind = " + c.curve.kind);
  if (c.curve.kind == "segment") line("length = " + fmt(c.curve.length));
  if (c.curve.kind == "circular_arc") {
    line("radius = " + fmt(c.curve.radius));
    line("angle = " + fmt(c.curve.angle));
  }
  if (c.curve.kind == "parametric") {
    line("x_poly = " + join(c.curve.x_poly));
    line("y_poly = " + join(c.curve.y_poly));
    line("u0 = " + fmt(c.curve.u0));
    line("u1 = " + fmt(c.curve.u1));
  }
  if (c.curve.margin) line("margin = " + fmt(*c.curve.margin));

  line("");
  line("[task]");
  line(std::string("type = ") + task_name(c.task));
  if (!c.betas.empty()) line("betas = " + join(c.betas));
  line("j_max = " + std::to_string(c.j_max));
  line("n = " + std::to_string(c.n));
  line("tol = " + fmt(c.tol));
  line("grid_size = " + std::to_string(c.grid_size));
  if (c.interval) line("interval = " + fmt((*c.interval)[0]) + "," + fmt((*c.interval)[1]));
  if (c.bbox_set)
    line("bbox = " + fmt(c.bbox[0]) + "," + fmt(c.bbox[1]) + "," + fmt(c.bbox[2]) + "," +
         fmt(c.bbox[3]));
  line("resolution = " + std::to_string(c.resolution[0]) + "," + std::to_string(c.resolution[1]));
  line("level = " + std::to_string(c.level));

  line("");
  line("[output]");
  line("dir = " + c.out_dir);
  line("format = " + c.format);
  line("workers = " + std::to_string(c.workers));
  line(std::string("quiet = ") + (c.quiet ? "true" : "false"));
  return out;
}

ArcCurve make_curve(const CurveSpec& spec) {
  if (spec.kind == "segment") return ArcCurve::make_segment(spec.length, spec.margin);
  if (spec.kind == "circular_arc")
    return ArcCurve::make_circular_arc(spec.radius, spec.angle, spec.margin);
  if (spec.kind == "parametric") {
    std::vector<double> xp = spec.x_poly, yp = spec.y_poly;
    auto horner = [](const std::vector<double>& c, double u) {
      double r = 0.0;
      for (size_t i = c.size(); i-- > 0;) r = r * u + c[i];
      return r;
    };
    auto map = [xp, yp, horner](double u) { return Vec2{horner(xp, u), horner(yp, u)}; };
    return ArcCurve::make_parametric(map, spec.u0, spec.u1, spec.margin);
  }
  fail(Errc::bad_argument, "unknown curve kind " + spec.kind);
}

}  // namespace arcdelta
