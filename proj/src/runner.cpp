#include "arcdelta/runner.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "arcdelta/bs_solver.hpp"
#include "arcdelta/effective1d.hpp"
#include "arcdelta/errors.hpp"
#include "arcdelta/sweep.hpp"

namespace arcdelta {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "arcdelta 0.1.0";

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path.string());
  out << text;
  if (!out) fail(Errc::io_error, "write failed for " + path.string());
}

struct RowStatus {
  std::string task;
  double beta = 0.0;
  int j = 0;
  bool ok = true;
  std::string message;
};

struct RunContext {
  RunConfig cfg;
  fs::path out;
  bool quiet = false;
  bool want_csv = true, want_json = true;
  std::vector<RowStatus> rows;
  json defaults;

  void note(const std::string& line) const {
    if (!quiet) std::cout << line << "\n";
  }
};

void run_curve_info(RunContext& ctx, const ArcCurve& curve) {
  double K = curve.max_curvature();
  double tube_cap = K > 0.0 ? std::min(curve.margin(), 0.5 / K) : curve.margin();
  if (ctx.want_csv) {
    std::string csv = "s,x,y,kappa\n";
    for (const PolylineSample& ps : curve.sample_polyline(257))
      csv += fmt(ps.s) + "," + fmt(ps.p.x) + "," + fmt(ps.p.y) + "," + fmt(ps.kappa) + "\n";
    write_text(ctx.out / "curve.csv", csv);
  }
  if (ctx.want_json) {
    json info = {{"kind", ctx.cfg.curve.kind},
                 {"length", curve.length()},
                 {"margin", curve.margin()},
                 {"max_curvature", K},
                 {"tubular_half_width_cap", tube_cap},
                 {"beta_cap", curve.beta_cap()},
                 {"curve_hash", curve_geometry_hash(curve)}};
    write_text(ctx.out / "curve_info.json", info.dump(2) + "\n");
  }
  ctx.note("L = " + fmt(curve.length()) + ", K = " + fmt(K) + ", l0 = " + fmt(curve.margin()) +
           ", tubular cap a < " + fmt(tube_cap));
  ctx.rows.push_back({"curve-info", 0.0, 0, true, ""});
}

void run_effective(RunContext& ctx, const ArcCurve& curve) {
  double s0 = 0.0, s1 = curve.length();
  if (ctx.cfg.interval) {
    s0 = (*ctx.cfg.interval)[0];
    s1 = (*ctx.cfg.interval)[1];
  }
  int m = ctx.cfg.grid_size > 0 ? ctx.cfg.grid_size : default_grid_size(ctx.cfg.j_max);
  ctx.defaults["grid_size"] = m;
  EffectiveSpectrum spec = dirichlet_eigenvalues(curve, s0, s1, ctx.cfg.j_max, m);
  if (ctx.want_csv) {
    std::string csv = "j,mu,error_estimate\n";
    for (int j = 0; j < ctx.cfg.j_max; j++)
      csv += std::to_string(j + 1) + "," + fmt(spec.eigenvalues[j]) + "," +
             fmt(spec.error_estimates[j]) + "\n";
    write_text(ctx.out / "effective.csv", csv);
  }
  if (ctx.want_json) {
    json out = {{"s0", s0}, {"s1", s1}, {"grid_size", m}, {"mu", spec.eigenvalues},
                {"error_estimate", spec.error_estimates}};
    write_text(ctx.out / "effective.json", out.dump(2) + "\n");
  }
  ctx.note("effective spectrum on [" + fmt(s0) + ", " + fmt(s1) + "]: mu_1 = " +
           fmt(spec.eigenvalues[0]));
  ctx.rows.push_back({"effective", 0.0, 0, true, ""});
}

void run_spectrum(RunContext& ctx, const ArcCurve& curve, int workers) {
  struct Slot {
    double beta;
    int j;
    bool ok = false;
    BoundState state;
    std::string message;
  };
  const auto& betas = ctx.cfg.betas;
  std::vector<Slot> slots(betas.size() * ctx.cfg.j_max);
  for (size_t bi = 0; bi < betas.size(); bi++)
    for (int j = 1; j <= ctx.cfg.j_max; j++) {
      Slot& s = slots[bi * ctx.cfg.j_max + (j - 1)];
      s.beta = betas[bi];
      s.j = j;
    }
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= slots.size()) return;
      Slot& s = slots[idx];
      try {
        s.state = solve_eigenvalue(curve, s.beta, s.j, ctx.cfg.n, ctx.cfg.tol);
        s.ok = true;
      } catch (const Error& e) {
        s.message = e.what();
      }
    }
  };
  int nw = std::max(1, std::min<int>(workers, static_cast<int>(slots.size())));
  if (nw == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; w++) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::string csv = "beta,j,E,N,tol,residual\n";
  json states = json::array();
  for (const Slot& s : slots) {
    if (s.ok) {
      csv += fmt(s.beta) + "," + std::to_string(s.j) + "," + fmt(s.state.energy) + "," +
             std::to_string(s.state.resolution) + "," + fmt(s.state.tol) + "," +
             fmt(s.state.residual) + "\n";
      states.push_back({{"beta", s.beta},
                        {"j", s.j},
                        {"E", s.state.energy},
                        {"N", s.state.resolution},
                        {"tol", s.state.tol},
                        {"residual", s.state.residual}});
      ctx.rows.push_back({"spectrum", s.beta, s.j, true, ""});
    } else {
      ctx.note("row beta=" + fmt(s.beta) + " j=" + std::to_string(s.j) + " failed: " + s.message);
      ctx.rows.push_back({"spectrum", s.beta, s.j, false, s.message});
    }
  }
  if (ctx.want_csv) write_text(ctx.out / "spectrum.csv", csv);
  if (ctx.want_json) write_text(ctx.out / "bound_states.json", states.dump(2) + "\n");
}

void run_sweep(RunContext& ctx, const ArcCurve& curve, int workers) {
  SweepParams params;
  params.n = ctx.cfg.n;
  params.tol = ctx.cfg.tol;
  params.grid_size = ctx.cfg.grid_size;
  params.workers = workers;
  SweepTable table = sweep(curve, ctx.cfg.betas, ctx.cfg.j_max, params);

  std::string csv = "beta,j,E,mu,delta,N,tol\n";
  for (const SweepRow& r : table.rows) {
    if (r.present)
      csv += fmt(r.beta) + "," + std::to_string(r.j) + "," + fmt(r.energy) + "," + fmt(r.mu) +
             "," + fmt(r.delta) + "," + std::to_string(r.n) + "," + fmt(r.tol) + "\n";
    ctx.rows.push_back({"sweep", r.beta, r.j, r.present, r.error});
    if (!r.present)
      ctx.note("row beta=" + fmt(r.beta) + " j=" + std::to_string(r.j) + " absent: " + r.error);
  }
  if (ctx.want_csv) write_text(ctx.out / "sweep.csv", csv);

  if (ctx.want_json) {
    json summary;
    summary["curve_hash"] = table.curve_hash;
    summary["mu"] = table.mu;
    try {
      RateFit fit = fit_rate(table);
      json cj = json::object(), tj = json::object();
      for (size_t j = 0; j < fit.c.size(); j++) {
        cj[std::to_string(j + 1)] = fit.c[j];
        tj[std::to_string(j + 1)] = static_cast<bool>(fit.trend[j]);
      }
      summary["C"] = cj;
      summary["trend"] = tj;
    } catch (const Error& e) {
      summary["rate_fit_error"] = e.what();
    }
    summary["apriori_ok"] = check_apriori(table);
    write_text(ctx.out / "summary.json", summary.dump(2) + "\n");
  }
}

void run_eigenfunction(RunContext& ctx, const ArcCurve& curve) {
  double beta = ctx.cfg.betas.at(0);
  BoundState st;
  try {
    st = solve_eigenvalue(curve, beta, ctx.cfg.level, ctx.cfg.n, ctx.cfg.tol);
  } catch (const Error& e) {
    ctx.rows.push_back({"eigenfunction", beta, ctx.cfg.level, false, e.what()});
    ctx.note(std::string("eigenfunction solve failed: ") + e.what());
    return;
  }
  EigenfunctionGrid grid = eigenfunction_grid(
      st, Vec2{ctx.cfg.bbox[0], ctx.cfg.bbox[2]}, Vec2{ctx.cfg.bbox[1], ctx.cfg.bbox[3]},
      ctx.cfg.resolution[0], ctx.cfg.resolution[1]);
  if (ctx.want_csv) {
    std::string csv = "x,y,u,flag\n";
    for (const GridSample& gs : grid.samples)
      csv += fmt(gs.p.x) + "," + fmt(gs.p.y) + "," + fmt(gs.u) + "," +
             (gs.flagged ? "1" : "0") + "\n";
    write_text(ctx.out / "grid.csv", csv);
  }
  if (ctx.want_json) {
    json out = {{"beta", st.beta},   {"j", st.j},     {"E", st.energy},
                {"N", st.resolution}, {"tol", st.tol}, {"residual", st.residual}};
    write_text(ctx.out / "bound_state.json", out.dump(2) + "\n");
  }
  ctx.rows.push_back({"eigenfunction", beta, ctx.cfg.level, true, ""});
}

}  // namespace

int run(const RunConfig& config, const RunOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  RunContext ctx;
  ctx.cfg = config;
  if (options.out_dir) ctx.cfg.out_dir = *options.out_dir;
  if (options.workers) ctx.cfg.workers = *options.workers;
  ctx.quiet = config.quiet || options.quiet;
  ctx.want_csv = ctx.cfg.format.find("csv") != std::string::npos;
  ctx.want_json = ctx.cfg.format.find("json") != std::string::npos;

  ctx.out = fs::path(ctx.cfg.out_dir);
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec || !fs::is_directory(ctx.out)) {
    std::cerr << "cannot create output directory " << ctx.out << "\n";
    return 2;
  }

  ctx.defaults = {{"n", ctx.cfg.n > 0 ? std::to_string(ctx.cfg.n)
                                      : std::string("max(640, ceil(4 beta L / pi))")},
                  {"tol", ctx.cfg.tol},
                  {"grid_size", ctx.cfg.grid_size > 0 ? std::to_string(ctx.cfg.grid_size)
                                                      : std::string("max(2000, 200 j_max)")},
                  {"workers", ctx.cfg.workers}};

  int status = 0;
  try {
    ArcCurve curve = make_curve(ctx.cfg.curve);
    switch (ctx.cfg.task) {
      case TaskKind::curve_info: run_curve_info(ctx, curve); break;
      case TaskKind::effective: run_effective(ctx, curve); break;
      case TaskKind::spectrum: run_spectrum(ctx, curve, ctx.cfg.workers); break;
      case TaskKind::sweep: run_sweep(ctx, curve, ctx.cfg.workers); break;
      case TaskKind::eigenfunction: run_eigenfunction(ctx, curve); break;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    ctx.rows.push_back({task_name(ctx.cfg.task), 0.0, 0, false, e.what()});
    status = 2;
  }

  for (const RowStatus& r : ctx.rows)
    if (!r.ok && status == 0) status = 1;

  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest;
  manifest["tool"] = kToolVersion;
  manifest["config"] = serialize_config(ctx.cfg);
  manifest["defaults"] = ctx.defaults;
  manifest["wall_time_s"] = wall;
  manifest["timestamp"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  json rows = json::array();
  for (const RowStatus& r : ctx.rows) {
    json jr = {{"task", r.task}, {"ok", r.ok}};
    if (r.beta > 0.0) jr["beta"] = r.beta;
    if (r.j > 0) jr["j"] = r.j;
    if (!r.message.empty()) jr["message"] = r.message;
    rows.push_back(jr);
  }
  manifest["rows"] = rows;
  manifest["exit_status"] = status;
  try {
    write_text(ctx.out / "manifest.json", manifest.dump(2) + "\n");
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return status;
}

}  // namespace arcdelta
