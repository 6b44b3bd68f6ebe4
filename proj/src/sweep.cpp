#include "arcdelta/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <thread>

#include "arcdelta/bs_solver.hpp"
#include "arcdelta/effective1d.hpp"
#include "arcdelta/errors.hpp"

namespace arcdelta {

std::uint64_t curve_geometry_hash(const ArcCurve& curve) {
  // FNV-1a over a fixed sampling of (s, x, y, kappa); canonical and
  // independent of how the curve was specified
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  };
  for (const PolylineSample& ps : curve.sample_polyline(64)) {
    mix(ps.s);
    mix(ps.p.x);
    mix(ps.p.y);
    mix(ps.kappa);
  }
  return h;
}

SweepTable sweep(const ArcCurve& curve, const std::vector<double>& betas, int j_max,
                 const SweepParams& params) {
  if (betas.empty()) fail(Errc::bad_argument, "empty beta list");
  if (j_max < 1) fail(Errc::bad_argument, "j_max must be at least 1");
  for (size_t i = 0; i < betas.size(); i++) {
    if (!(betas[i] >= 20.0)) fail(Errc::bad_argument, "sweep betas must be at least 20");
    if (i > 0 && !(betas[i] > betas[i - 1]))
      fail(Errc::bad_argument, "betas must be strictly ascending");
  }
  double beta_max = betas.back();
  if (6.0 * std::log(beta_max) / beta_max >= curve.margin())
    fail(Errc::margin_exceeded, "6 log(beta)/beta must stay below the margin l0 over the sweep");

  int m1d = params.grid_size > 0 ? params.grid_size : default_grid_size(j_max);
  EffectiveSpectrum eff = dirichlet_eigenvalues(curve, 0.0, curve.length(), j_max, m1d);

  SweepTable table;
  table.mu = eff.eigenvalues;
  table.curve_hash = curve_geometry_hash(curve);
  {
    auto now = std::chrono::system_clock::now();
    table.created = std::to_string(
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count());
  }

  const int n_rows = static_cast<int>(betas.size()) * j_max;
  table.rows.resize(n_rows);
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= n_rows) return;
      int j = idx / static_cast<int>(betas.size()) + 1;  // group by j
      double beta = betas[idx % betas.size()];
      SweepRow& row = table.rows[idx];
      row.beta = beta;
      row.j = j;
      row.mu = table.mu[j - 1];
      row.tol = params.tol;
      row.n = params.n > 0 ? params.n : default_node_count(curve, beta);
      try {
        BoundState st = solve_eigenvalue(curve, beta, j, params.n, params.tol);
        row.present = true;
        row.energy = st.energy;
        row.delta = st.energy + 0.25 * beta * beta - row.mu;
      } catch (const Error& e) {
        row.present = false;
        row.error = e.what();
      }
    }
  };

  int n_workers = std::max(1, std::min(params.workers, n_rows));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; w++) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  bool any_present = false;
  for (const SweepRow& r : table.rows) any_present = any_present || r.present;
  if (!any_present) {
    for (const SweepRow& r : table.rows)
      if (!r.error.empty()) fail(Errc::no_such_level, "all sweep rows failed; first: " + r.error);
  }
  return table;
}

RateFit fit_rate(const SweepTable& table) {
  int j_max = 0;
  for (const SweepRow& r : table.rows) j_max = std::max(j_max, r.j);
  if (j_max == 0) fail(Errc::bad_argument, "empty sweep table");

  RateFit fit;
  fit.c.assign(j_max, 0.0);
  fit.trend.assign(j_max, false);
  fit.rows_used.assign(j_max, 0);
  for (int j = 1; j <= j_max; j++) {
    std::vector<const SweepRow*> rows;
    for (const SweepRow& r : table.rows)
      if (r.j == j && r.present) rows.push_back(&r);
    if (rows.size() < 3)
      fail(Errc::bad_argument, "need at least 3 betas per level to fit the rate");
    fit.rows_used[j - 1] = static_cast<int>(rows.size());

    double c = 0.0;
    for (const SweepRow* r : rows)
      c = std::max(c, std::abs(r->delta) * r->beta / std::log(r->beta));
    fit.c[j - 1] = c;

    // non-increasing over the top half, with a net shrink (a flat remainder
    // violates the decay)
    size_t start = (rows.size() - 1) / 2;
    bool ok = true;
    for (size_t k = start; k + 1 < rows.size(); k++)
      ok = ok && std::abs(rows[k + 1]->delta) <= std::abs(rows[k]->delta) * (1.0 + 1e-12);
    ok = ok && std::abs(rows.back()->delta) < std::abs(rows[start]->delta) * (1.0 - 1e-9);
    fit.trend[j - 1] = ok;
  }
  return fit;
}

bool check_apriori(const SweepTable& table) {
  for (const SweepRow& r : table.rows) {
    if (!r.present || r.beta < 50.0) continue;
    double root = std::sqrt(-r.energy);
    double lb = 0.5 * (r.beta - std::log(r.beta));
    double ub = 0.5 * (r.beta + std::log(r.beta));
    if (root < lb || root > ub) return false;
  }
  return true;
}

}  // namespace arcdelta
