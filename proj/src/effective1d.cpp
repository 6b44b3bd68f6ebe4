#include "arcdelta/effective1d.hpp"

#include <cmath>
#include <string>

#include "arcdelta/errors.hpp"
#include "arcdelta/linalg.hpp"

namespace arcdelta {

std::vector<double> dirichlet_eigenvalues_raw(const ArcCurve& curve, double s0, double s1,
                                              int j_max, int grid_size) {
  if (!(s1 > s0)) fail(Errc::bad_argument, "interval must be non-degenerate");
  double l0 = curve.margin(), L = curve.length();
  if (s0 < -l0 - 1e-12 || s1 > L + l0 + 1e-12)
    fail(Errc::bad_argument, "interval outside the curve extension");
  if (j_max < 1) fail(Errc::bad_argument, "j_max must be at least 1");
  if (grid_size < 8 * j_max) fail(Errc::bad_argument, "grid too coarse: need at least 8*j_max points");

  const int m = grid_size;
  const double h = (s1 - s0) / (m + 1);
  std::vector<double> d(m), e(m - 1, -1.0 / (h * h));
  for (int i = 0; i < m; i++) {
    double kap = curve.curvature(s0 + (i + 1) * h);
    d[i] = 2.0 / (h * h) - 0.25 * kap * kap;
  }
  std::vector<double> mu = tridiagonal_eigenvalues(std::move(d), std::move(e));
  mu.resize(j_max);
  return mu;
}

EffectiveSpectrum dirichlet_eigenvalues(const ArcCurve& curve, double s0, double s1, int j_max,
                                        int grid_size) {
  std::vector<double> coarse = dirichlet_eigenvalues_raw(curve, s0, s1, j_max, grid_size);
  std::vector<double> fine = dirichlet_eigenvalues_raw(curve, s0, s1, j_max, 2 * grid_size + 1);

  EffectiveSpectrum out;
  out.s0 = s0;
  out.s1 = s1;
  out.grid_size = grid_size;
  out.grid_step = (s1 - s0) / (grid_size + 1);
  out.eigenvalues.resize(j_max);
  out.error_estimates.resize(j_max);
  for (int j = 0; j < j_max; j++) {
    out.eigenvalues[j] = (4.0 * fine[j] - coarse[j]) / 3.0;
    out.error_estimates[j] = std::abs(fine[j] - coarse[j]) / 3.0;
  }
  return out;
}

EffectiveSpectrum extended_eigenvalues(const ArcCurve& curve, double beta, int j_max,
                                       int grid_size) {
  if (!(beta > 1.0)) fail(Errc::bad_argument, "beta must exceed 1");
  double a = 6.0 * std::log(beta) / beta;
  if (a >= curve.margin())
    fail(Errc::margin_exceeded,
         "6 log(beta)/beta = " + std::to_string(a) + " exceeds the margin l0 = " +
             std::to_string(curve.margin()) + "; usable beta starts near " +
             std::to_string(curve.beta_cap()));
  if (grid_size <= 0) grid_size = default_grid_size(j_max);
  return dirichlet_eigenvalues(curve, -a, curve.length() + a, j_max, grid_size);
}

}  // namespace arcdelta
