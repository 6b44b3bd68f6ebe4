#ifndef ARCDELTA_EFFECTIVE1D_HPP
#define ARCDELTA_EFFECTIVE1D_HPP

#include <vector>

#include "arcdelta/geometry.hpp"

namespace arcdelta {

// Dirichlet spectrum of -d^2/ds^2 - kappa(s)^2/4 on [s0, s1].
struct EffectiveSpectrum {
  double s0 = 0.0, s1 = 0.0;
  int grid_size = 0;                    // interior points of the coarse grid
  double grid_step = 0.0;               // (s1 - s0) / (grid_size + 1)
  std::vector<double> eigenvalues;      // Richardson-extrapolated, ascending
  std::vector<double> error_estimates;  // |fine - coarse| / 3 per eigenvalue
};

inline int default_grid_size(int j_max) { return j_max > 10 ? 200 * j_max : 2000; }

// Plain second-order finite differences, no extrapolation. Exposed for the
// convergence-order checks.
std::vector<double> dirichlet_eigenvalues_raw(const ArcCurve& curve, double s0, double s1,
                                              int j_max, int grid_size);

// Three-point finite differences on grids of M and 2M+1 interior points with
// Richardson extrapolation of the leading h^2 error term.
EffectiveSpectrum dirichlet_eigenvalues(const ArcCurve& curve, double s0, double s1, int j_max,
                                        int grid_size);

// Same operator on the prolonged interval [-a, L+a] with a = 6 log(beta)/beta.
// Fails with MarginExceeded (reporting the usable beta cap) if a >= l0.
EffectiveSpectrum extended_eigenvalues(const ArcCurve& curve, double beta, int j_max,
                                       int grid_size = 0);

}  // namespace arcdelta

#endif
