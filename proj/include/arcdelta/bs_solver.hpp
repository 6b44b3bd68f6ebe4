#ifndef ARCDELTA_BS_SOLVER_HPP
#define ARCDELTA_BS_SOLVER_HPP

#include <vector>

#include "arcdelta/geometry.hpp"
#include "arcdelta/linalg.hpp"

namespace arcdelta {

// Symmetric Nystrom discretization of the integral operator with kernel
// (1/2pi) K0(sqrt(-E) |x - y|) on the arc, at spectral parameter E < 0.
struct BsSystem {
  double energy = 0.0;
  double kappa = 0.0;  // sqrt(-E)
  int n = 0;
  double weight = 0.0;          // L / n
  std::vector<double> nodes_s;  // midpoint parameters on [0, L]
  std::vector<Vec2> nodes;      // Gamma(s_i)
  Matrix q;
};

// Discrete bound state: energy root of lambda_j(E) = 1/beta together with the
// charge density on the quadrature nodes, scaled so the reconstructed
// eigenfunction has unit L2 norm over the plane.
struct BoundState {
  int j = 0;
  double beta = 0.0;
  double energy = 0.0;
  std::vector<double> density;  // F on the nodes (eigenvector scaling, see reconstruct_u)
  int resolution = 0;
  double tol = 0.0;
  double residual = 0.0;  // |lambda_j(E) - 1/beta| at the accepted root
  double kappa = 0.0;
  double weight = 0.0;
  std::vector<double> nodes_s;
  std::vector<Vec2> nodes;
  ArcCurve curve;
};

struct GridSample {
  Vec2 p;
  double u = 0.0;
  bool flagged = false;  // within h/2 of the arc, not evaluated
};

struct EigenfunctionGrid {
  Vec2 lo, hi;
  int nx = 0, ny = 0;
  std::vector<GridSample> samples;  // row-major, y outer, x fastest
};

struct DecaySample {
  Vec2 p;
  double dist = 0.0;
  double log_abs_u = 0.0;
};

// Pointwise check of the exponential decay envelope
//   log|u(x)| <= log D + 2 log beta - (beta - log beta) d(x, gamma) / 2
// with D fitted as the minimal feasible constant over the sample set.
struct DecayReport {
  std::vector<DecaySample> samples;
  double slope = 0.0;  // (beta - log beta) / 2
  double log_d = 0.0;  // fitted log D
  int violations = 0;  // against the fitted envelope
  int rejected = 0;    // inputs discarded for lying inside the tube threshold
};

// Default resolution: max(640, ceil(4 beta L / pi)), so the transverse length
// scale 2/beta is resolved along the arc.
int default_node_count(const ArcCurve& curve, double beta);

// Kernel matrix at energy E < 0 with n midpoint nodes. Off-diagonal entries
// are plain midpoint values; the diagonal carries the lattice-exact weight of
// the logarithmic singularity (see the implementation notes).
BsSystem assemble(const ArcCurve& curve, double energy, int n);

// Largest j_max eigenvalues, descending.
std::vector<double> bs_eigenvalues(const BsSystem& sys, int j_max);

// Bisection on lambda_j(E) = 1/beta over the a-priori bracket
// [-1.2 (beta + log beta)^2 / 4, -1e-8]; n = 0 picks the default resolution.
BoundState solve_eigenvalue(const ArcCurve& curve, double beta, int j, int n = 0,
                            double tol = 1e-5);

// Single-layer reconstruction u(x) = sum_i sqrt(w) (1/2pi) K0(kappa |x - x_i|) F_i.
// Requires x at least h/2 away from every quadrature node.
double reconstruct_u(const BoundState& state, Vec2 x);

EigenfunctionGrid eigenfunction_grid(const BoundState& state, Vec2 lo, Vec2 hi, int nx, int ny);

// Envelope check for points outside the tube W(6 log(beta)/beta); points
// inside the threshold are rejected from the report input, not errors.
DecayReport verify_decay(const BoundState& state, const std::vector<Vec2>& points);

// Deterministic exterior sample generator for decay checks: normal rays from
// interior arc points plus end rays, log-spaced distances.
std::vector<Vec2> decay_sample_points(const ArcCurve& curve, double beta);

}  // namespace arcdelta

#endif
