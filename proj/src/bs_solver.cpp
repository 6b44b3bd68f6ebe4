#include "arcdelta/bs_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arcdelta/bessel.hpp"
#include "arcdelta/errors.hpp"

namespace arcdelta {

namespace {

constexpr double kPi = 3.14159265358979323846;

// zeta(3), zeta(5), zeta(7), zeta(9) and binom(-1/2, j), j = 1..4
const double kOddZeta[4] = {1.2020569031595942854, 1.0369277551433699263,
                            1.0083492773819228268, 1.0020083928260822144};
const double kHalfBinom[4] = {-0.5, 0.375, -0.3125, 0.2734375};

// Diagonal weight of the Nystrom matrix. The row sum of midpoint values
// approximates the integral of K0(kappa |s - sigma|) over the punctured
// lattice; the weight below makes the combination exact for the straight
// infinite line (Schlomilch:
//   sum_{n>=1} K0(n x) = 1/2 (gamma + log(x/4pi)) + pi/(2x)
//                        + pi sum_{n>=1} [(x^2 + 4pi^2 n^2)^{-1/2} - (2pi n)^{-1}]).
// The naive exact panel integral h (log(h/2) - 1) of the log term leaves an
// O(h) lattice defect of size h (log(pi) - 1) per row, which the energy root
// amplifies by dE/dlambda ~ beta^3/2; this weight removes it.
double diagonal_weight(double kappa, double h) {
  double x = kappa * h;
  double q2 = x / (2.0 * kPi) * (x / (2.0 * kPi));
  double tail;
  if (q2 <= 0.25) {
    tail = 0.0;
    double p = 1.0;
    for (int j = 0; j < 4; j++) {
      p *= q2;
      tail += kHalfBinom[j] * kOddZeta[j] * p;
    }
  } else {
    tail = 0.0;
    for (int n = 2000000; n >= 1; n--)
      tail += 2.0 * kPi * (1.0 / std::sqrt(x * x + 4.0 * kPi * kPi * n * n) - 1.0 / (2.0 * kPi * n));
  }
  return -(h / (2.0 * kPi)) * (euler_gamma + std::log(x / (4.0 * kPi)) + tail);
}

double lambda_j_at(const ArcCurve& curve, double energy, int n, int j) {
  BsSystem sys = assemble(curve, energy, n);
  return bs_eigenvalues(sys, j).back();
}

// u(x) without the node-distance guard; callers must ensure the point is
// at least h/2 away from the arc.
double reconstruct_unchecked(const BoundState& st, Vec2 x) {
  double sw = std::sqrt(st.weight);
  double sum = 0.0;
  for (int i = 0; i < st.resolution; i++) {
    double r = norm(x - st.nodes[i]);
    sum += bessel_k0(st.kappa * r).value * st.density[i];
  }
  return sum * sw / (2.0 * kPi);
}

}  // namespace

int default_node_count(const ArcCurve& curve, double beta) {
  // floor 640: the endpoint layers of the density converge like h^2 log h in
  // the energy, and 400 nodes leave E_1(beta=100) ~2e-3 away from the N->2N
  // refinement (measured on the unit segment); 640 keeps it below 1e-3
  return std::max(640, static_cast<int>(std::ceil(4.0 * beta * curve.length() / kPi)));
}

BsSystem assemble(const ArcCurve& curve, double energy, int n) {
  if (energy >= 0.0)
    fail(Errc::essential_spectrum, "E >= 0 lies in the essential spectrum [0, inf)");
  if (n < 16) fail(Errc::bad_argument, "need at least 16 quadrature nodes");
  double kappa = std::sqrt(-energy);
  double length = curve.length();
  if (kappa * length > 1e4) fail(Errc::bad_argument, "sqrt(-E) * L exceeds the sanity cap 1e4");

  BsSystem sys;
  sys.energy = energy;
  sys.kappa = kappa;
  sys.n = n;
  sys.weight = length / n;
  sys.nodes_s.resize(n);
  sys.nodes.resize(n);
  for (int i = 0; i < n; i++) {
    sys.nodes_s[i] = (i + 0.5) * sys.weight;
    sys.nodes[i] = curve.point(sys.nodes_s[i]);
  }

  sys.q = Matrix(n, n);
  const double scale = sys.weight / (2.0 * kPi);
  for (int i = 0; i < n; i++) {
    for (int j = i + 1; j < n; j++) {
      double r = norm(sys.nodes[i] - sys.nodes[j]);
      double v = scale * bessel_k0(kappa * r).value;
      sys.q(i, j) = v;
      sys.q(j, i) = v;
    }
    sys.q(i, i) = diagonal_weight(kappa, sys.weight);
  }
  return sys;
}

std::vector<double> bs_eigenvalues(const BsSystem& sys, int j_max) {
  if (j_max < 1 || j_max > sys.n) fail(Errc::bad_argument, "j_max must lie in [1, n]");
  std::vector<double> asc = symmetric_eigenvalues(sys.q);
  std::vector<double> out(j_max);
  for (int k = 0; k < j_max; k++) out[k] = asc[sys.n - 1 - k];
  return out;
}

BoundState solve_eigenvalue(const ArcCurve& curve, double beta, int j, int n, double tol) {
  if (!(beta > 0.0)) fail(Errc::bad_argument, "beta must be positive");
  if (j < 1) fail(Errc::bad_argument, "level index must be at least 1");
  if (!(tol > 0.0)) fail(Errc::bad_argument, "tolerance must be positive");
  if (n <= 0) n = default_node_count(curve, beta);
  if (j > n) fail(Errc::bad_argument, "level index exceeds the resolution");

  const double target = 1.0 / beta;
  double e_hi = -1e-8;
  double half = 0.5 * (beta + std::log(beta));
  double e_lo = std::min(-1.2 * half * half, 2.0 * e_hi);

  // coarse scan, uniform in sqrt(-E); the bisection contract needs exactly
  // one sign change of g(E) = lambda_j(E) - 1/beta over the bracket
  const int n_scan = 12;
  std::vector<double> es(n_scan), gs(n_scan);
  double k_lo = std::sqrt(-e_hi), k_hi = std::sqrt(-e_lo);
  for (int m = 0; m < n_scan; m++) {
    double kap = k_hi + (k_lo - k_hi) * m / (n_scan - 1);  // ascending in E
    es[m] = -kap * kap;
    gs[m] = lambda_j_at(curve, es[m], n, j) - target;
  }
  int changes = 0, bracket = -1;
  for (int m = 0; m + 1 < n_scan; m++)
    if ((gs[m] < 0.0) != (gs[m + 1] < 0.0)) {
      changes++;
      bracket = m;
    }
  if (changes > 1)
    fail(Errc::non_monotone, "lambda_" + std::to_string(j) +
                                 "(E) - 1/beta changed sign more than once; increase n");
  if (changes == 0) {
    if (gs[n_scan - 1] < 0.0)
      fail(Errc::no_such_level, "fewer than " + std::to_string(j) +
                                    " bound states at beta = " + std::to_string(beta));
    fail(Errc::bracket_failed, "root lies below the a-priori bracket");
  }

  double ea = es[bracket], eb = es[bracket + 1];  // g(ea) and g(eb) differ in sign
  bool low_neg = gs[bracket] < 0.0;
  while (eb - ea > tol) {
    double mid = 0.5 * (ea + eb);
    double gm = lambda_j_at(curve, mid, n, j) - target;
    if ((gm < 0.0) == low_neg) ea = mid; else eb = mid;
  }
  double e_root = 0.5 * (ea + eb);

  BsSystem sys = assemble(curve, e_root, n);
  SymmetricEigen eig = symmetric_eigen(sys.q);

  BoundState st;
  st.j = j;
  st.beta = beta;
  st.energy = e_root;
  st.resolution = n;
  st.tol = tol;
  st.residual = std::abs(eig.values[n - j] - target);
  st.kappa = sys.kappa;
  st.weight = sys.weight;
  st.nodes_s = std::move(sys.nodes_s);
  st.nodes = std::move(sys.nodes);
  st.curve = curve;

  st.density.resize(n);
  for (int i = 0; i < n; i++) st.density[i] = eig.vectors(i, n - j);

  // scale so the reconstructed u has unit L2 norm over the plane, using
  // ||u||^2 = <F, dT/dE F> with the derivative kernel (r/4 pi kappa) K1(kappa r)
  double norm2_u = 0.0;
  double kap = st.kappa;
  for (int i = 0; i < n; i++) {
    for (int l = i + 1; l < n; l++) {
      double r = norm(st.nodes[i] - st.nodes[l]);
      double ker = r * bessel_k1(kap * r).value / (4.0 * kPi * kap);
      norm2_u += 2.0 * ker * st.density[i] * st.density[l];
    }
    norm2_u += st.density[i] * st.density[i] / (4.0 * kPi * kap * kap);
  }
  norm2_u *= st.weight;
  double rescale = 1.0 / std::sqrt(norm2_u);
  for (double& f : st.density) f *= rescale;

  // fix an orientation so repeated runs give the same sign
  double peak = 0.0;
  for (double f : st.density) peak = std::max(peak, std::abs(f));
  for (int i = 0; i < n; i++) {
    if (std::abs(st.density[i]) > 1e-6 * peak) {
      if (st.density[i] < 0.0)
        for (double& f : st.density) f = -f;
      break;
    }
  }

  return st;
}

double reconstruct_u(const BoundState& state, Vec2 x) {
  double hw = 0.5 * state.weight;
  for (const Vec2& node : state.nodes)
    if (norm(x - node) < hw)
      fail(Errc::too_close_to_arc, "evaluation point within h/2 of a quadrature node");
  return reconstruct_unchecked(state, x);
}

EigenfunctionGrid eigenfunction_grid(const BoundState& state, Vec2 lo, Vec2 hi, int nx, int ny) {
  if (!(hi.x > lo.x) || !(hi.y > lo.y)) fail(Errc::bad_argument, "degenerate bounding box");
  if (nx < 2 || ny < 2) fail(Errc::bad_argument, "grid needs at least 2x2 samples");
  for (const Vec2& node : state.nodes)
    if (node.x < lo.x || node.x > hi.x || node.y < lo.y || node.y > hi.y)
      fail(Errc::bad_argument, "bounding box must contain the arc");

  EigenfunctionGrid grid;
  grid.lo = lo;
  grid.hi = hi;
  grid.nx = nx;
  grid.ny = ny;
  grid.samples.reserve(static_cast<size_t>(nx) * ny);
  double hw = 0.5 * state.weight;
  for (int iy = 0; iy < ny; iy++) {
    double y = lo.y + (hi.y - lo.y) * iy / (ny - 1);
    for (int ix = 0; ix < nx; ix++) {
      Vec2 p{lo.x + (hi.x - lo.x) * ix / (nx - 1), y};
      GridSample gs;
      gs.p = p;
      if (state.curve.distance_to_arc(p) < hw) {
        gs.flagged = true;
      } else {
        gs.u = reconstruct_unchecked(state, p);
      }
      grid.samples.push_back(gs);
    }
  }
  return grid;
}

DecayReport verify_decay(const BoundState& state, const std::vector<Vec2>& points) {
  if (points.empty()) fail(Errc::bad_argument, "empty sample set");
  double beta = state.beta;
  double threshold = 6.0 * std::log(beta) / beta;

  DecayReport rep;
  rep.slope = 0.5 * (beta - std::log(beta));
  for (const Vec2& p : points) {
    double d = state.curve.distance_to_arc(p);
    if (d < threshold) {
      rep.rejected++;
      continue;
    }
    double au = std::abs(reconstruct_unchecked(state, p));
    rep.samples.push_back({p, d, std::log(std::max(au, 1e-300))});
  }
  if (rep.samples.empty()) fail(Errc::bad_argument, "no samples outside the tube threshold");

  double log_d = -1e300;
  for (const DecaySample& s : rep.samples)
    log_d = std::max(log_d, s.log_abs_u - 2.0 * std::log(beta) + rep.slope * s.dist);
  rep.log_d = log_d;
  for (const DecaySample& s : rep.samples)
    if (s.log_abs_u > log_d + 2.0 * std::log(beta) - rep.slope * s.dist + 1e-9) rep.violations++;
  return rep;
}

std::vector<Vec2> decay_sample_points(const ArcCurve& curve, double beta) {
  double length = curve.length();
  double b = 6.0 * std::log(beta) / beta;
  double d_min = 1.1 * b;
  double d_max = std::max(2.5 * d_min, std::min(1.0, 80.0 / beta));
  const int n_dist = 8, n_arc = 12;

  std::vector<Vec2> pts;
  for (int k = 0; k < n_dist; k++) {
    double d = d_min * std::pow(d_max / d_min, static_cast<double>(k) / (n_dist - 1));
    for (int m = 0; m < n_arc; m++) {
      double s = length * (0.05 + 0.9 * m / (n_arc - 1));
      Frame f = curve.frame(s);
      pts.push_back(curve.point(s) + d * f.normal);
      pts.push_back(curve.point(s) - d * f.normal);
    }
    Frame f0 = curve.frame(0.0), f1 = curve.frame(length);
    pts.push_back(curve.point(0.0) - d * f0.tangent);
    pts.push_back(curve.point(length) + d * f1.tangent);
    double inv_sqrt2 = 0.70710678118654752;
    pts.push_back(curve.point(0.0) + d * inv_sqrt2 * (f0.normal - f0.tangent));
    pts.push_back(curve.point(length) + d * inv_sqrt2 * (f1.normal + f1.tangent));
  }
  return pts;
}

}  // namespace arcdelta
