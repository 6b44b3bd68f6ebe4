#include <doctest.h>

#include <cmath>

#include "arcdelta/effective1d.hpp"
#include "arcdelta/errors.hpp"

using namespace arcdelta;

TEST_CASE("free Dirichlet spectrum on [0, pi]") {
  ArcCurve seg = ArcCurve::make_segment(M_PI);
  EffectiveSpectrum spec = dirichlet_eigenvalues(seg, 0.0, M_PI, 3, 2000);
  for (int j = 1; j <= 3; j++)
    CHECK(spec.eigenvalues[j - 1] == doctest::Approx(static_cast<double>(j) * j).epsilon(1e-8));
}

TEST_CASE("constant curvature shifts the spectrum by -1/4") {
  // quarter circle R=1: L = pi/2, mu_j = (2j)^2 - 1/4
  ArcCurve arc = ArcCurve::make_circular_arc(1.0, 0.5 * M_PI);
  EffectiveSpectrum spec = dirichlet_eigenvalues(arc, 0.0, arc.length(), 2, 2000);
  CHECK(spec.eigenvalues[0] == doctest::Approx(3.75).epsilon(1e-8));
  CHECK(spec.eigenvalues[1] == doctest::Approx(15.75).epsilon(1e-8));
}

TEST_CASE("variable curvature value is grid-converged") {
  ArcCurve par = ArcCurve::make_parametric([](double u) { return Vec2{u, 0.5 * u * u}; }, -1.0, 1.0);
  EffectiveSpectrum a = dirichlet_eigenvalues(par, 0.0, par.length(), 1, 1000);
  EffectiveSpectrum b = dirichlet_eigenvalues(par, 0.0, par.length(), 1, 2001);
  CHECK(std::abs(a.eigenvalues[0] - b.eigenvalues[0]) <= 1e-7);
}

TEST_CASE("second-order convergence of the raw scheme") {
  ArcCurve seg = ArcCurve::make_segment(M_PI);
  double mu_exact = 1.0;
  double e1 = std::abs(dirichlet_eigenvalues_raw(seg, 0.0, M_PI, 1, 100)[0] - mu_exact);
  double e2 = std::abs(dirichlet_eigenvalues_raw(seg, 0.0, M_PI, 1, 201)[0] - mu_exact);
  double ratio = e1 / e2;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("interlacing under domain growth") {
  ArcCurve arc = ArcCurve::make_circular_arc(1.0, 0.5 * M_PI);
  double L = arc.length();
  EffectiveSpectrum small = dirichlet_eigenvalues(arc, 0.0, L, 3, 1200);
  EffectiveSpectrum big = dirichlet_eigenvalues(arc, -0.2, L + 0.2, 3, 1200);
  for (int j = 0; j < 3; j++) CHECK(big.eigenvalues[j] <= small.eigenvalues[j]);
}

TEST_CASE("comparison with the free operator") {
  ArcCurve par = ArcCurve::make_parametric([](double u) { return Vec2{u, 0.5 * u * u}; }, -1.0, 1.0);
  double L = par.length(), K = par.max_curvature();
  EffectiveSpectrum spec = dirichlet_eigenvalues(par, 0.0, L, 4, 1600);
  for (int j = 1; j <= 4; j++) {
    double free_mu = j * j * M_PI * M_PI / (L * L);
    CHECK(spec.eigenvalues[j - 1] <= free_mu + 1e-9);
    CHECK(spec.eigenvalues[j - 1] >= free_mu - 0.25 * K * K - 1e-9);
  }
}

TEST_CASE("ascending and simple spectrum") {
  ArcCurve arc = ArcCurve::make_circular_arc(1.0, 0.5 * M_PI);
  EffectiveSpectrum spec = dirichlet_eigenvalues(arc, 0.0, arc.length(), 6, 2000);
  for (int j = 1; j < 6; j++) CHECK(spec.eigenvalues[j] > spec.eigenvalues[j - 1]);
}

TEST_CASE("extended interval closed form for the segment") {
  // L = 1, beta = e^6: a = 36 e^-6, mu_1(beta) = pi^2/(1+2a)^2
  ArcCurve seg = ArcCurve::make_segment(1.0);
  double beta = std::exp(6.0);
  double a = 6.0 * std::log(beta) / beta;
  EffectiveSpectrum spec = extended_eigenvalues(seg, beta, 1);
  double expect = M_PI * M_PI / ((1.0 + 2.0 * a) * (1.0 + 2.0 * a));
  CHECK(spec.eigenvalues[0] == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("domain monotonicity of the extended spectrum") {
  ArcCurve seg = ArcCurve::make_segment(1.0);
  EffectiveSpectrum base = dirichlet_eigenvalues(seg, 0.0, 1.0, 2, 2000);
  for (double beta : {50.0, 100.0, 200.0}) {
    EffectiveSpectrum ext = extended_eigenvalues(seg, beta, 2);
    for (int j = 0; j < 2; j++) CHECK(ext.eigenvalues[j] < base.eigenvalues[j]);
  }
}

TEST_CASE("interval perturbation shrinks like the margin") {
  ArcCurve seg = ArcCurve::make_segment(1.0);
  EffectiveSpectrum base = dirichlet_eigenvalues(seg, 0.0, 1.0, 1, 2000);
  double c_fit = 0.0;
  for (double beta : {50.0, 100.0, 200.0, 400.0}) {
    double a = 6.0 * std::log(beta) / beta;
    EffectiveSpectrum ext = extended_eigenvalues(seg, beta, 1);
    c_fit = std::max(c_fit, std::abs(ext.eigenvalues[0] - base.eigenvalues[0]) / a);
  }
  CHECK(std::isfinite(c_fit));
  CHECK(c_fit <= 8.0 * M_PI * M_PI);  // |d mu_1 / da| = 4 pi^2 at a = 0, with slack
}

TEST_CASE("margin cap is reported") {
  ArcCurve seg = ArcCurve::make_segment(1.0);  // l0 = 0.5, cap ~ 44
  CHECK_THROWS_AS(extended_eigenvalues(seg, 20.0, 1), Error);
  try {
    extended_eigenvalues(seg, 20.0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::margin_exceeded);
    CHECK(std::string(e.what()).find("usable beta") != std::string::npos);
  }
}

TEST_CASE("argument validation") {
  ArcCurve seg = ArcCurve::make_segment(1.0);
  CHECK_THROWS_AS(dirichlet_eigenvalues(seg, 0.0, 2.0, 1, 2000), Error);   // outside extension
  CHECK_THROWS_AS(dirichlet_eigenvalues(seg, 0.0, 1.0, 10, 50), Error);    // grid too coarse
  CHECK_THROWS_AS(dirichlet_eigenvalues(seg, 0.5, 0.5, 1, 2000), Error);   // degenerate
}
