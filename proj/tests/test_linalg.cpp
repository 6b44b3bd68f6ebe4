#include <doctest.h>

#include <cmath>
#include <random>

#include "arcdelta/errors.hpp"
#include "arcdelta/linalg.hpp"
#include "support/oracles.hpp"

using namespace arcdelta;

namespace {

Matrix random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; i++)
    for (int j = i; j < n; j++) a(i, j) = a(j, i) = dist(rng);
  return a;
}

}  // namespace

TEST_CASE("2x2 diagonal matrix") {
  Matrix a(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  auto ev = symmetric_eigenvalues(a);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("eigenvalues match a cyclic Jacobi oracle on random matrices") {
  for (int n : {3, 8, 20}) {
    Matrix a = random_symmetric(n, 1234u + n);
    auto ours = symmetric_eigenvalues(a);
    auto ref = oracles::jacobi_eigenvalues(a);
    for (int i = 0; i < n; i++) CHECK(ours[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("eigenpair residuals stay below 1e-10 * ||A||") {
  for (int n : {5, 16, 40}) {
    Matrix a = random_symmetric(n, 99u + n);
    SymmetricEigen eig = symmetric_eigen(a);
    double norm_a = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    for (int j = 0; j < n; j++) {
      double res2 = 0.0, vnorm2 = 0.0;
      for (int i = 0; i < n; i++) {
        double av = 0.0;
        for (int k = 0; k < n; k++) av += a(i, k) * eig.vectors(k, j);
        double r = av - eig.values[j] * eig.vectors(i, j);
        res2 += r * r;
        vnorm2 += eig.vectors(i, j) * eig.vectors(i, j);
      }
      CHECK(std::sqrt(res2) <= 1e-10 * norm_a);
      CHECK(std::sqrt(vnorm2) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("values-only and full decompositions agree") {
  Matrix a = random_symmetric(24, 7u);
  auto values = symmetric_eigenvalues(a);
  SymmetricEigen eig = symmetric_eigen(a);
  for (size_t i = 0; i < values.size(); i++)
    CHECK(values[i] == doctest::Approx(eig.values[i]).epsilon(1e-13));
}

TEST_CASE("discrete Dirichlet Laplacian eigenvalues") {
  // -u'' on (0, pi) with n interior points: mu_j(h) = (4/h^2) sin^2(j h / 2)
  const int n = 60;
  const double h = M_PI / (n + 1);
  std::vector<double> d(n, 2.0 / (h * h)), e(n - 1, -1.0 / (h * h));
  auto ev = tridiagonal_eigenvalues(d, e);
  for (int j = 1; j <= 5; j++) {
    double s = std::sin(0.5 * j * h);
    double exact = 4.0 / (h * h) * s * s;
    CHECK(ev[j - 1] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(symmetric_eigenvalues(Matrix(2, 3)), Error);
  CHECK_THROWS_AS(tridiagonal_eigenvalues({}, {}), Error);
  CHECK_THROWS_AS(tridiagonal_eigenvalues({1.0, 2.0}, {}), Error);
}
