#include "arcdelta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arcdelta/errors.hpp"

namespace arcdelta {

double Matrix::max_abs_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < rows_; i++)
    for (int j = i + 1; j < cols_; j++) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

namespace {

double hypot2(double a, double b) {
  double aa = std::abs(a), ab = std::abs(b);
  if (aa > ab) return aa * std::sqrt(1.0 + (ab / aa) * (ab / aa));
  return ab == 0.0 ? 0.0 : ab * std::sqrt(1.0 + (aa / ab) * (aa / ab));
}

// Householder reduction of the symmetric matrix a to tridiagonal form
// (d diagonal, e subdiagonal with e[0] unused offset convention removed:
// e[i] couples i and i+1). With accumulate set, a is overwritten by the
// orthogonal transformation Q so that Q^T A Q = T.
void tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e, bool accumulate) {
  const int n = a.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);  // e[i] = subdiagonal element between i-1 and i; e[0] = 0

  for (int i = n - 1; i >= 1; i--) {
    int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; k++) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (int k = 0; k <= l; k++) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; j++) {
          if (accumulate) a(j, i) = a(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; k++) g += a(j, k) * a(i, k);
          for (int k = j + 1; k <= l; k++) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        double hh = f / (h + h);
        for (int j = 0; j <= l; j++) {
          f = a(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; k++) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  if (accumulate) d[0] = 0.0;
  e[0] = 0.0;

  if (accumulate) {
    for (int i = 0; i < n; i++) {
      int l = i - 1;
      if (d[i] != 0.0) {
        for (int j = 0; j <= l; j++) {
          double g = 0.0;
          for (int k = 0; k <= l; k++) g += a(i, k) * a(k, j);
          for (int k = 0; k <= l; k++) a(k, j) -= g * a(k, i);
        }
      }
      d[i] = a(i, i);
      a(i, i) = 1.0;
      for (int j = 0; j <= l; j++) a(j, i) = a(i, j) = 0.0;
    }
  } else {
    for (int i = 0; i < n; i++) d[i] = a(i, i);
  }
}

// Implicit-shift QL on a symmetric tridiagonal matrix. e uses the convention
// from tridiagonalize (e[0] = 0, e[i] couples i-1 and i). If z is non-null its
// columns are rotated along, so that on entry z = Q gives full eigenvectors.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; i++) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; l++) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; m++) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (iter++ == 60) fail(Errc::bad_argument, "QL iteration failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; i--) {
          double f = s * e[i];
          double b = c * e[i];
          e[i + 1] = r = hypot2(f, g);
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
          if (z) {
            for (int k = 0; k < z->rows(); k++) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void sort_ascending(std::vector<double>& d, Matrix* z) {
  const int n = static_cast<int>(d.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  std::vector<double> ds(n);
  for (int j = 0; j < n; j++) ds[j] = d[idx[j]];
  d = std::move(ds);
  if (z) {
    Matrix zs(z->rows(), z->cols());
    for (int j = 0; j < n; j++)
      for (int k = 0; k < z->rows(); k++) zs(k, j) = (*z)(k, idx[j]);
    *z = std::move(zs);
  }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(Matrix a) {
  if (a.rows() != a.cols() || a.rows() == 0) fail(Errc::bad_argument, "matrix must be square and non-empty");
  if (a.rows() == 1) return {a(0, 0)};
  std::vector<double> d, e;
  tridiagonalize(a, d, e, false);
  ql_implicit(d, e, nullptr);
  sort_ascending(d, nullptr);
  return d;
}

SymmetricEigen symmetric_eigen(Matrix a) {
  if (a.rows() != a.cols() || a.rows() == 0) fail(Errc::bad_argument, "matrix must be square and non-empty");
  SymmetricEigen out;
  if (a.rows() == 1) {
    out.values = {a(0, 0)};
    out.vectors = Matrix(1, 1, 1.0);
    return out;
  }
  std::vector<double> d, e;
  tridiagonalize(a, d, e, true);
  ql_implicit(d, e, &a);
  sort_ascending(d, &a);
  out.values = std::move(d);
  out.vectors = std::move(a);
  return out;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  if (d.empty()) fail(Errc::bad_argument, "empty tridiagonal matrix");
  if (e.size() + 1 != d.size()) fail(Errc::bad_argument, "subdiagonal size must be n-1");
  if (d.size() == 1) return d;
  // shift to the e[0]=0 convention used by ql_implicit
  std::vector<double> es(d.size(), 0.0);
  for (size_t i = 0; i + 1 < d.size(); i++) es[i + 1] = e[i];
  ql_implicit(d, es, nullptr);
  sort_ascending(d, nullptr);
  return d;
}

}  // namespace arcdelta
