#ifndef ARCDELTA_LINALG_HPP
#define ARCDELTA_LINALG_HPP

#include <vector>

namespace arcdelta {

// Dense row-major matrix of doubles. Value semantics, no views.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), m_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return m_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return m_[static_cast<size_t>(i) * cols_ + j]; }
  double* row(int i) { return m_.data() + static_cast<size_t>(i) * cols_; }
  const double* row(int i) const { return m_.data() + static_cast<size_t>(i) * cols_; }

  double max_abs_asymmetry() const;

 private:
  int rows_, cols_;
  std::vector<double> m_;
};

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j is the eigenvector of values[j]
};

// Eigenvalues of a symmetric matrix, ascending. Householder reduction to
// tridiagonal form followed by implicit-shift QL, no vector accumulation.
std::vector<double> symmetric_eigenvalues(Matrix a);

// Full decomposition, eigenvectors accumulated through both stages.
SymmetricEigen symmetric_eigen(Matrix a);

// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal d
// and subdiagonal e (e[i] couples rows i and i+1, e.size() == d.size()-1).
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e);

}  // namespace arcdelta

#endif
