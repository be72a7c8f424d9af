#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace resnet {

// Row-major dense symmetric matrix helpers for the desk-scale solves.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

  int dim() const { return n_; }
  double& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// In-place lower Cholesky; returns false if the matrix is not numerically SPD.
bool cholesky_factor(DenseMatrix& a);
// Solves L L^T x = b given the factor from cholesky_factor.
std::vector<double> cholesky_solve(const DenseMatrix& chol, std::vector<double> b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(DenseMatrix a, double tol = 1e-12);

struct IterativeResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Jacobi-preconditioned conjugate gradient on a matrix given as an apply
// callback. diag holds the matrix diagonal.
IterativeResult pcg(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                    const std::vector<double>& diag, const std::vector<double>& b,
                    std::vector<double>& x, double rel_tol, int max_iter);

}  // namespace resnet
