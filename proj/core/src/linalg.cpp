#include "resnet/linalg.hpp"

#include <cmath>

namespace resnet {

bool cholesky_factor(DenseMatrix& a) {
  const int n = a.dim();
  for (int j = 0; j < n; ++j) {
    double d = a.at(j, j);
    for (int k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    d = std::sqrt(d);
    a.at(j, j) = d;
    for (int i = j + 1; i < n; ++i) {
      double s = a.at(i, j);
      const double* ri = &a.data()[static_cast<size_t>(i) * n];
      const double* rj = &a.data()[static_cast<size_t>(j) * n];
      for (int k = 0; k < j; ++k) s -= ri[k] * rj[k];
      a.at(i, j) = s / d;
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const DenseMatrix& chol, std::vector<double> b) {
  const int n = chol.dim();
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= chol.at(i, k) * b[k];
    b[i] = s / chol.at(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= chol.at(k, i) * b[k];
    b[i] = s / chol.at(i, i);
  }
  return b;
}

std::vector<double> symmetric_eigenvalues(DenseMatrix a, double tol) {
  const int n = a.dim();
  if (n == 0) return {};
  if (n == 1) return {a.at(0, 0)};
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
    if (std::sqrt(off) < tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a.at(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a.at(i, i);
  return ev;
}

IterativeResult pcg(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                    const std::vector<double>& diag, const std::vector<double>& b,
                    std::vector<double>& x, double rel_tol, int max_iter) {
  const size_t n = b.size();
  IterativeResult out;
  std::vector<double> r(n), z(n), p(n), ap(n);
  if (x.size() != n) x.assign(n, 0.0);

  apply(x, ap);
  double bnorm = 0.0;
  for (size_t i = 0; i < n; ++i) {
    r[i] = b[i] - ap[i];
    bnorm += b[i] * b[i];
  }
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    out.converged = true;
    return out;
  }

  double rz = 0.0;
  for (size_t i = 0; i < n; ++i) {
    z[i] = r[i] / diag[i];
    p[i] = z[i];
    rz += r[i] * z[i];
  }

  for (int it = 0; it < max_iter; ++it) {
    apply(p, ap);
    double pap = 0.0;
    for (size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
    double alpha = rz / pap;
    double rnorm = 0.0;
    for (size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      rnorm += r[i] * r[i];
    }
    out.iterations = it + 1;
    out.relative_residual = std::sqrt(rnorm) / bnorm;
    if (out.relative_residual < rel_tol) {
      out.converged = true;
      return out;
    }
    double rz_next = 0.0;
    for (size_t i = 0; i < n; ++i) {
      z[i] = r[i] / diag[i];
      rz_next += r[i] * z[i];
    }
    double beta = rz_next / rz;
    rz = rz_next;
    for (size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return out;
}

}  // namespace resnet
