#include "resnet/lattice.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace resnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Integrand = std::function<double(const std::vector<double>&)>;

// Tensor midpoint sum over [-a,a]^d with m points per axis. When `exclude`
// is set, cells lying inside the concentric half-cube are skipped; the grid
// is required to tile that cube exactly (4 | m).
double region_sum(int d, double a, int m, bool exclude, const Integrand& f) {
  const double h = 2.0 * a / m;
  std::vector<int> idx(d, 0);
  std::vector<double> t(d);
  for (int k = 0; k < d; ++k) t[k] = -a + 0.5 * h;
  double acc = 0.0;
  while (true) {
    bool inner = exclude;
    if (exclude)
      for (int k = 0; k < d; ++k)
        if (std::fabs(t[k]) > 0.5 * a) {
          inner = false;
          break;
        }
    if (!inner) acc += f(t);
    int k = 0;
    while (k < d) {
      if (++idx[k] < m) {
        t[k] = -a + (idx[k] + 0.5) * h;
        break;
      }
      idx[k] = 0;
      t[k] = -a + 0.5 * h;
      ++k;
    }
    if (k == d) break;
  }
  return acc * std::pow(h, d);
}

// (2pi)^-d int f over the torus; bounded integrands, base grid only.
double base_integral(int d, const QuadratureGrid& grid, const Integrand& f) {
  grid.validate();
  double total = region_sum(d, std::numbers::pi, grid.points_per_axis, false, f);
  return total / std::pow(kTwoPi, d);
}

// Graded evaluation for integrands singular like 1/|t|^2 at the origin:
// base grid outside [-pi/2, pi/2]^d, then dyadic midpoint shells, then a
// midpoint core. Reported error is the difference between the two finest
// refinement stages.
QuadratureValue graded_integral(int d, const QuadratureGrid& grid, const Integrand& f) {
  grid.validate();
  if (grid.points_per_axis % 4 != 0 || grid.shell_points % 4 != 0)
    throw ValidationError("graded quadrature requires grid sizes divisible by 4");
  if (grid.shell_levels < 2) throw ValidationError("graded quadrature needs >= 2 levels");
  const int L = grid.shell_levels;
  double total = region_sum(d, std::numbers::pi, grid.points_per_axis, true, f);
  double a = 0.5 * std::numbers::pi;
  double shell_last = 0.0, core_prev = 0.0;
  for (int level = 1; level < L; ++level) {
    double shell = region_sum(d, a, grid.shell_points, true, f);
    if (level == L - 1) {
      shell_last = shell;
      core_prev = region_sum(d, a, grid.shell_points, false, f);
    }
    total += shell;
    a *= 0.5;
  }
  double core = region_sum(d, a, grid.shell_points, false, f);
  total += core;
  QuadratureValue out;
  out.value = total / std::pow(kTwoPi, d);
  // Difference between the level-L and level-(L-1) evaluations: those agree
  // everywhere except on Q_{L-1}, covered once by shell+core and once whole.
  out.error = std::fabs(shell_last + core - core_prev) / std::pow(kTwoPi, d);
  return out;
}

}  // namespace

QuadratureGrid QuadratureGrid::defaults(int d) {
  QuadratureGrid g;
  g.dimension = d;
  g.points_per_axis = d <= 3 ? 64 : 32;
  return g;
}

void QuadratureGrid::validate() const {
  if (dimension < 1) throw ValidationError("quadrature dimension must be >= 1");
  if (points_per_axis < 2 || points_per_axis % 2 != 0)
    throw ValidationError("points per axis must be even and >= 2");
  if (shell_points < 4) throw ValidationError("shell points must be >= 4");
  if (static_cast<double>(std::pow(static_cast<double>(points_per_axis), dimension)) > 4e9)
    throw ValidationError("quadrature grid too large");
}

double lattice_symbol(int d, const std::vector<double>& t) {
  if (static_cast<int>(t.size()) != d) throw ValidationError("symbol: wrong arity");
  double s = 0.0;
  for (double tk : t) {
    double x = std::sin(0.5 * tk);
    s += x * x;
  }
  return 4.0 * s;
}

namespace {

double dot(const std::vector<long>& v, const std::vector<double>& t) {
  double acc = 0.0;
  for (size_t k = 0; k < v.size(); ++k) acc += static_cast<double>(v[k]) * t[k];
  return acc;
}

std::vector<long> diff(const std::vector<long>& x, const std::vector<long>& y) {
  std::vector<long> out(x.size());
  for (size_t k = 0; k < x.size(); ++k) out[k] = x[k] - y[k];
  return out;
}

void check_arity(int d, const std::vector<long>& v, const char* what) {
  if (static_cast<int>(v.size()) != d)
    throw ValidationError(std::string(what) + ": vector arity does not match d");
}

}  // namespace

double lattice_vx(int d, const std::vector<long>& x, const std::vector<long>& y,
                  const QuadratureGrid& grid) {
  check_arity(d, x, "lattice_vx");
  check_arity(d, y, "lattice_vx");
  std::vector<long> xmy = diff(x, y);
  auto f = [&](const std::vector<double>& t) {
    double s = lattice_symbol(d, t);
    // grounded representative: subtract the y = 0 value pointwise
    return (std::cos(dot(xmy, t)) - std::cos(dot(y, t)) - std::cos(dot(x, t)) + 1.0) / s;
  };
  return base_integral(d, grid, f);
}

double lattice_R(int d, const std::vector<long>& x, const std::vector<long>& y,
                 const QuadratureGrid& grid) {
  check_arity(d, x, "lattice_R");
  check_arity(d, y, "lattice_R");
  std::vector<long> v = diff(x, y);
  bool zero = true;
  for (long c : v) zero = zero && c == 0;
  if (zero) return 0.0;
  auto f = [&](const std::vector<double>& t) {
    double num = std::sin(0.5 * dot(v, t));
    return 4.0 * num * num / lattice_symbol(d, t);
  };
  return base_integral(d, grid, f);
}

QuadratureValue lattice_Rinf(int d, const QuadratureGrid& grid) {
  if (d < 3)
    throw ValidationError("resistance to infinity is unbounded for d < 3 "
                          "(the 1/S singularity is not integrable)");
  auto f = [&](const std::vector<double>& t) { return 1.0 / lattice_symbol(d, t); };
  QuadratureValue out = graded_integral(d, grid, f);
  out.value *= 2.0;
  out.error *= 2.0;
  return out;
}

QuadratureValue lattice_monopole(int d, const std::vector<long>& x,
                                 const QuadratureGrid& grid) {
  if (d < 3) throw ValidationError("monopoles exist on Z^d only for d >= 3");
  check_arity(d, x, "lattice_monopole");
  auto f = [&](const std::vector<double>& t) {
    return std::cos(dot(x, t)) / lattice_symbol(d, t);
  };
  QuadratureValue out = graded_integral(d, grid, f);
  out.value = -out.value;
  return out;
}

}  // namespace resnet
