#pragma once

#include <vector>

#include "resnet/network.hpp"

namespace resnet {

// Torus quadrature for the closed-form Z^d quantities. The base rule is a
// tensor midpoint grid on [-pi,pi]^d (n even so no node hits t = 0). For
// integrands with the 1/S singularity at the origin, dyadic shells
// [-pi/2^l, pi/2^l]^d are re-meshed with their own midpoint grids.
struct QuadratureGrid {
  int dimension = 3;
  int points_per_axis = 64;  // even; 32 is the default for d = 4, 5
  int shell_levels = 12;     // dyadic refinement levels for 1/S integrands
  int shell_points = 32;     // points per axis inside each shell

  static QuadratureGrid defaults(int d);
  void validate() const;
};

// Fourier symbol of the lattice Laplacian: S(t) = 4 sum_k sin^2(t_k / 2).
double lattice_symbol(int d, const std::vector<double>& t);

struct QuadratureValue {
  double value = 0.0;
  double error = 0.0;  // difference between the two finest refinements
};

// Energy-kernel value v_x(y) on (Z^d, 1), grounded so that v_x(0) = 0.
double lattice_vx(int d, const std::vector<long>& x, const std::vector<long>& y,
                  const QuadratureGrid& grid);

// Resistance distance R(x,y) on (Z^d, 1); bounded integrand, base grid only.
double lattice_R(int d, const std::vector<long>& x, const std::vector<long>& y,
                 const QuadratureGrid& grid);

// R_inf = lim R(x,y) as y -> infinity; finite iff d >= 3.
QuadratureValue lattice_Rinf(int d, const QuadratureGrid& grid);

// Monopole w(x) = -(2pi)^-d int cos(x.t)/S(t) dt, d >= 3; Lap w = -delta_0
// and w(x) = (R(0,x) - R_inf)/2.
QuadratureValue lattice_monopole(int d, const std::vector<long>& x,
                                 const QuadratureGrid& grid);

}  // namespace resnet
