#pragma once

#include <vector>

#include "resnet/network.hpp"

namespace resnet {

// Real-valued function on vertices. `ground` records the representative
// convention: values[ground] == 0 when ground >= 0, raw otherwise.
struct VertexFunction {
  std::vector<double> values;
  int ground = -1;

  VertexFunction() = default;
  explicit VertexFunction(int n, double fill = 0.0) : values(n, fill) {}

  double operator[](int x) const { return values[x]; }
  double& operator[](int x) { return values[x]; }
  int size() const { return static_cast<int>(values.size()); }

  static VertexFunction dirac(int n, int x);

  // Re-pin the representative so that values[o] == 0.
  VertexFunction grounded_at(int o) const;
};

// Antisymmetric function on oriented edges. One canonical orientation is
// stored (min id -> max id, aligned with Network::edges()); the accessor
// exposes both signs.
struct Current {
  std::vector<double> values;  // values[eid] = I(u,v) with u < v

  Current() = default;
  explicit Current(const Network& net) : values(net.edge_count(), 0.0) {}

  double at(const Network& net, int x, int y) const;
  void set(const Network& net, int x, int y, double amps);
  int size() const { return static_cast<int>(values.size()); }
};

// (Lap v)(x) = sum_{y~x} c_xy (v(x) - v(y)).
VertexFunction apply_laplacian(const Network& net, const VertexFunction& v);
double laplacian_at(const Network& net, const VertexFunction& v, int x);

// E(u,v) = 1/2 sum_{x,y} c_xy (u(x)-u(y))(v(x)-v(y)).
double energy(const Network& net, const VertexFunction& u, const VertexFunction& v);
double energy(const Network& net, const VertexFunction& v);

// D(I,J) = 1/2 sum over both orientations of c_xy^{-1} I(x,y) J(x,y).
double dissipation(const Network& net, const Current& I, const Current& J);
double dissipation(const Network& net, const Current& I);

// Ohm's law map: (drop v)(x,y) = c_xy (v(x) - v(y)).
Current drop(const Network& net, const VertexFunction& v);

// (div I)(x) = sum_{y~x} I(x,y); div(drop v) = Lap v exactly.
VertexFunction divergence(const Network& net, const Current& I);

// dv/dn(x) = sum_{y in H} c_xy (v(x) - v(y)) for x on bd H.
double normal_derivative(const Network& net, const std::vector<int>& H,
                         const VertexFunction& v, int x);

// p(x,y) = c_xy / c(x); 0 for non-neighbors.
double transition_prob(const Network& net, int x, int y);

// Boundary terms sum_{x in bd G_k} u(x) dv/dn(x) of the energy identity,
// one per exhaustion level. No claim is made about the limit; the sequence
// is reported as computed.
std::vector<std::pair<int, double>> gauss_green_boundary_trace(
    const Network& net, const VertexFunction& u, const VertexFunction& v,
    const ExhaustionPlan& plan, int k_max);

// Gram matrix M_F(x,y) = <v_x, v_y>_E = v_x(y) of the energy kernel over
// F, all v_x grounded at o. Symmetric positive definite.
struct GramMatrix {
  std::vector<int> index_set;       // F, sorted
  std::vector<double> entries;      // row-major |F| x |F|
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  int dim() const { return static_cast<int>(index_set.size()); }
  double at(int i, int j) const { return entries[static_cast<size_t>(i) * dim() + j]; }
};

GramMatrix energy_kernel_gram(const Network& net, int o, const std::vector<int>& F);

}  // namespace resnet
