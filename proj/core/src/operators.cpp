#include "resnet/operators.hpp"

#include <algorithm>
#include <cmath>

#include "resnet/linalg.hpp"
#include "resnet/solvers.hpp"

namespace resnet {

VertexFunction VertexFunction::dirac(int n, int x) {
  VertexFunction f(n);
  f[x] = 1.0;
  return f;
}

VertexFunction VertexFunction::grounded_at(int o) const {
  VertexFunction out = *this;
  double shift = values.at(o);
  for (double& v : out.values) v -= shift;
  out.ground = o;
  return out;
}

double Current::at(const Network& net, int x, int y) const {
  int eid = net.edge_index(x, y);
  if (eid < 0) return 0.0;
  return net.edges()[eid].u == x ? values[eid] : -values[eid];
}

void Current::set(const Network& net, int x, int y, double amps) {
  int eid = net.edge_index(x, y);
  if (eid < 0) throw ValidationError("current assigned to a non-edge");
  values[eid] = net.edges()[eid].u == x ? amps : -amps;
}

double laplacian_at(const Network& net, const VertexFunction& v, int x) {
  double acc = 0.0;
  for (const HalfEdge& h : net.neighbors(x)) acc += h.c * (v[x] - v[h.to]);
  return acc;
}

VertexFunction apply_laplacian(const Network& net, const VertexFunction& v) {
  VertexFunction out(net.vertex_count());
  for (int x = 0; x < net.vertex_count(); ++x) out[x] = laplacian_at(net, v, x);
  return out;
}

double energy(const Network& net, const VertexFunction& u, const VertexFunction& v) {
  double acc = 0.0;
  for (const Edge& e : net.edges())
    acc += e.c * (u[e.u] - u[e.v]) * (v[e.u] - v[e.v]);
  return acc;
}

double energy(const Network& net, const VertexFunction& v) { return energy(net, v, v); }

double dissipation(const Network& net, const Current& I, const Current& J) {
  double acc = 0.0;
  for (int i = 0; i < net.edge_count(); ++i)
    acc += I.values[i] * J.values[i] / net.edges()[i].c;
  return acc;
}

double dissipation(const Network& net, const Current& I) { return dissipation(net, I, I); }

Current drop(const Network& net, const VertexFunction& v) {
  Current I(net);
  for (int i = 0; i < net.edge_count(); ++i) {
    const Edge& e = net.edges()[i];
    I.values[i] = e.c * (v[e.u] - v[e.v]);
  }
  return I;
}

VertexFunction divergence(const Network& net, const Current& I) {
  VertexFunction out(net.vertex_count());
  for (int i = 0; i < net.edge_count(); ++i) {
    const Edge& e = net.edges()[i];
    out[e.u] += I.values[i];
    out[e.v] -= I.values[i];
  }
  return out;
}

double normal_derivative(const Network& net, const std::vector<int>& H,
                         const VertexFunction& v, int x) {
  std::vector<char> in(net.vertex_count(), 0);
  for (int h : H) in.at(h) = 1;
  if (!in[x]) throw ValidationError("normal derivative: vertex not in the subset");
  bool on_boundary = false;
  double acc = 0.0;
  for (const HalfEdge& h : net.neighbors(x)) {
    if (in[h.to])
      acc += h.c * (v[x] - v[h.to]);
    else
      on_boundary = true;
  }
  if (!on_boundary) throw ValidationError("normal derivative: vertex not on bd H");
  return acc;
}

double transition_prob(const Network& net, int x, int y) {
  double c = net.conductance(x, y);
  if (c == 0.0) return 0.0;
  return c / net.degree_weight(x);
}

std::vector<std::pair<int, double>> gauss_green_boundary_trace(
    const Network& net, const VertexFunction& u, const VertexFunction& v,
    const ExhaustionPlan& plan, int k_max) {
  std::vector<std::pair<int, double>> out;
  size_t prev_size = 0;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<int> ball = plan.level_set(net, k);
    if (ball.size() == prev_size) break;
    prev_size = ball.size();
    double term = 0.0;
    for (int x : boundary_of(net, ball)) term += u[x] * normal_derivative(net, ball, v, x);
    out.emplace_back(k, term);
  }
  return out;
}

GramMatrix energy_kernel_gram(const Network& net, int o, const std::vector<int>& F) {
  GramMatrix g;
  g.index_set = F;
  std::sort(g.index_set.begin(), g.index_set.end());
  for (int x : g.index_set)
    if (x == o) throw ValidationError("gram index set must exclude the origin");
  const int m = g.dim();
  g.entries.assign(static_cast<size_t>(m) * m, 0.0);

  GroundedSystem sys(net, {o});
  std::vector<VertexFunction> kernel;
  kernel.reserve(m);
  std::vector<double> rhs(net.vertex_count(), 0.0);
  for (int x : g.index_set) {
    rhs.assign(net.vertex_count(), 0.0);
    rhs[x] = 1.0;
    rhs[o] -= 1.0;  // Lap v_x = delta_x - delta_o
    kernel.push_back(sys.solve(rhs));
  }
  // <v_x, v_y>_E = v_x(y) with the v_x(o) = 0 representative.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      g.entries[static_cast<size_t>(i) * m + j] =
          0.5 * (kernel[i][g.index_set[j]] + kernel[j][g.index_set[i]]);

  DenseMatrix a(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a.at(i, j) = g.at(i, j);
  std::vector<double> ev = symmetric_eigenvalues(std::move(a), 1e-10);
  auto [lo, hi] = std::minmax_element(ev.begin(), ev.end());
  g.lambda_min = *lo;
  g.lambda_max = *hi;
  return g;
}

}  // namespace resnet
