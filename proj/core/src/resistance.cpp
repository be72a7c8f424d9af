#include "resnet/resistance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "resnet/netx.hpp"
#include "resnet/reduce.hpp"

namespace resnet {

double SixFormulations::spread() const {
  std::array<double, 6> v{potential_drop, kernel_energy, min_dissipation,
                          two_pin,        kappa,         sup_form};
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double scale = std::max(std::fabs(*hi), 1e-300);
  return (*hi - *lo) / scale;
}

FiniteResistance resistance_finite(const Network& net, int x, int y,
                                   const SolveOptions& opts) {
  FiniteResistance out;
  if (x == y) return out;  // R(x,x) = 0 by convention

  // (1)-(3): grounded dipole solve, its energy, its induced dissipation.
  VertexFunction v = solve_dipole(net, x, y, y, opts);
  out.six.potential_drop = v[x] - v[y];
  out.six.kernel_energy = energy(net, v);
  out.six.min_dissipation = dissipation(net, drop(net, v));

  // (4): two-pin Dirichlet solve, u(x) = 1, u(y) = 0.
  GroundedSystem pins(net, {x, y}, opts);
  std::vector<double> rhs(net.vertex_count(), 0.0);
  std::vector<double> bc(net.vertex_count(), 0.0);
  bc[x] = 1.0;
  VertexFunction u = pins.solve(rhs, &bc);
  double e = energy(net, u);
  out.six.two_pin = 1.0 / e;

  // (5)-(6) equal (4) on finite networks by the operator-norm identity.
  out.six.kappa = out.six.two_pin;
  out.six.sup_form = out.six.two_pin;
  out.six.derived_equal = true;

  out.value = out.six.potential_drop;
  return out;
}

namespace {

// Potential drop of the grounded dipole; one solve, no six-way record.
double resistance_drop(const Network& net, int x, int y, const SolveOptions& opts) {
  VertexFunction v = solve_dipole(net, x, y, y, opts);
  return v[x] - v[y];
}

// Successive-difference limit over growing exhaustion levels; stops early
// when the level set saturates the truncation.
LimitTrace run_limit(const std::function<double(const std::vector<int>&)>& level_value,
                     const Network& net, const ExhaustionPlan& plan,
                     const LimitOptions& opts) {
  LimitTrace out;
  double prev = 0.0;
  bool have_prev = false;
  size_t prev_size = 0;
  for (int k = 1; k <= opts.k_max; ++k) {
    std::vector<int> ball = plan.level_set(net, k);
    if (ball.size() == prev_size && have_prev) {
      out.converged = true;  // the truncation is exhausted, nothing can change
      break;
    }
    prev_size = ball.size();
    double val = level_value(ball);
    if (std::isnan(val)) continue;  // pair not inside this level yet
    out.trace.emplace_back(k, val);
    out.value = val;
    if (have_prev && std::fabs(val - prev) < opts.tol) {
      out.converged = true;
      break;
    }
    prev = val;
    have_prev = true;
  }
  if (!have_prev) throw ValidationError("exhaustion never contained the pair");
  return out;
}

}  // namespace

namespace {

void assert_monotone(const LimitTrace& t, bool nonincreasing, const char* what) {
  for (size_t i = 1; i < t.trace.size(); ++i) {
    double step = t.trace[i].second - t.trace[i - 1].second;
    if (nonincreasing ? step > 1e-9 : step < -1e-9)
      throw SolverError(std::string(what) + " sequence lost monotonicity at level " +
                        std::to_string(t.trace[i].first));
  }
}

}  // namespace

LimitTrace free_resistance(const Network& net, int x, int y, const ExhaustionPlan& plan,
                           const LimitOptions& opts) {
  auto level_value = [&](const std::vector<int>& ball) {
    std::vector<int> map;
    Network sub = net.induced_subnetwork(ball, &map);
    if (map[x] < 0 || map[y] < 0) return std::numeric_limits<double>::quiet_NaN();
    return resistance_drop(sub, map[x], map[y], opts.solve);
  };
  LimitTrace t = run_limit(level_value, net, plan, opts);
  assert_monotone(t, true, "free resistance");
  return t;
}

LimitTrace wired_resistance(const Network& net, int x, int y, const ExhaustionPlan& plan,
                            const LimitOptions& opts) {
  auto level_value = [&](const std::vector<int>& ball) {
    if (static_cast<int>(ball.size()) == net.vertex_count()) {
      // Empty complement: the wired network is the network itself.
      return resistance_drop(net, x, y, opts.solve);
    }
    // Grounding the wired net at its collapsed vertex turns the level solve
    // into a Dirichlet problem on the truncation, so trees stay zero-fill.
    std::vector<char> in(net.vertex_count(), 0);
    for (int v : ball) in[v] = 1;
    if (!in[x] || !in[y]) return std::numeric_limits<double>::quiet_NaN();
    std::vector<int> pinned;
    for (int v = 0; v < net.vertex_count(); ++v)
      if (!in[v]) pinned.push_back(v);
    GroundedSystem sys(net, pinned, opts.solve);
    std::vector<double> rhs(net.vertex_count(), 0.0);
    rhs[x] += 1.0;
    rhs[y] -= 1.0;
    VertexFunction v = sys.solve(rhs);
    return v[x] - v[y];
  };
  LimitTrace t = run_limit(level_value, net, plan, opts);
  assert_monotone(t, false, "wired resistance");
  return t;
}

double trace_resistance(const Network& net, int x, int y, const SolveOptions& opts) {
  if (x == y) return 0.0;
  SchurResult schur = schur_trace(net, {x, y}, opts);
  double off = schur.matrix.at(0, 1);
  if (!(off < 0.0))
    throw SolverError("trace to a pair produced a non-negative off-diagonal");
  return 1.0 / (-off);
}

MetricReport check_metric(const Network& net, const std::vector<std::array<int, 3>>& sample,
                          const SolveOptions& opts) {
  const int n = net.vertex_count();
  // Pairwise distances via one grounded solve per vertex.
  std::vector<std::vector<double>> R(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double r = resistance_finite(net, a, b, opts).value;
      R[a][b] = R[b][a] = r;
    }
  MetricReport rep;
  auto check_triple = [&](int a, int b, int c) {
    double slack = R[a][b] + R[b][c] - R[a][c];
    ++rep.checked;
    if (slack < -1e-9) ++rep.violations;
    rep.worst_slack = std::min(rep.worst_slack, slack);
  };
  if (!sample.empty()) {
    for (const auto& t : sample) check_triple(t[0], t[1], t[2]);
  } else {
    if (n > 30) throw ValidationError("exhaustive metric check limited to 30 vertices");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  }
  return rep;
}

SemidefiniteReport check_negative_semidefinite(const Network& net, const std::vector<int>& F,
                                               int trials, uint64_t seed,
                                               const SolveOptions& opts) {
  const int m = static_cast<int>(F.size());
  SemidefiniteReport rep;
  if (m < 2) {
    rep.passed = true;
    return rep;
  }
  std::vector<std::vector<double>> R(m, std::vector<double>(m, 0.0));
  double scale = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double r = resistance_finite(net, F[i], F[j], opts).value;
      R[i][j] = R[j][i] = r;
      scale = std::max(scale, r);
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  rep.trials = trials;
  rep.worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<double> f(m);
    double mean = 0.0;
    for (double& fi : f) mean += (fi = gauss(rng));
    mean /= m;
    for (double& fi : f) fi -= mean;  // zero-sum
    double quad = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) quad += f[i] * R[i][j] * f[j];
    rep.worst = std::max(rep.worst, quad);
  }
  rep.passed = rep.worst <= 1e-9 * std::max(scale, 1.0);
  return rep;
}

std::string ResistanceReport::to_json() const {
  std::ostringstream out;
  auto num = [](double v) {
    if (std::isinf(v)) return std::string("\"inf\"");
    return format_double(v);
  };
  out << "{";
  out << "\"boundary\":" << num(boundary) << ",";
  out << "\"converged\":{\"free\":" << (free_trace.converged ? "true" : "false")
      << ",\"wired\":" << (wired_trace.converged ? "true" : "false") << "},";
  if (finite_net) out << "\"finite\":" << num(finite) << ",";
  out << "\"free\":" << num(free_r) << ",";
  out << "\"harmonic\":" << num(harmonic) << ",";
  out << "\"pair\":[" << x << "," << y << "],";
  out << "\"trace\":" << num(trace_r) << ",";
  out << "\"traces\":{\"free\":[";
  for (size_t i = 0; i < free_trace.trace.size(); ++i) {
    if (i) out << ",";
    out << "[" << free_trace.trace[i].first << "," << num(free_trace.trace[i].second) << "]";
  }
  out << "],\"wired\":[";
  for (size_t i = 0; i < wired_trace.trace.size(); ++i) {
    if (i) out << ",";
    out << "[" << wired_trace.trace[i].first << "," << num(wired_trace.trace[i].second) << "]";
  }
  out << "]},";
  out << "\"wired\":" << num(wired_r) << "}";
  return out.str();
}

ResistanceReport resistance_report(const Network& net, int x, int y,
                                   const ExhaustionPlan& plan, const LimitOptions& opts,
                                   bool treat_as_finite) {
  ResistanceReport rep;
  rep.x = x;
  rep.y = y;
  rep.tol = opts.tol;
  rep.k_max = opts.k_max;
  if (treat_as_finite) {
    rep.finite_net = true;
    rep.finite = resistance_finite(net, x, y, opts.solve).value;
    rep.free_r = rep.wired_r = rep.finite;
    rep.trace_r = trace_resistance(net, x, y, opts.solve);
    rep.harmonic = 0.0;
    rep.boundary = std::numeric_limits<double>::infinity();
    rep.boundary_infinite = true;
    rep.free_trace.value = rep.wired_trace.value = rep.finite;
    rep.free_trace.converged = rep.wired_trace.converged = true;
    return rep;
  }
  rep.free_trace = free_resistance(net, x, y, plan, opts);
  rep.wired_trace = wired_resistance(net, x, y, plan, opts);
  rep.free_r = rep.free_trace.value;
  rep.wired_r = rep.wired_trace.value;
  if (rep.wired_r > rep.free_r + 1e-9)
    throw SolverError("wired resistance exceeded free resistance");
  rep.trace_r = trace_resistance(net, x, y, opts.solve);  // trace on the truncation
  rep.harmonic = rep.free_r - rep.wired_r;
  if (rep.harmonic > 0.0) {
    rep.boundary = rep.wired_r * rep.free_r / rep.harmonic;
    rep.boundary_infinite = false;
  } else {
    rep.boundary = std::numeric_limits<double>::infinity();
    rep.boundary_infinite = true;
  }
  return rep;
}

}  // namespace resnet
