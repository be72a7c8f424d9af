#include "resnet/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace resnet {

GroundedSystem::GroundedSystem(const Network& net, std::vector<int> pinned, SolveOptions opts)
    : net_(net), opts_(opts) {
  const int n = net.vertex_count();
  if (pinned.empty()) throw SolverError("grounded system needs at least one pinned vertex");
  vertex_to_free_.assign(n, 0);
  for (int v : pinned) {
    if (v < 0 || v >= n) throw SolverError("pinned vertex out of range");
    vertex_to_free_[v] = -1;
  }
  for (int v = 0; v < n; ++v)
    if (vertex_to_free_[v] == 0) free_.push_back(v);
  for (int i = 0; i < static_cast<int>(free_.size()); ++i) vertex_to_free_[free_[i]] = i;

  const int m = static_cast<int>(free_.size());
  if (m == 0) {
    method_ = SolveInfo::Method::dense;  // nothing to solve, boundary only
    return;
  }

  // Forest check: peel free vertices with at most one active free neighbor.
  {
    std::vector<int> free_deg(m, 0);
    for (int i = 0; i < m; ++i)
      for (const HalfEdge& h : net_.neighbors(free_[i]))
        if (vertex_to_free_[h.to] >= 0) ++free_deg[i];
    std::deque<int> leaves;
    for (int i = 0; i < m; ++i)
      if (free_deg[i] <= 1) leaves.push_back(i);
    std::vector<char> gone(m, 0);
    elim_.reserve(m);
    while (!leaves.empty()) {
      int i = leaves.front();
      leaves.pop_front();
      if (gone[i]) continue;
      gone[i] = 1;
      Elim e{free_[i], -1, 0.0, net_.degree_weight(free_[i])};
      for (const HalfEdge& h : net_.neighbors(free_[i])) {
        int j = vertex_to_free_[h.to];
        if (j >= 0 && !gone[j]) {
          e.parent = h.to;
          e.c_parent = h.c;
          if (--free_deg[j] <= 1) leaves.push_back(j);
        }
      }
      elim_.push_back(e);
    }
    if (static_cast<int>(elim_.size()) == m) {
      // Zero-fill elimination: fold each pivot into its parent.
      std::vector<double> diag(m);
      for (int i = 0; i < m; ++i) diag[i] = net_.degree_weight(free_[i]);
      for (Elim& e : elim_) {
        e.diag = diag[vertex_to_free_[e.vertex]];
        if (e.parent >= 0)
          diag[vertex_to_free_[e.parent]] -= e.c_parent * e.c_parent / e.diag;
      }
      method_ = SolveInfo::Method::forest;
      return;
    }
    elim_.clear();
  }

  if (m <= opts_.dense_threshold) {
    method_ = SolveInfo::Method::dense;
    auto a = std::make_shared<DenseMatrix>(m);
    for (int i = 0; i < m; ++i) {
      a->at(i, i) = net_.degree_weight(free_[i]);
      for (const HalfEdge& h : net_.neighbors(free_[i])) {
        int j = vertex_to_free_[h.to];
        if (j >= 0) a->at(i, j) -= h.c;
      }
    }
    if (!cholesky_factor(*a))
      throw SolverError("grounded system is not positive definite");
    chol_ = std::move(a);
    return;
  }
  method_ = SolveInfo::Method::cg;
}

void GroundedSystem::apply_sub_laplacian(const std::vector<double>& x,
                                         std::vector<double>& y) const {
  const int m = static_cast<int>(free_.size());
  for (int i = 0; i < m; ++i) {
    double acc = net_.degree_weight(free_[i]) * x[i];
    for (const HalfEdge& h : net_.neighbors(free_[i])) {
      int j = vertex_to_free_[h.to];
      if (j >= 0) acc -= h.c * x[j];
    }
    y[i] = acc;
  }
}

VertexFunction GroundedSystem::solve(const std::vector<double>& rhs,
                                     const std::vector<double>* boundary,
                                     SolveInfo* info) const {
  const int n = net_.vertex_count();
  const int m = static_cast<int>(free_.size());
  if (m == 0) {
    VertexFunction out(n);
    if (boundary) out.values = *boundary;
    if (info) *info = SolveInfo{};
    return out;
  }
  std::vector<double> b(m);
  for (int i = 0; i < m; ++i) {
    double acc = rhs[free_[i]];
    if (boundary) {
      for (const HalfEdge& h : net_.neighbors(free_[i]))
        if (vertex_to_free_[h.to] < 0) acc += h.c * (*boundary)[h.to];
    }
    b[i] = acc;
  }

  std::vector<double> x(m, 0.0);
  SolveInfo local;
  local.method = method_;
  switch (method_) {
    case SolveInfo::Method::dense:
      x = cholesky_solve(*chol_, std::move(b));
      break;
    case SolveInfo::Method::forest: {
      // Forward pass folds eliminated rhs into parents, then back-substitute.
      std::vector<double> bb = std::move(b);
      for (const Elim& e : elim_) {
        if (e.parent >= 0)
          bb[vertex_to_free_[e.parent]] +=
              (e.c_parent / e.diag) * bb[vertex_to_free_[e.vertex]];
      }
      for (auto it = elim_.rbegin(); it != elim_.rend(); ++it) {
        int i = vertex_to_free_[it->vertex];
        double acc = bb[i];
        if (it->parent >= 0) acc += it->c_parent * x[vertex_to_free_[it->parent]];
        x[i] = acc / it->diag;
      }
      break;
    }
    case SolveInfo::Method::cg: {
      std::vector<double> diag(m);
      for (int i = 0; i < m; ++i) diag[i] = net_.degree_weight(free_[i]);
      auto apply = [this](const std::vector<double>& in, std::vector<double>& out) {
        apply_sub_laplacian(in, out);
      };
      IterativeResult res =
          pcg(apply, diag, b, x, opts_.rel_tol, opts_.max_iter_factor * m);
      local.iterations = res.iterations;
      local.residual = res.relative_residual;
      local.converged = res.converged;
      if (!res.converged)
        throw SolverError("conjugate gradient did not converge: residual " +
                          std::to_string(res.relative_residual));
      break;
    }
  }
  if (info) *info = local;

  VertexFunction out(n);
  if (boundary)
    for (int v = 0; v < n; ++v)
      if (vertex_to_free_[v] < 0) out[v] = (*boundary)[v];
  for (int i = 0; i < m; ++i) out[free_[i]] = x[i];
  return out;
}

VertexFunction solve_dipole(const Network& net, int a, int w, int o,
                            const SolveOptions& opts, SolveInfo* info) {
  if (a == w) throw SolverError("dipole endpoints must differ");
  GroundedSystem sys(net, {o}, opts);
  std::vector<double> rhs(net.vertex_count(), 0.0);
  rhs[a] += 1.0;
  rhs[w] -= 1.0;
  VertexFunction v = sys.solve(rhs, nullptr, info);
  v.ground = o;
  return v;
}

MonopoleResult solve_monopole_wired(const Network& net, int o, const ExhaustionPlan& plan,
                                    int k, double sign, const SolveOptions& opts) {
  if (k < 1) throw SolverError("exhaustion level must be >= 1");
  MonopoleResult out;
  std::vector<double> rhs(net.vertex_count(), 0.0);
  rhs[o] = sign;
  for (int level = 1; level <= k; ++level) {
    std::vector<int> ball = plan.level_set(net, level);
    std::vector<char> in(net.vertex_count(), 0);
    for (int v : ball) in[v] = 1;
    std::vector<int> pinned;
    for (int v = 0; v < net.vertex_count(); ++v)
      if (!in[v]) pinned.push_back(v);
    if (pinned.empty())
      throw SolverError("wired monopole needs a nonempty complement at level " +
                        std::to_string(level));
    GroundedSystem sys(net, pinned, opts);
    SolveInfo info;
    VertexFunction w = sys.solve(rhs, nullptr, &info);
    double e = energy(net, w);
    out.energy_trace.emplace_back(level, e);
    if (level == k) {
      out.w = std::move(w);
      out.energy = e;
      out.info = info;
    }
  }
  return out;
}

RoydenSplit royden_split(const Network& net, const VertexFunction& v, int o,
                         const ExhaustionPlan& plan, int k, const SolveOptions& opts) {
  std::vector<int> ball = plan.level_set(net, k);
  std::vector<char> in(net.vertex_count(), 0);
  for (int x : ball) in[x] = 1;
  std::vector<int> pinned;
  for (int x = 0; x < net.vertex_count(); ++x)
    if (!in[x]) pinned.push_back(x);

  RoydenSplit out;
  if (pinned.empty()) {
    // The Diracs span everything mod constants on a finite network, so the
    // level covers the whole net and the harmonic part is constant.
    out.fin = v;
    out.harm = VertexFunction(net.vertex_count());
    out.fin_energy = energy(net, v);
    return out;
  }

  // Normal equations of the E-projection onto span{delta_x : x in G_k}:
  // Lap fin = Lap v on G_k, fin = 0 outside.
  VertexFunction lap = apply_laplacian(net, v);
  GroundedSystem sys(net, pinned, opts);
  out.fin = sys.solve(lap.values);
  out.harm = VertexFunction(net.vertex_count());
  for (int x = 0; x < net.vertex_count(); ++x) out.harm[x] = v[x] - out.fin[x];
  if (o >= 0) out.harm = out.harm.grounded_at(o);
  out.fin_energy = energy(net, out.fin);
  out.harm_energy = energy(net, out.harm);
  out.cross_energy = energy(net, out.fin, out.harm);
  return out;
}

DefectSequence defect_sequence(const BigRational& c, DefectSequence::Variant variant,
                               int n_max) {
  if (n_max < 1) throw SolverError("defect sequence needs n_max >= 1");
  if (!(c.to_double() > 1.0)) throw SolverError("defect sequence needs c > 1");
  DefectSequence out;
  out.variant = variant;
  const BigRational r = c.reciprocal();
  const double rf = r.to_double();
  out.ratio = rf;

  out.p.assign(1, BigRational(0));
  out.q.assign(1, BigRational(1));
  out.pf.assign(1, 0.0);
  out.qf.assign(1, 1.0);
  out.partial_energy.assign(1, 0.0);

  BigRational rpow(1);
  double rpowf = 1.0, energy_acc = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    rpow = rpow * r;
    rpowf *= rf;
    BigRational pn, qn;
    double pnf, qnf;
    if (n == 1 && variant == DefectSequence::Variant::full_line) {
      // Lap u(0) = -u(0) on the full line forces p_1 = 1/2, q_1 = 1 + r/2.
      pn = BigRational(1, 2);
      qn = BigRational(1) + r * pn;
      pnf = 0.5;
      qnf = 1.0 + rf * 0.5;
    } else {
      pn = out.p[n - 1] + out.q[n - 1];
      qn = out.q[n - 1] + rpow * pn;
      pnf = out.pf[n - 1] + out.qf[n - 1];
      qnf = out.qf[n - 1] + rpowf * pnf;
    }
    out.p.push_back(pn);
    out.q.push_back(qn);
    out.pf.push_back(pnf);
    out.qf.push_back(qnf);
    energy_acc += rpowf * pnf * pnf;
    out.partial_energy.push_back(energy_acc);
  }
  return out;
}

DefectSequence defect_sequence(double c, DefectSequence::Variant variant, int n_max) {
  // Recognize simple rationals so the exact mode stays exact for CLI input.
  for (long den = 1; den <= 1000000; den *= 10) {
    double scaled = c * den;
    if (std::fabs(scaled - std::llround(scaled)) < 1e-9)
      return defect_sequence(BigRational(std::llround(scaled), den), variant, n_max);
  }
  throw SolverError("defect sequence: c must be a simple rational (use p/q form)");
}

// --- ladder -----------------------------------------------------------

LadderHarmonic ladder_harmonic(double alpha, double beta, int n_max) {
  if (!(alpha > 1.0 && beta < 1.0 && beta > 0.0))
    throw SolverError("ladder harmonic requires alpha > 1 > beta > 0");
  if (n_max < 2) throw SolverError("ladder harmonic needs n_max >= 2");
  LadderHarmonic out;
  out.alpha = alpha;
  out.beta = beta;
  out.n_max = n_max;
  out.top.resize(n_max + 1);
  out.delta.assign(n_max + 1, 0.0);
  out.top[0] = 0.0;
  out.top[1] = 1.0 / alpha;
  out.delta[0] = 1.0 / alpha;
  double ratio = beta / alpha;
  double ratio_n = ratio;  // (beta/alpha)^n
  for (int n = 1; n < n_max; ++n) {
    out.delta[n] = out.delta[n - 1] / alpha + ratio_n * (2.0 * out.top[n] + 1.0) / alpha;
    out.top[n + 1] = out.top[n] + out.delta[n];
    ratio_n *= ratio;
  }
  out.bottom.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out.bottom[n] = -1.0 - out.top[n];

  out.partial_energy.resize(n_max);
  double acc = 0.0, apow = alpha;
  for (int n = 0; n < n_max; ++n) {
    acc += apow * out.delta[n] * out.delta[n];
    out.partial_energy[n] = acc;
    apow *= alpha;
  }

  // Numeric evaluation of the increment bound
  //   delta(n) <= alpha^{-(n+1)} (1 + beta(1-beta^n)/(1-beta) + (2beta)^n/alpha
  //               + (2beta/(alpha(1-beta))) sum_{k<n} 2^k (beta^k - beta^n));
  // energy bound = sum_n alpha^{n+1} delta(n)^2 evaluated with it.
  double bound = 0.0;
  double beta_n = 1.0;  // beta^n
  double geom = 0.0;    // sum_{k<n} 2^k beta^k
  double pow2 = 1.0;    // 2^n
  double a_span = alpha;
  for (int n = 0; n < 4000; ++n) {
    double sum_mixed = geom - (pow2 - 1.0) * beta_n;  // sum 2^k beta^k - beta^n sum 2^k
    double t = 1.0 + beta * (1.0 - beta_n) / (1.0 - beta) + pow2 * beta_n / alpha +
               2.0 * beta / (alpha * (1.0 - beta)) * sum_mixed;
    double term = t * t / a_span;
    bound += term;
    if (n > n_max && term < 1e-16 * bound) break;
    geom += pow2 * beta_n;
    beta_n *= beta;
    pow2 *= 2.0;
    a_span *= alpha;
  }
  out.energy_bound = bound;
  return out;
}

double LadderHarmonic::stencil_residual(int n) const {
  if (n < 0 || n >= n_max) throw SolverError("stencil index outside interior");
  double apow_n = std::pow(alpha, n);
  double left = (n == 0) ? 0.0 : apow_n * delta[n - 1];
  double rung = std::pow(beta, n) * (2.0 * top[n] + 1.0);
  return left - apow_n * alpha * delta[n] + rung;
}

VertexFunction LadderHarmonic::on_ladder() const {
  VertexFunction f(2 * (n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    f[2 * n] = top[n];
    f[2 * n + 1] = bottom[n];
  }
  f.ground = 0;
  return f;
}

}  // namespace resnet
