#pragma once

#include <memory>
#include <utility>

#include "resnet/bigrational.hpp"
#include "resnet/linalg.hpp"
#include "resnet/network.hpp"
#include "resnet/operators.hpp"

namespace resnet {

struct SolveOptions {
  double rel_tol = 1e-10;
  int dense_threshold = 5000;  // direct factorization below this many unknowns
  int max_iter_factor = 20;    // CG iteration cap = factor * n
};

struct SolveInfo {
  enum class Method { dense, forest, cg };
  Method method = Method::dense;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Laplacian system restricted to a free vertex set with the complement
// pinned (Dirichlet data). Factorizations are immutable once built and may
// be shared across threads; multiple right-hand sides solve concurrently.
class GroundedSystem {
 public:
  GroundedSystem(const Network& net, std::vector<int> pinned, SolveOptions opts = {});

  // rhs is indexed by vertex id (entries at pinned ids ignored); boundary
  // supplies pinned values, zero when omitted. Result is a full vertex
  // function carrying the pinned values.
  VertexFunction solve(const std::vector<double>& rhs,
                       const std::vector<double>* boundary = nullptr,
                       SolveInfo* info = nullptr) const;

  const std::vector<int>& free_vertices() const { return free_; }
  SolveInfo::Method method() const { return method_; }

 private:
  const Network& net_;
  SolveOptions opts_;
  std::vector<int> free_;       // sorted
  std::vector<int> vertex_to_free_;  // -1 when pinned
  SolveInfo::Method method_;

  // dense path
  std::shared_ptr<DenseMatrix> chol_;
  // forest path: elimination order with per-vertex parent data
  struct Elim {
    int vertex;
    int parent;       // free neighbor still active at elimination, or -1
    double c_parent;  // conductance to it
    double diag;      // pivot after updates
  };
  std::vector<Elim> elim_;

  void apply_sub_laplacian(const std::vector<double>& x, std::vector<double>& y) const;
};

// Unique finite-network dipole: Lap v = delta_a - delta_w, grounded at o.
VertexFunction solve_dipole(const Network& net, int a, int w, int o,
                            const SolveOptions& opts = {}, SolveInfo* info = nullptr);

struct MonopoleResult {
  VertexFunction w;  // zero on the wired complement
  double energy = 0.0;
  std::vector<std::pair<int, double>> energy_trace;  // (level, energy), monotone
  SolveInfo info;
};

// Wired monopole at level k of the exhaustion: solves Lap w = sign * delta_o
// on G_k with the complement of G_k held at the collapsed-vertex value 0.
MonopoleResult solve_monopole_wired(const Network& net, int o, const ExhaustionPlan& plan,
                                    int k, double sign = +1.0,
                                    const SolveOptions& opts = {});

struct RoydenSplit {
  VertexFunction fin;   // E-projection of v onto span{delta_x : x in G_k}
  VertexFunction harm;  // v - fin
  double fin_energy = 0.0;
  double harm_energy = 0.0;
  double cross_energy = 0.0;  // <fin, harm>_E, ~0
};

RoydenSplit royden_split(const Network& net, const VertexFunction& v, int o,
                         const ExhaustionPlan& plan, int k, const SolveOptions& opts = {});

// Exact defect-vector recursion p_{n+1} = p_n + q_n, q_{n+1} = q_n + r^{n+1} p_{n+1}
// on the geometric (half-)integers, r = 1/c. u(n) = q_n solves Lap u = -u there.
struct DefectSequence {
  enum class Variant { half_line, full_line };
  Variant variant = Variant::half_line;
  double ratio = 0.0;  // r = 1/c

  std::vector<BigRational> p, q;  // exact, index 0..n_max
  std::vector<double> pf, qf;     // float mirror

  // Partial sums of sum_n r^n p_n^2 (the energy series), float.
  std::vector<double> partial_energy;
};

DefectSequence defect_sequence(const BigRational& c, DefectSequence::Variant variant,
                               int n_max);
DefectSequence defect_sequence(double c, DefectSequence::Variant variant, int n_max);

// Harmonic function on the one-sided geometric ladder, built from the
// increment recursion with u(0) = 0, u(1) = 1/alpha; bottom rail is the
// substitution-consistent mirror u(y_n) = -1 - u(x_n).
struct LadderHarmonic {
  double alpha = 0.0, beta = 0.0;
  int n_max = 0;
  std::vector<double> top;     // u(x_n)
  std::vector<double> bottom;  // u(y_n)
  std::vector<double> delta;   // u(x_{n+1}) - u(x_n), tracked separately

  // alpha^n delta(n-1) - alpha^{n+1} delta(n) + beta^n (2 u(n) + 1),
  // the interior Laplacian at x_n evaluated in increment form.
  double stencil_residual(int n) const;

  // Top-rail partial energies sum_{m<=n} alpha^{m+1} delta(m)^2.
  std::vector<double> partial_energy;
  // Numeric evaluation of the closed-form energy bound series.
  double energy_bound = 0.0;

  // Values mapped onto the generator's ladder layout (x_n = 2n, y_n = 2n+1).
  VertexFunction on_ladder() const;
};

LadderHarmonic ladder_harmonic(double alpha, double beta, int n_max);

}  // namespace resnet
