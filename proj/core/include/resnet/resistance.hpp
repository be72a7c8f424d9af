#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/solvers.hpp"

namespace resnet {

// The six equivalent finite-network formulations, all computed.
// kappa and sup_form equal the reciprocal two-pin energy by the operator-norm
// identity on finite networks and are flagged derived_equal.
struct SixFormulations {
  double potential_drop = 0.0;   // v(x) - v(y), Lap v = delta_x - delta_y
  double kernel_energy = 0.0;    // E(v)
  double min_dissipation = 0.0;  // D(drop v)
  double two_pin = 0.0;          // 1 / min{E(u) : u(x)=1, u(y)=0}
  double kappa = 0.0;
  double sup_form = 0.0;
  bool derived_equal = true;  // kappa/sup taken from two_pin

  double spread() const;  // max pairwise relative disagreement
};

struct FiniteResistance {
  double value = 0.0;  // formulation (1)
  SixFormulations six;
};

FiniteResistance resistance_finite(const Network& net, int x, int y,
                                   const SolveOptions& opts = {});

// Convergence trace of an exhaustion limit.
struct LimitTrace {
  std::vector<std::pair<int, double>> trace;  // (level, value)
  double value = 0.0;
  bool converged = false;
};

struct LimitOptions {
  double tol = 1e-8;
  int k_max = 30;
  SolveOptions solve;
};

// R over the full subnetwork on G_k (free boundary handling), monotone
// nonincreasing in k.
LimitTrace free_resistance(const Network& net, int x, int y, const ExhaustionPlan& plan,
                           const LimitOptions& opts = {});

// R over G_k with the complement collapsed to a single vertex (wired),
// monotone nondecreasing, wired <= free at each level.
LimitTrace wired_resistance(const Network& net, int x, int y, const ExhaustionPlan& plan,
                            const LimitOptions& opts = {});

// Schur complement of the Laplacian onto {x,y}; equals resistance_finite.
double trace_resistance(const Network& net, int x, int y, const SolveOptions& opts = {});

struct MetricReport {
  int checked = 0;
  int violations = 0;
  double worst_slack = 0.0;  // most negative R(x,y)+R(y,z)-R(x,z)
};

// Triangle inequality / symmetry / positivity over sample triples
// (all triples when sample is empty and the net has <= 30 vertices).
MetricReport check_metric(const Network& net,
                          const std::vector<std::array<int, 3>>& sample = {},
                          const SolveOptions& opts = {});

struct SemidefiniteReport {
  int trials = 0;
  double worst = 0.0;  // max of sum f R f over trials (should be <= ~0)
  bool passed = false;
};

// R^F is negative semidefinite on zero-sum vectors: for random f on F with
// sum f = 0, the quadratic form sum f(x) R(x,y) f(y) stays <= tolerance.
SemidefiniteReport check_negative_semidefinite(const Network& net, const std::vector<int>& F,
                                               int trials, uint64_t seed = 1,
                                               const SolveOptions& opts = {});

struct ResistanceReport {
  int x = 0, y = 0;
  bool finite_net = false;
  double finite = 0.0;  // only when finite_net
  double free_r = 0.0;
  double wired_r = 0.0;
  double trace_r = 0.0;
  double harmonic = 0.0;                                  // R^F - R^W
  double boundary = std::numeric_limits<double>::infinity();  // R^W R^F / R^harm
  bool boundary_infinite = true;
  LimitTrace free_trace;
  LimitTrace wired_trace;
  double tol = 0.0;
  int k_max = 0;

  std::string to_json() const;
};

// Assembles every variant over the exhaustion. `treat_as_finite` bypasses the
// limits and fills all fields from the finite solve.
ResistanceReport resistance_report(const Network& net, int x, int y,
                                   const ExhaustionPlan& plan, const LimitOptions& opts = {},
                                   bool treat_as_finite = false);

}  // namespace resnet
