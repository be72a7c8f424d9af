#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/solvers.hpp"

namespace resnet {

struct WalkConfig {
  uint64_t seed = 1;
  int samples = 100000;
  long max_steps = 1000000;
  int threads = 1;
};

// Product of one-step transition probabilities along the path.
double path_probability(const Network& net, const std::vector<int>& path);

// P_start[tau_target < tau_avoid] by harmonic extension: boundary value 1 on
// target, 0 on every avoid vertex.
double hit_before_exact(const Network& net, int start, int target,
                        const std::vector<int>& avoid, const SolveOptions& opts = {});

struct McEstimate {
  double estimate = 0.0;
  double ci95 = 0.0;        // 95% normal half-width
  int samples = 0;          // walks entering the estimator
  int truncated = 0;        // walks cut off at max_steps (excluded)
  bool truncation_warning = false;  // > 1% truncated
  // Excluding truncated walks can shift a probability estimate by at most
  // the excluded fraction.
  double truncation_bias_bound = 0.0;
};

// P_a[tau_b < tau_a], the probability of reaching b before returning to a.
double escape_probability_exact(const Network& net, int a, int b,
                                const SolveOptions& opts = {});
McEstimate escape_probability_mc(const Network& net, int a, int b, const WalkConfig& cfg);

// Probability mass of walks x -> (H^c ...) -> y whose intermediate vertices
// all lie outside H (paths of length >= 2). Feeds the trace-conductance
// identity c^tr_xy = c_xy + c(x) P[x->y]|_{H^c}.
double restricted_escape_exact(const Network& net, int x, int y, const std::vector<int>& H,
                               const SolveOptions& opts = {});
McEstimate restricted_escape_mc(const Network& net, int x, int y, const std::vector<int>& H,
                                const WalkConfig& cfg);

struct MartingaleReport {
  double h_start = 0.0;
  McEstimate estimate;  // E[h(X_n)]
  int flagged = 0;      // walks that left the harmonic region
  double sigmas = 0.0;  // |estimate - h(start)| in sigma units
};

// Monte-Carlo check of h(x) = E[h(X_n)]; walks that touch a vertex where h
// is not harmonic are flagged and excluded.
MartingaleReport martingale_check(const Network& net, const VertexFunction& h, int x, int n,
                                  const WalkConfig& cfg, double harmonic_tol = 1e-7);

// Markov chain driven by a current: oriented by I, transitions
// I(x,y)^+ / act(x). act(x) is |div I|(x) at sources/sinks and
// (1/2) sum_y |I(x,y)| elsewhere; zero-activity vertices absorb.
struct ForwardChain {
  const Network* net = nullptr;
  Current flow;
  std::vector<double> activity;
  std::vector<char> absorbing;

  double transition(int x, int y) const;
  std::vector<int> forward_neighbors(int x) const;

  // Probability of a current path under the flow measure.
  double path_probability(const std::vector<int>& path) const;

  // Forward Laplacian: sum over forward neighbors of c_xy (v(x) - v(y)).
  double forward_laplacian(const VertexFunction& v, int x) const;

  // Enumerates all current paths source -> sink (finite on minimal flows,
  // which orient a DAG); guarded by a path-count cap.
  std::vector<std::pair<std::vector<int>, double>> enumerate_paths(int source, int sink,
                                                                   int cap = 100000) const;
};

ForwardChain forward_chain(const Network& net, const Current& I);

}  // namespace resnet
