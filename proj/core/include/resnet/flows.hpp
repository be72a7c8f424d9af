#pragma once

#include <vector>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/solvers.hpp"

namespace resnet {

// Fundamental cycles of a BFS spanning tree; dimension |E| - |V| + 1.
// Each basis current is +-1-valued on its cycle and has zero divergence.
struct CycleBasis {
  std::vector<int> tree_edges;    // edge ids of the spanning tree
  std::vector<Current> cycles;    // one per non-tree edge

  int dimension() const { return static_cast<int>(cycles.size()); }
};

CycleBasis cycle_basis(const Network& net);

// max_gamma |D(I, chi_gamma)| over the fundamental cycles; zero iff I is an
// induced current (I = drop v for some v).
double cycle_condition(const Network& net, const Current& I);

// Minimizing projection onto the induced currents: solve Lap v = div I
// grounded at o, return v and P I = drop v. div(P I) = div I exactly and
// D(P I) <= D(I).
struct InducedProjection {
  VertexFunction potential;
  Current projected;
};

InducedProjection project_to_induced(const Network& net, const Current& I, int o,
                                     const SolveOptions& opts = {});

// Dissipation-minimizing unit flow from a to w; D(I) = R(a,w).
Current min_dissipation_flow(const Network& net, int a, int w, int o,
                             const SolveOptions& opts = {});

// Characteristic current of a vertex path (+1 along each step).
Current path_characteristic(const Network& net, const std::vector<int>& path);

// A path a -> w along which the dipole v strictly decreases, found by
// steepest descent on the induced current (largest outgoing current first,
// lowest vertex id among ties), with backtracking.
std::vector<int> find_current_path(const Network& net, const VertexFunction& v, int a, int w);

}  // namespace resnet
