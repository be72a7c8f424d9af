#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "resnet/linalg.hpp"
#include "resnet/network.hpp"
#include "resnet/solvers.hpp"

namespace resnet {

// One rewriting step. `added` lists the conductance contributed to each
// named pair (merged in parallel when the edge already exists), which makes
// the log replayable on its own.
struct ReductionStep {
  enum class Kind { parallel, series, wye_delta, schur };
  Kind kind = Kind::series;
  int removed = -1;                                  // eliminated vertex (not for parallel)
  std::vector<std::tuple<int, int, double>> added;   // (u, v, delta c)

  std::string to_json() const;
  static ReductionStep from_json(const std::string& line);
};

struct ReductionLog {
  std::vector<ReductionStep> steps;

  std::string to_json_lines() const;
  static ReductionLog from_json_lines(const std::string& text);
};

// Removes a degree-2 vertex, replacing its two edges by one of conductance
// (1/c_xz + 1/c_yz)^{-1}, merged in parallel when (x,y) already exists.
std::pair<Network, ReductionStep> series_reduce(const Network& net, int z);

// Removes a degree-3 vertex, adding the triangle c_xy = c_xt c_ty / c(t).
std::pair<Network, ReductionStep> wye_delta(const Network& net, int t);

// Schur complement of the Laplacian onto the kept set, plus the traced
// network rebuilt from the negated off-diagonals.
struct SchurResult {
  std::vector<int> keep;   // sorted kept vertex ids (original numbering)
  DenseMatrix matrix;      // trc(Lap, keep), rows/cols follow `keep`
  Network traced;          // vertices renumbered 0..|keep|-1 in `keep` order
};

SchurResult schur_trace(const Network& net, const std::vector<int>& keep,
                        const SolveOptions& opts = {});

// Greedy parallel/series/wye-delta reduction with single-vertex Schur
// elimination as the total fallback; ends at a single edge {x,y}.
struct PairReduction {
  double conductance = 0.0;  // 1/c = R(x,y)
  ReductionLog log;
};

PairReduction reduce_to_pair(const Network& net, int x, int y);

// Replays a log against a starting network. Vertices eliminated by steps are
// dropped; surviving vertices keep their original ids compacted in order.
Network replay(const Network& net, const ReductionLog& log,
               std::vector<int>* old_to_new = nullptr);

}  // namespace resnet
