#include "resnet/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "resnet/netx.hpp"

namespace resnet {

namespace {

const char* kind_name(ReductionStep::Kind k) {
  switch (k) {
    case ReductionStep::Kind::parallel: return "parallel";
    case ReductionStep::Kind::series: return "series";
    case ReductionStep::Kind::wye_delta: return "wye_delta";
    case ReductionStep::Kind::schur: return "schur";
  }
  return "?";
}

ReductionStep::Kind kind_from(const std::string& s) {
  if (s == "parallel") return ReductionStep::Kind::parallel;
  if (s == "series") return ReductionStep::Kind::series;
  if (s == "wye_delta") return ReductionStep::Kind::wye_delta;
  if (s == "schur") return ReductionStep::Kind::schur;
  throw ValidationError("unknown reduction step kind '" + s + "'");
}

// Mutable rewriting view; vertex ids stay the input network's throughout.
struct MutGraph {
  std::vector<std::map<int, double>> adj;
  std::vector<char> alive;

  explicit MutGraph(const Network& net)
      : adj(net.vertex_count()), alive(net.vertex_count(), 1) {
    for (const Edge& e : net.edges()) {
      adj[e.u][e.v] = e.c;
      adj[e.v][e.u] = e.c;
    }
  }

  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  void add(int u, int v, double c) {
    adj[u][v] += c;
    adj[v][u] += c;
  }

  // Single-vertex Schur elimination; returns the conductance added per pair.
  std::vector<std::tuple<int, int, double>> eliminate(int z) {
    std::vector<std::pair<int, double>> nbrs(adj[z].begin(), adj[z].end());
    double cz = 0.0;
    for (auto& [_, c] : nbrs) cz += c;
    std::vector<std::tuple<int, int, double>> added;
    for (size_t i = 0; i < nbrs.size(); ++i)
      for (size_t j = i + 1; j < nbrs.size(); ++j) {
        double delta = nbrs[i].second * nbrs[j].second / cz;
        add(nbrs[i].first, nbrs[j].first, delta);
        added.emplace_back(std::min(nbrs[i].first, nbrs[j].first),
                           std::max(nbrs[i].first, nbrs[j].first), delta);
      }
    for (auto& [y, _] : nbrs) adj[y].erase(z);
    adj[z].clear();
    alive[z] = 0;
    return added;
  }

  Network to_network(std::vector<int>* old_to_new) const {
    std::vector<int> map(adj.size(), -1);
    int next = 0;
    for (size_t v = 0; v < adj.size(); ++v)
      if (alive[v]) map[v] = next++;
    NetworkBuilder b(next);
    for (size_t u = 0; u < adj.size(); ++u)
      if (alive[u])
        for (auto& [v, c] : adj[u])
          if (static_cast<int>(u) < v) b.add_edge(map[u], map[v], c);
    if (old_to_new) *old_to_new = map;
    return b.build();
  }
};

}  // namespace

std::string ReductionStep::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind);
  if (removed >= 0) j["removed"] = removed;
  auto arr = nlohmann::json::array();
  for (auto& [u, v, c] : added) arr.push_back({u, v, c});
  j["added"] = arr;
  return j.dump();
}

ReductionStep ReductionStep::from_json(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  ReductionStep step;
  step.kind = kind_from(j.at("kind").get<std::string>());
  step.removed = j.value("removed", -1);
  for (auto& item : j.at("added"))
    step.added.emplace_back(item.at(0).get<int>(), item.at(1).get<int>(),
                            item.at(2).get<double>());
  return step;
}

std::string ReductionLog::to_json_lines() const {
  std::ostringstream out;
  for (const ReductionStep& s : steps) out << s.to_json() << "\n";
  return out.str();
}

ReductionLog ReductionLog::from_json_lines(const std::string& text) {
  ReductionLog log;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    log.steps.push_back(ReductionStep::from_json(line));
  }
  return log;
}

std::pair<Network, ReductionStep> series_reduce(const Network& net, int z) {
  if (net.degree(z) != 2) throw ValidationError("series reduction needs deg(z) == 2");
  int x = net.neighbors(z)[0].to, y = net.neighbors(z)[1].to;
  if (x == y) throw ValidationError("series reduction would create a self-loop");
  MutGraph g(net);
  ReductionStep step;
  step.kind = ReductionStep::Kind::series;
  step.removed = z;
  step.added = g.eliminate(z);
  return {g.to_network(nullptr), step};
}

std::pair<Network, ReductionStep> wye_delta(const Network& net, int t) {
  if (net.degree(t) != 3) throw ValidationError("wye-delta needs deg(t) == 3");
  MutGraph g(net);
  ReductionStep step;
  step.kind = ReductionStep::Kind::wye_delta;
  step.removed = t;
  step.added = g.eliminate(t);
  return {g.to_network(nullptr), step};
}

SchurResult schur_trace(const Network& net, const std::vector<int>& keep,
                        const SolveOptions& opts) {
  const int n = net.vertex_count();
  SchurResult out;
  out.keep = keep;
  std::sort(out.keep.begin(), out.keep.end());
  out.keep.erase(std::unique(out.keep.begin(), out.keep.end()), out.keep.end());
  if (out.keep.empty()) throw ValidationError("schur trace: empty keep set");
  const int m = static_cast<int>(out.keep.size());

  std::vector<int> pos(n, -1);
  for (int i = 0; i < m; ++i) pos[out.keep[i]] = i;

  out.matrix = DenseMatrix(m);
  if (m == n) {
    // Empty elimination: the trace is the Laplacian itself.
    for (int i = 0; i < m; ++i) {
      out.matrix.at(i, i) = net.degree_weight(out.keep[i]);
      for (const HalfEdge& h : net.neighbors(out.keep[i]))
        out.matrix.at(i, pos[h.to]) -= h.c;
    }
  } else if (n - m <= 2000) {
    // trc = A - B^T D^{-1} B via one Dirichlet solve per kept vertex:
    // column j of D^{-1} B comes from pinning unit data at keep[j].
    GroundedSystem sys(net, out.keep, opts);
    std::vector<double> zero_rhs(n, 0.0), bc(n, 0.0);
    for (int j = 0; j < m; ++j) {
      bc.assign(n, 0.0);
      bc[out.keep[j]] = 1.0;
      // Harmonic extension h_j of the pin data; trc(i,j) = Lap h_j (keep[i]).
      VertexFunction h = sys.solve(zero_rhs, &bc);
      for (int i = 0; i < m; ++i)
        out.matrix.at(i, j) = laplacian_at(net, h, out.keep[i]);
    }
    // Symmetrize away solver rounding.
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double s = 0.5 * (out.matrix.at(i, j) + out.matrix.at(j, i));
        out.matrix.at(i, j) = out.matrix.at(j, i) = s;
      }
  } else {
    // Large complement: eliminate one vertex at a time, min-degree first
    // (fill-reducing; leaf-first on trees, so elimination stays linear).
    MutGraph g(net);
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                        std::greater<>> heap;  // (degree, vertex), lazy
    for (int v = 0; v < n; ++v)
      if (pos[v] < 0) heap.emplace(g.degree(v), v);
    while (!heap.empty()) {
      auto [deg, v] = heap.top();
      heap.pop();
      if (!g.alive[v] || pos[v] >= 0 || deg != g.degree(v)) continue;
      std::vector<int> touched;
      for (auto& [to, c] : g.adj[v])
        if (pos[to] < 0) touched.push_back(to);
      g.eliminate(v);
      for (int t : touched) heap.emplace(g.degree(t), t);
    }
    for (int i = 0; i < m; ++i) {
      double diag = 0.0;
      for (auto& [to, c] : g.adj[out.keep[i]]) {
        out.matrix.at(i, pos[to]) = -c;
        diag += c;
      }
      out.matrix.at(i, i) = diag;
    }
  }

  // Traced network from the negated off-diagonals; clamp rounding noise.
  double scale = 0.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, std::fabs(out.matrix.at(i, i)));
  NetworkBuilder b(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double c = -out.matrix.at(i, j);
      if (c > 1e-12 * scale)
        b.add_edge(i, j, c);
      else if (c < -1e-12 * scale)
        throw SolverError("schur trace produced a significantly negative conductance");
    }
  out.traced = b.build();
  return out;
}

PairReduction reduce_to_pair(const Network& net, int x, int y) {
  if (x == y) throw ValidationError("reduce_to_pair needs distinct terminals");
  MutGraph g(net);
  PairReduction out;
  const int n = net.vertex_count();
  while (true) {
    int best = -1, best_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (!g.alive[v] || v == x || v == y) continue;
      int d = g.degree(v);
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
      }
    }
    if (best < 0) break;
    ReductionStep step;
    step.removed = best;
    switch (best_deg) {
      case 2: step.kind = ReductionStep::Kind::series; break;
      case 3: step.kind = ReductionStep::Kind::wye_delta; break;
      default: step.kind = ReductionStep::Kind::schur; break;
    }
    step.added = g.eliminate(best);
    out.log.steps.push_back(std::move(step));
  }
  auto it = g.adj[x].find(y);
  if (it == g.adj[x].end())
    throw SolverError("reduction did not terminate on a single edge");
  out.conductance = it->second;
  return out;
}

Network replay(const Network& net, const ReductionLog& log, std::vector<int>* old_to_new) {
  MutGraph g(net);
  for (const ReductionStep& step : log.steps) {
    switch (step.kind) {
      case ReductionStep::Kind::parallel:
        // Parallel merges are implicit in the representation; the logged
        // deltas were already folded into the edge they name.
        break;
      case ReductionStep::Kind::series:
      case ReductionStep::Kind::wye_delta:
      case ReductionStep::Kind::schur: {
        if (step.removed < 0 || step.removed >= net.vertex_count() ||
            !g.alive[step.removed])
          throw ValidationError("replay: step removes an unknown vertex");
        auto added = g.eliminate(step.removed);
        if (added.size() != step.added.size())
          throw ValidationError("replay: step does not match the network");
        for (size_t i = 0; i < added.size(); ++i) {
          auto [u1, v1, c1] = added[i];
          auto [u2, v2, c2] = step.added[i];
          if (u1 != u2 || v1 != v2 || std::fabs(c1 - c2) > 1e-9 * std::max(1.0, c2))
            throw ValidationError("replay: conductance mismatch");
        }
        break;
      }
    }
  }
  return g.to_network(old_to_new);
}

}  // namespace resnet
