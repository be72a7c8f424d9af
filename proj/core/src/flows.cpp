#include "resnet/flows.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace resnet {

CycleBasis cycle_basis(const Network& net) {
  const int n = net.vertex_count();
  CycleBasis basis;
  std::vector<int> parent(n, -1), parent_edge(n, -1), depth(n, 0);
  std::vector<char> seen(n, 0), in_tree(net.edge_count(), 0);
  std::queue<int> q;
  seen[0] = 1;
  q.push(0);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (const HalfEdge& h : net.neighbors(x)) {
      if (!seen[h.to]) {
        seen[h.to] = 1;
        parent[h.to] = x;
        parent_edge[h.to] = h.eid;
        depth[h.to] = depth[x] + 1;
        in_tree[h.eid] = 1;
        basis.tree_edges.push_back(h.eid);
        q.push(h.to);
      }
    }
  }

  for (int eid = 0; eid < net.edge_count(); ++eid) {
    if (in_tree[eid]) continue;
    const Edge& e = net.edges()[eid];
    // Unit flow around the fundamental cycle of this chord: e.u -> e.v along
    // the chord, back through the tree.
    Current chi(net);
    chi.set(net, e.u, e.v, 1.0);
    int a = e.v, b = e.u;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        chi.set(net, a, parent[a], 1.0);
        a = parent[a];
      } else {
        chi.set(net, parent[b], b, 1.0);
        b = parent[b];
      }
    }
    basis.cycles.push_back(std::move(chi));
  }
  return basis;
}

double cycle_condition(const Network& net, const Current& I) {
  CycleBasis basis = cycle_basis(net);
  double worst = 0.0;
  for (const Current& chi : basis.cycles)
    worst = std::max(worst, std::fabs(dissipation(net, I, chi)));
  return worst;
}

InducedProjection project_to_induced(const Network& net, const Current& I, int o,
                                     const SolveOptions& opts) {
  VertexFunction div = divergence(net, I);
  double total = 0.0;
  for (double d : div.values) total += d;
  if (std::fabs(total) > 1e-9)
    throw SolverError("divergence does not sum to zero");  // structurally impossible
  GroundedSystem sys(net, {o}, opts);
  InducedProjection out;
  out.potential = sys.solve(div.values);
  out.potential.ground = o;
  out.projected = drop(net, out.potential);
  return out;
}

Current path_characteristic(const Network& net, const std::vector<int>& path) {
  Current chi(net);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    if (net.edge_index(path[i], path[i + 1]) < 0)
      throw ValidationError("path characteristic: non-adjacent step");
    chi.set(net, path[i], path[i + 1], chi.at(net, path[i], path[i + 1]) + 1.0);
  }
  return chi;
}

namespace {

// BFS path used to seed the minimal flow.
std::vector<int> bfs_path(const Network& net, int a, int w) {
  std::vector<int> prev(net.vertex_count(), -1);
  std::queue<int> q;
  q.push(a);
  prev[a] = a;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == w) break;
    for (const HalfEdge& h : net.neighbors(x))
      if (prev[h.to] == -1) {
        prev[h.to] = x;
        q.push(h.to);
      }
  }
  if (prev[w] == -1) throw ValidationError("no path between flow endpoints");
  std::vector<int> path{w};
  while (path.back() != a) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Current min_dissipation_flow(const Network& net, int a, int w, int o,
                             const SolveOptions& opts) {
  if (a == w) throw ValidationError("flow endpoints must differ");
  Current seed = path_characteristic(net, bfs_path(net, a, w));
  return project_to_induced(net, seed, o, opts).projected;
}

std::vector<int> find_current_path(const Network& net, const VertexFunction& v, int a,
                                   int w) {
  if (!(v[a] > v[w])) throw ValidationError("current path needs v(a) > v(w)");
  Current I = drop(net, v);
  std::vector<int> path{a};
  std::vector<char> on_path(net.vertex_count(), 0);
  on_path[a] = 1;
  // Depth-first descent; a strictly decreasing path always exists for a
  // genuine dipole, backtracking covers ties in odd geometries.
  struct Frame {
    int vertex;
    std::vector<int> options;
    size_t next = 0;
  };
  auto downstream = [&](int x) {
    std::vector<int> opts;
    for (const HalfEdge& h : net.neighbors(x))
      if (v[h.to] < v[x]) opts.push_back(h.to);
    std::sort(opts.begin(), opts.end(), [&](int p, int q) {
      double ip = I.at(net, x, p), iq = I.at(net, x, q);
      if (ip != iq) return ip > iq;
      return p < q;
    });
    return opts;
  };
  std::vector<Frame> stack{{a, downstream(a)}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.vertex == w) break;
    if (top.next >= top.options.size()) {
      on_path[top.vertex] = 0;
      stack.pop_back();
      path.pop_back();
      continue;
    }
    int nxt = top.options[top.next++];
    if (on_path[nxt]) continue;  // cannot revisit (v strictly decreases anyway)
    on_path[nxt] = 1;
    path.push_back(nxt);
    stack.push_back({nxt, downstream(nxt)});
  }
  if (stack.empty() || path.back() != w)
    throw SolverError("no strictly decreasing path found (input is not a dipole?)");
  return path;
}

}  // namespace resnet
