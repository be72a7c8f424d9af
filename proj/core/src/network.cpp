#include "resnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace resnet {

double Network::conductance(int x, int y) const {
  for (const HalfEdge& h : adj_[x])
    if (h.to == y) return h.c;
  return 0.0;
}

int Network::edge_index(int x, int y) const {
  for (const HalfEdge& h : adj_[x])
    if (h.to == y) return h.eid;
  return -1;
}

double Network::max_degree_weight_error() const {
  std::vector<double> acc(n_, 0.0);
  for (const Edge& e : edges_) {
    acc[e.u] += e.c;
    acc[e.v] += e.c;
  }
  double worst = 0.0;
  for (int x = 0; x < n_; ++x) worst = std::max(worst, std::fabs(acc[x] - degw_[x]));
  return worst;
}

Network Network::induced_subnetwork(const std::vector<int>& vertices,
                                    std::vector<int>* old_to_new) const {
  std::vector<int> map(n_, -1);
  int m = 0;
  for (int v : vertices) {
    if (v < 0 || v >= n_) throw ValidationError("subnetwork vertex out of range");
    if (map[v] == -1) map[v] = m++;
  }
  NetworkBuilder b(m);
  for (const Edge& e : edges_)
    if (map[e.u] >= 0 && map[e.v] >= 0) b.add_edge(map[e.u], map[e.v], e.c);
  if (old_to_new) *old_to_new = map;
  return b.build();
}

Network Network::wired_subnetwork(const std::vector<int>& vertices,
                                  std::vector<int>* old_to_new,
                                  int* infinity_vertex) const {
  std::vector<int> map(n_, -1);
  int m = 0;
  for (int v : vertices) {
    if (v < 0 || v >= n_) throw ValidationError("subnetwork vertex out of range");
    if (map[v] == -1) map[v] = m++;
  }
  const int inf = m;
  NetworkBuilder b(m + 1);
  bool touched = false;
  for (const Edge& e : edges_) {
    int a = map[e.u], c = map[e.v];
    if (a >= 0 && c >= 0) {
      b.add_edge(a, c, e.c);
    } else if (a >= 0) {
      b.add_edge(a, inf, e.c);  // builder merges parallels, c_{x,inf} sums
      touched = true;
    } else if (c >= 0) {
      b.add_edge(c, inf, e.c);
      touched = true;
    }
  }
  if (!touched)
    throw ValidationError("wired subnetwork: complement has no edges into the set");
  if (old_to_new) *old_to_new = map;
  if (infinity_vertex) *infinity_vertex = inf;
  return b.build();
}

NetworkBuilder::NetworkBuilder(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0) throw ValidationError("negative vertex count");
}

void NetworkBuilder::ensure_vertex(int v) {
  if (v < 0) throw ValidationError("negative vertex id");
  n_ = std::max(n_, v + 1);
}

NetworkBuilder& NetworkBuilder::add_edge(int u, int v, double c) {
  if (u == v) throw ValidationError("self-loop rejected at vertex " + std::to_string(u));
  if (!(c > 0.0) || !std::isfinite(c))
    throw ValidationError("nonpositive conductance on edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ")");
  ensure_vertex(u);
  ensure_vertex(v);
  int a = std::min(u, v), b = std::max(u, v);
  uint64_t key = (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
  auto [it, fresh] = edge_slot_.try_emplace(key, edges_.size());
  if (!fresh) {
    edges_[it->second].c += c;  // parallel conductors merge by addition
    return *this;
  }
  edges_.push_back({a, b, c});
  return *this;
}

NetworkBuilder& NetworkBuilder::set_label(int v, std::string label) {
  ensure_vertex(v);
  labels_.emplace_back(v, std::move(label));
  return *this;
}

Network NetworkBuilder::build() const {
  Network net;
  net.n_ = n_;
  net.edges_ = edges_;
  std::sort(net.edges_.begin(), net.edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  net.adj_.assign(n_, {});
  net.degw_.assign(n_, 0.0);
  for (int i = 0; i < static_cast<int>(net.edges_.size()); ++i) {
    const Edge& e = net.edges_[i];
    net.adj_[e.u].push_back({e.v, e.c, i});
    net.adj_[e.v].push_back({e.u, e.c, i});
    net.degw_[e.u] += e.c;
    net.degw_[e.v] += e.c;
  }
  net.labels_.assign(n_, {});
  for (const auto& [v, s] : labels_) {
    net.labels_[v] = s;
    net.labeled_ = true;
  }

  // Connectivity over edges with c > 0.
  if (n_ > 1) {
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (const HalfEdge& h : net.adj_[x]) {
        if (!seen[h.to]) {
          seen[h.to] = 1;
          ++count;
          q.push(h.to);
        }
      }
    }
    if (count != n_) {
      int stray = 0;
      while (seen[stray]) ++stray;
      throw ValidationError("disconnected network: no path between vertices 0 and " +
                            std::to_string(stray));
    }
  }
  return net;
}

std::vector<int> geodesic_ball(const Network& net, int origin, int radius) {
  if (origin < 0 || origin >= net.vertex_count())
    throw ValidationError("ball origin out of range");
  if (radius < 0) throw ValidationError("negative ball radius");
  std::vector<int> dist(net.vertex_count(), -1);
  std::queue<int> q;
  dist[origin] = 0;
  q.push(origin);
  std::vector<int> out{origin};
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (dist[x] == radius) continue;
    for (const HalfEdge& h : net.neighbors(x)) {
      if (dist[h.to] == -1) {
        dist[h.to] = dist[x] + 1;
        out.push_back(h.to);
        q.push(h.to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> boundary_of(const Network& net, const std::vector<int>& H) {
  if (H.empty()) throw ValidationError("boundary of empty set");
  std::vector<char> in(net.vertex_count(), 0);
  for (int v : H) in.at(v) = 1;
  std::vector<int> bd;
  for (int v : H) {
    for (const HalfEdge& h : net.neighbors(v)) {
      if (!in[h.to]) {
        bd.push_back(v);
        break;
      }
    }
  }
  std::sort(bd.begin(), bd.end());
  bd.erase(std::unique(bd.begin(), bd.end()), bd.end());
  return bd;
}

std::vector<int> ExhaustionPlan::level_set(const Network& net, int k) const {
  if (levels) {
    if (k < 1 || k > static_cast<int>(levels->size()))
      throw ValidationError("exhaustion level out of range");
    return (*levels)[k - 1];
  }
  if (k < 0) throw ValidationError("exhaustion level must be nonnegative");
  return geodesic_ball(net, origin, k);
}

}  // namespace resnet
