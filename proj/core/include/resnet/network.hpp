#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace resnet {

// Undirected edge with positive conductance, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double c = 0.0;
};

struct HalfEdge {
  int to = 0;
  double c = 0.0;
  int eid = 0;  // index into Network::edges()
};

class NetworkBuilder;

// Finite connected weighted graph with symmetric positive conductances.
// Vertices are dense integers 0..n-1; immutable after construction.
class Network {
 public:
  Network() = default;

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<HalfEdge>& neighbors(int x) const { return adj_[x]; }
  int degree(int x) const { return static_cast<int>(adj_[x].size()); }

  // c(x) = sum of incident conductances, cached at construction.
  double degree_weight(int x) const { return degw_[x]; }

  // c_xy, or 0 when x and y are not adjacent.
  double conductance(int x, int y) const;

  // Index into edges() for the pair {x,y}, or -1.
  int edge_index(int x, int y) const;

  const std::string& label(int x) const { return labels_[x]; }
  bool has_labels() const { return !labels_.empty() && labeled_; }

  // Recompute c(x) from the edge list and compare with the cache.
  double max_degree_weight_error() const;

  // Full subnetwork on a vertex subset, with old->new vertex id map.
  // The subset must induce a connected graph.
  Network induced_subnetwork(const std::vector<int>& vertices,
                             std::vector<int>* old_to_new = nullptr) const;

  // Wired network: the subset keeps its edges and every edge leaving the
  // subset is rewired to a single fresh vertex (returned id = subset size),
  // parallel edges to it merged by conductance addition.
  Network wired_subnetwork(const std::vector<int>& vertices,
                           std::vector<int>* old_to_new = nullptr,
                           int* infinity_vertex = nullptr) const;

 private:
  friend class NetworkBuilder;
  int n_ = 0;
  bool labeled_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<HalfEdge>> adj_;
  std::vector<double> degw_;
  std::vector<std::string> labels_;
};

// Accumulates edges, merges parallels by conductance addition, rejects
// self-loops and nonpositive conductances, checks connectivity on build().
class NetworkBuilder {
 public:
  explicit NetworkBuilder(int vertex_count = 0);

  NetworkBuilder& add_edge(int u, int v, double c);
  NetworkBuilder& set_label(int v, std::string label);

  // Grow the vertex count (ids are implicit 0..max seen).
  void ensure_vertex(int v);

  Network build() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;  // unsorted, parallels already merged
  std::unordered_map<uint64_t, size_t> edge_slot_;
  std::vector<std::pair<int, std::string>> labels_;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geodesic ball of radius r (edge hops) around origin.
std::vector<int> geodesic_ball(const Network& net, int origin, int radius);

// bd H = vertices of H with a neighbor outside H.
std::vector<int> boundary_of(const Network& net, const std::vector<int>& H);

// Nested vertex sets G_1 c G_2 c ... used for infinite-network limits.
// The default rule is geodesic balls of radius k about the origin.
struct ExhaustionPlan {
  int origin = 0;
  // Optional explicit rule: level k (1-based) -> vertex set. When absent,
  // level k is the geodesic ball of radius k.
  std::optional<std::vector<std::vector<int>>> levels;

  std::vector<int> level_set(const Network& net, int k) const;
};

}  // namespace resnet
