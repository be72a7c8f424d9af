#include "resnet/walk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace resnet {

double path_probability(const Network& net, const std::vector<int>& path) {
  double p = 1.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    double c = net.conductance(path[i], path[i + 1]);
    if (c == 0.0) throw ValidationError("path probability: non-adjacent step");
    p *= c / net.degree_weight(path[i]);
  }
  return p;
}

double hit_before_exact(const Network& net, int start, int target,
                        const std::vector<int>& avoid, const SolveOptions& opts) {
  if (start == target) return 1.0;
  for (int v : avoid) {
    if (v == target) throw ValidationError("hit probability: target in avoid set");
    if (v == start) return 0.0;
  }
  std::vector<int> pinned = avoid;
  pinned.push_back(target);
  GroundedSystem sys(net, pinned, opts);
  std::vector<double> rhs(net.vertex_count(), 0.0), bc(net.vertex_count(), 0.0);
  bc[target] = 1.0;
  VertexFunction u = sys.solve(rhs, &bc);
  return u[start];
}

double escape_probability_exact(const Network& net, int a, int b, const SolveOptions& opts) {
  if (a == b) throw ValidationError("escape probability needs a != b");
  // First-step decomposition over the neighbors of a.
  std::vector<int> avoid{a};
  GroundedSystem sys(net, {a, b}, opts);
  std::vector<double> rhs(net.vertex_count(), 0.0), bc(net.vertex_count(), 0.0);
  bc[b] = 1.0;
  VertexFunction u = sys.solve(rhs, &bc);  // u(y) = P_y[tau_b < tau_a]
  double p = 0.0;
  for (const HalfEdge& h : net.neighbors(a)) p += transition_prob(net, a, h.to) * u[h.to];
  return p;
}

namespace {

// SplitMix64; one independent substream per (seed, walk index).
struct SplitMix {
  uint64_t state;
  explicit SplitMix(uint64_t s) : state(s) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

uint64_t substream_key(uint64_t seed, uint64_t walk) {
  SplitMix mix(seed ^ (walk * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return mix.next();
}

int step(const Network& net, int x, SplitMix& rng) {
  double u = rng.uniform() * net.degree_weight(x);
  double acc = 0.0;
  const auto& nbrs = net.neighbors(x);
  for (const HalfEdge& h : nbrs) {
    acc += h.c;
    if (u < acc) return h.to;
  }
  return nbrs.back().to;
}

// Runs `samples` independent walks; outcome(-1) = truncated, 0 = failure,
// 1 = success. Deterministic for a fixed seed regardless of thread count.
McEstimate run_bernoulli_walks(const WalkConfig& cfg,
                               const std::function<int(SplitMix&)>& one_walk) {
  std::vector<int8_t> outcome(cfg.samples);
  int threads = std::max(1, cfg.threads);
  auto worker = [&](int t) {
    for (int i = t; i < cfg.samples; i += threads) {
      SplitMix rng(substream_key(cfg.seed, static_cast<uint64_t>(i)));
      outcome[i] = static_cast<int8_t>(one_walk(rng));
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  long long hits = 0, used = 0, truncated = 0;
  for (int8_t o : outcome) {
    if (o < 0)
      ++truncated;
    else {
      ++used;
      hits += o;
    }
  }
  McEstimate out;
  out.samples = static_cast<int>(used);
  out.truncated = static_cast<int>(truncated);
  out.truncation_warning = truncated * 100 > cfg.samples;
  out.truncation_bias_bound =
      cfg.samples > 0 ? static_cast<double>(truncated) / cfg.samples : 0.0;
  if (used > 0) {
    double p = static_cast<double>(hits) / static_cast<double>(used);
    out.estimate = p;
    out.ci95 = 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(used));
  }
  return out;
}

}  // namespace

McEstimate escape_probability_mc(const Network& net, int a, int b, const WalkConfig& cfg) {
  if (a == b) throw ValidationError("escape probability needs a != b");
  auto one_walk = [&](SplitMix& rng) -> int {
    int x = step(net, a, rng);
    for (long s = 1; s < cfg.max_steps; ++s) {
      if (x == b) return 1;
      if (x == a) return 0;
      x = step(net, x, rng);
    }
    return -1;
  };
  return run_bernoulli_walks(cfg, one_walk);
}

double restricted_escape_exact(const Network& net, int x, int y, const std::vector<int>& H,
                               const SolveOptions& opts) {
  std::vector<char> in(net.vertex_count(), 0);
  for (int v : H) in.at(v) = 1;
  if (!in[x] || !in[y]) throw ValidationError("restricted escape: x, y must lie in H");
  if (x == y) throw ValidationError("restricted escape needs x != y");

  // z(s) = P_s[walk stays in H^c until it exits, exiting at y] for s in H^c:
  // harmonic on H^c with absorbing data 1 at y, 0 at H \ {y}.
  bool complement_route = false;
  for (const HalfEdge& h : net.neighbors(x))
    if (!in[h.to]) complement_route = true;
  if (!complement_route) return 0.0;

  std::vector<int> pinned;
  for (int v = 0; v < net.vertex_count(); ++v)
    if (in[v]) pinned.push_back(v);
  GroundedSystem sys(net, pinned, opts);
  std::vector<double> rhs(net.vertex_count(), 0.0), bc(net.vertex_count(), 0.0);
  bc[y] = 1.0;
  VertexFunction z = sys.solve(rhs, &bc);
  double p = 0.0;
  for (const HalfEdge& h : net.neighbors(x))
    if (!in[h.to]) p += transition_prob(net, x, h.to) * z[h.to];
  return p;
}

McEstimate restricted_escape_mc(const Network& net, int x, int y, const std::vector<int>& H,
                                const WalkConfig& cfg) {
  std::vector<char> in(net.vertex_count(), 0);
  for (int v : H) in.at(v) = 1;
  if (!in[x] || !in[y]) throw ValidationError("restricted escape: x, y must lie in H");
  auto one_walk = [&](SplitMix& rng) -> int {
    int cur = step(net, x, rng);
    if (in[cur]) return 0;  // one-step paths do not count, the walk must leave H
    for (long s = 1; s < cfg.max_steps; ++s) {
      cur = step(net, cur, rng);
      if (in[cur]) return cur == y ? 1 : 0;
    }
    return -1;
  };
  return run_bernoulli_walks(cfg, one_walk);
}

MartingaleReport martingale_check(const Network& net, const VertexFunction& h, int x, int n,
                                  const WalkConfig& cfg, double harmonic_tol) {
  // Vertices where h is (numerically) harmonic; leaving this set flags a walk.
  std::vector<char> ok(net.vertex_count(), 0);
  double scale = 1.0;
  for (int v = 0; v < net.vertex_count(); ++v) scale = std::max(scale, std::fabs(h[v]));
  for (int v = 0; v < net.vertex_count(); ++v)
    ok[v] = std::fabs(laplacian_at(net, h, v)) <= harmonic_tol * scale * net.degree_weight(v);
  if (!ok[x]) throw ValidationError("martingale check: h not harmonic at the start");

  std::vector<double> value(cfg.samples, 0.0);
  std::vector<int8_t> flagged(cfg.samples, 0);
  int threads = std::max(1, cfg.threads);
  auto worker = [&](int t) {
    for (int i = t; i < cfg.samples; i += threads) {
      SplitMix rng(substream_key(cfg.seed, static_cast<uint64_t>(i)));
      int cur = x;
      for (int s = 0; s < n; ++s) {
        cur = step(net, cur, rng);
        if (!ok[cur] && s + 1 < n) {
          flagged[i] = 1;
          break;
        }
      }
      if (!flagged[i]) value[i] = h[cur];
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  MartingaleReport rep;
  rep.h_start = h[x];
  long long used = 0;
  double sum = 0.0;
  for (int i = 0; i < cfg.samples; ++i) {
    if (flagged[i])
      ++rep.flagged;
    else {
      ++used;
      sum += value[i];
    }
  }
  double mean = used ? sum / static_cast<double>(used) : 0.0;
  double var = 0.0;
  for (int i = 0; i < cfg.samples; ++i)
    if (!flagged[i]) var += (value[i] - mean) * (value[i] - mean);
  if (used > 1) var /= static_cast<double>(used - 1);
  rep.estimate.estimate = mean;
  rep.estimate.samples = static_cast<int>(used);
  double sigma = used ? std::sqrt(var / static_cast<double>(used)) : 0.0;
  rep.estimate.ci95 = 1.96 * sigma;
  rep.sigmas = sigma > 0 ? std::fabs(mean - rep.h_start) / sigma : 0.0;
  return rep;
}

ForwardChain forward_chain(const Network& net, const Current& I) {
  ForwardChain fc;
  fc.net = &net;
  fc.flow = I;
  const int n = net.vertex_count();
  fc.activity.assign(n, 0.0);
  fc.absorbing.assign(n, 1);
  VertexFunction div = divergence(net, I);
  bool nonzero = false;
  for (int x = 0; x < n; ++x) {
    double traffic = 0.0;
    for (const HalfEdge& h : net.neighbors(x)) traffic += std::fabs(I.at(net, x, h.to));
    nonzero = nonzero || traffic > 0.0;
    // Sources and sinks carry their injected current as activity.
    fc.activity[x] = std::fabs(div[x]) > 1e-12 ? std::fabs(div[x]) : 0.5 * traffic;
    for (const HalfEdge& h : net.neighbors(x))
      if (I.at(net, x, h.to) > 0.0) fc.absorbing[x] = 0;
  }
  if (!nonzero) throw ValidationError("forward chain needs a nonzero current");
  return fc;
}

double ForwardChain::transition(int x, int y) const {
  if (absorbing[x] || activity[x] == 0.0) return 0.0;
  double i = flow.at(*net, x, y);
  return i > 0.0 ? i / activity[x] : 0.0;
}

std::vector<int> ForwardChain::forward_neighbors(int x) const {
  std::vector<int> out;
  for (const HalfEdge& h : net->neighbors(x))
    if (flow.at(*net, x, h.to) > 0.0) out.push_back(h.to);
  std::sort(out.begin(), out.end());
  return out;
}

double ForwardChain::path_probability(const std::vector<int>& path) const {
  double p = 1.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    double t = transition(path[i], path[i + 1]);
    if (t == 0.0) return 0.0;
    p *= t;
  }
  return p;
}

double ForwardChain::forward_laplacian(const VertexFunction& v, int x) const {
  double acc = 0.0;
  for (const HalfEdge& h : net->neighbors(x))
    if (flow.at(*net, x, h.to) > 0.0) acc += h.c * (v[x] - v[h.to]);
  return acc;
}

std::vector<std::pair<std::vector<int>, double>> ForwardChain::enumerate_paths(
    int source, int sink, int cap) const {
  std::vector<std::pair<std::vector<int>, double>> out;
  std::vector<int> path{source};
  std::function<void(int, double)> dfs = [&](int x, double p) {
    if (static_cast<int>(out.size()) >= cap)
      throw SolverError("current-path enumeration exceeded cap");
    if (x == sink) {
      out.emplace_back(path, p);
      return;
    }
    for (int y : forward_neighbors(x)) {
      double t = transition(x, y);
      if (t <= 0.0) continue;
      path.push_back(y);
      dfs(y, p * t);
      path.pop_back();
    }
  };
  dfs(source, 1.0);
  return out;
}

}  // namespace resnet
