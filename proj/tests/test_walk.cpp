#include <doctest.h>

#include <cmath>

#include "resnet/flows.hpp"
#include "resnet/generators.hpp"
#include "resnet/netx.hpp"
#include "resnet/reduce.hpp"
#include "resnet/resistance.hpp"
#include "resnet/solvers.hpp"
#include "resnet/walk.hpp"
#include "test_util.hpp"

using namespace resnet;

TEST_CASE("path probabilities multiply") {
  Network edge = parse_network_string("netx 1\ne 0 1 1\n");
  CHECK(path_probability(edge, {0, 1}) == 1.0);

  Network path3 = generate("path:N=3");
  CHECK(path_probability(path3, {0, 1, 2}) == doctest::Approx(0.5));
  CHECK(path_probability(path3, {}) == 1.0);
  CHECK(path_probability(path3, {1}) == 1.0);
  CHECK_THROWS_AS(path_probability(path3, {0, 2}), ValidationError);
}

TEST_CASE("hitting probabilities by harmonic extension") {
  Network path3 = generate("path:N=3");
  CHECK(hit_before_exact(path3, 1, 1, {0}) == 1.0);
  CHECK(hit_before_exact(path3, 1, 0, {2}) == doctest::Approx(0.5));
  CHECK(hit_before_exact(path3, 0, 0, {}) == 1.0);
  CHECK(hit_before_exact(path3, 2, 0, {2}) == 0.0);  // starts absorbed
}

TEST_CASE("kernel identity v_x = R(x,o) u_x") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    Network net = testutil::random_network(rng, 18);
    int o = static_cast<int>(rng() % 18), x = (o + 5) % 18;
    VertexFunction vx = solve_dipole(net, x, o, o);
    double R = vx[x];
    for (int y = 0; y < 18; ++y) {
      double u = hit_before_exact(net, y, x, {o});
      CHECK(vx[y] == doctest::Approx(R * u).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("escape probability and the resistance identity") {
  Network edge = parse_network_string("netx 1\ne 0 1 1\n");
  CHECK(escape_probability_exact(edge, 0, 1) == doctest::Approx(1.0));

  Network path3 = generate("path:N=3");
  CHECK(escape_probability_exact(path3, 0, 2) == doctest::Approx(0.5));

  // c(a) P[a->b] R(a,b) = 1 on random nets
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    Network net = testutil::random_network(rng, 20);
    int a = static_cast<int>(rng() % 20), b = (a + 7) % 20;
    double p = escape_probability_exact(net, a, b);
    double R = resistance_finite(net, a, b).value;
    CHECK(net.degree_weight(a) * p * R == doctest::Approx(1.0).epsilon(1e-9));
  }

  // deletion example: P = 11/(10 c(alpha))
  Network del = generate("deletion_example");
  CHECK(escape_probability_exact(del, 0, 4) ==
        doctest::Approx(11.0 / (10.0 * del.degree_weight(0))).epsilon(1e-10));
}

TEST_CASE("monte carlo escape agrees with the exact solve") {
  Network cyc = generate("cycle:N=6");
  WalkConfig cfg;
  cfg.seed = 2024;
  cfg.samples = 40000;
  double exact = escape_probability_exact(cyc, 0, 3);
  McEstimate mc = escape_probability_mc(cyc, 0, 3, cfg);
  CHECK(std::fabs(mc.estimate - exact) <= 3.0 * (mc.ci95 / 1.96));
  CHECK(mc.truncated == 0);

  // deterministic for a fixed seed, independent of the thread count
  McEstimate again = escape_probability_mc(cyc, 0, 3, cfg);
  CHECK(again.estimate == mc.estimate);
  WalkConfig threaded = cfg;
  threaded.threads = 2;
  McEstimate par = escape_probability_mc(cyc, 0, 3, threaded);
  CHECK(par.estimate == mc.estimate);

  WalkConfig other = cfg;
  other.seed = 7;
  CHECK(escape_probability_mc(cyc, 0, 3, other).estimate != mc.estimate);
}

TEST_CASE("restricted escape feeds the trace conductance identity") {
  // H = {x,y} with a single two-edge route outside: contribution 1/2
  Network path3 = generate("path:N=3");
  CHECK(restricted_escape_exact(path3, 0, 2, {0, 2}) == doctest::Approx(0.5));

  // no route through the complement: zero
  Network cyc = generate("cycle:N=4");
  CHECK(restricted_escape_exact(cyc, 0, 1, {0, 1, 2}) == 0.0);

  // star with keep = two leaves matches the wye-delta value 1/3
  NetworkBuilder b(4);
  b.add_edge(3, 0, 1.0).add_edge(3, 1, 1.0).add_edge(3, 2, 1.0);
  Network star = b.build();
  double p = restricted_escape_exact(star, 0, 1, {0, 1, 2});
  CHECK(star.degree_weight(0) * p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // c^tr_xy = c_xy + c(x) P[x->y]|_{H^c} against the Schur complement
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    Network net = testutil::random_network(rng, 16);
    std::vector<int> H;
    for (int v = 0; v < 16; ++v)
      if (rng() % 2) H.push_back(v);
    if (H.size() < 2) H = {0, 1};
    SchurResult schur = schur_trace(net, H);
    for (size_t i = 0; i < H.size(); ++i)
      for (size_t j = i + 1; j < H.size(); ++j) {
        double via_walk = net.conductance(H[i], H[j]) +
                          net.degree_weight(H[i]) *
                              restricted_escape_exact(net, H[i], H[j], H);
        CHECK(via_walk == doctest::Approx(-schur.matrix.at(i, j)).scale(1.0).epsilon(1e-9));
      }
  }
}

TEST_CASE("truncated walks are excluded, counted, and bounded") {
  Network cyc = generate("cycle:N=40");
  WalkConfig cfg;
  cfg.seed = 31;
  cfg.samples = 5000;
  cfg.max_steps = 25;  // far below the typical hitting time
  McEstimate mc = escape_probability_mc(cyc, 0, 20, cfg);
  CHECK(mc.truncated > 0);
  CHECK(mc.samples + mc.truncated == cfg.samples);
  CHECK(mc.truncation_bias_bound ==
        doctest::Approx(static_cast<double>(mc.truncated) / cfg.samples));
  CHECK(mc.truncation_warning);
}

TEST_CASE("restricted escape MC mode") {
  Network path3 = generate("path:N=3");
  WalkConfig cfg;
  cfg.seed = 5;
  cfg.samples = 20000;
  McEstimate mc = restricted_escape_mc(path3, 0, 2, {0, 2}, cfg);
  CHECK(std::fabs(mc.estimate - 0.5) <= 3.0 * (mc.ci95 / 1.96));
}

TEST_CASE("martingale property of harmonic functions") {
  // constant h: exact equality
  Network cyc = generate("cycle:N=8");
  VertexFunction constant(8, 3.0);
  WalkConfig cfg;
  cfg.seed = 11;
  cfg.samples = 2000;
  MartingaleReport rep = martingale_check(cyc, constant, 0, 4, cfg);
  CHECK(rep.estimate.estimate == doctest::Approx(3.0));
  CHECK(rep.flagged == 0);

  // ladder harmonic: interior start, short horizon
  LadderHarmonic lad = ladder_harmonic(3.0, 0.5, 24);
  Network net = generate("ladder:alpha=3,beta=0.5,length=24");
  VertexFunction h = lad.on_ladder();
  WalkConfig cfg2;
  cfg2.seed = 17;
  cfg2.samples = 30000;
  MartingaleReport rep2 = martingale_check(net, h, 2 * 8, 5, cfg2);
  CHECK(rep2.sigmas <= 3.0);

  // linear function on a Z box: zero drift
  Network box = generate("lattice_box:d=1,L=21");
  VertexFunction linear(21);
  for (int i = 0; i < 21; ++i) linear[i] = static_cast<double>(i);
  WalkConfig cfg3;
  cfg3.seed = 23;
  cfg3.samples = 30000;
  MartingaleReport rep3 = martingale_check(box, linear, 10, 3, cfg3);
  CHECK(rep3.sigmas <= 3.0);
  CHECK(rep3.estimate.estimate == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("forward chain on the deletion example") {
  Network del = generate("deletion_example");
  Current I = min_dissipation_flow(del, 0, 4, 0);
  ForwardChain fc = forward_chain(del, I);

  // unit flow: act = 1 at source and sink, total traffic elsewhere
  CHECK(fc.activity[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fc.activity[4] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fc.activity[1] == doctest::Approx(5.0 / 11.0).epsilon(1e-9));

  // transitions out of the source follow the currents
  CHECK(fc.transition(0, 1) == doctest::Approx(5.0 / 11.0).epsilon(1e-9));
  CHECK(fc.transition(0, 2) == doctest::Approx(2.0 / 11.0).epsilon(1e-9));
  CHECK(fc.transition(0, 3) == doctest::Approx(4.0 / 11.0).epsilon(1e-9));

  // stochastic rows at active vertices
  for (int x : {0, 1, 2, 3}) {
    double row = 0.0;
    for (int y : fc.forward_neighbors(x)) row += fc.transition(x, y);
    CHECK(row == doctest::Approx(1.0).epsilon(1e-9));
  }

  // the two surviving 2-edge routes after deleting (0,2) and (2,3) carry
  // 5/11 + 4/11 = 9/11 of the current-path measure
  double p1 = fc.path_probability({0, 1, 4});
  double p3 = fc.path_probability({0, 3, 4});
  CHECK(p1 + p3 == doctest::Approx(9.0 / 11.0).epsilon(1e-9));

  // flow decomposes over its current paths edge by edge
  auto paths = fc.enumerate_paths(0, 4);
  double total = 0.0;
  for (auto& [path, p] : paths) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  for (int eid = 0; eid < del.edge_count(); ++eid) {
    const Edge& e = del.edges()[eid];
    double through = 0.0;
    for (auto& [path, p] : paths)
      for (size_t i = 0; i + 1 < path.size(); ++i)
        if ((path[i] == e.u && path[i + 1] == e.v) ||
            (path[i] == e.v && path[i + 1] == e.u))
          through += p;
    CHECK(through == doctest::Approx(std::fabs(I.values[eid])).epsilon(1e-9));
  }
}

TEST_CASE("forward chain on a single path is deterministic") {
  Network path4 = generate("path:N=4");
  Current I = min_dissipation_flow(path4, 0, 3, 0);
  ForwardChain fc = forward_chain(path4, I);
  CHECK(fc.transition(0, 1) == doctest::Approx(1.0));
  CHECK(fc.transition(1, 2) == doctest::Approx(1.0));
  CHECK(fc.path_probability({0, 1, 2, 3}) == doctest::Approx(1.0));
  CHECK(fc.forward_laplacian(solve_dipole(path4, 0, 3, 3), 1) ==
        doctest::Approx(1.0));  // c=1, unit drop to the next vertex
}

TEST_CASE("forward chain rejects the zero current") {
  Network path3 = generate("path:N=3");
  Current zero(path3);
  CHECK_THROWS_AS(forward_chain(path3, zero), ValidationError);
}
