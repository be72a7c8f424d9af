#include <doctest.h>

#include <cmath>

#include "resnet/generators.hpp"
#include "resnet/netx.hpp"
#include "resnet/resistance.hpp"
#include "test_util.hpp"

using namespace resnet;

TEST_CASE("cycle resistance matches k(N-k)/N") {
  for (int N : {3, 5, 8, 12}) {
    Network cyc = generate("cycle:N=" + std::to_string(N));
    for (int k = 1; k < N; ++k) {
      double want = static_cast<double>(k) * (N - k) / N;
      CHECK(resistance_finite(cyc, 0, k).value == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("series resistors add") {
  Network path3 = generate("path:N=3");
  CHECK(resistance_finite(path3, 0, 2).value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("deletion example pre- and post-deletion") {
  Network pre = generate("deletion_example");
  CHECK(resistance_finite(pre, 0, 4).value == doctest::Approx(10.0 / 11.0).epsilon(1e-12));
  Network post = generate("square_example");
  CHECK(resistance_finite(post, 0, 3).value == doctest::Approx(1.0).epsilon(1e-12));
  // Powers bound with the example's epsilon = 9/11
  double eps = 9.0 / 11.0;
  CHECK(10.0 / 11.0 <= 1.0 + 1e-15);
  CHECK(1.0 <= 10.0 / 11.0 / (eps * eps) + 1e-15);
  CHECK(10.0 / 11.0 / (eps * eps) == doctest::Approx(110.0 / 81.0).epsilon(1e-14));
}

TEST_CASE("R(x,x) = 0 by convention") {
  Network cyc = generate("cycle:N=5");
  CHECK(resistance_finite(cyc, 2, 2).value == 0.0);
}

TEST_CASE("six formulations agree on random networks") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    Network net = testutil::random_network(rng, 8 + static_cast<int>(rng() % 43));
    int n = net.vertex_count();
    int x = static_cast<int>(rng() % n), y = (x + 1 + static_cast<int>(rng() % (n - 1))) % n;
    FiniteResistance r = resistance_finite(net, x, y);
    CHECK(r.six.spread() < 1e-9);
    CHECK(r.six.derived_equal);
  }
}

TEST_CASE("resistance equals the energy of kernel differences") {
  std::mt19937_64 rng(32);
  Network net = testutil::random_network(rng, 20);
  int o = 0;
  for (auto [x, y] : {std::pair{3, 9}, {5, 17}, {1, 19}}) {
    VertexFunction vx = solve_dipole(net, x, o, o);
    VertexFunction vy = solve_dipole(net, y, o, o);
    VertexFunction d(20);
    for (int i = 0; i < 20; ++i) d[i] = vx[i] - vy[i];
    CHECK(energy(net, d) ==
          doctest::Approx(resistance_finite(net, x, y).value).epsilon(1e-9));
  }
}

TEST_CASE("trace resistance equals the finite value") {
  Network path3 = generate("path:N=3");
  CHECK(trace_resistance(path3, 0, 2) == doctest::Approx(2.0).epsilon(1e-12));

  Network edge = parse_network_string("netx 1\ne 0 1 1\n");
  CHECK(trace_resistance(edge, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));

  Network del = generate("deletion_example");
  CHECK(trace_resistance(del, 0, 4) == doctest::Approx(10.0 / 11.0).epsilon(1e-12));

  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 15; ++trial) {
    Network net = testutil::random_network(rng, 25);
    int x = static_cast<int>(rng() % 25), y = (x + 3) % 25;
    CHECK(trace_resistance(net, x, y) ==
          doctest::Approx(resistance_finite(net, x, y).value).epsilon(1e-9));
  }
}

TEST_CASE("free resistance on trees is geodesic") {
  Network tree = generate("binary_tree:depth=7");
  ExhaustionPlan plan{0, std::nullopt};
  LimitOptions lim;
  lim.k_max = 6;
  LimitTrace t = free_resistance(tree, 0, 1, plan, lim);
  CHECK(t.converged);
  CHECK(t.value == doctest::Approx(1.0).epsilon(1e-12));
  // deeper pair: R = geodesic distance (0 -> 1 -> 4 is two steps)
  LimitTrace t2 = free_resistance(tree, 0, 4, plan, lim);
  CHECK(t2.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("free sequence falls, wired sequence rises, wired below free") {
  Network box = generate("lattice_box:d=2,L=19");
  int center = 9 + 19 * 9;
  ExhaustionPlan plan{center, std::nullopt};
  LimitOptions lim;
  lim.k_max = 8;
  lim.tol = 0.0;  // keep all levels
  LimitTrace f = free_resistance(box, center, center + 1, plan, lim);
  LimitTrace w = wired_resistance(box, center, center + 1, plan, lim);
  REQUIRE(f.trace.size() == w.trace.size());
  for (size_t i = 0; i < f.trace.size(); ++i) {
    if (i) {
      CHECK(f.trace[i].second <= f.trace[i - 1].second + 1e-12);
      CHECK(w.trace[i].second >= w.trace[i - 1].second - 1e-12);
    }
    CHECK(w.trace[i].second <= f.trace[i].second + 1e-9);
  }
  // both bracket the Z^2 neighbor value 1/2
  CHECK(w.value <= 0.5 + 1e-9);
  CHECK(f.value >= 0.5 - 1e-9);
}

TEST_CASE("Z truncations: free equals wired on the recurrent line") {
  Network line = generate("path:N=61");
  ExhaustionPlan plan{30, std::nullopt};
  LimitOptions lim;
  lim.k_max = 25;
  lim.tol = 1e-10;
  LimitTrace f = free_resistance(line, 30, 33, plan, lim);
  LimitTrace w = wired_resistance(line, 30, 33, plan, lim);
  CHECK(f.value == doctest::Approx(3.0).epsilon(1e-9));  // geodesic on Z
  // wired level k shorts the tails: 3 || ((k+1) + (k-2)), rising to 3
  for (auto& [k, val] : w.trace)
    if (k >= 3)
      CHECK(val == doctest::Approx(3.0 * (2 * k - 1) / (2.0 * k + 2)).epsilon(1e-9));
  CHECK(f.value - w.value < f.trace.front().second - w.trace.front().second);
  CHECK(w.value > 2.8);  // recurrent line: same limit, O(1/k) approach
}

TEST_CASE("binary tree report: free 1, wired 3/4, harmonic 1/4, boundary 3") {
  Network tree = generate("binary_tree:depth=13");
  ExhaustionPlan plan{0, std::nullopt};
  LimitOptions lim;
  lim.k_max = 12;
  lim.tol = 1e-9;
  ResistanceReport rep = resistance_report(tree, 0, 1, plan, lim);
  CHECK(rep.free_r == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.wired_r == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(rep.harmonic == doctest::Approx(0.25).epsilon(4e-3));
  CHECK(rep.boundary == doctest::Approx(3.0).epsilon(1e-2));
  CHECK(!rep.boundary_infinite);
  CHECK(rep.trace_r == doctest::Approx(1.0).epsilon(1e-9));  // trace = free
}

TEST_CASE("finite net report flags an infinite boundary") {
  std::mt19937_64 rng(34);
  Network net = testutil::random_network(rng, 12);
  ExhaustionPlan plan{0, std::nullopt};
  ResistanceReport rep = resistance_report(net, 1, 5, plan, {}, true);
  CHECK(rep.finite_net);
  CHECK(rep.harmonic == 0.0);
  CHECK(rep.boundary_infinite);
  CHECK(rep.free_r == rep.wired_r);
  // exhausting the truncation gives the same answer without the finite flag
  ResistanceReport rep2 = resistance_report(net, 1, 5, plan, {});
  CHECK(rep2.free_r == doctest::Approx(rep.free_r).epsilon(1e-9));
  CHECK(rep2.wired_r == doctest::Approx(rep.free_r).epsilon(1e-9));
}

TEST_CASE("report json shape") {
  Network tree = generate("binary_tree:depth=5");
  ExhaustionPlan plan{0, std::nullopt};
  LimitOptions lim;
  lim.k_max = 4;
  ResistanceReport rep = resistance_report(tree, 0, 1, plan, lim);
  std::string j = rep.to_json();
  for (const char* key :
       {"\"pair\"", "\"free\"", "\"wired\"", "\"trace\"", "\"harmonic\"", "\"boundary\"",
        "\"traces\"", "\"converged\""})
    CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("metric checks pass exhaustively on small networks") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 5; ++trial) {
    Network net = testutil::random_network(rng, 12);
    MetricReport rep = check_metric(net);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_slack >= -1e-9);
  }
  // tree: equality along geodesics
  Network tree = generate("binary_tree:depth=3");
  double r01 = resistance_finite(tree, 0, 1).value;
  double r13 = resistance_finite(tree, 1, 3).value;
  double r03 = resistance_finite(tree, 0, 3).value;
  CHECK(r03 == doctest::Approx(r01 + r13).epsilon(1e-12));
}

TEST_CASE("degenerate triple") {
  Network cyc = generate("cycle:N=6");
  MetricReport rep = check_metric(cyc, {{std::array<int, 3>{2, 2, 4}}});
  CHECK(rep.violations == 0);
}

TEST_CASE("resistance matrix is negative semidefinite on zero-sum vectors") {
  Network cyc = generate("cycle:N=8");
  std::vector<int> F{0, 1, 2, 3, 4, 5, 6, 7};
  SemidefiniteReport rep = check_negative_semidefinite(cyc, F, 100, 77);
  CHECK(rep.passed);

  // two-point case: f = (1,-1) gives -2R <= 0
  std::mt19937_64 rng(36);
  Network net = testutil::random_network(rng, 10);
  SemidefiniteReport two = check_negative_semidefinite(net, {2, 7}, 25, 5);
  CHECK(two.passed);
}
