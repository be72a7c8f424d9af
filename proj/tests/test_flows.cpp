#include <doctest.h>

#include <cmath>

#include "resnet/flows.hpp"
#include "resnet/generators.hpp"
#include "resnet/netx.hpp"
#include "resnet/resistance.hpp"
#include "test_util.hpp"

using namespace resnet;

TEST_CASE("cycle basis dimension is |E| - |V| + 1") {
  CHECK(cycle_basis(generate("binary_tree:depth=4")).dimension() == 0);
  CHECK(cycle_basis(generate("cycle:N=4")).dimension() == 1);
  CHECK(cycle_basis(generate("deletion_example")).dimension() == 2);

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    Network net = testutil::random_network(rng, 20);
    CHECK(cycle_basis(net).dimension() == net.edge_count() - net.vertex_count() + 1);
  }
}

TEST_CASE("basis cycles have zero divergence") {
  std::mt19937_64 rng(52);
  Network net = testutil::random_network(rng, 16);
  CycleBasis basis = cycle_basis(net);
  for (const Current& chi : basis.cycles) {
    VertexFunction div = divergence(net, chi);
    for (double d : div.values) CHECK(d == doctest::Approx(0.0));
  }
}

TEST_CASE("cycle condition characterizes induced currents") {
  std::mt19937_64 rng(53);
  Network net = testutil::random_network(rng, 18);
  // forward direction: drops pass
  for (int trial = 0; trial < 8; ++trial) {
    VertexFunction v = testutil::random_function(rng, 18);
    CHECK(cycle_condition(net, drop(net, v)) <= 1e-9 * (1.0 + energy(net, v)));
  }
  // any current on a tree passes (no cycles at all)
  Network tree = generate("binary_tree:depth=4");
  Current random_tree_current(tree);
  for (double& x : random_tree_current.values) x = testutil::random_function(rng, 1)[0];
  CHECK(cycle_condition(tree, random_tree_current) == 0.0);
}

TEST_CASE("an edge dirac on a cycle edge violates the cycle condition") {
  Network box = generate("lattice_box:d=2,L=3");
  Current dirac(box);
  dirac.set(box, 0, 1, 1.0);
  CHECK(cycle_condition(box, dirac) > 0.1);
}

TEST_CASE("projection to induced currents") {
  Network cycle4 = generate("cycle:N=4");
  // a one-arc flow to the opposite corner rebalances to 1/2 per arc
  Current chi = path_characteristic(cycle4, {0, 1, 2});
  InducedProjection proj = project_to_induced(cycle4, chi, 0);
  CHECK(proj.projected.at(cycle4, 0, 1) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(proj.projected.at(cycle4, 0, 3) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(proj.projected.at(cycle4, 3, 2) == doctest::Approx(0.5).epsilon(1e-10));

  // divergence is preserved exactly
  VertexFunction before = divergence(cycle4, chi);
  VertexFunction after = divergence(cycle4, proj.projected);
  for (int i = 0; i < 4; ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-10));

  // idempotence on already-induced currents
  InducedProjection twice = project_to_induced(cycle4, proj.projected, 0);
  for (int i = 0; i < cycle4.edge_count(); ++i)
    CHECK(twice.projected.values[i] ==
          doctest::Approx(proj.projected.values[i]).epsilon(1e-10));

  // cycles project to zero
  CycleBasis basis = cycle_basis(cycle4);
  InducedProjection none = project_to_induced(cycle4, basis.cycles[0], 0);
  for (double v : none.projected.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("pythagoras in the current space") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 10; ++trial) {
    Network net = testutil::random_network(rng, 15);
    Current I(net);
    for (double& x : I.values) x = testutil::random_function(rng, 1)[0];
    InducedProjection proj = project_to_induced(net, I, 0);
    Current residue(net);
    for (int i = 0; i < net.edge_count(); ++i)
      residue.values[i] = I.values[i] - proj.projected.values[i];
    double total = dissipation(net, I);
    double parts = dissipation(net, proj.projected) + dissipation(net, residue);
    CHECK(total == doctest::Approx(parts).epsilon(1e-9));
    CHECK(dissipation(net, proj.projected) <= total + 1e-12);
    // residue satisfies homogeneous Kirchhoff and the partial isometry holds
    for (double d : divergence(net, residue).values)
      CHECK(d == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(energy(net, proj.potential) ==
          doctest::Approx(dissipation(net, proj.projected)).epsilon(1e-9));
    // orthogonality of drops against basis cycles
    CycleBasis basis = cycle_basis(net);
    for (const Current& chi : basis.cycles)
      CHECK(std::fabs(dissipation(net, proj.projected, chi)) <= 1e-9);
  }
}

TEST_CASE("minimal flow dissipation equals resistance") {
  Network del = generate("deletion_example");
  Current I = min_dissipation_flow(del, 0, 4, 0);
  CHECK(dissipation(del, I) == doctest::Approx(10.0 / 11.0).epsilon(1e-10));
  // the known minimal-flow currents of this example
  CHECK(I.at(del, 0, 1) == doctest::Approx(5.0 / 11.0).epsilon(1e-10));
  CHECK(I.at(del, 0, 2) == doctest::Approx(2.0 / 11.0).epsilon(1e-10));
  CHECK(I.at(del, 0, 3) == doctest::Approx(4.0 / 11.0).epsilon(1e-10));
  CHECK(I.at(del, 2, 3) == doctest::Approx(2.0 / 11.0).epsilon(1e-10));
  CHECK(I.at(del, 1, 4) == doctest::Approx(5.0 / 11.0).epsilon(1e-10));
  CHECK(I.at(del, 3, 4) == doctest::Approx(6.0 / 11.0).epsilon(1e-10));

  Network edge = parse_network_string("netx 1\ne 0 1 1\n");
  Current unit = min_dissipation_flow(edge, 0, 1, 0);
  CHECK(unit.at(edge, 0, 1) == doctest::Approx(1.0));

  Network cyc = generate("cycle:N=4");
  Current adj = min_dissipation_flow(cyc, 0, 1, 0);
  CHECK(adj.at(cyc, 0, 1) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(adj.at(cyc, 0, 3) == doctest::Approx(0.25).epsilon(1e-10));  // 1/4 the long way

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    Network net = testutil::random_network(rng, 20);
    int a = static_cast<int>(rng() % 20), w = (a + 9) % 20;
    Current flow = min_dissipation_flow(net, a, w, 0);
    CHECK(dissipation(net, flow) ==
          doctest::Approx(resistance_finite(net, a, w).value).epsilon(1e-9));
    VertexFunction div = divergence(net, flow);
    for (int v = 0; v < 20; ++v) {
      double want = (v == a) - (v == w);
      CHECK(div[v] == doctest::Approx(want).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("current paths descend the potential") {
  Network path4 = generate("path:N=4");
  VertexFunction v = solve_dipole(path4, 0, 3, 3);
  CHECK(find_current_path(path4, v, 0, 3) == std::vector<int>{0, 1, 2, 3});

  Network cyc = generate("cycle:N=5");
  VertexFunction v2 = solve_dipole(cyc, 0, 1, 1);
  CHECK(find_current_path(cyc, v2, 0, 1) == std::vector<int>{0, 1});

  Network del = generate("deletion_example");
  VertexFunction v3 = solve_dipole(del, 0, 4, 4);
  std::vector<int> p = find_current_path(del, v3, 0, 4);
  bool via_x1 = p == std::vector<int>{0, 1, 4};
  bool via_x3 = p == std::vector<int>{0, 3, 4};
  CHECK((via_x1 || via_x3));
  // ties break toward the largest outgoing current: 5/11 through x1
  CHECK(via_x1);

  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 10; ++trial) {
    Network net = testutil::random_network(rng, 22);
    int a = static_cast<int>(rng() % 22), w = (a + 11) % 22;
    VertexFunction dip = solve_dipole(net, a, w, w);
    std::vector<int> path = find_current_path(net, dip, a, w);
    REQUIRE(path.front() == a);
    REQUIRE(path.back() == w);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      CHECK(net.conductance(path[i], path[i + 1]) > 0.0);
      CHECK(dip[path[i + 1]] < dip[path[i]]);
    }
  }
}
