#include <doctest.h>

#include <cmath>

#include "resnet/generators.hpp"
#include "resnet/lattice.hpp"
#include "resnet/resistance.hpp"

using namespace resnet;

namespace {
const std::vector<long> O3{0, 0, 0};
}

TEST_CASE("lattice symbol") {
  CHECK(lattice_symbol(2, {0.0, 0.0}) == 0.0);
  CHECK(lattice_symbol(1, {3.14159265358979323846}) == doctest::Approx(4.0));
  double pi = 3.14159265358979323846;
  CHECK(lattice_symbol(3, {pi, pi, pi}) == doctest::Approx(12.0));
  CHECK_THROWS_AS(lattice_symbol(2, {0.1}), ValidationError);
}

TEST_CASE("kernel values on Z: the Fejer picture") {
  QuadratureGrid g = QuadratureGrid::defaults(1);
  CHECK(lattice_vx(1, {1}, {1}, g) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lattice_vx(1, {1}, {0}, g) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(lattice_vx(1, {3}, {2}, g) == doctest::Approx(2.0).epsilon(1e-8));
  // v_x is flat past x on the far side
  CHECK(lattice_vx(1, {2}, {5}, g) == doctest::Approx(lattice_vx(1, {2}, {2}, g)).epsilon(1e-8));
}

TEST_CASE("kernel is grounded and reproduces the neighbor resistance in Z3") {
  QuadratureGrid g = QuadratureGrid::defaults(3);
  CHECK(lattice_vx(3, {1, 0, 0}, O3, g) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(lattice_vx(3, {1, 0, 0}, {1, 0, 0}, g) == doctest::Approx(1.0 / 3.0).epsilon(2e-3));
}

TEST_CASE("kernel satisfies the dipole equation on sampled vertices") {
  QuadratureGrid g = QuadratureGrid::defaults(2);
  std::vector<long> x{2, 1};
  for (std::vector<long> y : {std::vector<long>{0, 0}, {2, 1}, {1, 1}, {-1, 2}}) {
    double lap = 0.0;
    double vy = lattice_vx(2, x, y, g);
    for (int k = 0; k < 2; ++k)
      for (int s : {-1, 1}) {
        std::vector<long> z = y;
        z[k] += s;
        lap += vy - lattice_vx(2, x, z, g);
      }
    double want = (y == x ? 1.0 : 0.0) - (y == std::vector<long>{0, 0} ? 1.0 : 0.0);
    CHECK(lap == doctest::Approx(want).scale(1.0).epsilon(1e-6));
  }
}

TEST_CASE("resistance on Z is the geodesic distance") {
  QuadratureGrid g = QuadratureGrid::defaults(1);
  for (long n : {1L, 2L, 5L, 9L})
    CHECK(lattice_R(1, {n}, {0}, g) == doctest::Approx(static_cast<double>(n)).epsilon(1e-6));
}

TEST_CASE("neighbor rule R = 1/d") {
  for (int d : {1, 2, 3}) {
    QuadratureGrid g = QuadratureGrid::defaults(d);
    std::vector<long> e1(d, 0);
    e1[0] = 1;
    std::vector<long> o(d, 0);
    CHECK(lattice_R(d, o, e1, g) == doctest::Approx(1.0 / d).epsilon(2e-3));
  }
}

TEST_CASE("axis resistances sum to one") {
  for (int d : {2, 3}) {
    QuadratureGrid g = QuadratureGrid::defaults(d);
    double sum = 0.0;
    for (int k = 0; k < d; ++k) {
      std::vector<long> ek(d, 0);
      ek[k] = 1;
      sum += lattice_R(d, std::vector<long>(d, 0), ek, g);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(d * 2e-3));
  }
}

TEST_CASE("resistance is symmetric and translation invariant") {
  QuadratureGrid g = QuadratureGrid::defaults(2);
  double a = lattice_R(2, {3, 1}, {1, 2}, g);
  double b = lattice_R(2, {1, 2}, {3, 1}, g);
  double c = lattice_R(2, {2, -1}, {0, 0}, g);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
  CHECK(a == doctest::Approx(c).epsilon(1e-9));
}

TEST_CASE("known planar value R((1,1)) = 2/pi") {
  QuadratureGrid g = QuadratureGrid::defaults(2);
  CHECK(lattice_R(2, {1, 1}, {0, 0}, g) ==
        doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-5));
}

TEST_CASE("resistance to infinity in Z3") {
  QuadratureGrid g = QuadratureGrid::defaults(3);
  QuadratureValue rinf = lattice_Rinf(3, g);
  CHECK(rinf.value == doctest::Approx(0.5054620038965394).epsilon(1e-3));
  CHECK(std::fabs(rinf.value - 0.5054620038965394) < 5e-4);
  CHECK(rinf.error >= 0.0);
  CHECK_THROWS_AS(lattice_Rinf(2, g), ValidationError);
}

TEST_CASE("monopole values and the half-difference identity") {
  QuadratureGrid g = QuadratureGrid::defaults(3);
  QuadratureValue rinf = lattice_Rinf(3, g);

  // w(0) = -R_inf / 2
  QuadratureValue w0 = lattice_monopole(3, O3, g);
  CHECK(w0.value == doctest::Approx(-0.5 * rinf.value).epsilon(1e-6));
  CHECK(std::fabs(w0.value + 0.252731) < 5e-4);

  // w(x) = (R(0,x) - R_inf)/2 pointwise
  for (std::vector<long> x : {std::vector<long>{1, 1, 1}, {2, 0, 0}, {1, 1, 0}}) {
    double w = lattice_monopole(3, x, g).value;
    double r = lattice_R(3, x, O3, g);
    CHECK(w == doctest::Approx(0.5 * (r - rinf.value)).scale(1.0).epsilon(1e-3));
  }

  // decay away from the origin
  CHECK(std::fabs(lattice_monopole(3, {6, 5, 4}, g).value) <
        std::fabs(lattice_monopole(3, {1, 0, 0}, g).value));
  CHECK_THROWS_AS(lattice_monopole(2, {1, 0}, g), ValidationError);
}

TEST_CASE("monopole satisfies Lap w = -delta_0 on sampled vertices") {
  QuadratureGrid g = QuadratureGrid::defaults(3);
  for (std::vector<long> y : {std::vector<long>{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}) {
    double wy = lattice_monopole(3, y, g).value;
    double lap = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int s : {-1, 1}) {
        std::vector<long> z = y;
        z[k] += s;
        lap += wy - lattice_monopole(3, z, g).value;
      }
    double want = (y == O3) ? -1.0 : 0.0;
    CHECK(lap == doctest::Approx(want).scale(1.0).epsilon(5e-3));
  }
}

TEST_CASE("quadrature agrees with the exhaustion pipeline on Z2") {
  // two independent pipelines: torus quadrature vs. finite-box exhaustion
  QuadratureGrid g = QuadratureGrid::defaults(2);
  double quad = lattice_R(2, {1, 1}, {0, 0}, g);
  Network box = generate("lattice_box:d=2,L=15");
  int c = 7 + 15 * 7;
  ExhaustionPlan plan{c, std::nullopt};
  LimitOptions lim;
  lim.k_max = 7;
  lim.tol = 0.0;
  double free_v = free_resistance(box, c, c + 1 + 15, plan, lim).value;
  double wired_v = wired_resistance(box, c, c + 1 + 15, plan, lim).value;
  CHECK(wired_v <= quad + 1e-9);
  CHECK(free_v >= quad - 1e-9);
  CHECK(free_v - wired_v < 0.2);
}

TEST_CASE("grid validation") {
  QuadratureGrid g = QuadratureGrid::defaults(3);
  g.points_per_axis = 63;  // odd: a node would land on t = 0
  CHECK_THROWS_AS(lattice_R(3, {1, 0, 0}, O3, g), ValidationError);
}
