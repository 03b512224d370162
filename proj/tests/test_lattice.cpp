#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kinwave/lattice.hpp"

using namespace kinwave;

TEST_CASE("velocity sets order rings counter-clockwise from +x") {
  const VelocitySet q5 = make_velocity_set(LatticeKind::d2q5, 2.0);
  REQUIRE(q5.q == 5);
  CHECK(q5.dir[0] == std::array<int, 2>{0, 0});
  CHECK(q5.dir[1] == std::array<int, 2>{1, 0});
  CHECK(q5.dir[2] == std::array<int, 2>{0, 1});
  CHECK(q5.dir[3] == std::array<int, 2>{-1, 0});
  CHECK(q5.dir[4] == std::array<int, 2>{0, -1});

  const VelocitySet q9 = make_velocity_set(LatticeKind::d2q9, 2.0);
  REQUIRE(q9.q == 9);
  for (int z = 0; z < 5; ++z) CHECK(q9.dir[z] == q5.dir[z]);
  CHECK(q9.dir[5] == std::array<int, 2>{1, 1});
  CHECK(q9.dir[6] == std::array<int, 2>{-1, 1});
  CHECK(q9.dir[7] == std::array<int, 2>{-1, -1});
  CHECK(q9.dir[8] == std::array<int, 2>{1, -1});
}

TEST_CASE("each speed is the quarter-turn of its ring predecessor") {
  const VelocitySet q9 = make_velocity_set(LatticeKind::d2q9, 1.5);
  auto turned = [](std::array<int, 2> d) {
    return std::array<int, 2>{-d[1], d[0]};
  };
  for (int z : {2, 3, 4, 6, 7, 8}) CHECK(q9.dir[z] == turned(q9.dir[z - 1]));
  // ring closure
  CHECK(q9.dir[1] == turned(q9.dir[4]));
  CHECK(q9.dir[5] == turned(q9.dir[8]));
}

TEST_CASE("speed scales directions by lambda") {
  const VelocitySet q9 = make_velocity_set(LatticeKind::d2q9, 3.0);
  CHECK(q9.speed(0) == std::array<double, 2>{0.0, 0.0});
  CHECK(q9.speed(3) == std::array<double, 2>{-3.0, 0.0});
  CHECK(q9.speed(5) == std::array<double, 2>{3.0, 3.0});
  CHECK(q9.speed(8) == std::array<double, 2>{3.0, -3.0});
  CHECK_THROWS_AS(make_velocity_set(LatticeKind::d2q5, 0.0),
                  std::invalid_argument);
}

TEST_CASE("grid construction accepts exact power-of-two sides only") {
  const Grid g = Grid::make(0.0625, 4.0);
  CHECK(g.n == 128);
  CHECK(g.size() == 128u * 128u);
  // spacing must tile the extent exactly...
  CHECK_THROWS_AS(Grid::make(0.3, 4.0), std::invalid_argument);
  // ...and the side count must be a power of two (12 cells tile h = 3)
  CHECK_THROWS_AS(Grid::make(0.5, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(-0.5, 4.0), std::invalid_argument);
}

TEST_CASE("cell centers are symmetric about the origin") {
  const Grid g = Grid::make(0.0625, 4.0);
  CHECK(g.coord(0) == -3.96875);
  CHECK(g.coord(g.n - 1) == 3.96875);
  for (int i = 0; i < g.n; ++i) CHECK(g.coord(i) + g.coord(g.n - 1 - i) == 0.0);
}

TEST_CASE("wrap is periodic in both directions") {
  const Grid g = Grid::make(0.25, 4.0);  // n = 32
  CHECK(g.wrap(0) == 0);
  CHECK(g.wrap(32) == 0);
  CHECK(g.wrap(-1) == 31);
  CHECK(g.wrap(-33) == 31);
  CHECK(g.wrap(65) == 1);
}

TEST_CASE("time grid couples the step to the lattice speed") {
  SUBCASE("unit lattice speed reaches the horizon exactly") {
    const TimeGrid tg = make_time_grid(0.03125, 1.0, 1.0);
    CHECK(tg.k == 0.03125);
    CHECK(tg.n_steps == 32);
    CHECK(tg.t_final == 1.0);
  }
  SUBCASE("irrational lattice speed rounds to the nearest step count") {
    const double lambda = std::sqrt(2.0);
    const TimeGrid tg = make_time_grid(0.03125, lambda, 1.0);
    CHECK(tg.k == 0.03125 / lambda);
    CHECK(tg.n_steps == 45);  // 1/k = 45.25...
    CHECK(tg.t_final == doctest::Approx(45 * 0.03125 / lambda));
    CHECK(std::abs(tg.t_final - 1.0) < tg.k);
  }
  SUBCASE("at least one step is taken") {
    CHECK(make_time_grid(0.25, 1.0, 0.01).n_steps == 1);
  }
}

TEST_CASE("transport displacements are whole cells") {
  const Grid g = Grid::make(0.25, 4.0);
  const double lambda = 2.0;
  const double k = g.delta / lambda;
  CHECK(lattice_shift(g, {0.0, 0.0}, k) == std::array<int, 2>{0, 0});
  CHECK(lattice_shift(g, {lambda, 0.0}, k) == std::array<int, 2>{1, 0});
  CHECK(lattice_shift(g, {0.0, -lambda}, k) == std::array<int, 2>{0, -1});
  CHECK(lattice_shift(g, {-lambda, lambda}, k) == std::array<int, 2>{-1, 1});
  // half a cell per step is not a lattice translation
  CHECK_THROWS_AS(lattice_shift(g, {1.0, 0.0}, k), std::invalid_argument);
}

TEST_CASE("irrational lattice speeds still shift whole cells") {
  // lambda = 3c/2 with c = 1/sqrt(2): k = delta/lambda is rounded, but
  // lambda*k/delta must still be recognized as exactly one cell.
  const Grid g = Grid::make(0.03125, 4.0);
  const double lambda = 1.5 / std::sqrt(2.0);
  const VelocitySet vs = make_velocity_set(LatticeKind::d2q9, lambda);
  const TimeGrid tg = make_time_grid(g.delta, lambda, 1.0);
  for (int z = 0; z < vs.q; ++z) {
    CHECK(lattice_shift(g, vs.speed(z), tg.k) == vs.dir[z]);
  }
}

TEST_CASE("streaming destinations wrap periodically") {
  const Grid g = Grid::make(0.25, 4.0);  // n = 32
  const double k = g.delta / 1.0;
  CHECK(shift_index(g, {0, 0}, {-1.0, 0.0}, k) == NodeIndex{31, 0});
  CHECK(shift_index(g, {31, 31}, {1.0, 1.0}, k) == NodeIndex{0, 0});
  NodeIndex at{5, 7};
  for (int s = 0; s < 32; ++s) at = shift_index(g, at, {1.0, 0.0}, k);
  CHECK(at == NodeIndex{5, 7});  // one full period returns home
}
