#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "pilotdecon/geometry.hpp"

using namespace pilotdecon;
using Catch::Approx;

TEST_CASE("mean_aoa basic bearings") {
  CHECK(mean_aoa({100, 0}, {0, 0}) == Approx(0.0).margin(1e-15));
  CHECK(mean_aoa({0, 100}, {0, 0}) == Approx(kPi / 2));
  // third quadrant wraps into [0, pi): atan2 gives -3pi/4, mod pi gives pi/4
  CHECK(mean_aoa({-100, -100}, {0, 0}) == Approx(kPi / 4));
  CHECK_THROWS_AS(mean_aoa({1, 1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("angular_spread from the scatter ring") {
  CHECK(angular_spread({500, 0}, {0, 0}, 50) == Approx(0.1001674211615598));
  CHECK(angular_spread({1000, 0}, {0, 0}, 50) == Approx(0.050020856805770016));
  CHECK(angular_spread({300, 400}, {0, 0}, 0) == 0.0);
  CHECK_THROWS_AS(angular_spread({100, 0}, {0, 0}, 100), std::invalid_argument);
  CHECK_THROWS_AS(angular_spread({100, 0}, {0, 0}, 250), std::invalid_argument);
}

TEST_CASE("rotation operator wraps mod pi") {
  CHECK(rotate(0.7, 0.7) == 0.0);
  CHECK(rotate(0.3, 0.5) == Approx(2.941592653589793));
  CHECK(rotate(kPi - 0.1, 0.2) == Approx(kPi - 0.3));
}

TEST_CASE("rotation inverts: rotate(rotate(t, p), -p mod pi) == t") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const double t = (rng() % 100000) * kPi / 100000.0;
    const double p = (rng() % 100000) * kPi / 100000.0;
    const double back = rotate(rotate(t, p), wrap_mod_pi(-p));
    CHECK(std::min(std::abs(back - t), kPi - std::abs(back - t)) < 1e-9);
  }
}

TEST_CASE("mean_aoa and angular_spread are translation invariant") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    auto coord = [&] { return (rng() % 20000) / 10.0 - 1000.0; };
    const Position u{coord(), coord()};
    const Position b{coord(), coord()};
    if (distance(u, b) < 60.0) continue;
    const Position shift{coord(), coord()};
    const Position u2{u.x + shift.x, u.y + shift.y};
    const Position b2{b.x + shift.x, b.y + shift.y};
    CHECK(mean_aoa(u2, b2) == Approx(mean_aoa(u, b)).margin(1e-9));
    CHECK(angular_spread(u2, b2, 50) == Approx(angular_spread(u, b, 50)).margin(1e-12));
  }
}

TEST_CASE("support_wrt wraps and keeps its measure") {
  const Position bs{0, 0};
  const Position self{500, 0};

  SECTION("self support is the wrapped pair") {
    const AngularSupport s = support_wrt(self, bs, self, 50);
    REQUIRE(s.intervals.size() == 2);
    const double delta = angular_spread(self, bs, 50);
    CHECK(s.intervals[0].lo == 0.0);
    CHECK(s.intervals[0].hi == Approx(delta));
    CHECK(s.intervals[1].lo == Approx(kPi - delta));
    CHECK(s.intervals[1].hi == Approx(kPi));
    CHECK(s.measure() == Approx(2 * delta).margin(1e-12));
  }

  SECTION("perpendicular interferer stays a single interval") {
    const Position j{0, 1000};  // bearing pi/2, spread asin(0.05)
    const AngularSupport s = support_wrt(j, bs, self, 50);
    REQUIRE(s.intervals.size() == 1);
    const double d = angular_spread(j, bs, 50);
    CHECK(s.intervals[0].lo == Approx(kPi / 2 - d));
    CHECK(s.intervals[0].hi == Approx(kPi / 2 + d));
  }

  SECTION("co-located direction wraps like the self support") {
    const Position j{2000, 0};
    const AngularSupport s = support_wrt(j, bs, self, 50);
    REQUIRE(s.intervals.size() == 2);
    CHECK(s.measure() == Approx(2 * angular_spread(j, bs, 50)).margin(1e-12));
  }

  SECTION("measure always equals twice the spread") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
      auto coord = [&] { return (rng() % 20000) / 10.0 - 1000.0; };
      const Position j{coord(), coord()};
      if (distance(j, bs) < 60.0 || distance(self, bs) < 60.0) continue;
      const AngularSupport s = support_wrt(j, bs, self, 50);
      CHECK(s.measure() == Approx(2 * angular_spread(j, bs, 50)).margin(1e-12));
      for (const auto& iv : s.intervals) {
        CHECK(iv.lo >= 0.0);
        CHECK(iv.hi <= kPi + 1e-15);
        CHECK(iv.lo <= iv.hi);
      }
    }
  }
}

TEST_CASE("hex_layout ring structure") {
  CHECK(hex_layout(0, 1000).size() == 1);
  const auto ring1 = hex_layout(1, 1000);
  REQUIRE(ring1.size() == 7);
  for (std::size_t i = 1; i < ring1.size(); ++i) {
    CHECK(distance(ring1[i], ring1[0]) == Approx(1732.0508075688772));
  }
  CHECK(hex_layout(2, 1000).size() == 19);
  for (int k = 0; k <= 4; ++k) {
    CHECK(static_cast<int>(hex_layout(k, 500).size()) == 1 + 3 * k * (k + 1));
  }
}

TEST_CASE("place_users_uniform stays in the hexagon and is deterministic") {
  const Position bs{200, -300};
  CHECK(place_users_uniform(bs, 1000, 0, 5).empty());
  const auto a = place_users_uniform(bs, 1000, 1000, 42);
  REQUIRE(a.size() == 1000);
  for (const auto& p : a) CHECK(point_in_hex(p, bs, 1000));
  const auto b = place_users_uniform(bs, 1000, 1000, 42);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }
}

TEST_CASE("scenario validation catches broken invariants") {
  Scenario sc;
  sc.cells = {{{0, 0}, {{500, 0}}, {}}};
  CHECK_NOTHROW(sc.validate());
  SECTION("tiny array") {
    sc.num_antennas = 1;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SECTION("pilot set longer than the pilot sequence") {
    sc.num_pilots = 11;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SECTION("scatter ring reaching a BS") {
    sc.scatter_radius = 600;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SECTION("neighbor index out of range") {
    sc.cells[0].neighbors = {3};
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
}
