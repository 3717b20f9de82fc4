#include <doctest.h>

#include <random>

#include "mwfapf/world.hpp"
#include "oracles.hpp"

using namespace mwfapf;

namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

std::vector<std::pair<oracle::Vec, oracle::Vec>> oracle_edges(const World& w) {
  std::vector<std::pair<oracle::Vec, oracle::Vec>> out;
  for (const Segment2& e : w.edges()) {
    out.push_back({{e.a().x(), e.a().y()}, {e.b().x(), e.b().y()}});
  }
  return out;
}

}  // namespace

TEST_SUITE("world") {

TEST_CASE("perpendicular wall and saturation") {
  const World w({{{2.0, -1.0}, {3.0, -1.0}, {3.0, 1.0}, {2.0, 1.0}}}, {{-20, -20}, {20, 20}},
                {0, 0}, {-5, 0});
  CHECK(w.ray_cast({0, 0}, {1, 0}, 10.0) == doctest::Approx(2.0));
  CHECK(w.ray_cast({0, 0}, {0, 1}, 10.0) == doctest::Approx(10.0));
}

TEST_CASE("diagonal ray against a square") {
  const World w({square(2, -1, 3, 3)}, {{-20, -20}, {20, 20}}, {0, 0}, {-5, 0});
  const Vector2 dir = Vector2(1, 1).normalized();
  CHECK(w.ray_cast({0, 0}, dir, 10.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("bounds act as walls") {
  const World w({}, {{0, 0}, {4, 3}}, {1, 1}, {3, 2});
  CHECK(w.ray_cast({1, 1}, {-1, 0}, 10.0) == doctest::Approx(1.0));
  CHECK(w.ray_cast({1, 1}, {0, 1}, 10.0) == doctest::Approx(2.0));
  CHECK(w.nearest_edge_distance({1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("non-unit direction is rejected") {
  const World w({}, {{0, 0}, {4, 3}}, {1, 1}, {3, 2});
  CHECK_THROWS_AS(w.ray_cast({1, 1}, {2, 0}, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(w.ray_cast({1, 1}, {0, 0}, 5.0), std::invalid_argument);
}

TEST_CASE("ray casts agree with a sphere-tracing oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(1.0, 9.0);
  std::uniform_real_distribution<double> size(0.3, 1.5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Polygon> obstacles;
    for (int k = 0; k < 4; ++k) {
      const double x = coord(rng), y = coord(rng);
      obstacles.push_back(square(x, y, std::min(x + size(rng), 9.9), std::min(y + size(rng), 9.9)));
    }
    Point2 origin;
    bool free = false;
    for (int attempt = 0; attempt < 50 && !free; ++attempt) {
      origin = {coord(rng), coord(rng)};
      free = true;
      for (const Polygon& p : obstacles) free = free && !point_in_polygon(p, origin);
    }
    if (!free) continue;
    const auto violations = validate_world(obstacles, {{0, 0}, {10, 10}}, origin, origin);
    if (!violations.empty()) continue;
    const World w(obstacles, {{0, 0}, {10, 10}}, origin, origin);
    const auto edges = oracle_edges(w);
    for (int r = 0; r < 16; ++r) {
      const double a = angle(rng);
      const Vector2 dir = unit_from_angle(a);
      const double got = w.ray_cast(origin, dir, 6.0);
      const double want =
          oracle::march_ray(edges, {origin.x(), origin.y()}, {dir.x(), dir.y()}, 6.0);
      CHECK(got == doctest::Approx(want).epsilon(1e-6));
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("ray cast range is monotone and capped") {
  const World w({square(2, -1, 3, 3), square(-4, -4, -3, 4)}, {{-20, -20}, {20, 20}}, {0, 0},
                {-5, 0});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> range(0.1, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const Vector2 dir = unit_from_angle(angle(rng));
    double m1 = range(rng), m2 = range(rng);
    if (m1 > m2) std::swap(m1, m2);
    const double far = w.ray_cast({0, 0}, dir, m2);
    CHECK(far <= m2);
    CHECK(w.ray_cast({0, 0}, dir, m1) == std::min(far, m1));
  }
}

TEST_CASE("point in polygon matches the exact oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> grid(0, 40);
  const Polygon l_shape = {{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 3}, {0, 3}};
  std::vector<oracle::RPoint> rl;
  for (const Point2& v : l_shape) {
    rl.push_back({oracle::Rational(static_cast<long>(v.x() * 8), 8),
                  oracle::Rational(static_cast<long>(v.y() * 8), 8)});
  }
  for (int i = 0; i < 2000; ++i) {
    const int gx = grid(rng) - 4, gy = grid(rng) - 4;
    const Point2 p(gx / 8.0, gy / 8.0);
    const bool want =
        oracle::point_in_polygon(rl, {oracle::Rational(gx, 8), oracle::Rational(gy, 8)});
    CHECK(point_in_polygon(l_shape, p) == want);
  }
}

TEST_CASE("segment intersection special cases") {
  const Segment2 a({0, 0}, {2, 0});
  CHECK(segments_intersect(a, Segment2({1, -1}, {1, 1})));
  CHECK(segments_intersect(a, Segment2({2, 0}, {3, 1})));
  CHECK(segments_intersect(a, Segment2({1, 0}, {3, 0})));
  CHECK_FALSE(segments_intersect(a, Segment2({3, 0}, {4, 0})));
  CHECK_FALSE(segments_intersect(a, Segment2({0, 1}, {2, 1})));
  CHECK_THROWS_AS(Segment2({1, 1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("segment intersection on integers matches exact orientation") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-4, 4);
  int agree = 0, total = 0;
  while (total < 3000) {
    oracle::IPoint p[4];
    for (auto& q : p) q = {c(rng), c(rng)};
    if ((p[0].x == p[1].x && p[0].y == p[1].y) || (p[2].x == p[3].x && p[2].y == p[3].y)) continue;
    const auto pt = [](oracle::IPoint q) { return Point2(double(q.x), double(q.y)); };
    const bool got = segments_intersect(Segment2(pt(p[0]), pt(p[1])), Segment2(pt(p[2]), pt(p[3])));
    agree += got == oracle::segments_intersect(p[0], p[1], p[2], p[3]);
    CHECK(got == segments_intersect(Segment2(pt(p[2]), pt(p[3])), Segment2(pt(p[0]), pt(p[1]))));
    CHECK(got == segments_intersect(Segment2(pt(p[1]), pt(p[0])), Segment2(pt(p[3]), pt(p[2]))));
    ++total;
  }
  CHECK(agree == total);
}

TEST_CASE("validation names each violated invariant") {
  const auto has = [](const std::vector<Violation>& v, const std::string& name) {
    for (const Violation& x : v) {
      if (x.invariant == name) return true;
    }
    return false;
  };
  const Bounds b{{0, 0}, {10, 10}};
  CHECK(validate_world({}, b, {1, 1}, {9, 9}).empty());
  CHECK(has(validate_world({}, {{0, 0}, {0, 5}}, {0, 1}, {0, 2}), "bounds_non_empty"));
  CHECK(has(validate_world({}, b, {-1, 1}, {9, 9}), "start_within_bounds"));
  CHECK(has(validate_world({}, b, {1, 1}, {11, 9}), "goal_within_bounds"));
  CHECK(has(validate_world({{{1, 1}, {2, 2}}}, b, {5, 5}, {9, 9}), "polygon_min_vertices"));
  CHECK(has(validate_world({{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}, b, {5, 5}, {9, 9}),
            "polygon_simple"));
  CHECK(has(validate_world({square(8, 8, 12, 9)}, b, {1, 1}, {5, 5}), "polygon_within_bounds"));
  CHECK(has(validate_world({square(0.5, 0.5, 2, 2)}, b, {1, 1}, {9, 9}),
            "start_outside_obstacles"));
  CHECK(has(validate_world({square(8, 8, 9.5, 9.5)}, b, {1, 1}, {9, 9}), "goal_outside_obstacles"));
  CHECK_THROWS_AS(World({square(0.5, 0.5, 2, 2)}, b, {1, 1}, {9, 9}), std::invalid_argument);
}

TEST_CASE("edges list obstacles then bounds") {
  const World w({square(2, 2, 3, 3)}, {{0, 0}, {10, 10}}, {1, 1}, {9, 9});
  REQUIRE(w.edges().size() == 8);
  CHECK(w.point_in_obstacle({2.5, 2.5}));
  CHECK(w.point_in_obstacle({2.0, 2.5}));
  CHECK_FALSE(w.point_in_obstacle({1.9, 2.5}));
  CHECK(w.nearest_edge_distance({1.0, 2.5}) == doctest::Approx(1.0));
}

}
