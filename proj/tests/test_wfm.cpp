#include <doctest.h>

#include <random>

#include "mwfapf/wfm.hpp"
#include "oracles.hpp"

using namespace mwfapf;

namespace {

World box_world(std::vector<Polygon> obstacles) {
  return World(std::move(obstacles), {{-20, -20}, {20, 20}}, {0, 0}, {-10, -10});
}

SensorScan scan_at(const World& w, const Point2& p, double heading, const SensorConfig& c) {
  RandomStream rng(0);
  return scan(w, p, heading, c, rng);
}

WallEstimate wall_at_x1() {
  return WallEstimate{{0, 1}, {-1, 0}, 1.0, {0, 1}};
}

}  // namespace

TEST_SUITE("wfm") {

TEST_CASE("pair distance is half the line distance of the two hits") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r(0.1, 4.0);
  std::uniform_real_distribution<double> a(0.05, kPi - 0.05);
  for (int i = 0; i < 500; ++i) {
    const double di = r(rng), dj = r(rng), th = a(rng);
    const double want =
        0.5 * oracle::line_distance({0, 0}, {di, 0}, {dj * std::cos(th), dj * std::sin(th)});
    CHECK(pair_distance(di, dj, th) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("wall straight ahead") {
  const World w = box_world({{{1, -10}, {2, -10}, {2, 10}, {1, 10}}});
  const SensorConfig c = SensorConfig::default8(4.0);
  const auto wall = estimate_wall(scan_at(w, {0, 0}, 0.0, c), {0, 0}, 0.0, c);
  REQUIRE(wall);
  CHECK(std::abs(wall->tangent.x()) < 1e-12);
  CHECK(std::abs(wall->tangent.y()) == doctest::Approx(1.0));
  CHECK(wall->normal.x() == doctest::Approx(-1.0));
  CHECK(wall->distance == doctest::Approx(1.0));
}

TEST_CASE("nearest of two walls wins") {
  const World w = box_world({{{1, -2.5}, {2, -2.5}, {2, 10}, {1, 10}},
                             {{-10, -4}, {0.5, -4}, {0.5, -3}, {-10, -3}}});
  const SensorConfig c = SensorConfig::default8(4.0);
  const auto wall = estimate_wall(scan_at(w, {0, 0}, 0.0, c), {0, 0}, 0.0, c);
  REQUIRE(wall);
  CHECK(std::abs(wall->tangent.y()) == doctest::Approx(1.0));
  CHECK(wall->distance == doctest::Approx(1.0));
}

TEST_CASE("no wall without a qualifying pair") {
  const SensorConfig c = SensorConfig::default8(4.0);
  SensorScan s{std::vector<double>(8, 4.0)};
  CHECK_FALSE(estimate_wall(s, {0, 0}, 0.0, c));
  CHECK_FALSE(estimate_corner(s, 0.0, c));
  CHECK_FALSE(estimate_surface(s, {0, 0}, 0.0, c));
  // Opposite sensors only: a quarter turn or more apart never pairs.
  s.readings[0] = 1.0;
  s.readings[2] = 1.0;
  s.readings[4] = 1.0;
  CHECK_FALSE(estimate_wall(s, {0, 0}, 0.0, c));
}

TEST_CASE("pair choice matches the closest-line oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coord(-6.0, 6.0);
  std::uniform_real_distribution<double> ext(0.2, 3.0);
  std::uniform_real_distribution<double> head(-kPi, kPi);
  int checked = 0;
  for (int trial = 0; trial < 800; ++trial) {
    const SensorConfig c = trial % 2 ? SensorConfig::uav5(4.0) : SensorConfig::default8(4.0);
    std::vector<Polygon> obs;
    for (int k = 0; k < 3; ++k) {
      const double x = coord(rng), y = coord(rng);
      obs.push_back({{x, y}, {x + ext(rng), y}, {x + ext(rng), y + ext(rng)}, {x, y + ext(rng)}});
    }
    if (!validate_world(obs, {{-20, -20}, {20, 20}}, {0, 0}, {0, 0}).empty()) continue;
    const World w(obs, {{-20, -20}, {20, 20}}, {0, 0}, {0, 0});
    const double h = head(rng);
    const SensorScan s = scan_at(w, {0, 0}, h, c);
    std::vector<double> angles;
    for (double m : c.mount_angles) angles.push_back(h + m);
    const auto want = oracle::closest_line_pair(s.readings, angles, c.max_range);
    const auto got = estimate_wall(s, {0, 0}, h, c);
    CHECK(want.has_value() == got.has_value());
    if (!want || !got) continue;
    const auto hit = [&](std::size_t i) {
      return oracle::Vec{s.readings[i] * std::cos(angles[i]), s.readings[i] * std::sin(angles[i])};
    };
    const double best = oracle::line_distance({0, 0}, hit(want->first), hit(want->second));
    const double chosen =
        oracle::line_distance({0, 0}, hit(got->source_pair.first), hit(got->source_pair.second));
    CHECK(chosen == doctest::Approx(best).epsilon(1e-9));
    CHECK(got->distance == doctest::Approx(chosen).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("corner estimate faces the nearest hit") {
  const SensorConfig c = SensorConfig::default8(4.0);
  SensorScan s{std::vector<double>(8, 4.0)};
  s.readings[1] = 0.7;
  const auto corner = estimate_corner(s, 0.0, c);
  REQUIRE(corner);
  CHECK(corner->distance == doctest::Approx(0.7));
  CHECK(corner->normal.x() == doctest::Approx(-std::sqrt(0.5)));
  CHECK(corner->normal.y() == doctest::Approx(-std::sqrt(0.5)));
  const auto surface = estimate_surface(s, {0, 0}, 0.0, c);
  REQUIRE(surface);
  CHECK(surface->distance == doctest::Approx(0.7));
}

TEST_CASE("a convex corner beats a farther wall") {
  // Only the 45 degree ray sees the box corner; the wall behind gives the
  // single qualifying pair, farther away.
  const World w = box_world({{{0.6, 0.6}, {6, 0.6}, {6, 6}, {0.6, 6}},
                             {{-3, -10}, {-2, -10}, {-2, 10}, {-3, 10}}});
  const SensorConfig c = SensorConfig::default8(4.0);
  const SensorScan s = scan_at(w, {0, 0}, 0.0, c);
  const auto wall = estimate_wall(s, {0, 0}, 0.0, c);
  REQUIRE(wall);
  CHECK(wall->distance == doctest::Approx(2.0));
  const auto surface = estimate_surface(s, {0, 0}, 0.0, c);
  REQUIRE(surface);
  CHECK(surface->distance == doctest::Approx(0.6 * std::sqrt(2.0)));
  CHECK(surface->normal.x() == doctest::Approx(-std::sqrt(0.5)));
}

TEST_CASE("following view drops far readings and the opposite side") {
  const SensorConfig c = SensorConfig::default8(4.0);
  SensorScan s{{1.0, 1.0, 3.0, 1.0, 1.0, 1.0, 1.0, 1.0}};
  const SensorScan ranged = following_view(s, 0.0, c, 2.0);
  CHECK(ranged.readings[2] == 4.0);
  CHECK(ranged.readings[0] == 1.0);
  // Moving +x with the wall on the left keeps sensors 0..4 only.
  const SensorScan left =
      following_view(s, 0.0, c, 2.0, std::make_pair(Vector2(1, 0), FollowDirection::Left));
  CHECK(left.readings[1] == 1.0);
  CHECK(left.readings[3] == 1.0);
  CHECK(left.readings[0] == 1.0);
  CHECK(left.readings[4] == 1.0);
  CHECK(left.readings[5] == 4.0);
  CHECK(left.readings[7] == 4.0);
  const SensorScan right =
      following_view(s, 0.0, c, 2.0, std::make_pair(Vector2(1, 0), FollowDirection::Right));
  CHECK(right.readings[1] == 4.0);
  CHECK(right.readings[7] == 1.0);
}

TEST_CASE("oriented tangent keeps the wall on the requested side") {
  const WallEstimate wall = wall_at_x1();
  const Vector2 toward_wall = -wall.normal;
  CHECK(cross<double>(oriented_tangent(wall, FollowDirection::Left), toward_wall) > 0.0);
  CHECK(cross<double>(oriented_tangent(wall, FollowDirection::Right), toward_wall) < 0.0);
}

TEST_CASE("velocity composition") {
  WfmParams p;
  p.pid = {1.0, 0.0, 0.0};
  p.v_tangent_mag = 0.5;
  p.d_wall = 0.5;
  PidState pid;
  WallEstimate wall = wall_at_x1();
  wall.distance = 0.5;
  const Vector2 on = wfm_velocity(wall, FollowDirection::Left, p, pid, 0.05);
  CHECK(on.norm() == doctest::Approx(0.5));
  CHECK(std::abs(on.dot(wall.normal)) < 1e-12);

  pid.reset();
  wall.distance = 0.7;
  const Vector2 far = wfm_velocity(wall, FollowDirection::Left, p, pid, 0.05);
  CHECK(far.dot(-wall.normal) == doctest::Approx(0.2));
  CHECK(far.norm() == doctest::Approx(std::sqrt(0.5 * 0.5 + 0.2 * 0.2)));

  pid.reset();
  wall.distance = 5.0;
  const Vector2 clamped = wfm_velocity(wall, FollowDirection::Left, p, pid, 0.05);
  CHECK(clamped.dot(-wall.normal) == doctest::Approx(0.5));
  CHECK_THROWS_AS(wfm_velocity(wall, FollowDirection::Left, p, pid, 0.0), std::invalid_argument);
}

TEST_CASE("closed loop settles at the standoff") {
  WfmParams p;
  PidState pid;
  double y = 1.4;
  double closest = y;
  for (int k = 0; k < 600; ++k) {
    const WallEstimate wall{{1, 0}, {0, 1}, y, {0, 1}};
    const Vector2 v = wfm_velocity(wall, FollowDirection::Right, p, pid, 0.05);
    y += v.y() * 0.05;
    closest = std::min(closest, y);
  }
  CHECK(y == doctest::Approx(p.d_wall).epsilon(0.01));
  CHECK(closest > 0.2);
}

TEST_CASE("standoff holds along a straight wall for 30 s") {
  WfmParams p;
  PidState pid;
  const double dt = 0.05;
  double y = 1.4;
  for (int k = 0; k < static_cast<int>(30.0 / dt); ++k) {
    const WallEstimate wall{{1, 0}, {0, 1}, y, {0, 1}};
    const Vector2 v = wfm_velocity(wall, FollowDirection::Right, p, pid, dt);
    CHECK(std::abs(v.dot(wall.tangent)) == doctest::Approx(p.v_tangent_mag));
    y += v.y() * dt;
    if (k * dt >= 10.0) CHECK(std::abs(y - p.d_wall) < 0.05);
  }
}

TEST_CASE("integral windup is bounded") {
  WfmParams p;
  p.integral_limit = 0.3;
  PidState pid;
  const WallEstimate wall{{1, 0}, {0, 1}, 3.0, {0, 1}};
  for (int k = 0; k < 100; ++k) wfm_velocity(wall, FollowDirection::Left, p, pid, 0.05);
  CHECK(pid.integral == doctest::Approx(0.3));
}

TEST_CASE("direction choice") {
  const WallEstimate wall = wall_at_x1();
  TrajectoryMemory memory;
  // Left moves along -y for this wall.
  CHECK(choose_direction({0, 0}, memory, {0, -5}, wall, 0.3) == FollowDirection::Left);
  CHECK(choose_direction({0, 0}, memory, {0, 5}, wall, 0.3) == FollowDirection::Right);
  CHECK(progress_direction({0, 0}, {-5, 0}, wall) == FollowDirection::Left);

  memory.maybe_record(1.0, {0.1, 0.0}, {0, 1}, 1.0, Mode::WFM, FollowDirection::Right);
  const TrajectoryMemory copy = memory;
  CHECK(choose_direction({0, 0}, memory, {0, 5}, wall, 0.3) ==
        choose_direction({0, 0}, copy, {0, 5}, wall, 0.3));
  CHECK(choose_direction({0, 0}, memory, {0, 5}, wall, 0.3) == FollowDirection::Left);
  CHECK(choose_direction({0, 1}, memory, {0, 5}, wall, 0.3) == FollowDirection::Right);
}

TEST_CASE("parameter validation") {
  WfmParams p;
  CHECK_NOTHROW(p.validate());
  p.follow_range = p.d_wall;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = WfmParams{};
  p.pid.kd = -1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

}
