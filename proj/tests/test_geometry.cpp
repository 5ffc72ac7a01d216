#include <catch2/catch_amalgamated.hpp>

#include "chreach/geometry/sets.hpp"
#include "chreach/geometry/sphere.hpp"
#include "test_util.hpp"

#include <cmath>
#include <vector>

using namespace chreach;
using test::vec2;
using test::vec3;

namespace {

// Dense boundary grid of a planar lambda-ball: x = scale * delta .* z(theta)
// with ||z||_lambda = 1. Independent support oracle for the inverse map.
double grid_support_2d(const Vec& d, const Vec& delta, double lambda,
                       bool over, int grid = 1000000) {
  const double scale = over ? std::pow(2.0, 1.0 / lambda) : 1.0;
  double best = -1e300;
  for (int i = 0; i < grid; ++i) {
    const double th = 2.0 * M_PI * double(i) / double(grid);
    const double c = std::cos(th), s = std::sin(th);
    const double z0 = sgn(c) * std::pow(std::abs(c), 2.0 / lambda);
    const double z1 = sgn(s) * std::pow(std::abs(s), 2.0 / lambda);
    best = std::max(best, d[0] * scale * delta[0] * z0 +
                              d[1] * scale * delta[1] * z1);
  }
  return best;
}

std::vector<SmoothConvexSet> all_variants() {
  Mat q(2, 2);
  q << 4.0, 1.0, 1.0, 2.0;
  std::vector<SmoothConvexSet> sets;
  sets.push_back(SmoothConvexSet::ball(vec2(0.3, -0.2), 1.7));
  sets.push_back(SmoothConvexSet::ellipsoid(vec2(-1.0, 0.5), q));
  sets.push_back(SmoothConvexSet::lambda_ball(vec2(0.1, 0.0), vec2(2.0, 0.7),
                                              6.0, sets::BoxSide::Under));
  sets.push_back(SmoothConvexSet::lambda_ball(vec2(0.0, 0.4), vec2(1.0, 1.5),
                                              8.0, sets::BoxSide::Over));
  sets.push_back(lift_set(SmoothConvexSet::ball(vec2(0.0, 0.0), 0.5), 3));
  return sets;
}

}  // namespace

TEST_CASE("inverse Gauss map closed forms") {
  SECTION("ball") {
    const auto b = SmoothConvexSet::ball(vec2(1.0, 0.0), 2.0);
    const Vec x = b.inverse_gauss_map(Direction(vec2(0.0, 1.0)));
    REQUIRE((x - vec2(1.0, 2.0)).norm() < 1e-14);
  }
  SECTION("axis-aligned ellipsoid") {
    const auto e =
        SmoothConvexSet::ellipsoid(vec2(0.0, 0.0), Vec(vec2(4.0, 1.0)).asDiagonal());
    const Vec x = e.inverse_gauss_map(Direction(vec2(1.0, 0.0)));
    REQUIRE((x - vec2(2.0, 0.0)).norm() < 1e-14);
  }
  SECTION("lambda = 2 reduces to the unit ball") {
    const auto lb = SmoothConvexSet::lambda_ball(vec2(0.0, 0.0), vec2(1.0, 1.0),
                                                 2.0, sets::BoxSide::Under);
    const Direction d(vec2(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)));
    REQUIRE((lb.inverse_gauss_map(d) - d.vec()).norm() < 1e-12);
  }
  SECTION("lambda = 8 support matches the boundary-grid oracle") {
    const auto lb = SmoothConvexSet::lambda_ball(vec2(0.0, 0.0), vec2(1.0, 1.0),
                                                 8.0, sets::BoxSide::Under);
    const Direction d(vec2(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)));
    const double sup = d.vec().dot(lb.inverse_gauss_map(d));
    const double oracle = grid_support_2d(d.vec(), vec2(1.0, 1.0), 8.0, false);
    REQUIRE(std::abs(sup - oracle) < 1e-4);
  }
  SECTION("non-unit direction is rejected") {
    const auto b = SmoothConvexSet::ball(vec2(0.0, 0.0), 1.0);
    REQUIRE_THROWS_AS(Direction(vec2(1.0, 1.0)), DomainError);
  }
}

TEST_CASE("Gauss map and round trips") {
  SECTION("ball") {
    const auto b = SmoothConvexSet::ball(vec2(0.0, 0.0), 1.0);
    const Direction n = b.gauss_map(vec2(0.0, -1.0));
    REQUIRE((n.vec() - vec2(0.0, -1.0)).norm() < 1e-14);
  }
  SECTION("ellipsoid axis point") {
    const auto e =
        SmoothConvexSet::ellipsoid(vec2(0.0, 0.0), Vec(vec2(4.0, 1.0)).asDiagonal());
    const Direction n = e.gauss_map(vec2(2.0, 0.0));
    REQUIRE((n.vec() - vec2(1.0, 0.0)).norm() < 1e-12);
  }
  SECTION("lambda-ball round trip, 100 random directions") {
    const auto lb = SmoothConvexSet::lambda_ball(vec2(0.0, 0.0), vec2(1.0, 1.0),
                                                 4.0, sets::BoxSide::Under);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const Direction d = Direction::normalized(rng.normal_vec(2));
      const Direction back = lb.gauss_map(lb.inverse_gauss_map(d));
      REQUIRE((back.vec() - d.vec()).norm() < 1e-9);
    }
  }
  SECTION("off-boundary point is rejected") {
    const auto b = SmoothConvexSet::ball(vec2(0.0, 0.0), 1.0);
    REQUIRE_THROWS_AS(b.gauss_map(vec2(0.5, 0.0)), DomainError);
  }
}

TEST_CASE("round trip across every variant, 1e3 directions each") {
  for (const auto& set : all_variants()) {
    Rng rng(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Direction d = Direction::normalized(rng.normal_vec(set.dim()));
      const Vec x = set.inverse_gauss_map(d);
      REQUIRE(set.boundary_residual(x) < 1e-8);
      worst = std::max(worst, (set.gauss_map(x).vec() - d.vec()).norm());
    }
    INFO("variant dim " << set.dim());
    REQUIRE(worst <= 1e-9);
  }
}

TEST_CASE("support points") {
  SECTION("small ball") {
    const auto b = SmoothConvexSet::ball(vec2(0.0, 0.0), 0.1);
    REQUIRE((b.support_point(Direction(vec2(1.0, 0.0))) - vec2(0.1, 0.0)).norm() <
            1e-14);
  }
  SECTION("ellipsoid") {
    const auto e =
        SmoothConvexSet::ellipsoid(vec2(0.0, 0.0), Vec(vec2(4.0, 1.0)).asDiagonal());
    REQUIRE((e.support_point(Direction(vec2(0.0, 1.0))) - vec2(0.0, 1.0)).norm() <
            1e-14);
  }
  SECTION("over lambda-ball against the grid oracle") {
    const auto lb = SmoothConvexSet::lambda_ball(vec2(0.0, 0.0), vec2(2.0, 1.0),
                                                 6.0, sets::BoxSide::Over);
    const Direction d(vec2(0.6, 0.8));
    const double sup = d.vec().dot(lb.support_point(d));
    const double oracle = grid_support_2d(d.vec(), vec2(2.0, 1.0), 6.0, true);
    REQUIRE(std::abs(sup - oracle) < 1e-4);
  }
  SECTION("support optimality over random boundary samples") {
    for (const auto& set : all_variants()) {
      Rng rng(17);
      for (int i = 0; i < 1000; ++i) {
        const Direction d = Direction::normalized(rng.normal_vec(set.dim()));
        const Vec v = set.inverse_gauss_map(
            Direction::normalized(rng.normal_vec(set.dim())));
        const double margin = d.vec().dot(set.support_point(d)) - d.vec().dot(v);
        REQUIRE(margin >= -1e-9);
      }
    }
  }
}

TEST_CASE("lambda-ball sandwich around the box") {
  const Vec delta = vec2(0.8, 1.3);
  const auto under = SmoothConvexSet::lambda_ball(vec2(0.0, 0.0), delta, 8.0,
                                                  sets::BoxSide::Under);
  const auto over = SmoothConvexSet::lambda_ball(vec2(0.0, 0.0), delta, 8.0,
                                                 sets::BoxSide::Over);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Vec x = under.inverse_gauss_map(Direction::normalized(rng.normal_vec(2)));
    REQUIRE(std::abs(x[0]) <= delta[0] + 1e-12);
    REQUIRE(std::abs(x[1]) <= delta[1] + 1e-12);
  }
  for (const double sx : {-1.0, 1.0}) {
    for (const double sy : {-1.0, 1.0}) {
      REQUIRE(over.contains(vec2(sx * delta[0], sy * delta[1]), 1e-12));
    }
  }
}

TEST_CASE("lifted sets") {
  SECTION("unit ball lift is the expected ellipsoid") {
    const auto lifted = lift_set(SmoothConvexSet::ball(vec2(0.0, 0.0), 1.0), 3);
    const auto* l = std::get_if<sets::Lifted>(&lifted.variant());
    REQUIRE(l != nullptr);
    REQUIRE((l->equivalent.shape - Mat(vec3(1.0, 1.0, 2.0).asDiagonal())).norm() <
            1e-14);
  }
  SECTION("small disturbance ball lift") {
    const auto lifted = lift_set(SmoothConvexSet::ball(vec2(0.0, 0.0), 1e-2), 3);
    const auto* l = std::get_if<sets::Lifted>(&lifted.variant());
    REQUIRE(l != nullptr);
    REQUIRE((l->equivalent.shape - Mat(vec3(1e-4, 1e-4, 2.0).asDiagonal())).norm() <
            1e-14);
  }
  SECTION("projection of boundary points lies in the base") {
    const auto base = SmoothConvexSet::ball(vec2(0.0, 0.0), 0.7);
    const auto lifted = lift_set(base, 3);
    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
      const Vec w = lifted.inverse_gauss_map(Direction::normalized(rng.normal_vec(3)));
      REQUIRE(base.contains(Vec(w.head(2)), 1e-9));
    }
  }
  SECTION("projected support function equals the base support") {
    Mat q(2, 2);
    q << 0.5, 0.1, 0.1, 0.3;
    const auto base = SmoothConvexSet::ellipsoid(vec2(0.0, 0.0), q);
    const auto lifted = lift_set(base, 4);
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
      const Direction d2 = Direction::normalized(rng.normal_vec(2));
      Vec d4 = Vec::Zero(4);
      d4.head(2) = d2.vec();
      const double sup_lift = lifted.support_value(Direction(d4));
      const double sup_base = base.support_value(d2);
      REQUIRE(std::abs(sup_lift - sup_base) < 1e-9);
    }
  }
  SECTION("unsupported lifts are rejected") {
    REQUIRE_THROWS_AS(lift_set(SmoothConvexSet::ball(vec2(1.0, 0.0), 1.0), 3),
                      ConfigError);
    const auto lb = SmoothConvexSet::lambda_ball(vec2(0.0, 0.0), vec2(1.0, 1.0),
                                                 4.0, sets::BoxSide::Under);
    REQUIRE_THROWS_AS(lift_set(lb, 3), ConfigError);
    REQUIRE_THROWS_AS(lift_set(SmoothConvexSet::ball(vec2(0.0, 0.0), 1.0), 2),
                      ConfigError);
  }
}
