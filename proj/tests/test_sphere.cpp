#include <catch2/catch_amalgamated.hpp>

#include "chreach/geometry/sphere.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace chreach;
using test::vec2;
using test::vec3;

TEST_CASE("sample_sphere schemes") {
  SECTION("uniform-angle quadrants") {
    const auto dirs = sample_sphere(2, 4, SphereScheme::UniformAngle);
    REQUIRE(dirs.size() == 4);
    REQUIRE((dirs[0].vec() - vec2(1, 0)).norm() < 1e-12);
    REQUIRE((dirs[1].vec() - vec2(0, 1)).norm() < 1e-12);
    REQUIRE((dirs[2].vec() - vec2(-1, 0)).norm() < 1e-12);
    REQUIRE((dirs[3].vec() - vec2(0, -1)).norm() < 1e-12);
  }
  SECTION("fibonacci lattice covers S^2 at the documented rate") {
    const auto dirs = sample_sphere(3, 50, SphereScheme::Fibonacci);
    const double delta = covering_radius(dirs, 20000, 1);
    REQUIRE(delta <= 0.6);  // internal delta-covering with delta about 0.5
    const auto dense = sample_sphere(3, 200, SphereScheme::Fibonacci);
    REQUIRE(covering_radius(dense, 20000, 1) < delta);
  }
  SECTION("random scheme is deterministic per seed") {
    const auto a = sample_sphere(4, 16, SphereScheme::Random, 99);
    const auto b = sample_sphere(4, 16, SphereScheme::Random, 99);
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE((a[i].vec() - b[i].vec()).norm() == 0.0);
    }
  }
  SECTION("scheme/dimension mismatches are rejected") {
    REQUIRE_THROWS_AS(sample_sphere(3, 8, SphereScheme::UniformAngle), ConfigError);
    REQUIRE_THROWS_AS(sample_sphere(2, 8, SphereScheme::Fibonacci), ConfigError);
  }
}

TEST_CASE("covering_radius") {
  SECTION("antipodal pair on the circle") {
    const std::vector<Direction> dirs = {Direction(vec2(1, 0)), Direction(vec2(-1, 0))};
    const double r = covering_radius(dirs, 200000, 5);
    REQUIRE(r == Catch::Approx(std::sqrt(2.0)).epsilon(1e-3));
    REQUIRE(r <= std::sqrt(2.0) + 1e-12);  // probe estimates approach from below
  }
  SECTION("uniform-angle matches the exact arc-chord formula") {
    for (const int M : {8, 32, 128}) {
      const auto dirs = sample_sphere(2, M, SphereScheme::UniformAngle);
      const double exact = 2.0 * std::sin(M_PI / (2.0 * M));
      const double est = covering_radius(dirs, 200000, 5);
      REQUIRE(est <= exact + 1e-12);
      REQUIRE(est >= 0.99 * exact);
    }
  }
  SECTION("single sample on S^2 reaches the antipode") {
    const std::vector<Direction> dirs = {Direction(vec3(0, 0, 1))};
    REQUIRE(covering_radius(dirs, 100000, 5) == Catch::Approx(2.0).epsilon(1e-3));
  }
}

TEST_CASE("tangent_basis spans the orthogonal complement") {
  Rng rng(2);
  for (const int n : {2, 3, 7}) {
    for (int rep = 0; rep < 10; ++rep) {
      const Direction d = Direction::normalized(rng.normal_vec(n));
      const Mat basis = tangent_basis(d);
      REQUIRE(basis.cols() == n - 1);
      REQUIRE((basis.transpose() * basis - Mat::Identity(n - 1, n - 1)).norm() <
              1e-10);
      REQUIRE((basis.transpose() * d.vec()).norm() < 1e-10);
    }
  }
}
