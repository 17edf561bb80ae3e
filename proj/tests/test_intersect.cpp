#include <tvkit/intersect.hpp>
#include <tvkit/scene.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

using namespace tvkit;
using Catch::Approx;

namespace {
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
Scene load_fixture(const char* name) {
  return load_scene_file(std::string(TVKIT_SCENES_DIR) + "/" + name);
}
}  // namespace

TEST_CASE("crossing lines meet in a single point") {
  Scene s = load_fixture("axes.json");
  auto r = intersect_exact(s.A, s.B);
  REQUIRE(r.is_exact());
  CHECK(distance(*r.shape, v2(0, 0)) == 0.0);
  CHECK(distance(*r.shape, v2(1, 1)) == Approx(std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("coincident lines intersect in the line itself") {
  Scene s = load_fixture("coincident_lines.json");
  auto r = intersect_exact(s.A, s.B);
  REQUIRE(r.is_exact());
  CHECK(distance(*r.shape, v2(17, 0)) == 0.0);
  CHECK(distance(*r.shape, v2(0, 2)) == 2.0);
}

TEST_CASE("parallel distinct lines have a certified empty intersection") {
  Scene s = load_fixture("parallel_lines.json");
  CHECK(intersect_exact(s.A, s.B).is_empty());
  CHECK(set_distance_exact(s.A, s.B).value() == Approx(1.0).margin(1e-12));
}

TEST_CASE("paper-example intersection is the origin plus the shared sequence") {
  Scene s = load_fixture("paper_example.json");
  auto r = intersect_exact(s.A, s.B);
  REQUIRE(r.is_exact());
  CHECK(distance(*r.shape, v2(0, 0)) == 0.0);
  CHECK(distance(*r.shape, v2(0.5, 1.0)) == 0.0);       // n=2 shared point
  CHECK(distance(*r.shape, v2(0.2, 0.2)) > 0.04);       // ray of B only
  CHECK(distance(*r.shape, v2(0.1, 0.3)) > 0.04);       // ray of A only (nearest is (1/7,2/7))

  SECTION("a vertical translation certifiably empties it") {
    Shape B_shifted = translate_shape(s.B, v2(0, -0.01));  // B - (0, 0.01)
    CHECK(intersect_exact(s.A, B_shifted).is_empty());
  }
  SECTION("rays alone cross only at the origin") {
    auto parts_a = flatten(s.A), parts_b = flatten(s.B);
    auto rays = intersect_exact(parts_a[0], parts_b[0]);
    REQUIRE(rays.is_exact());
    CHECK(distance(*rays.shape, v2(0, 0)) == 0.0);
    CHECK(distance(*rays.shape, v2(0.5, 1.0)) > 1.0);
  }
}

TEST_CASE("ball pairs") {
  Shape a = make_ball(v2(-1, 0), 1.0);
  SECTION("externally tangent -> tangency point") {
    auto r = intersect_exact(a, make_ball(v2(1, 0), 1.0));
    REQUIRE(r.is_exact());
    CHECK(distance(*r.shape, v2(0, 0)) == 0.0);
    CHECK(distance(*r.shape, v2(0, 1)) == Approx(1.0).margin(1e-12));
  }
  SECTION("separated -> certified empty") {
    CHECK(intersect_exact(a, make_ball(v2(1.5, 0), 1.0)).is_empty());
  }
  SECTION("contained -> the inner ball") {
    auto r = intersect_exact(make_ball(v2(0, 0), 3.0), make_ball(v2(0.5, 0), 1.0));
    REQUIRE(r.is_exact());
    CHECK(distance(*r.shape, v2(0.5, 1.0)) == 0.0);
    CHECK(distance(*r.shape, v2(0.5, 1.5)) == Approx(0.5).margin(1e-12));
  }
  SECTION("overlapping lens -> unknown") {
    CHECK(intersect_exact(a, make_ball(v2(0.5, 0), 1.0)).is_unknown());
  }
}

TEST_CASE("ball cap line is the chord") {
  auto r = intersect_exact(make_ball(v2(0, 0), 1.0), make_line(v2(0, 0), v2(1, 0)));
  REQUIRE(r.is_exact());
  CHECK(distance(*r.shape, v2(1, 0)) <= 1e-9);
  CHECK(distance(*r.shape, v2(2, 0)) == Approx(1.0).margin(1e-9));
  CHECK(distance(*r.shape, v2(0, 0.5)) == Approx(0.5).margin(1e-12));
}

TEST_CASE("boxes intersect by interval arithmetic") {
  auto r = intersect_exact(make_box(v2(-1, -1), v2(0.25, 0.25)), make_box(v2(-0.25, -0.25), v2(1, 1)));
  REQUIRE(r.is_exact());
  CHECK(distance(*r.shape, v2(0, 0)) == 0.0);
  CHECK(distance(*r.shape, v2(1, 0)) == Approx(0.75).margin(1e-12));
  CHECK(intersect_exact(make_box(v2(0, 0), v2(1, 1)), make_box(v2(2, 0), v2(3, 1))).is_empty());
}

TEST_CASE("halfspace clips a line to a ray") {
  auto r = intersect_exact(make_halfspace(v2(0, 1), 0.0), make_line(v2(0, 1), v2(0, -1)));
  REQUIRE(r.is_exact());
  CHECK(distance(*r.shape, v2(0, -5)) == 0.0);
  CHECK(distance(*r.shape, v2(0, 0.5)) == Approx(0.5).margin(1e-12));
}

TEST_CASE("set distance closed forms agree with a brute-force oracle") {
  SECTION("segment to segment") {
    Shape a = make_segment(v2(0, 0), v2(1, 0));
    Shape b = make_segment(v2(2, 1), v2(3, 2));
    auto d = set_distance_exact(a, b);
    REQUIRE(d.has_value());
    double brute = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 2000; ++i)
      for (int j = 0; j <= 2000; ++j) {
        Vec p = v2(i / 2000.0, 0);
        Vec q = v2(2 + j / 2000.0, 1 + j / 2000.0);
        brute = std::min(brute, (p - q).norm());
      }
    CHECK(*d == Approx(brute).margin(1e-3));
    CHECK(*d <= brute + 1e-12);
  }
  SECTION("ray to point list") {
    Shape a = make_ray(v2(0, 0), v2(1, 0));
    Shape b = make_points({v2(-1, 1), v2(4, 0.5)});
    CHECK(set_distance_exact(a, b).value() == Approx(0.5).margin(1e-12));
  }
  SECTION("tangent balls touch at distance zero") {
    CHECK(set_distance_exact(make_ball(v2(-1, 0), 1), make_ball(v2(1, 0), 1)).value() ==
          Approx(0.0).margin(1e-12));
    CHECK(set_distance_exact(make_ball(v2(-1, 0), 1), make_ball(v2(2, 0), 1)).value() ==
          Approx(1.0).margin(1e-12));
  }
}
