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
}  // namespace

TEST_CASE("axes scene loads") {
  Scene s = load_scene_file(std::string(TVKIT_SCENES_DIR) + "/axes.json");
  CHECK(s.dimension == 2);
  CHECK(s.xbar == v2(0, 0));
  CHECK(s.tol_membership == 1e-9);
  CHECK(s.seed == 0);
  CHECK(distance(s.A, v2(3, 4)) == 4.0);
  CHECK(distance(s.B, v2(3, 4)) == 3.0);
  CHECK(s.truncation_radius == 0.0);
}

TEST_CASE("paper-example scene expands the generator") {
  Scene s = load_scene_file(std::string(TVKIT_SCENES_DIR) + "/paper_example.json");
  // ray y=3x plus thirty points (1/n, 2/n), shared by both sets
  CHECK(contains(s.A, v2(0.5, 1.0), 1e-12));
  CHECK(contains(s.B, v2(0.5, 1.0), 1e-12));
  CHECK(contains(s.A, v2(1.0 / 30.0, 2.0 / 30.0), 1e-12));
  CHECK(contains(s.A, v2(0.1, 0.3), 1e-12));   // on the ray
  CHECK(contains(s.B, v2(0.2, 0.2), 1e-12));   // on the other ray
  CHECK_FALSE(contains(s.A, v2(-0.1, -0.3), 1e-9));  // behind the ray origin
  CHECK(s.truncation_radius == Approx(std::sqrt(5.0)).margin(1e-12));

  SECTION("custom count") {
    json doc = json::parse(R"({"dimension":2,"xbar":[0,0],
      "A":{"points":{"generator":"paper_example_sequence","count":3}},
      "B":{"line":{"point":[0,0],"direction":[1,0]}}})");
    Scene t = load_scene(doc);
    CHECK(contains(t.A, v2(1.0 / 3.0, 2.0 / 3.0), 1e-12));
    CHECK_FALSE(contains(t.A, v2(0.25, 0.5), 1e-9));  // n=4 not generated
  }
}

TEST_CASE("load errors carry a field path") {
  auto expect_error = [](const char* text, const char* path_fragment) {
    try {
      load_scene_text(text);
      FAIL("expected LoadError");
    } catch (const LoadError& e) {
      CHECK(std::string(e.what()).find(path_fragment) != std::string::npos);
    }
  };

  expect_error(R"({"dimension":2,"xbar":[0,0],
    "A":{"box":{"min":[1,0],"max":[0,1]}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})",
               "A");  // box min > max

  expect_error(R"({"dimension":2,"xbar":[0,0],
    "A":{"line":{"point":[0,0],"direction":[1,1]}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})",
               "A");  // non-unit direction

  expect_error(R"({"dimension":2,"xbar":[0,0,0],
    "A":{"line":{"point":[0,0],"direction":[1,0]}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})",
               "xbar");  // dimension mismatch

  expect_error(R"({"dimension":2,"xbar":[0,0],
    "A":{"line":{"point":[0,0,0],"direction":[1,0,0]}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})",
               "A.line.point");

  expect_error(R"({"dimension":2,"xbar":[0,0],
    "A":{"points":{"generator":"fibonacci"}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})",
               "A.points.generator");

  expect_error(R"({"dimension":2,"xbar":[0,0],
    "A":{"wedge":{}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})",
               "A");

  expect_error(R"({"dimension":2,"xbar":[0,0],"tol_membership":0,
    "A":{"line":{"point":[0,0],"direction":[1,0]}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})",
               "tol_membership");

  expect_error(R"({"dimension":0,"xbar":[]})", "dimension");
  expect_error("not json at all", "invalid document");
}

TEST_CASE("translate nodes are applied eagerly") {
  json doc = json::parse(R"({"dimension":2,"xbar":[0,0],
    "A":{"translate":{"shape":{"line":{"point":[0,0],"direction":[1,0]}},"by":[0,1]}},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})");
  Scene s = load_scene(doc);
  CHECK(distance(s.A, v2(0, 0)) == 1.0);  // line moved to y=1
  CHECK(distance(s.A, v2(5, 1)) == 0.0);
}

TEST_CASE("union of union flattens transparently for oracles") {
  json doc = json::parse(R"({"dimension":2,"xbar":[0,0],
    "A":{"union":[{"union":[{"points":{"list":[[1,1]]}},{"points":{"list":[[2,2]]}}]},
                   {"points":{"list":[[3,3]]}}]},
    "B":{"line":{"point":[0,0],"direction":[1,0]}}})");
  Scene s = load_scene(doc);
  CHECK(distance(s.A, v2(2, 2)) == 0.0);
  CHECK(flatten(s.A).size() == 3);
}
