#include "doctest.h"

#include "hilbert/body_io.hpp"

using namespace hilbert;

TEST_CASE("body specifications") {
  CHECK(body_from_json(R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]]})").dim() == 2);
  CHECK(body_from_json(R"({"kind": "regular_polygon", "k": 6, "circumradius": 2})").kind() == BodyKind::polytope);
  CHECK(body_from_json(R"({"kind": "ball", "n": 3})").dim() == 3);
  CHECK(body_from_json(R"({"kind": "ellipsoid", "center": [1, 0], "shape": [[2, 0], [0, 1]]})").dim() == 2);
  CHECK(body_from_json(R"({"kind": "superellipse", "p": 4, "q": 1.1})").kind() == BodyKind::sublevel);
  CHECK(body_from_json(R"({"kind": "simplex", "n": 3})").dim() == 3);
  CHECK(body_from_json(R"({"kind": "simplex", "vertices": [[0,0],[2,0],[0,2]]})").dim() == 2);
  CHECK(body_from_json(R"({"kind": "ball", "n": 2, "name": "unit"})").dim() == 2);
}

TEST_CASE("bad specifications") {
  CHECK_THROWS_AS(body_from_json(R"({"kind": "ball", "n": 2, "radius": 3})"), ValidationError);
  CHECK_THROWS_AS(body_from_json(R"({"kind": "blob"})"), ValidationError);
  CHECK_THROWS_AS(body_from_json(R"({"kind": "ball", )"), ValidationError);
  CHECK_THROWS_AS(body_from_json(R"({"kind": "polygon", "vertices": [[0,0],[1,0],[2,0]]})"), ValidationError);
  CHECK_THROWS_AS(load_body("no-such-body"), ValidationError);
}

TEST_CASE("named bodies") {
  for (const char* name : {"triangle", "square", "hexagon", "disk", "superellipse", "simplex3"})
    CHECK(load_body(name).contains(load_body(name).interior_point()));
  CHECK(load_body(R"({"kind": "ball", "n": 2})").dim() == 2);
}
