#pragma once

#include "hilbert/convex_body.hpp"

#include <string>

namespace hilbert {

// Body specifications, as JSON:
//   {"kind": "polygon", "vertices": [[x, y], ...]}
//   {"kind": "regular_polygon", "k": 6, "circumradius": 1}
//   {"kind": "ball", "n": 2}
//   {"kind": "ellipsoid", "center": [...], "shape": [[...], ...]}
//   {"kind": "superellipse", "p": 4, "q": 1.1}
//   {"kind": "simplex", "n": 3} or {"kind": "simplex", "vertices": [...]}
// plus optional "name" and "projective" ((n+1)x(n+1) rows). Unknown keys are
// rejected.
ConvexBody body_from_json(const std::string& text);

/// A file path, inline JSON (starting with '{'), or one of the names
/// triangle, square, hexagon, disk, superellipse (the (4, 1.1) body), simplex3.
ConvexBody load_body(const std::string& spec);

}  // namespace hilbert
