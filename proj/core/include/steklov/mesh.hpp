#pragma once

#include <array>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

/// Conforming triangulation with ccw triangles and ccw-oriented boundary
/// edges (interior on the left).
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> boundary_edges;
  double h = 0.0;              // target edge length
  double min_angle_deg = 0.0;  // measured over all triangles
  int origin_vertex = -1;      // index of the vertex at the origin, -1 if none

  double min_angle() const;  // recompute, degrees
};

/// Meshes the domain at target edge length h. Domains star-shaped about an
/// interior origin get a ring mesh with the origin as a vertex and boundary
/// vertices exactly on the boundary; other polygons fall back to ear clipping
/// plus uniform refinement.
Mesh triangulate(const Domain& dom, double h);

/// Midpoint (4-way) refinement. Nested: coarse piecewise-linear functions are
/// contained in the refined space, and polygon boundaries stay exact.
Mesh refine_uniform(const Mesh& mesh);

}  // namespace steklov
