#pragma once

#include "geotri/complex.hpp"
#include "geotri/intersect.hpp"
#include "geotri/subdivision.hpp"

namespace geotri::fixtures {

/// The full n-simplex on vertices 0..n.
Complex simplex(int n);
/// Boundary of the (n+1)-simplex: a triangulated n-sphere on n+2 vertices.
Complex sphere_boundary(int n);
/// Boundary of the cross-polytope in R^3 (6 vertices, 8 triangles).
Complex octahedron();
/// The cycle on `count` vertices 0..count-1.
Complex cycle(int count);

/// 3x3 grid on the unit torus, each square cut along the same diagonal;
/// vertex 3i+j sits at ((i + shift)/3, (j + shift)/3) modulo 1 for shift in
/// units of the grid spacing.
FlatTorusComplex torus_grid(double shift = 0.0);
/// Circle R/Z cut into `count` equal arcs, the first vertex at `offset`.
FlatTorusComplex circle(int count, double offset = 0.0);
/// Two triangles spanning the unit square with explicit corner lifts.
FlatTorusComplex coarse_torus();

/// Splits the edge {a, b} of K at a new vertex, as a subdivision of K.
SubdividedComplex split_edge(const Complex& k, VertexId a, VertexId b);

}  // namespace geotri::fixtures
