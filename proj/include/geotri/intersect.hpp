#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geotri/bounds.hpp"
#include "geotri/complex.hpp"
#include "geotri/geometry.hpp"
#include "geotri/io.hpp"
#include "geotri/subdivision.hpp"

namespace geotri {

/// Points closer than this (in chart coordinates, mod 1 on the torus) are merged.
inline constexpr double kMergeTolerance = 1e-9;
/// Cells with smaller n-dimensional measure are discarded and logged.
inline constexpr double kMinCellMeasure = 1e-12;

/// Flat torus R^n / Z^n with a triangulation. Vertex coordinates are taken
/// modulo 1. A top simplex is placed in R^n by its explicit lift when one is
/// given, else by the nearest images of its vertices relative to its first
/// vertex.
struct FlatTorusComplex {
    int n = 2;
    Complex complex;
    std::map<VertexId, Vec> coords;
    std::map<Simplex, std::vector<Vec>> lifts;

    /// Vertex positions of `s` in R^n (s must be a face of some top simplex
    /// when explicit lifts are used).
    std::vector<Vec> lift(const Simplex& s) const;
    /// Largest Euclidean edge over all lifted top simplexes.
    double max_diameter() const;
    /// Sum of the volumes of the lifted top simplexes.
    double measure() const;
    void validate() const;
};

/// A face of the polytopal complex, identified by its set of merged points.
struct PolytopalFace {
    int dim = 0;
    std::vector<std::size_t> points;
    /// Smallest simplexes of K1 and K2 containing the face.
    Simplex carrier1;
    Simplex carrier2;
};

/// A nonempty n-dimensional intersection of a simplex of K1 with a simplex of K2.
struct ConvexCell {
    Simplex k1;
    Simplex k2;
    /// Index into PolytopalComplex::faces.
    std::size_t face = 0;
    /// Every face of the cell (itself included), as indices into PolytopalComplex::faces.
    std::vector<std::size_t> faces;
    /// Coordinates of the cell's points in one consistent lift (chart
    /// coordinates for linear inputs), keyed by point index.
    std::map<std::size_t, Vec> local;
    double measure = 0.0;
};

struct PolytopalComplex {
    int n = 0;
    GeometryTag tag = GeometryTag::euclidean;
    bool torus = false;
    /// Chart used for curved inputs (identity for Euclidean and torus inputs).
    LinearChart chart;
    /// Merged points: chart coordinates, reduced into [0,1)^n on the torus.
    std::vector<Vec> points;
    std::vector<PolytopalFace> faces;
    std::vector<ConvexCell> cells;
    Complex k1;
    Complex k2;
    double region_measure1 = 0.0;
    double region_measure2 = 0.0;
    double total_measure() const;
    /// Discarded degenerate cells and other events.
    std::vector<std::string> log;
};

/// Intersects two complexes over a common region in a shared linear chart
/// (Klein model for hyperbolic space, gnomonic projection about the normalized
/// vertex sum for the sphere). n <= 3.
PolytopalComplex intersect_linear(const GeomComplex& k1, const GeomComplex& k2);

/// Intersects two triangulations of the same flat torus. Every lifted simplex
/// must have diameter below 1/2, so each pair meets in at most one translate.
PolytopalComplex torus_intersect(const FlatTorusComplex& k1, const FlatTorusComplex& k2);

/// K' = beta(K1 cap K2) with carriers into both parents.
struct CommonSubdivision {
    int n = 0;
    GeometryTag tag = GeometryTag::euclidean;
    bool torus = false;
    LinearChart chart;
    Complex complex;
    SubdividedComplex over1;
    SubdividedComplex over2;
    /// Chart coordinates of each vertex (mod 1 on the torus).
    std::map<VertexId, Vec> coords;
    /// Lift of every top simplex inside the cell it subdivides.
    std::map<Simplex, std::vector<Vec>> lifts;
    /// Vertices of K' that are vertices of both K1 and K2, as (K1 label, K2 label).
    std::map<VertexId, std::pair<VertexId, VertexId>> common_vertices() const;
};

/// Cones each cell over its subdivided boundary, one vertex per face at the
/// average of the face's points.
CommonSubdivision barycentric_polytopal(const PolytopalComplex& p);

/// K' as a geometric complex in the original geometry (linear inputs only).
GeomComplex to_geom_complex(const CommonSubdivision& c);
/// K' as a flat-torus complex (torus inputs only).
FlatTorusComplex to_torus_complex(const CommonSubdivision& c);

struct CountCheck {
    int n = 0;
    std::vector<std::int64_t> p;
    std::vector<std::int64_t> q;
    std::vector<std::int64_t> s;
    std::vector<BigInt> bound;
    std::vector<bool> pass;
    bool all_pass() const;
};
/// s_i against (2^n - 1) (n+1)!^2 p_i q_n for i = 0..n.
CountCheck commonsub_count_check(const CommonSubdivision& c);

Json to_json(const FlatTorusComplex& k);
FlatTorusComplex torus_complex_from_json(const Json& j);
Json to_json(const PolytopalComplex& p);
Json to_json(const CommonSubdivision& c);
Json to_json(const CountCheck& c);

/// Volume of the simplex spanned by the columns-as-points (n+1 points in R^n).
double simplex_volume(const std::vector<Vec>& points);

}  // namespace geotri
