#pragma once

#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "geotri/complex.hpp"
#include "geotri/io.hpp"
#include "geotri/subdivision.hpp"
#include "geotri/tags.hpp"

namespace geotri {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Tolerance for geometric assertions.
inline constexpr double kGeomTolerance = 1e-9;
/// Tolerance for the model normalization of points.
inline constexpr double kNormTolerance = 1e-12;

/// Minkowski product u1 v1 + ... + un vn - u_{n+1} v_{n+1}.
double minkowski(const Vec& u, const Vec& v);

/// A point of E^n (n coordinates), S^n (unit vector in R^{n+1}) or H^n
/// (hyperboloid sheet <x,x> = -1, last coordinate positive).
class GeomPoint {
public:
    GeomPoint() = default;
    /// Checks the model normalization (drift up to 1e-9 is re-normalized
    /// away; larger drift is an InputError).
    GeomPoint(GeometryTag tag, Vec x);
    /// Radial projection of an arbitrary vector onto the model: x/|x| on the
    /// sphere, x/sqrt(-<x,x>) on the hyperboloid. InputError if impossible.
    static GeomPoint project(GeometryTag tag, const Vec& x);
    /// Point at geodesic distance |v| from the base point of the model in
    /// direction v (an n-vector in the tangent space at the base point).
    static GeomPoint exp_base(GeometryTag tag, const Vec& v);
    static GeomPoint base(GeometryTag tag, int n);

    GeometryTag tag() const { return tag_; }
    const Vec& coords() const { return x_; }
    /// Manifold dimension.
    int dim() const;

private:
    GeometryTag tag_ = GeometryTag::euclidean;
    Vec x_;
};

/// Geodesic distance; InputError on a tag or dimension mismatch.
double distance(const GeomPoint& p, const GeomPoint& q);
/// Point at fraction t of the way from p to q along the geodesic.
GeomPoint geodesic_point(const GeomPoint& p, const GeomPoint& q, double t);
/// Residual of x against the geodesic segment [p, q] in the ambient linear
/// model: distance from x to the cone spanned by p and q (Euclidean: the segment).
double geodesic_residual(const GeomPoint& p, const GeomPoint& q, const GeomPoint& x);

/// Projection of the normalized (Euclidean: averaged) weighted sum of points.
GeomPoint weighted_point(const std::vector<GeomPoint>& points, const std::vector<double>& weights);

class GeomSimplex {
public:
    GeomSimplex() = default;
    /// InputError if the vertices have mixed tags, are affinely dependent in
    /// the linear model, or (spherical) do not lie in an open hemisphere.
    explicit GeomSimplex(std::vector<GeomPoint> vertices);

    GeometryTag tag() const { return vertices_.front().tag(); }
    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<GeomPoint>& vertices() const { return vertices_; }
    const GeomPoint& vertex(std::size_t i) const { return vertices_[i]; }
    /// Longest edge (Lambda).
    double max_edge() const;
    double min_edge() const;
    /// The face spanned by the listed vertex positions.
    GeomSimplex face(const std::vector<std::size_t>& indices) const;

private:
    std::vector<GeomPoint> vertices_;
};

/// Common point of the medial segments: the normalized vertex sum
/// (Euclidean: the average).
GeomPoint centroid(const GeomSimplex& s);
/// Largest residual of the centroid against the medial segments
/// [c(A), c(B)] over all splittings of the vertex set into A and B.
double medial_residual(const GeomSimplex& s);

/// d(a, c(S)) / d(a, c(B)) for the vertex a at position `vertex` and B its opposite face.
double median_ratio(const GeomSimplex& s, std::size_t vertex);
/// sinh(d(a,c)) / sinh(d(c, c(B))) (hyperbolic), sin(...)/sin(...) (spherical)
/// or d(a,c)/d(c,c(B)) (Euclidean), with c the centroid of S.
double centroid_ratio(const GeomSimplex& s, std::size_t vertex);

/// n/(n+1), 2n/(2n+1) or n cosh^{n-1}(L) / (n cosh^{n-1}(L) + 1).
/// InputError unless L > 0 and, when spherical, L <= pi/2.
double kappa(GeometryTag tag, int n, double Lambda);

/// Longest edge; equals the diameter when (spherical) edges are at most pi/2,
/// which is checked unless `check_guard` is false.
double diameter(const GeomSimplex& s, bool check_guard = true);

/// Checks d(A, D) <= max(d(A,B), d(A,C)) + tolerance for `samples` points D
/// spread evenly on [B, C]. With `check_guard`, spherical edges over pi/2 are
/// rejected with InputError. `worst` receives the largest violation (may be negative).
bool adjacent_edge_bound_check(const GeomSimplex& triangle, int samples, bool check_guard = true,
                               double* worst = nullptr);

/// Chart in which geodesics are straight lines: Klein x -> x/x_{n+1} for
/// hyperbolic space, gnomonic projection onto the tangent plane at `center`
/// for the sphere, the identity for Euclidean space.
class LinearChart {
public:
    LinearChart() = default;
    /// The spherical center is the normalized sum of the points, which must
    /// all lie in its open hemisphere (InputError otherwise).
    static LinearChart for_points(GeometryTag tag, int n, const std::vector<GeomPoint>& points);

    GeometryTag tag() const { return tag_; }
    int dim() const { return n_; }
    Vec to_chart(const GeomPoint& p) const;
    GeomPoint from_chart(const Vec& y) const;
    const Vec& center() const { return center_; }

private:
    GeometryTag tag_ = GeometryTag::euclidean;
    int n_ = 0;
    Vec center_;
    Mat basis_;
};

struct ChartedSimplex {
    LinearChart chart;
    /// Column i is the chart image of vertex i.
    Mat vertices;
};
ChartedSimplex to_linear_chart(const GeomSimplex& s);

/// Abstract complex with a point per vertex.
struct GeomComplex {
    GeometryTag tag = GeometryTag::euclidean;
    Complex complex;
    std::map<VertexId, GeomPoint> coords;

    int manifold_dim() const;
    GeomSimplex simplex(const Simplex& s) const;
    double max_edge() const;
    double min_edge() const;
    /// Every vertex has a point with the right tag and every simplex is nondegenerate.
    void validate() const;
};

struct GeomSubdivision {
    GeomComplex geom;
    SubdividedComplex sub;
};

/// beta^m with each new vertex at the centroid of its carrier simplex in the
/// previous level.
GeomSubdivision geometric_barycentric(const GeomComplex& k, int m, const SubdivisionLimits& limits = {});

/// Longest edge of beta^level(S) for level = 1..m, by recursion over flags
/// (no complex is built).
std::vector<double> subdivision_edge_maxima(const GeomSimplex& s, int m);

/// Vertices drawn uniformly from the geodesic ball of radius Lambda/2 about
/// the base point, rejecting simplexes whose normalized Gram determinant in
/// the chart at the base point is below 1e-6.
GeomSimplex random_simplex(GeometryTag tag, int n, double Lambda, std::mt19937_64& rng);
/// A point of S with Dirichlet(1,...,1) barycentric weights.
GeomPoint random_point_in(const GeomSimplex& s, std::mt19937_64& rng);

/// Hyperbolic isosceles triangle with base a and median from the apex m = y a:
/// returns x / b, x the distance from the apex to the centroid and b a leg.
double isosceles_centroid_ratio(double a, double y);

/// The spherical isosceles triangle with apex at the north pole, legs of
/// length `leg` and base `base`.
GeomSimplex spherical_isosceles(double leg, double base);

Json to_json(const GeomComplex& k);
GeomComplex geom_complex_from_json(const Json& j);
Json to_json(const GeomPoint& p);

}  // namespace geotri
