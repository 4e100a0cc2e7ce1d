#include "geotri/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "geotri/errors.hpp"

namespace geotri {

namespace {

constexpr double kPi = std::numbers::pi;

double raw_distance(GeometryTag tag, const Vec& x, const Vec& y) {
    switch (tag) {
        case GeometryTag::euclidean: return (x - y).norm();
        case GeometryTag::spherical: return 2.0 * std::asin(std::min(1.0, (x - y).norm() / 2.0));
        case GeometryTag::hyperbolic: {
            const Vec d = x - y;
            return 2.0 * std::asinh(std::sqrt(std::max(0.0, minkowski(d, d))) / 2.0);
        }
    }
    return 0.0;
}

Vec raw_project(GeometryTag tag, const Vec& x, double count) {
    switch (tag) {
        case GeometryTag::euclidean: return x / count;
        case GeometryTag::spherical: return x / x.norm();
        case GeometryTag::hyperbolic: return x / std::sqrt(-minkowski(x, x));
    }
    return x;
}

void require_same(const GeomPoint& p, const GeomPoint& q) {
    if (p.tag() != q.tag()) throw InputError("points from different geometries");
    if (p.coords().size() != q.coords().size()) throw InputError("points of different dimensions");
}

// Chart coordinates at the model's base point (used for degeneracy tests).
Vec base_chart(GeometryTag tag, const Vec& x) {
    if (tag == GeometryTag::euclidean) return x;
    const auto n = x.size() - 1;
    return x.head(n) / x(n);
}

void flag_recursion(GeometryTag tag, const std::vector<Vec>& v, int level, int m, std::vector<double>& out) {
    const std::size_t k = v.size();
    const unsigned full = (1u << k) - 1;
    std::vector<Vec> c(full + 1);
    for (unsigned mask = 1; mask <= full; ++mask) {
        Vec sum = Vec::Zero(v.front().size());
        int count = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                sum += v[i];
                ++count;
            }
        c[mask] = raw_project(tag, sum, count);
    }
    double longest = 0.0;
    for (unsigned g = 1; g <= full; ++g)
        for (unsigned f = (g - 1) & g; f != 0; f = (f - 1) & g) longest = std::max(longest, raw_distance(tag, c[f], c[g]));
    out[static_cast<std::size_t>(level)] = std::max(out[static_cast<std::size_t>(level)], longest);
    if (level + 1 >= m) return;
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Vec> child(k);
    do {
        unsigned mask = 0;
        for (std::size_t i = 0; i < k; ++i) {
            mask |= 1u << perm[i];
            child[i] = c[mask];
        }
        flag_recursion(tag, child, level + 1, m, out);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

double minkowski(const Vec& u, const Vec& v) {
    const auto n = u.size() - 1;
    return u.head(n).dot(v.head(n)) - u(n) * v(n);
}

GeomPoint::GeomPoint(GeometryTag tag, Vec x) : tag_(tag), x_(std::move(x)) {
    if (x_.size() == 0 || !x_.allFinite()) throw InputError("point coordinates must be finite and nonempty");
    switch (tag_) {
        case GeometryTag::euclidean: break;
        case GeometryTag::spherical: {
            if (x_.size() < 2) throw InputError("spherical points need at least 2 coordinates");
            const double drift = std::abs(x_.norm() - 1.0);
            if (drift > kGeomTolerance) throw InputError("spherical point is not a unit vector");
            x_ /= x_.norm();
            break;
        }
        case GeometryTag::hyperbolic: {
            if (x_.size() < 2) throw InputError("hyperbolic points need at least 2 coordinates");
            const double q = minkowski(x_, x_);
            if (std::abs(q + 1.0) > kGeomTolerance * std::max(1.0, x_.squaredNorm()) || x_(x_.size() - 1) <= 0)
                throw InputError("hyperbolic point is not on the upper hyperboloid sheet");
            x_ /= std::sqrt(-q);
            break;
        }
    }
}

GeomPoint GeomPoint::project(GeometryTag tag, const Vec& x) {
    switch (tag) {
        case GeometryTag::euclidean: return GeomPoint(tag, x);
        case GeometryTag::spherical: {
            const double norm = x.norm();
            if (norm < 1e-300) throw InputError("cannot project the zero vector to the sphere");
            return GeomPoint(tag, x / norm);
        }
        case GeometryTag::hyperbolic: {
            const double q = minkowski(x, x);
            if (q >= 0 || x(x.size() - 1) <= 0) throw InputError("vector is not future timelike");
            return GeomPoint(tag, x / std::sqrt(-q));
        }
    }
    return {};
}

GeomPoint GeomPoint::base(GeometryTag tag, int n) {
    if (tag == GeometryTag::euclidean) return GeomPoint(tag, Vec::Zero(n));
    Vec x = Vec::Zero(n + 1);
    x(n) = 1.0;
    return GeomPoint(tag, x);
}

GeomPoint GeomPoint::exp_base(GeometryTag tag, const Vec& v) {
    const auto n = v.size();
    if (tag == GeometryTag::euclidean) return GeomPoint(tag, v);
    const double r = v.norm();
    Vec x(n + 1);
    if (tag == GeometryTag::spherical) {
        x.head(n) = r > 0 ? Vec(v * (std::sin(r) / r)) : Vec(Vec::Zero(n));
        x(n) = std::cos(r);
    } else {
        x.head(n) = r > 0 ? Vec(v * (std::sinh(r) / r)) : Vec(Vec::Zero(n));
        x(n) = std::cosh(r);
    }
    return project(tag, x);
}

int GeomPoint::dim() const {
    return tag_ == GeometryTag::euclidean ? static_cast<int>(x_.size()) : static_cast<int>(x_.size()) - 1;
}

double distance(const GeomPoint& p, const GeomPoint& q) {
    require_same(p, q);
    return raw_distance(p.tag(), p.coords(), q.coords());
}

GeomPoint geodesic_point(const GeomPoint& p, const GeomPoint& q, double t) {
    require_same(p, q);
    const double d = distance(p, q);
    const GeometryTag tag = p.tag();
    if (tag == GeometryTag::euclidean || d < 1e-12) {
        Vec x = (1.0 - t) * p.coords() + t * q.coords();
        return tag == GeometryTag::euclidean ? GeomPoint(tag, x) : GeomPoint::project(tag, x);
    }
    if (tag == GeometryTag::spherical)
        return GeomPoint::project(tag, (std::sin((1 - t) * d) * p.coords() + std::sin(t * d) * q.coords()) / std::sin(d));
    return GeomPoint::project(tag, (std::sinh((1 - t) * d) * p.coords() + std::sinh(t * d) * q.coords()) / std::sinh(d));
}

double geodesic_residual(const GeomPoint& p, const GeomPoint& q, const GeomPoint& x) {
    require_same(p, q);
    require_same(p, x);
    const Vec& a = p.coords();
    const Vec& b = q.coords();
    const Vec& c = x.coords();
    if (p.tag() == GeometryTag::euclidean) {
        const Vec ab = b - a;
        const double len2 = ab.squaredNorm();
        const double t = len2 > 0 ? std::clamp((c - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        return (c - (a + t * ab)).norm();
    }
    Mat m(a.size(), 2);
    m.col(0) = a;
    m.col(1) = b;
    const Eigen::Vector2d coef = m.colPivHouseholderQr().solve(c);
    double residual = (m * coef - c).norm();
    // the segment is the positive cone; negative coefficients leave it
    residual += std::max(0.0, -coef(0)) + std::max(0.0, -coef(1));
    return residual;
}

GeomPoint weighted_point(const std::vector<GeomPoint>& points, const std::vector<double>& weights) {
    if (points.empty() || points.size() != weights.size()) throw InputError("weighted_point: size mismatch");
    Vec sum = Vec::Zero(points.front().coords().size());
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_same(points.front(), points[i]);
        sum += weights[i] * points[i].coords();
        total += weights[i];
    }
    if (points.front().tag() == GeometryTag::euclidean) return GeomPoint(GeometryTag::euclidean, sum / total);
    return GeomPoint::project(points.front().tag(), sum);
}

GeomSimplex::GeomSimplex(std::vector<GeomPoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InputError("a simplex needs at least one vertex");
    for (const auto& v : vertices_) require_same(vertices_.front(), v);
    const GeometryTag tag = vertices_.front().tag();
    const auto k = vertices_.size();
    const auto ambient = vertices_.front().coords().size();
    Mat m;
    if (tag == GeometryTag::euclidean) {
        m.resize(ambient, static_cast<Eigen::Index>(k - 1));
        for (std::size_t i = 1; i < k; ++i) m.col(static_cast<Eigen::Index>(i - 1)) = vertices_[i].coords() - vertices_[0].coords();
    } else {
        m.resize(ambient, static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < k; ++i) m.col(static_cast<Eigen::Index>(i)) = vertices_[i].coords();
    }
    if (m.cols() > 0) {
        if (m.cols() > m.rows()) throw InputError("too many vertices for the ambient dimension");
        Eigen::JacobiSVD<Mat> svd(m);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-13 * std::max(1.0, sv(0))) throw InputError("degenerate simplex");
    }
    if (tag == GeometryTag::spherical && k > 1) {
        Vec c = Vec::Zero(static_cast<Eigen::Index>(ambient));
        for (const auto& v : vertices_) c += v.coords();
        if (c.norm() < 1e-12) throw InputError("spherical simplex is not in an open hemisphere");
        c /= c.norm();
        for (const auto& v : vertices_)
            if (v.coords().dot(c) <= kGeomTolerance) throw InputError("spherical simplex is not in an open hemisphere");
    }
}

double GeomSimplex::max_edge() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) best = std::max(best, distance(vertices_[i], vertices_[j]));
    return best;
}

double GeomSimplex::min_edge() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) best = std::min(best, distance(vertices_[i], vertices_[j]));
    return best;
}

GeomSimplex GeomSimplex::face(const std::vector<std::size_t>& indices) const {
    std::vector<GeomPoint> pts;
    for (auto i : indices) pts.push_back(vertices_.at(i));
    return GeomSimplex(std::move(pts));
}

GeomPoint centroid(const GeomSimplex& s) {
    return weighted_point(s.vertices(), std::vector<double>(s.vertices().size(), 1.0));
}

double medial_residual(const GeomSimplex& s) {
    const auto k = s.vertices().size();
    if (k < 2) return 0.0;
    const GeomPoint c = centroid(s);
    double worst = 0.0;
    const unsigned full = (1u << k) - 1;
    for (unsigned mask = 1; mask < full; ++mask) {
        std::vector<std::size_t> a, b;
        for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1u ? a : b).push_back(i);
        worst = std::max(worst, geodesic_residual(centroid(s.face(a)), centroid(s.face(b)), c));
    }
    return worst;
}

double median_ratio(const GeomSimplex& s, std::size_t vertex) {
    if (s.dim() < 1 || vertex >= s.vertices().size()) throw InputError("median_ratio: bad vertex");
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < s.vertices().size(); ++i)
        if (i != vertex) rest.push_back(i);
    const GeomPoint& a = s.vertex(vertex);
    return distance(a, centroid(s)) / distance(a, centroid(s.face(rest)));
}

double centroid_ratio(const GeomSimplex& s, std::size_t vertex) {
    if (s.dim() < 1 || vertex >= s.vertices().size()) throw InputError("centroid_ratio: bad vertex");
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < s.vertices().size(); ++i)
        if (i != vertex) rest.push_back(i);
    const GeomPoint c = centroid(s);
    const double near = distance(s.vertex(vertex), c);
    const double far = distance(c, centroid(s.face(rest)));
    switch (s.tag()) {
        case GeometryTag::euclidean: return near / far;
        case GeometryTag::spherical: return std::sin(near) / std::sin(far);
        case GeometryTag::hyperbolic: return std::sinh(near) / std::sinh(far);
    }
    return 0.0;
}

double kappa(GeometryTag tag, int n, double Lambda) {
    if (n < 1) throw InputError("kappa: n must be positive");
    if (!(Lambda > 0)) throw InputError("kappa: Lambda must be positive");
    switch (tag) {
        case GeometryTag::euclidean: return static_cast<double>(n) / (n + 1);
        case GeometryTag::spherical:
            if (Lambda > kPi / 2 + kNormTolerance) throw InputError("kappa: spherical Lambda must be at most pi/2");
            return 2.0 * n / (2.0 * n + 1);
        case GeometryTag::hyperbolic: {
            const double g = n * std::pow(std::cosh(Lambda), n - 1);
            return g / (g + 1);
        }
    }
    return 0.0;
}

double diameter(const GeomSimplex& s, bool check_guard) {
    const double longest = s.max_edge();
    if (check_guard && s.tag() == GeometryTag::spherical && longest > kPi / 2 + kNormTolerance)
        throw InputError("diameter: spherical edges must be at most pi/2");
    return longest;
}

bool adjacent_edge_bound_check(const GeomSimplex& triangle, int samples, bool check_guard, double* worst) {
    if (triangle.dim() != 2) throw InputError("adjacent_edge_bound_check: needs a triangle");
    if (samples < 1) throw InputError("adjacent_edge_bound_check: needs at least one sample");
    if (check_guard) diameter(triangle, true);
    const GeomPoint& a = triangle.vertex(0);
    const GeomPoint& b = triangle.vertex(1);
    const GeomPoint& c = triangle.vertex(2);
    const double bound = std::max(distance(a, b), distance(a, c));
    double excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.5 : static_cast<double>(i) / (samples - 1);
        excess = std::max(excess, distance(a, geodesic_point(b, c, t)) - bound);
    }
    if (worst) *worst = excess;
    return excess <= kGeomTolerance;
}

LinearChart LinearChart::for_points(GeometryTag tag, int n, const std::vector<GeomPoint>& points) {
    LinearChart chart;
    chart.tag_ = tag;
    chart.n_ = n;
    if (tag != GeometryTag::spherical) return chart;
    if (points.empty()) throw InputError("chart: no points");
    Vec c = Vec::Zero(n + 1);
    for (const auto& p : points) c += p.coords();
    if (c.norm() < 1e-12) throw InputError("chart: points are not in an open hemisphere");
    c /= c.norm();
    for (const auto& p : points)
        if (p.coords().dot(c) <= kGeomTolerance) throw InputError("chart: points are not in an open hemisphere");
    chart.center_ = c;
    Mat q = Eigen::HouseholderQR<Mat>(Mat(c)).householderQ() * Mat::Identity(n + 1, n + 1);
    chart.basis_ = q.rightCols(n);
    return chart;
}

Vec LinearChart::to_chart(const GeomPoint& p) const {
    if (p.tag() != tag_) throw InputError("chart: point from a different geometry");
    switch (tag_) {
        case GeometryTag::euclidean: return p.coords();
        case GeometryTag::hyperbolic: return base_chart(tag_, p.coords());
        case GeometryTag::spherical: {
            const double h = p.coords().dot(center_);
            if (h <= 0) throw InputError("chart: point outside the chart's hemisphere");
            return basis_.transpose() * (p.coords() / h);
        }
    }
    return {};
}

GeomPoint LinearChart::from_chart(const Vec& y) const {
    switch (tag_) {
        case GeometryTag::euclidean: return GeomPoint(tag_, y);
        case GeometryTag::hyperbolic: {
            if (y.squaredNorm() >= 1.0) throw InputError("chart: point outside the Klein ball");
            Vec x(y.size() + 1);
            x.head(y.size()) = y;
            x(y.size()) = 1.0;
            return GeomPoint::project(tag_, x);
        }
        case GeometryTag::spherical: return GeomPoint::project(tag_, center_ + basis_ * y);
    }
    return {};
}

ChartedSimplex to_linear_chart(const GeomSimplex& s) {
    ChartedSimplex out;
    out.chart = LinearChart::for_points(s.tag(), s.vertex(0).dim(), s.vertices());
    out.vertices.resize(s.vertex(0).dim(), static_cast<Eigen::Index>(s.vertices().size()));
    for (std::size_t i = 0; i < s.vertices().size(); ++i)
        out.vertices.col(static_cast<Eigen::Index>(i)) = out.chart.to_chart(s.vertex(i));
    return out;
}

int GeomComplex::manifold_dim() const {
    if (coords.empty()) throw InputError("geometric complex without coordinates");
    return coords.begin()->second.dim();
}

GeomSimplex GeomComplex::simplex(const Simplex& s) const {
    std::vector<GeomPoint> pts;
    for (VertexId v : s) {
        auto it = coords.find(v);
        if (it == coords.end()) throw InputError("no coordinates for vertex " + std::to_string(v));
        pts.push_back(it->second);
    }
    return GeomSimplex(std::move(pts));
}

double GeomComplex::max_edge() const {
    double best = 0.0;
    for (const auto& e : complex.simplexes_of_dim(1)) best = std::max(best, distance(coords.at(e[0]), coords.at(e[1])));
    return best;
}

double GeomComplex::min_edge() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : complex.simplexes_of_dim(1)) best = std::min(best, distance(coords.at(e[0]), coords.at(e[1])));
    return best;
}

void GeomComplex::validate() const {
    for (VertexId v : complex.vertices()) {
        auto it = coords.find(v);
        if (it == coords.end()) throw InputError("no coordinates for vertex " + std::to_string(v));
        if (it->second.tag() != tag) throw InputError("vertex " + std::to_string(v) + " has the wrong geometry");
        if (it->second.dim() != manifold_dim()) throw InputError("vertex " + std::to_string(v) + " has the wrong dimension");
    }
    for (const auto& m : complex.maximal_simplexes()) simplex(m);
}

GeomSubdivision geometric_barycentric(const GeomComplex& k, int m, const SubdivisionLimits& limits) {
    if (m < 0) throw InputError("geometric_barycentric: negative depth");
    GeomSubdivision out{k, SubdividedComplex::identity(k.complex)};
    const int n = k.complex.dimension();
    double factorial = 1;
    for (int i = 2; i <= n + 1; ++i) factorial *= i;
    for (int level = 0; level < m; ++level) {
        if (static_cast<double>(out.geom.complex.count(n)) * factorial > static_cast<double>(limits.max_top_simplexes))
            throw ResourceCapError("geometric_barycentric: level " + std::to_string(level + 1) + " exceeds the simplex cap");
        auto b = barycentric(out.geom.complex);
        GeomComplex next{k.tag, b.complex, {}};
        for (VertexId v : b.complex.vertices()) {
            const Simplex& c = b.carrier.of_vertex(v);
            next.coords.emplace(v, c.size() == 1 ? out.geom.coords.at(c.front()) : centroid(out.geom.simplex(c)));
        }
        out.sub = compose(b, out.sub);
        out.geom = std::move(next);
    }
    return out;
}

std::vector<double> subdivision_edge_maxima(const GeomSimplex& s, int m) {
    if (m < 0) throw InputError("subdivision_edge_maxima: negative depth");
    if (s.vertices().size() > 8) throw InputError("subdivision_edge_maxima: dimension too large");
    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    if (m == 0) return out;
    std::vector<Vec> v;
    for (const auto& p : s.vertices()) v.push_back(p.coords());
    flag_recursion(s.tag(), v, 0, m, out);
    return out;
}

GeomSimplex random_simplex(GeometryTag tag, int n, double Lambda, std::mt19937_64& rng) {
    if (n < 1) throw InputError("random_simplex: n must be positive");
    if (!(Lambda > 0)) throw InputError("random_simplex: Lambda must be positive");
    if (tag == GeometryTag::spherical && Lambda > kPi / 2 + kNormTolerance)
        throw InputError("random_simplex: spherical Lambda must be at most pi/2");
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<GeomPoint> pts;
        for (int i = 0; i <= n; ++i) {
            Vec dir(n);
            for (int j = 0; j < n; ++j) dir(j) = normal(rng);
            const double radius = (Lambda / 2) * std::pow(uniform(rng), 1.0 / n);
            pts.push_back(GeomPoint::exp_base(tag, dir.normalized() * radius));
        }
        Mat e(n, n);
        const Vec v0 = base_chart(tag, pts[0].coords());
        double scale = 1.0;
        for (int i = 1; i <= n; ++i) {
            e.col(i - 1) = base_chart(tag, pts[static_cast<std::size_t>(i)].coords()) - v0;
            scale *= e.col(i - 1).squaredNorm();
        }
        if (scale <= 0) continue;
        if ((e.transpose() * e).determinant() / scale < 1e-6) continue;
        return GeomSimplex(std::move(pts));
    }
    throw InvariantError("random_simplex: rejection sampling did not terminate");
}

GeomPoint random_point_in(const GeomSimplex& s, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(s.vertices().size());
    for (auto& x : w) x = expo(rng);
    return weighted_point(s.vertices(), w);
}

double isosceles_centroid_ratio(double a, double y) {
    if (!(a > 0) || !(y > 0)) throw InputError("isosceles_centroid_ratio: a and y must be positive");
    const double m = y * a;
    const GeometryTag h = GeometryTag::hyperbolic;
    Vec A(3), B(3), C(3);
    A << 0.0, std::sinh(m), std::cosh(m);
    B << std::sinh(a / 2), 0.0, std::cosh(a / 2);
    C << -std::sinh(a / 2), 0.0, std::cosh(a / 2);
    const GeomSimplex tri({GeomPoint::project(h, A), GeomPoint::project(h, B), GeomPoint::project(h, C)});
    return distance(tri.vertex(0), centroid(tri)) / distance(tri.vertex(0), tri.vertex(1));
}

GeomSimplex spherical_isosceles(double leg, double base) {
    const double s2 = std::sin(leg) * std::sin(leg);
    const double cos_phi = (std::cos(base) - std::cos(leg) * std::cos(leg)) / s2;
    if (std::abs(cos_phi) > 1.0) throw InputError("spherical_isosceles: no such triangle");
    const double phi = std::acos(cos_phi);
    const GeometryTag s = GeometryTag::spherical;
    Vec A(3), B(3), C(3);
    A << 0.0, 0.0, 1.0;
    B << std::sin(leg), 0.0, std::cos(leg);
    C << std::sin(leg) * std::cos(phi), std::sin(leg) * std::sin(phi), std::cos(leg);
    return GeomSimplex({GeomPoint::project(s, A), GeomPoint::project(s, B), GeomPoint::project(s, C)});
}

Json to_json(const GeomPoint& p) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < p.coords().size(); ++i) j.push_back(p.coords()(i));
    return j;
}

Json to_json(const GeomComplex& k) {
    Json j = to_json(k.complex);
    j["geometry"] = to_string(k.tag);
    Json coords = Json::object();
    for (const auto& [v, p] : k.coords)
        if (k.complex.has_vertex(v)) coords[std::to_string(v)] = to_json(p);
    j["coordinates"] = std::move(coords);
    return j;
}

GeomComplex geom_complex_from_json(const Json& j) {
    GeomComplex k;
    k.complex = complex_from_json(j);
    if (!j.contains("geometry") || !j.at("geometry").is_string()) throw InputError("missing \"geometry\" tag");
    k.tag = parse_geometry_tag(j.at("geometry").get<std::string>());
    if (!j.contains("coordinates") || !j.at("coordinates").is_object()) throw InputError("missing \"coordinates\" object");
    for (const auto& [key, value] : j.at("coordinates").items()) {
        VertexId v;
        try {
            std::size_t used = 0;
            const unsigned long parsed = std::stoul(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
            v = static_cast<VertexId>(parsed);
        } catch (const std::exception&) {
            throw InputError("coordinate key \"" + key + "\" is not a vertex label");
        }
        if (!value.is_array()) throw InputError("coordinates of vertex " + key + " must be a list");
        Vec x(static_cast<Eigen::Index>(value.size()));
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (!value[i].is_number()) throw InputError("coordinates of vertex " + key + " must be numbers");
            x(static_cast<Eigen::Index>(i)) = value[i].get<double>();
        }
        k.coords.emplace(v, GeomPoint(k.tag, x));
    }
    k.validate();
    return k;
}

}  // namespace geotri
