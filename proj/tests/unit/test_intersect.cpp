#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "geotri/errors.hpp"
#include "geotri/fixtures.hpp"
#include "geotri/intersect.hpp"
#include "oracles.hpp"

using namespace geotri;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

GeomComplex euclidean_complex(std::initializer_list<Simplex> tops, std::map<VertexId, Vec> coords) {
    GeomComplex k;
    k.complex = close_under_faces(tops);
    for (auto& [v, x] : coords) k.coords.emplace(v, GeomPoint(GeometryTag::euclidean, x));
    return k;
}

GeomComplex interval_split(double t) {
    return euclidean_complex({Simplex{0, 2}, Simplex{2, 1}}, {{0, vec({0})}, {1, vec({1})}, {2, vec({t})}});
}

GeomComplex square(bool main_diagonal) {
    std::map<VertexId, Vec> c{{0, vec({0, 0})}, {1, vec({1, 0})}, {2, vec({1, 1})}, {3, vec({0, 1})}};
    if (main_diagonal) return euclidean_complex({Simplex{0, 1, 2}, Simplex{0, 2, 3}}, c);
    return euclidean_complex({Simplex{0, 1, 3}, Simplex{1, 2, 3}}, c);
}

// Barycentric coordinates of x with respect to the simplex with the given vertices.
Vec barycentric_coords(const std::vector<Vec>& verts, const Vec& x) {
    const auto n = x.size();
    Mat m(n + 1, n + 1);
    Vec rhs(n + 1);
    for (std::size_t j = 0; j < verts.size(); ++j) {
        m.col(static_cast<Eigen::Index>(j)).head(n) = verts[j];
        m(n, static_cast<Eigen::Index>(j)) = 1;
    }
    rhs.head(n) = x;
    rhs(n) = 1;
    return m.lu().solve(rhs);
}

void check_provenance(const PolytopalComplex& p, const GeomComplex& k1, const GeomComplex& k2) {
    auto chart_vertices = [&](const GeomComplex& k, const Simplex& t) {
        std::vector<Vec> out;
        for (VertexId v : t) out.push_back(p.chart.to_chart(k.coords.at(v)));
        return out;
    };
    for (const auto& cell : p.cells) {
        const auto v1 = chart_vertices(k1, cell.k1);
        const auto v2 = chart_vertices(k2, cell.k2);
        for (const auto& [idx, x] : cell.local) {
            CHECK(barycentric_coords(v1, x).minCoeff() >= -1e-9);
            CHECK(barycentric_coords(v2, x).minCoeff() >= -1e-9);
        }
    }
}

}  // namespace

TEST_CASE("identical complexes intersect in their own simplexes") {
    const auto k = square(true);
    const auto p = intersect_linear(k, k);
    CHECK(p.cells.size() == 2);
    for (const auto& c : p.cells) CHECK(c.k1 == c.k2);
    CHECK(p.total_measure() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("intervals split at different points") {
    const auto p = intersect_linear(interval_split(0.5), interval_split(0.3));
    REQUIRE(p.cells.size() == 3);
    std::vector<double> lengths;
    for (const auto& c : p.cells) lengths.push_back(c.measure);
    std::sort(lengths.begin(), lengths.end());
    CHECK(lengths[0] == doctest::Approx(0.2));
    CHECK(lengths[1] == doctest::Approx(0.3));
    CHECK(lengths[2] == doctest::Approx(0.5));
    const auto common = barycentric_polytopal(p);
    CHECK(common.complex.count(1) == 6);
    const auto counts = commonsub_count_check(common);
    CHECK(counts.all_pass());
    // at most p_1 + q_1 cells, each cut in two by its barycenter
    CHECK(counts.s[1] <= 2 * (counts.p[1] + counts.q[1]));
    CHECK(counts.bound[1] == 1 * 4 * counts.p[1] * counts.q[1]);
}

TEST_CASE("square cut along both diagonals") {
    const auto k1 = square(true), k2 = square(false);
    const auto p = intersect_linear(k1, k2);
    REQUIRE(p.cells.size() == 4);
    // every cell is a triangle with the center as a vertex
    for (const auto& c : p.cells) {
        CHECK(c.local.size() == 3);
        bool has_center = false;
        for (const auto& [i, x] : c.local) has_center |= (x - vec({0.5, 0.5})).norm() < 1e-12;
        CHECK(has_center);
    }
    // areas against polygon clipping
    for (const auto& c : p.cells) {
        testsupport::Polygon a, b;
        for (VertexId v : c.k1) a.push_back({k1.coords.at(v).coords()(0), k1.coords.at(v).coords()(1)});
        for (VertexId v : c.k2) b.push_back({k2.coords.at(v).coords()(0), k2.coords.at(v).coords()(1)});
        CHECK(c.measure == doctest::Approx(testsupport::polygon_area(testsupport::clip_polygon(a, b))).epsilon(1e-12));
    }
    check_provenance(p, k1, k2);
    const auto common = barycentric_polytopal(p);
    CHECK(common.complex.count(2) == 24);
    CHECK(commonsub_count_check(common).all_pass());
}

TEST_CASE("barycentric subdivision of single cells") {
    const auto tri = euclidean_complex({Simplex{0, 1, 2}}, {{0, vec({0, 0})}, {1, vec({1, 0})}, {2, vec({0, 1})}});
    const auto one = barycentric_polytopal(intersect_linear(tri, tri));
    CHECK(one.complex.count(2) == 6);
    const auto counts = commonsub_count_check(one);
    CHECK(counts.s[2] == 6);
    CHECK(counts.bound[2] == 108);
    CHECK(counts.all_pass());

    // x, y >= 0 from the first triangle and x, y <= 1 from the second: a square cell
    const auto big = euclidean_complex({Simplex{0, 1, 2}}, {{0, vec({0, 0})}, {1, vec({2, 0})}, {2, vec({0, 2})}});
    const auto flipped = euclidean_complex({Simplex{0, 1, 2}}, {{0, vec({1, 1})}, {1, vec({1, -5})}, {2, vec({-5, 1})}});
    const auto p = intersect_linear(big, flipped);
    REQUIRE(p.cells.size() == 1);
    CHECK(p.cells.front().local.size() == 4);
    CHECK(p.cells.front().measure == doctest::Approx(1.0));
    const auto sq = barycentric_polytopal(p);
    CHECK(sq.complex.count(2) == 8);

    const auto segs = barycentric_polytopal(intersect_linear(interval_split(0.5), interval_split(0.3)));
    CHECK(segs.complex.count(1) == 6);
}

TEST_CASE("common subdivision carriers") {
    const auto k1 = square(true), k2 = square(false);
    const auto common = barycentric_polytopal(intersect_linear(k1, k2));
    common.over1.validate();
    common.over2.validate();
    // each simplex of K' lies in its carrier simplexes
    const auto geom = to_geom_complex(common);
    for (const auto& t : common.complex.top_simplexes()) {
        std::vector<Vec> pts;
        for (VertexId v : t) pts.push_back(geom.coords.at(v).coords());
        for (const auto& [k, over] : {std::pair{&k1, &common.over1}, std::pair{&k2, &common.over2}}) {
            const Simplex c = over->carrier(t);
            std::vector<Vec> cv;
            for (VertexId v : c) cv.push_back(k->coords.at(v).coords());
            if (cv.size() != 3) continue;
            for (const auto& x : pts) CHECK(barycentric_coords(cv, x).minCoeff() >= -1e-9);
        }
    }
    const auto shared = common.common_vertices();
    CHECK(shared.size() == 4);
    for (const auto& [v, pair] : shared) CHECK(pair.first == pair.second);
}

TEST_CASE("torus intersections") {
    const auto g = fixtures::torus_grid();
    const auto same = torus_intersect(g, g);
    CHECK(same.cells.size() == 18);
    CHECK(same.total_measure() == doctest::Approx(1.0).epsilon(1e-12));

    const auto shifted = fixtures::torus_grid(0.5);
    const auto p = torus_intersect(g, shifted);
    const auto oracle = testsupport::torus_overlaps(g, shifted);
    CHECK(p.cells.size() == oracle.size());
    for (const auto& o : oracle) CHECK(o.translates == 1);
    double total = 0;
    for (const auto& o : oracle) total += o.area;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(p.total_measure() - 1.0) < 1e-6);
    for (const auto& o : oracle) {
        double mine = 0;
        for (const auto& c : p.cells)
            if (c.k1 == o.t1 && c.k2 == o.t2) mine += c.measure;
        CHECK(mine == doctest::Approx(o.area).epsilon(1e-9));
    }

    const auto common = barycentric_polytopal(p);
    CHECK(is_closed_pseudomanifold(common.complex));
    CHECK(euler_characteristic(common.complex) == 0);
    CHECK(commonsub_count_check(common).all_pass());
    const auto back = to_torus_complex(common);
    back.validate();
    CHECK(back.measure() == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(torus_intersect(fixtures::coarse_torus(), g), InputError);
}

TEST_CASE("circles") {
    const auto p = torus_intersect(fixtures::circle(3), fixtures::circle(5, 0.05));
    CHECK(p.cells.size() == 8);
    CHECK(p.total_measure() == doctest::Approx(1.0));
    const auto common = barycentric_polytopal(p);
    CHECK(is_closed_pseudomanifold(common.complex));
    CHECK(common.complex.count(1) == 16);
}

TEST_CASE("torus JSON round trip") {
    const auto k = fixtures::coarse_torus();
    const auto back = torus_complex_from_json(to_json(k));
    CHECK(back.complex == k.complex);
    CHECK(back.lifts.size() == k.lifts.size());
    CHECK(back.max_diameter() == doctest::Approx(std::sqrt(2.0)));
    auto bad = to_json(k);
    bad["coordinates"]["0"] = Json::array({0.0});
    CHECK_THROWS_AS(torus_complex_from_json(bad), InputError);
}

TEST_CASE("property: random chart pairs conserve measure and satisfy the count bound") {
    testsupport::Rng rng(77);
    for (GeometryTag tag : {GeometryTag::euclidean, GeometryTag::hyperbolic, GeometryTag::spherical}) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto pair = testsupport::random_chart_pair(tag, rng);
            const auto p = intersect_linear(pair.k1, pair.k2);
            CHECK(std::abs(p.total_measure() - p.region_measure1) <= 1e-6 * p.region_measure1);
            CHECK(std::abs(p.region_measure1 - p.region_measure2) <= 1e-6 * p.region_measure1);
            check_provenance(p, pair.k1, pair.k2);
            const auto common = barycentric_polytopal(p);
            CHECK(commonsub_count_check(common).all_pass());
            // downward closed and pure
            for (const auto& s : common.complex.raw())
                for (const auto& f : s.facets()) CHECK(common.complex.contains(f));
            CHECK(is_pure(common.complex));
        }
    }
}
