// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, sample
// sizes, seeds and time limits are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "geotri/bounds.hpp"
#include "geotri/fixtures.hpp"
#include "geotri/geometry.hpp"
#include "geotri/intersect.hpp"
#include "geotri/pachner.hpp"
#include "geotri/reduction.hpp"
#include "geotri/shelling.hpp"
#include "geotri/subdivision.hpp"
#include "oracles.hpp"

using namespace geotri;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr double kEdgeTol = 1e-9;
constexpr double kEuclidMedianTol = 1e-12;
constexpr double kRatioTol = 1e-9;
constexpr double kDistanceTol = 1e-9;
constexpr double kMeasureRelTol = 1e-6;
const char* const kVolhypTol = "1e-40";

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
    }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) return {true, summary};
        return {false, std::to_string(failures_) + " failures: " + first_};
    }

private:
    int failures_ = 0;
    std::string first_;
};

std::int64_t factorial(int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

// Boundary facets of a pure ball, recounted from its top simplexes.
Complex ball_boundary(const Complex& ball) {
    std::map<Simplex, int> count;
    for (const auto& t : ball.top_simplexes())
        for (VertexId v : t) ++count[t.without(v)];
    std::vector<Simplex> facets;
    for (const auto& [f, c] : count)
        if (c == 1) facets.push_back(f);
    return close_under_faces(facets);
}

GeomComplex single_simplex(const GeomSimplex& s, GeometryTag tag) {
    GeomComplex g;
    g.tag = tag;
    std::vector<VertexId> ids;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(s.dim()); ++i) {
        ids.push_back(static_cast<VertexId>(i));
        g.coords.emplace(static_cast<VertexId>(i), s.vertex(i));
    }
    g.complex = close_under_faces({Simplex(ids)});
    return g;
}

// 1. Subdivision counts.
Outcome subdivision_counts() {
    Checker c;
    testsupport::Rng rng(kSeed + 1);
    int complexes = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 4;
        const auto k = testsupport::random_pure_complex(n, n == 4 ? 3 : 8, rng);
        const auto p = f_vector(k);
        const auto s = skeleton_counts(barycentric(k));
        for (int i = 0; i <= n; ++i)
            c.expect(s[static_cast<std::size_t>(i)] == factorial(i + 1) * p[static_cast<std::size_t>(i)],
                     "s_" + std::to_string(i) + " at n=" + std::to_string(n));
        const int depth = 2;
        const auto iterated = iterated_barycentric(k, depth);
        std::int64_t expected = p[static_cast<std::size_t>(n)];
        for (int m = 0; m < depth; ++m) expected *= factorial(n + 1);
        c.expect(f_vector(iterated.complex)[static_cast<std::size_t>(n)] == expected,
                 "beta^2 top count at n=" + std::to_string(n));
        ++complexes;
    }
    return c.outcome(std::to_string(complexes) + " complexes, n <= 4, beta and beta^2 exact");
}

// 2. Link lemma.
Outcome link_lemma() {
    Checker c;
    testsupport::Rng rng(kSeed + 2);
    int links = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 3;
        const auto k = testsupport::random_pure_complex(n, 30, rng);
        const auto id = SubdividedComplex::identity(k);
        for (int r = 0; r <= n; ++r) {
            const auto partial = partial_relative(k, id, r);
            for (const auto& a : k.simplexes_of_dim(r)) {
                const auto lhs = link(a, partial.complex);
                const auto rhs = barycentric(link(a, k)).complex;
                const auto iso = find_isomorphism(lhs, rhs);
                c.expect(iso && is_isomorphism(lhs, rhs, *iso), "A=" + a.str() + " r=" + std::to_string(r));
                ++links;
            }
        }
    }
    return c.outcome(std::to_string(links) + " links isomorphic");
}

// 3. Starring through shellings.
Outcome starring() {
    Checker c;
    testsupport::Rng rng(kSeed + 3);
    int balls = 0;
    for (int n : {2, 3}) {
        const int count = n == 2 ? 50 : 10;
        const int max_size = n == 2 ? 20 : 15;
        for (int i = 0; i < count; ++i) {
            const int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_size));
            const auto ball = testsupport::grow_ball(n, size, rng);
            const auto ambient = testsupport::close_ball(ball);
            const auto r = star_via_shelling(ambient, ball);
            c.expect(r.sequence.size() == static_cast<std::size_t>(ball.count(n)), "move count");
            Complex replayed;
            if (n == 2) {
                testsupport::SurfaceReplayer surface(ambient);
                for (const auto& m : r.sequence.moves) {
                    std::string why;
                    c.expect(surface.apply(m, &why), "surface replay: " + why);
                }
                replayed = surface.complex();
            } else {
                replayed = ambient;
                for (const auto& m : r.sequence.moves) apply_in_place(replayed, m);
            }
            c.expect(replayed == r.result, "replayed result differs");
            c.expect(link(Simplex{r.apex}, replayed) == ball_boundary(ball), "apex link is not the ball boundary");
            ++balls;
        }
    }
    return c.outcome(std::to_string(balls) + " balls starred (50 discs, 10 3-balls)");
}

// 4. Alpha to beta on the tetrahedron boundary.
Outcome alpha_to_beta_identity() {
    Checker c;
    const auto k = fixtures::sphere_boundary(2);
    const auto r = alpha_to_beta(k, SubdividedComplex::identity(k));
    testsupport::SurfaceReplayer surface(k);
    for (const auto& m : r.sequence.moves) {
        std::string why;
        c.expect(surface.apply(m, &why), "replay: " + why);
        c.expect(surface.closed(), "intermediate complex not closed");
    }
    const Complex end = surface.complex();
    c.expect(find_isomorphism(end, barycentric(k).complex).has_value(), "end is not isomorphic to beta K");
    // per-level bounds (n-r)! s_r p_{n-r-1} with p_0 = 2, p_{-1} = 1
    const auto p = f_vector(k);
    const std::int64_t level_caps[] = {0, 1 * p[1] * 2, 1 * p[2] * 1};
    for (const auto& level : r.trace.levels)
        c.expect(static_cast<std::int64_t>(level.moves) <= level_caps[level.r],
                 "level " + std::to_string(level.r) + " has " + std::to_string(level.moves) + " moves");
    const std::int64_t total_cap = factorial(3) * factorial(3) * p[2] * p[2];
    c.expect(static_cast<std::int64_t>(r.sequence.size()) <= total_cap, "total over (n+1)!^2 p^2");
    for (VertexId v : r.sequence.removed_vertices()) c.expect(!k.has_vertex(v), "vertex of K removed");
    return c.outcome(std::to_string(r.sequence.size()) + " moves <= " + std::to_string(total_cap) +
                     ", end isomorphic to beta K");
}

// 5. End-to-end relation of two triangulations.
Outcome relate_end_to_end() {
    Checker c;
    std::string summary;
    struct Case {
        const char* name;
        FlatTorusComplex k1, k2;
    };
    const Case cases[] = {{"S^1 3 vs 5", fixtures::circle(3), fixtures::circle(5, 0.05)},
                          {"torus grids", fixtures::torus_grid(), fixtures::torus_grid(0.5)}};
    for (const auto& cs : cases) {
        const auto r = relate_torus(cs.k1, cs.k2);
        c.expect(r.replay_verified && r.endpoints_verified, std::string(cs.name) + ": not verified");
        c.expect(find_isomorphism(r.start, barycentric(cs.k1.complex).complex).has_value(),
                 std::string(cs.name) + ": start is not beta K1");
        c.expect(find_isomorphism(r.end, barycentric(cs.k2.complex).complex).has_value(),
                 std::string(cs.name) + ": end is not beta K2");
        const int n = cs.k1.n;
        Complex end;
        if (n == 1) {
            testsupport::CycleReplayer cycle(r.start);
            for (const auto& m : r.sequence.moves) {
                std::string why;
                c.expect(cycle.apply(m, &why), std::string(cs.name) + ": " + why);
                c.expect(cycle.is_cycle(), std::string(cs.name) + ": not a cycle");
            }
            end = r.start;
            for (const auto& m : r.sequence.moves) apply_in_place(end, m);
        } else {
            testsupport::SurfaceReplayer surface(r.start);
            for (const auto& m : r.sequence.moves) {
                std::string why;
                c.expect(surface.apply(m, &why), std::string(cs.name) + ": " + why);
                c.expect(surface.closed(), std::string(cs.name) + ": not closed");
            }
            end = surface.complex();
        }
        c.expect(end == r.end, std::string(cs.name) + ": independent replay differs");
        // the bound recomputed from the reported depth
        const auto p = f_vector(cs.k1.complex)[static_cast<std::size_t>(n)];
        const auto q = f_vector(cs.k2.complex)[static_cast<std::size_t>(n)];
        const BigInt bound = total_bound(n, p, q, depth_mprime(r.m, n));
        c.expect(bound == r.bound, std::string(cs.name) + ": bound mismatch");
        c.expect(BigInt(r.sequence.size()) <= bound, std::string(cs.name) + ": over the bound");
        // labels present at both ends are never removed on the way
        std::set<VertexId> both;
        for (VertexId v : r.start.vertices())
            if (r.end.has_vertex(v)) both.insert(v);
        c.expect(both.size() >= r.common_vertices, std::string(cs.name) + ": common vertices missing");
        for (VertexId v : r.sequence.removed_vertices())
            c.expect(!both.contains(v), std::string(cs.name) + ": common vertex removed");
        c.expect(r.common_vertices_kept, std::string(cs.name) + ": common vertices not kept");
        summary += (summary.empty() ? "" : ", ") + std::string(cs.name) + " " + std::to_string(r.sequence.size()) +
                   " moves (bound " + std::to_string(bound.str().size()) + " digits)";
    }
    return c.outcome(summary);
}

// 6. Edge contraction under geometric subdivision.
Outcome kappa_scaling() {
    Checker c;
    std::mt19937_64 rng(kSeed + 6);
    const int depth = 3;
    const double Lambda = 1.5;
    double worst = -1;
    int brute = 0;
    for (GeometryTag tag : {GeometryTag::euclidean, GeometryTag::spherical, GeometryTag::hyperbolic}) {
        for (int n : {2, 3}) {
            for (int i = 0; i < 500; ++i) {
                const auto s = random_simplex(tag, n, Lambda, rng);
                const double L = s.max_edge();
                const double kap = kappa(tag, n, L);
                const auto maxima = subdivision_edge_maxima(s, depth);
                for (int m = 1; m <= depth; ++m) {
                    const double cap = std::pow(kap, m) * L;
                    const double e = maxima[static_cast<std::size_t>(m - 1)];
                    worst = std::max(worst, e - cap);
                    c.expect(e <= cap + kEdgeTol, "level " + std::to_string(m));
                }
                // every tenth simplex: build the subdivided complex and measure every edge
                if (i % 10 != 0) continue;
                const auto g = single_simplex(s, tag);
                for (int m = 1; m <= (n == 3 ? 2 : depth); ++m) {
                    const auto sub = geometric_barycentric(g, m);
                    double longest = 0;
                    for (const auto& e : sub.geom.complex.simplexes_of_dim(1))
                        longest = std::max(longest, distance(sub.geom.coords.at(e[0]), sub.geom.coords.at(e[1])));
                    c.expect(longest <= std::pow(kap, m) * L + kEdgeTol, "built complex level " + std::to_string(m));
                    c.expect(std::abs(longest - maxima[static_cast<std::size_t>(m - 1)]) < 1e-9,
                             "edge maxima disagree with the built complex");
                }
                ++brute;
            }
        }
    }
    return c.outcome("3000 simplexes, m <= 3, max(edge - kappa^m Lambda) = " + num(worst) + ", " +
                     std::to_string(brute) + " built explicitly");
}

// 7. Centroid ratios.
Outcome centroid_ratios() {
    Checker c;
    std::mt19937_64 rng(kSeed + 7);
    double worst_euclid = 0;
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i < 100; ++i) {
            const auto s = random_simplex(GeometryTag::euclidean, n, 2.0, rng);
            for (std::size_t v = 0; v <= static_cast<std::size_t>(n); ++v) {
                const double err = std::abs(median_ratio(s, v) - static_cast<double>(n) / (n + 1));
                worst_euclid = std::max(worst_euclid, err);
                c.expect(err <= kEuclidMedianTol, "euclidean n=" + std::to_string(n));
            }
        }
    for (int n : {2, 3}) {
        for (int i = 0; i < 500; ++i) {
            const auto h = random_simplex(GeometryTag::hyperbolic, n, 1.5, rng);
            const double upper = n * std::pow(std::cosh(h.max_edge()), n - 1);
            const auto sp = random_simplex(GeometryTag::spherical, n, 1.5, rng);
            for (std::size_t v = 0; v <= static_cast<std::size_t>(n); ++v) {
                const double rh = centroid_ratio(h, v);
                c.expect(rh >= 1 - kRatioTol && rh <= upper + kRatioTol, "hyperbolic ratio " + num(rh));
                const double rs = centroid_ratio(sp, v);
                c.expect(rs <= n + kRatioTol, "spherical ratio " + num(rs));
            }
        }
    }
    return c.outcome("euclidean error " + num(worst_euclid) + " (n <= 5), 1000 hyperbolic and 1000 spherical simplexes");
}

// 8. Diameter and adjacent-edge lemmas, and the long-leg counterexample.
Outcome diameter_lemmas() {
    Checker c;
    std::mt19937_64 rng(kSeed + 8);
    const int samples = 1000;
    for (GeometryTag tag : {GeometryTag::euclidean, GeometryTag::spherical, GeometryTag::hyperbolic}) {
        for (int i = 0; i < 100; ++i) {
            const int n = 2 + i % 2;
            const auto s = random_simplex(tag, n, 1.5, rng);
            const double diam = diameter(s);
            for (int j = 0; j < samples; ++j) {
                const double d = distance(random_point_in(s, rng), random_point_in(s, rng));
                c.expect(d <= diam + kDistanceTol, "interior pair over the longest edge");
            }
            // Lemma on adjacent edges for the triangle faces at vertex 0
            const auto tri = s.face({0, 1, 2});
            std::uniform_real_distribution<double> u(0, 1);
            const double ab = distance(tri.vertex(0), tri.vertex(1)), ac = distance(tri.vertex(0), tri.vertex(2));
            for (int j = 0; j < samples; ++j) {
                const auto d = geodesic_point(tri.vertex(1), tri.vertex(2), u(rng));
                c.expect(distance(tri.vertex(0), d) <= std::max(ab, ac) + kDistanceTol, "adjacent edge bound");
            }
            c.expect(adjacent_edge_bound_check(tri, samples), "adjacent_edge_bound_check");
        }
    }
    double worst = 0;
    const bool held = adjacent_edge_bound_check(spherical_isosceles(2.0, 1.0), samples + 1, false, &worst);
    c.expect(!held && worst > 1e-3, "long-leg counterexample not reproduced");
    return c.outcome("300 simplexes x 1000 samples; long-leg spherical excess " + num(worst));
}

// 9. Common subdivision counts and measure conservation.
Outcome common_subdivision_counts() {
    Checker c;
    testsupport::Rng rng(kSeed + 9);
    const GeometryTag tags[] = {GeometryTag::euclidean, GeometryTag::hyperbolic, GeometryTag::spherical};
    auto check_counts = [&](const CommonSubdivision& cs, const std::string& what) {
        const auto counts = commonsub_count_check(cs);
        const auto p = f_vector(cs.over1.parent), q = f_vector(cs.over2.parent);
        const int n = cs.n;
        const std::int64_t factor = ((std::int64_t{1} << n) - 1) * factorial(n + 1) * factorial(n + 1);
        for (int i = 0; i <= n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            c.expect(counts.s[ui] < factor * p[ui] * q[static_cast<std::size_t>(n)], what + ": s_" + std::to_string(i));
        }
        c.expect(counts.all_pass(), what + ": count check");
    };
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const auto pair = testsupport::random_chart_pair(tags[i % 3], rng);
        const auto p = intersect_linear(pair.k1, pair.k2);
        const double rel1 = std::abs(p.total_measure() - p.region_measure1) / p.region_measure1;
        const double rel2 = std::abs(p.total_measure() - p.region_measure2) / p.region_measure2;
        worst = std::max({worst, rel1, rel2});
        c.expect(rel1 <= kMeasureRelTol && rel2 <= kMeasureRelTol, "chart pair measure");
        check_counts(barycentric_polytopal(p), "chart pair " + std::to_string(i));
    }
    const auto g1 = fixtures::torus_grid(), g2 = fixtures::torus_grid(0.5);
    const auto t = torus_intersect(g1, g2);
    const double rel = std::abs(t.total_measure() - g1.measure()) / g1.measure();
    worst = std::max(worst, rel);
    c.expect(rel <= kMeasureRelTol, "torus measure");
    check_counts(barycentric_polytopal(t), "torus");
    return c.outcome("20 chart pairs and the torus fixture, worst relative measure error " + num(worst));
}

// 10. Bound calculator.
Outcome bound_calculator() {
    Checker c;
    c.expect(total_bound(2, 1, 1, 8).str() == testsupport::u128_power_product(8, 6, 28), "8 * 6^28");
    const auto v = volhyp_m(3, 10, 1);
    c.expect(abs(v.quantity - Real(testsupport::reference::orientable3_quantity)) <= Real(kVolhypTol),
             "orientable n = 3 volume-bound quantity");
    c.expect(v.m == 35, "orientable n = 3 depth");
    for (const char* l : {"0.001", "0.5", "1", "3.75", "123.456"}) {
        const auto chain = radius_chain(Real(l));
        c.expect(chain.r == chain.inj / 2 && chain.inj == chain.l_c / 2 && chain.r == chain.l_c / 4,
                 std::string("radius chain at l_c = ") + l);
    }
    return c.outcome("8*6^28 exact, n = 3 quantity " + to_decimal(v.quantity, 20) + ", m = " + std::to_string(v.m));
}

// 11. Random move fuzzing on closed surfaces.
Outcome move_fuzzing() {
    Checker c;
    testsupport::Rng rng(kSeed + 11);
    int moves = 0;
    for (int surface = 0; surface < 5; ++surface) {
        Complex k = testsupport::random_surface(10, rng);
        testsupport::SurfaceReplayer oracle(k);
        const auto chi = euler_characteristic(k);
        for (int step = 0; step < 200; ++step) {
            const auto options = enumerate_moves(k);
            if (options.empty()) break;
            const auto& m = options[rng() % options.size()];
            const Complex next = apply(k, m);
            c.expect(apply(next, invert(m)) == k, "inverse round trip");
            c.expect(euler_characteristic(next) == chi, "euler characteristic changed");
            c.expect(is_closed_pseudomanifold(next), "not a closed pseudomanifold");
            std::string why;
            c.expect(oracle.apply(m, &why), "surface oracle: " + why);
            c.expect(oracle.complex() == next, "oracle disagrees");
            k = next;
            ++moves;
        }
    }
    c.expect(moves == 1000, "only " + std::to_string(moves) + " moves applied");
    return c.outcome(std::to_string(moves) + " moves, inverses exact, chi and closedness preserved");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "subdivision counts", 30, subdivision_counts},
        {2, "link lemma", 60, link_lemma},
        {3, "starring", 120, starring},
        {4, "alpha to beta", 60, alpha_to_beta_identity},
        {5, "end-to-end relation", 600, relate_end_to_end},
        {6, "kappa scaling", 60, kappa_scaling},
        {7, "centroid ratios", 60, centroid_ratios},
        {8, "diameter and adjacent edges", 120, diameter_lemmas},
        {9, "common subdivision counts", 120, common_subdivision_counts},
        {10, "bound calculator", 5, bound_calculator},
        {11, "move fuzzing", 60, move_fuzzing},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= cr.limit_seconds) {
            o.pass = false;
            o.detail += " (over the time limit)";
        }
        if (!o.pass) ++failed;
        std::printf("%s [%2d] %-28s %7.2fs / %4.0fs  %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                    cr.limit_seconds, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 11 criteria passed\n", 11 - failed);
    return failed == 0 ? 0 : 1;
}
