#include <doctest.h>

#include <algorithm>
#include <map>

#include "generators.hpp"
#include "geotri/errors.hpp"
#include "geotri/fixtures.hpp"
#include "geotri/shelling.hpp"
#include "geotri/subdivision.hpp"

using namespace geotri;

namespace {

// Replays a shelling on a bare list of top simplexes, recounting boundary
// facets from scratch at every step.
bool replay_on_tops(std::vector<Simplex> tops, const Shelling& sh) {
    for (const auto& step : sh.steps) {
        const Simplex t = step.top();
        auto it = std::find(tops.begin(), tops.end(), t);
        if (it == tops.end()) return false;
        std::map<Simplex, int> facet_count;
        for (const auto& u : tops)
            for (VertexId v : u) ++facet_count[u.without(v)];
        auto on_boundary = [&](const Simplex& f) { return facet_count.at(f) == 1; };
        for (VertexId a : step.A)
            if (!on_boundary(t.without(a))) return false;
        for (VertexId b : step.B)
            if (on_boundary(t.without(b))) return false;
        // A itself must avoid every boundary facet
        for (const auto& [f, c] : facet_count)
            if (c == 1 && step.A.is_face_of(f)) return false;
        tops.erase(it);
    }
    return tops.size() == 1 && tops.front() == sh.last;
}

Complex cone_over_boundary(const Complex& ball, VertexId apex) {
    return join(close_under_faces({Simplex{apex}}), boundary_complex(ball));
}

}  // namespace

TEST_CASE("boundary complex") {
    CHECK(boundary_complex(fixtures::simplex(2)) == simplex_boundary(Simplex{0, 1, 2}));
    const auto two = close_under_faces({Simplex{1, 2, 3}, Simplex{1, 2, 4}});
    const auto bd = boundary_complex(two);
    CHECK(bd == close_under_faces({Simplex{1, 3}, Simplex{2, 3}, Simplex{1, 4}, Simplex{2, 4}}));
    CHECK(boundary_complex(barycentric(fixtures::simplex(2)).complex).count(1) == 6);
    CHECK(boundary_complex(fixtures::sphere_boundary(2)).empty());
    CHECK_THROWS_AS(boundary_complex(close_under_faces({Simplex{1, 2, 3}, Simplex{3, 4}})), InputError);
}

TEST_CASE("elementary shellings") {
    CHECK(elementary_shellings(fixtures::simplex(2)).empty());

    const auto two = close_under_faces({Simplex{1, 2, 3}, Simplex{1, 2, 4}});
    const auto steps = elementary_shellings(two);
    REQUIRE(steps.size() == 2);
    // shedding {1,2,4}: the shared edge is the free face, 4 is the opposite vertex
    CHECK(std::find(steps.begin(), steps.end(), ShellingStep{Simplex{1, 2}, Simplex{4}}) != steps.end());
    CHECK(std::find(steps.begin(), steps.end(), ShellingStep{Simplex{1, 2}, Simplex{3}}) != steps.end());

    // a triangle whose three edges are all shared has no free face
    const auto disc = close_under_faces({Simplex{1, 2, 3}, Simplex{1, 2, 4}, Simplex{2, 3, 5}, Simplex{1, 3, 6}});
    for (const auto& s : elementary_shellings(disc)) CHECK(s.top() != Simplex{1, 2, 3});
}

TEST_CASE("shelling search") {
    const auto two = close_under_faces({Simplex{1, 2, 3}, Simplex{1, 2, 4}});
    const auto r = find_shelling(two);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.shelling->steps.size() == 1);
    CHECK(verify_shelling(two, *r.shelling));

    const auto sphere = find_sphere_shelling(fixtures::sphere_boundary(3));
    REQUIRE(sphere.status == SearchStatus::found);
    CHECK(sphere.shelling->steps.size() == 3);

    // two triangles meeting in a vertex: not a ball
    const auto bowtie = close_under_faces({Simplex{1, 2, 3}, Simplex{3, 4, 5}});
    CHECK(find_shelling(bowtie).status == SearchStatus::exhausted);

    const auto big = iterated_barycentric(fixtures::simplex(2), 2).complex;
    ShellingOptions tiny;
    tiny.max_nodes = 3;
    CHECK(find_shelling(big, tiny).status == SearchStatus::cap_reached);
}

TEST_CASE("second derived subdivision of a 3-ball is shellable") {
    const auto kprime = fixtures::split_edge(fixtures::simplex(3), 0, 1);
    const auto ball = barycentric(barycentric(kprime.complex).complex).complex;
    CHECK(ball.count(3) == 2 * 24 * 24);
    const auto r = find_shelling(ball);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(replay_on_tops(ball.top_simplexes(), *r.shelling));
}

TEST_CASE("verify_shelling rejects bad certificates") {
    const auto two = close_under_faces({Simplex{1, 2, 3}, Simplex{1, 2, 4}});
    std::string why;
    CHECK_FALSE(verify_shelling(two, Shelling{{{Simplex{4}, Simplex{1, 2}}}, Simplex{1, 2, 3}}, &why));
    CHECK_FALSE(why.empty());
    CHECK_FALSE(verify_shelling(two, Shelling{{{Simplex{1, 2}, Simplex{4}}}, Simplex{1, 2, 4}}));
    CHECK(verify_shelling(two, Shelling{{{Simplex{1, 2}, Simplex{4}}}, Simplex{1, 2, 3}}));
}

TEST_CASE("starring small balls") {
    const auto k = simplex_boundary(Simplex{1, 2, 3, 4});
    const auto one = star_via_shelling(k, close_under_faces({Simplex{1, 2, 3}}));
    CHECK(one.sequence.size() == 1);
    CHECK(one.apex == 5);

    const auto two_ball = close_under_faces({Simplex{1, 2, 3}, Simplex{1, 2, 4}});
    const auto two = star_via_shelling(k, two_ball, VertexId{9});
    CHECK(two.sequence.size() == 2);
    CHECK(link(Simplex{9}, two.result) == close_under_faces({Simplex{1, 3}, Simplex{2, 3}, Simplex{1, 4}, Simplex{2, 4}}));
    CHECK(star(Simplex{9}, two.result) == cone_over_boundary(two_ball, 9));

    CHECK_THROWS_AS(star_via_shelling(k, two_ball, VertexId{1}), InputError);
    CHECK_THROWS_AS(star_via_shelling(k, close_under_faces({Simplex{1, 2, 7}})), InputError);
}

TEST_CASE("starring a subdivided face inside the subdivided tetrahedron boundary") {
    const auto beta = barycentric(fixtures::sphere_boundary(2));
    std::vector<Simplex> face;
    for (const auto& t : beta.complex.top_simplexes())
        if (beta.carrier(t) == Simplex{0, 1, 2}) face.push_back(t);
    REQUIRE(face.size() == 6);
    const auto ball = close_under_faces(face);
    const auto r = star_via_shelling(beta.complex, ball);
    CHECK(r.sequence.size() == 6);
    const auto expected = join(close_under_faces({Simplex{1000}}), fixtures::cycle(6));
    const auto iso = find_isomorphism(star(Simplex{r.apex}, r.result), expected);
    REQUIRE(iso);
    CHECK(iso->vertex_map.at(r.apex) == 1000);
    CHECK(is_closed_pseudomanifold(r.result));
}

TEST_CASE("property: starring random balls in closed ambients") {
    testsupport::Rng rng(2024);
    for (int trial = 0; trial < 24; ++trial) {
        const int n = trial % 3 == 2 ? 3 : 2;
        const int size = n == 2 ? 1 + static_cast<int>(rng() % 20) : 1 + static_cast<int>(rng() % 15);
        const auto ball = testsupport::grow_ball(n, size, rng);
        const auto ambient = testsupport::close_ball(ball);
        REQUIRE(is_closed_pseudomanifold(ambient));

        const auto search = find_shelling(ball);
        REQUIRE(search.status == SearchStatus::found);
        CHECK(replay_on_tops(ball.top_simplexes(), *search.shelling));

        const auto r = star_via_shelling(ambient, ball);
        CHECK(r.sequence.size() == ball.count(n));
        CHECK(link(Simplex{r.apex}, r.result) == boundary_complex(ball));
        // every intermediate complex stays a closed pseudomanifold and no
        // vertex outside the ball's interior disappears
        const auto bd = boundary_complex(ball);
        Complex cur = ambient;
        for (const auto& m : r.sequence.moves) {
            apply_in_place(cur, m);
            CHECK(is_closed_pseudomanifold(cur));
            if (auto v = m.removed_vertex()) {
                CHECK(ball.has_vertex(*v));
                CHECK_FALSE(bd.has_vertex(*v));
            }
        }
        CHECK(cur == r.result);
        for (VertexId v : ambient.vertices())
            if (!ball.has_vertex(v) || bd.has_vertex(v)) CHECK(r.result.has_vertex(v));
    }
}
