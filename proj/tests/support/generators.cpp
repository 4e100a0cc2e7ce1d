#include "generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "geotri/errors.hpp"
#include "geotri/fixtures.hpp"
#include "geotri/shelling.hpp"

using namespace geotri;

namespace testsupport {

std::vector<PachnerMove> random_walk(Complex& k, int steps, Rng& rng) {
    std::vector<PachnerMove> done;
    for (int i = 0; i < steps; ++i) {
        const auto moves = enumerate_moves(k);
        if (moves.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        const auto& m = moves[pick(rng)];
        apply_in_place(k, m);
        done.push_back(m);
    }
    return done;
}

Complex random_sphere(int n, int steps, Rng& rng) {
    Complex k = fixtures::sphere_boundary(n);
    random_walk(k, steps, rng);
    return k;
}

Complex random_surface(int steps, Rng& rng) {
    Complex k = std::bernoulli_distribution(0.5)(rng) ? fixtures::torus_grid().complex : fixtures::octahedron();
    random_walk(k, steps, rng);
    return k;
}

Complex random_pure_complex(int n, int tops, Rng& rng) {
    const int pool = n + 2 + std::uniform_int_distribution<int>(1, 4)(rng);
    const int count = std::uniform_int_distribution<int>(1, std::max(1, tops))(rng);
    std::vector<VertexId> labels(static_cast<std::size_t>(pool));
    std::iota(labels.begin(), labels.end(), 0);
    std::set<Simplex> chosen;
    for (int i = 0; i < count; ++i) {
        std::shuffle(labels.begin(), labels.end(), rng);
        chosen.insert(Simplex(std::vector<VertexId>(labels.begin(), labels.begin() + n + 1)));
    }
    std::vector<Simplex> v(chosen.begin(), chosen.end());
    return close_under_faces(v);
}

namespace {

// True when adding `t` to the ball `k` is an inverse shelling step: the
// facets of t already in k are exactly those opposite a nonempty proper
// vertex set S, they are boundary facets, and no other face of t containing
// S is in k.
bool attachable(const Complex& k, const Simplex& t) {
    if (k.contains(t)) return false;
    const int n = t.dim();
    std::vector<VertexId> s;
    for (VertexId v : t) {
        const Simplex f = t.without(v);
        if (k.contains(f)) {
            if (k.cofaces_of_dim(f, n).size() != 1) return false;
            s.push_back(v);
        }
    }
    if (s.empty() || static_cast<int>(s.size()) > n) return false;
    const Simplex S(s);
    for (const auto& g : t.faces())
        if (g != t && S.is_face_of(g) && k.contains(g)) return false;
    return true;
}

}  // namespace

Complex grow_ball(int n, int size, Rng& rng) {
    std::vector<VertexId> first;
    for (int i = 0; i <= n; ++i) first.push_back(static_cast<VertexId>(i));
    Complex k = simplex_closure(Simplex(first));
    std::bernoulli_distribution reuse(0.6);
    while (static_cast<int>(k.count(n)) < size) {
        std::vector<Simplex> boundary;
        for (const auto& f : k.simplexes_of_dim(n - 1))
            if (k.cofaces_of_dim(f, n).size() == 1) boundary.push_back(f);
        std::sort(boundary.begin(), boundary.end());
        const Simplex f = boundary[std::uniform_int_distribution<std::size_t>(0, boundary.size() - 1)(rng)];
        bool grown = false;
        if (reuse(rng)) {
            // try closing up against a vertex already adjacent to f
            std::set<VertexId> near;
            for (VertexId v : f)
                for (const auto& e : k.cofaces_of_dim(Simplex{v}, 1))
                    for (VertexId w : e)
                        if (!f.contains(w)) near.insert(w);
            std::vector<VertexId> cands(near.begin(), near.end());
            std::shuffle(cands.begin(), cands.end(), rng);
            for (VertexId w : cands) {
                const Simplex t = f.with(w);
                if (attachable(k, t)) {
                    k.insert_with_faces(t);
                    grown = true;
                    break;
                }
            }
        }
        if (!grown) k.insert_with_faces(f.with(k.next_free_label()));
    }
    return k;
}

Complex close_ball(const Complex& ball) {
    Complex out = ball;
    const VertexId apex = ball.next_free_label();
    for (const auto& f : boundary_complex(ball).maximal_simplexes()) out.insert_with_faces(f.with(apex));
    return out;
}

namespace {

GeomComplex jittered_grid(GeometryTag tag, int g, bool flip_bias, Rng& rng) {
    std::uniform_real_distribution<double> jitter(-0.18, 0.18);
    std::bernoulli_distribution diag(flip_bias ? 0.8 : 0.2);
    const double h = 1.0 / g;
    auto id = [g](int i, int j) { return static_cast<VertexId>(i * (g + 1) + j); };
    GeomComplex k;
    k.tag = tag;
    std::vector<Simplex> tops;
    for (int i = 0; i <= g; ++i)
        for (int j = 0; j <= g; ++j) {
            double x = i * h, y = j * h;
            if (i > 0 && i < g) x += jitter(rng) * h;
            if (j > 0 && j < g) y += jitter(rng) * h;
            Vec c(2);
            c << 0.6 * (x - 0.5), 0.6 * (y - 0.5);
            Vec amb;
            switch (tag) {
                case GeometryTag::euclidean: amb = c; break;
                case GeometryTag::spherical:
                    amb = Vec(3);
                    amb << c(0), c(1), 1.0;
                    amb /= amb.norm();
                    break;
                case GeometryTag::hyperbolic:
                    amb = Vec(3);
                    amb << c(0), c(1), 1.0;
                    amb /= std::sqrt(1.0 - c.squaredNorm());
                    break;
            }
            k.coords.emplace(id(i, j), GeomPoint::project(tag, amb));
        }
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            if (diag(rng)) {
                tops.push_back(Simplex{id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                tops.push_back(Simplex{id(i, j), id(i, j + 1), id(i + 1, j + 1)});
            } else {
                tops.push_back(Simplex{id(i, j), id(i + 1, j), id(i, j + 1)});
                tops.push_back(Simplex{id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)});
            }
        }
    k.complex = close_under_faces(tops);
    return k;
}

}  // namespace

ChartPair random_chart_pair(GeometryTag tag, Rng& rng) {
    std::uniform_int_distribution<int> size(2, 4);
    const int g1 = size(rng);
    int g2 = size(rng);
    if (g2 == g1) g2 = g1 == 4 ? 3 : g1 + 1;
    return {jittered_grid(tag, g1, true, rng), jittered_grid(tag, g2, false, rng)};
}

}  // namespace testsupport
