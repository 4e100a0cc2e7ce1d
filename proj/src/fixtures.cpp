#include "geotri/fixtures.hpp"

#include "geotri/errors.hpp"

namespace geotri::fixtures {

Complex simplex(int n) {
    std::vector<VertexId> v;
    for (int i = 0; i <= n; ++i) v.push_back(static_cast<VertexId>(i));
    return simplex_closure(Simplex(v));
}

Complex sphere_boundary(int n) {
    std::vector<VertexId> v;
    for (int i = 0; i <= n + 1; ++i) v.push_back(static_cast<VertexId>(i));
    return simplex_boundary(Simplex(v));
}

Complex octahedron() {
    // antipodal pairs (0,1), (2,3), (4,5)
    std::vector<Simplex> tops;
    for (VertexId a : {0u, 1u})
        for (VertexId b : {2u, 3u})
            for (VertexId c : {4u, 5u}) tops.push_back(Simplex{a, b, c});
    return close_under_faces(tops);
}

Complex cycle(int count) {
    if (count < 3) throw InputError("a cycle needs at least 3 vertices");
    std::vector<Simplex> edges;
    for (int i = 0; i < count; ++i)
        edges.push_back(Simplex{static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % count)});
    return close_under_faces(edges);
}

FlatTorusComplex torus_grid(double shift) {
    FlatTorusComplex t;
    t.n = 2;
    auto id = [](int i, int j) { return static_cast<VertexId>(3 * ((i + 3) % 3) + (j + 3) % 3); };
    std::vector<Simplex> tops;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vec x(2);
            x << (i + shift) / 3.0, (j + shift) / 3.0;
            x(0) -= std::floor(x(0));
            x(1) -= std::floor(x(1));
            t.coords.emplace(id(i, j), x);
            tops.push_back(Simplex{id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tops.push_back(Simplex{id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    t.complex = close_under_faces(tops);
    return t;
}

FlatTorusComplex circle(int count, double offset) {
    FlatTorusComplex t;
    t.n = 1;
    t.complex = cycle(count);
    for (int i = 0; i < count; ++i) {
        Vec x(1);
        x(0) = offset + static_cast<double>(i) / count;
        x(0) -= std::floor(x(0));
        t.coords.emplace(static_cast<VertexId>(i), x);
    }
    return t;
}

FlatTorusComplex coarse_torus() {
    FlatTorusComplex t;
    t.n = 2;
    t.complex = close_under_faces({Simplex{0, 1, 3}, Simplex{0, 2, 3}});
    const Vec origin = Vec::Zero(2);
    for (VertexId v = 0; v < 4; ++v) t.coords.emplace(v, origin);
    auto corner = [](double x, double y) {
        Vec p(2);
        p << x, y;
        return p;
    };
    t.lifts.emplace(Simplex{0, 1, 3}, std::vector<Vec>{corner(0, 0), corner(1, 0), corner(1, 1)});
    t.lifts.emplace(Simplex{0, 2, 3}, std::vector<Vec>{corner(0, 0), corner(0, 1), corner(1, 1)});
    return t;
}

SubdividedComplex split_edge(const Complex& k, VertexId a, VertexId b) {
    const Simplex e{a, b};
    if (!k.contains(e)) throw InputError("split_edge: " + e.str() + " is not an edge");
    const VertexId mid = k.next_free_label();
    SubdividedComplex out;
    out.parent = k;
    for (const auto& m : k.maximal_simplexes()) {
        if (!e.is_face_of(m)) {
            out.complex.insert_with_faces(m);
        } else {
            out.complex.insert_with_faces(m.without(a).with(mid));
            out.complex.insert_with_faces(m.without(b).with(mid));
        }
    }
    for (VertexId v : k.vertices()) out.carrier.assign(v, Simplex{v});
    out.carrier.assign(mid, e);
    out.validate();
    return out;
}

}  // namespace geotri::fixtures
