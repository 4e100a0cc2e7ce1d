#include "geotri/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "geotri/errors.hpp"

namespace geotri {

namespace {

constexpr double kTight = 1e-9;

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Vec wrap(const Vec& x) {
    Vec y = x;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        y(i) -= std::floor(y(i));
        if (y(i) >= 1.0 - 1e-12) y(i) = 0.0;
    }
    return y;
}

double wrapped_distance(const Vec& a, const Vec& b) {
    Vec d = a - b;
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) -= std::round(d(i));
    return d.norm();
}

int affine_rank(const std::vector<Vec>& pts) {
    if (pts.size() <= 1) return 0;
    Mat m(pts.front().size(), static_cast<Eigen::Index>(pts.size() - 1));
    for (std::size_t i = 1; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i - 1)) = pts[i] - pts[0];
    Eigen::FullPivLU<Mat> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
}

Vec average(const std::vector<Vec>& pts) {
    Vec c = Vec::Zero(pts.front().size());
    for (const auto& p : pts) c += p;
    return c / static_cast<double>(pts.size());
}

// Barycentric coordinates as affine functions: lambda(x) = a x + b.
struct Barycentric {
    Mat a;
    Vec b;
};

Barycentric barycentric_functions(const std::vector<Vec>& verts) {
    const auto n = static_cast<Eigen::Index>(verts.size()) - 1;
    Mat m(n + 1, n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
        m.col(i).head(n) = verts[static_cast<std::size_t>(i)];
        m(n, i) = 1.0;
    }
    Eigen::FullPivLU<Mat> lu(m);
    if (!lu.isInvertible()) throw InputError("degenerate simplex in chart");
    const Mat inv = lu.inverse();
    return {inv.leftCols(n), inv.col(n)};
}

struct LocalFace {
    int dim = 0;
    std::vector<std::size_t> pts;  // local point indices, sorted
    std::uint32_t tight = 0;       // constraints tight on every point
};

struct LocalCell {
    std::vector<Vec> pts;
    std::vector<LocalFace> faces;  // last one is the cell itself
    double measure = 0.0;
};

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

template <typename Face, typename Centroid>
double chain_measure(const std::vector<Face>& faces, std::size_t top, const Centroid& centroid_of) {
    double total = 0.0;
    std::vector<Vec> chain;
    std::function<void(std::size_t)> walk = [&](std::size_t f) {
        chain.push_back(centroid_of(f));
        if (faces[f].dim == 0) {
            total += simplex_volume(chain);
        } else {
            for (std::size_t g = 0; g < faces.size(); ++g)
                if (faces[g].dim == faces[f].dim - 1 && is_subset(faces[g].pts, faces[f].pts)) walk(g);
        }
        chain.pop_back();
    };
    walk(top);
    return total;
}

// Intersection of two n-simplexes given by their vertex positions; nullopt
// when it is not full-dimensional.
std::optional<LocalCell> clip(const std::vector<Vec>& s1, const std::vector<Vec>& s2) {
    const int n = static_cast<int>(s1.size()) - 1;
    const Barycentric f1 = barycentric_functions(s1);
    const Barycentric f2 = barycentric_functions(s2);
    const int rows = 2 * n + 2;
    Mat a(rows, n);
    Vec b(rows);
    a.topRows(n + 1) = f1.a;
    a.bottomRows(n + 1) = f2.a;
    b.head(n + 1) = f1.b;
    b.tail(n + 1) = f2.b;

    LocalCell cell;
    std::vector<std::uint32_t> tight;
    std::vector<int> pick(static_cast<std::size_t>(n));
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == n) {
            Mat as(n, n);
            Vec bs(n);
            for (int i = 0; i < n; ++i) {
                as.row(i) = a.row(pick[static_cast<std::size_t>(i)]);
                bs(i) = b(pick[static_cast<std::size_t>(i)]);
            }
            Eigen::FullPivLU<Mat> lu(as);
            lu.setThreshold(1e-12);
            if (!lu.isInvertible()) return;
            const Vec x = lu.solve(-bs);
            const Vec vals = a * x + b;
            if (vals.minCoeff() < -kTight) return;
            for (const auto& p : cell.pts)
                if ((p - x).norm() <= kMergeTolerance) return;
            std::uint32_t mask = 0;
            for (int r = 0; r < rows; ++r)
                if (std::abs(vals(r)) <= kTight) mask |= 1u << r;
            cell.pts.push_back(x);
            tight.push_back(mask);
            return;
        }
        for (int r = start; r < rows; ++r) {
            pick[static_cast<std::size_t>(depth)] = r;
            choose(r + 1, depth + 1);
        }
    };
    choose(0, 0);
    if (static_cast<int>(cell.pts.size()) < n + 1 || affine_rank(cell.pts) < n) return std::nullopt;

    std::map<std::vector<std::size_t>, std::uint32_t> seen;
    for (std::uint32_t s = 0; s < (1u << rows); ++s) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < cell.pts.size(); ++i)
            if ((tight[i] & s) == s) members.push_back(i);
        if (members.empty()) continue;
        auto [it, inserted] = seen.emplace(members, 0u);
        if (!inserted) continue;
        std::uint32_t common = ~0u >> (32 - rows);
        for (auto i : members) common &= tight[i];
        it->second = common;
    }
    for (const auto& [members, common] : seen) {
        std::vector<Vec> p;
        for (auto i : members) p.push_back(cell.pts[i]);
        cell.faces.push_back({affine_rank(p), members, common});
    }
    std::stable_sort(cell.faces.begin(), cell.faces.end(),
                     [](const LocalFace& x, const LocalFace& y) { return x.dim < y.dim; });
    const std::size_t top = cell.faces.size() - 1;
    if (cell.faces[top].dim != n || cell.faces[top].pts.size() != cell.pts.size())
        throw InvariantError("clipped cell has an inconsistent face lattice");
    cell.measure = chain_measure(cell.faces, top, [&](std::size_t f) {
        std::vector<Vec> p;
        for (auto i : cell.faces[f].pts) p.push_back(cell.pts[i]);
        return average(p);
    });
    return cell;
}

Simplex carrier_from_tight(const Simplex& s, std::uint32_t tight, int offset) {
    std::vector<VertexId> keep;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!((tight >> (offset + static_cast<int>(i))) & 1u)) keep.push_back(s[i]);
    if (keep.empty()) throw InvariantError("face with an empty carrier");
    return Simplex(keep);
}

bool boxes_overlap(const std::vector<Vec>& s1, const std::vector<Vec>& s2) {
    const auto n = s1.front().size();
    for (Eigen::Index d = 0; d < n; ++d) {
        double lo1 = s1[0](d), hi1 = lo1, lo2 = s2[0](d), hi2 = lo2;
        for (const auto& p : s1) lo1 = std::min(lo1, p(d)), hi1 = std::max(hi1, p(d));
        for (const auto& p : s2) lo2 = std::min(lo2, p(d)), hi2 = std::max(hi2, p(d));
        if (hi1 < lo2 - kTight || hi2 < lo1 - kTight) return false;
    }
    return true;
}

// Adds a clipped cell to the complex, merging points and faces.
class Assembler {
public:
    explicit Assembler(PolytopalComplex& p) : p_(p) {}

    void add(const Simplex& t1, const Simplex& t2, LocalCell&& cell) {
        if (cell.measure < kMinCellMeasure) {
            std::ostringstream msg;
            msg << "discarded cell " << t1.str() << " x " << t2.str() << " of measure " << cell.measure;
            p_.log.push_back(msg.str());
            return;
        }
        ConvexCell out;
        out.k1 = t1;
        out.k2 = t2;
        out.measure = cell.measure;
        std::vector<std::size_t> ids;
        for (const auto& x : cell.pts) {
            const std::size_t id = point_id(x);
            ids.push_back(id);
            out.local.emplace(id, x);
        }
        if (out.local.size() != cell.pts.size()) throw InvariantError("cell points merged into each other");
        const int n = p_.n;
        for (const auto& f : cell.faces) {
            std::vector<std::size_t> key;
            for (auto i : f.pts) key.push_back(ids[i]);
            std::sort(key.begin(), key.end());
            const Simplex c1 = carrier_from_tight(t1, f.tight, 0);
            const Simplex c2 = carrier_from_tight(t2, f.tight, n + 1);
            auto it = index_.find(key);
            if (it == index_.end()) {
                index_.emplace(key, p_.faces.size());
                out.faces.push_back(p_.faces.size());
                p_.faces.push_back({f.dim, key, c1, c2});
            } else {
                const auto& g = p_.faces[it->second];
                if (g.dim != f.dim || g.carrier1 != c1 || g.carrier2 != c2)
                    throw InvariantError("cells disagree on a shared face");
                out.faces.push_back(it->second);
            }
        }
        out.face = out.faces.back();
        p_.cells.push_back(std::move(out));
    }

private:
    std::size_t point_id(const Vec& x) {
        const Vec key = p_.torus ? wrap(x) : x;
        for (std::size_t i = 0; i < p_.points.size(); ++i) {
            const double d = p_.torus ? wrapped_distance(p_.points[i], key) : (p_.points[i] - key).norm();
            if (d <= kMergeTolerance) return i;
        }
        p_.points.push_back(key);
        return p_.points.size() - 1;
    }

    PolytopalComplex& p_;
    std::map<std::vector<std::size_t>, std::size_t> index_;
};

Json vec_json(const Vec& x) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i) j.push_back(x(i));
    return j;
}

Vec vec_from_json(const Json& j, Eigen::Index n, const std::string& what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) throw InputError(what + " must be a list of " + std::to_string(n) + " numbers");
    Vec x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& e = j[static_cast<std::size_t>(i)];
        if (!e.is_number()) throw InputError(what + " must contain numbers");
        x(i) = e.get<double>();
    }
    return x;
}

}  // namespace

double simplex_volume(const std::vector<Vec>& points) {
    const auto n = static_cast<Eigen::Index>(points.size()) - 1;
    if (n <= 0) return 0.0;
    Mat m(points.front().size(), n);
    for (Eigen::Index i = 0; i < n; ++i) m.col(i) = points[static_cast<std::size_t>(i + 1)] - points[0];
    if (m.rows() != m.cols()) return std::sqrt(std::max(0.0, (m.transpose() * m).determinant())) / factorial(static_cast<int>(n));
    return std::abs(m.determinant()) / factorial(static_cast<int>(n));
}

double PolytopalComplex::total_measure() const {
    double total = 0.0;
    for (const auto& c : cells) total += c.measure;
    return total;
}

std::vector<Vec> FlatTorusComplex::lift(const Simplex& s) const {
    std::vector<Simplex> tops;
    if (!lifts.empty())
        for (const auto& [t, pts] : lifts)
            if (s.is_face_of(t)) {
                std::vector<Vec> out;
                for (VertexId v : s) {
                    const auto pos = static_cast<std::size_t>(std::find(t.begin(), t.end(), v) - t.begin());
                    out.push_back(pts[pos]);
                }
                return out;
            }
    std::vector<Vec> out;
    for (VertexId v : s) {
        auto it = coords.find(v);
        if (it == coords.end()) throw InputError("no coordinates for vertex " + std::to_string(v));
        if (out.empty()) {
            out.push_back(it->second);
        } else {
            Vec d = it->second - out.front();
            for (Eigen::Index i = 0; i < d.size(); ++i) d(i) -= std::round(d(i));
            out.push_back(out.front() + d);
        }
    }
    return out;
}

double FlatTorusComplex::max_diameter() const {
    double best = 0.0;
    for (const auto& t : complex.top_simplexes()) {
        const auto pts = lift(t);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).norm());
    }
    return best;
}

double FlatTorusComplex::measure() const {
    double total = 0.0;
    for (const auto& t : complex.top_simplexes()) total += simplex_volume(lift(t));
    return total;
}

void FlatTorusComplex::validate() const {
    if (n < 1 || n > 3) throw InputError("flat torus dimension must be 1, 2 or 3");
    if (complex.dimension() != n) throw InputError("flat torus complex has the wrong dimension");
    for (VertexId v : complex.vertices()) {
        auto it = coords.find(v);
        if (it == coords.end()) throw InputError("no coordinates for vertex " + std::to_string(v));
        if (it->second.size() != n || !it->second.allFinite()) throw InputError("bad coordinates for vertex " + std::to_string(v));
    }
    for (const auto& [t, pts] : lifts) {
        if (!complex.contains(t) || t.dim() != n) throw InputError("lift given for a non-top simplex " + t.str());
        if (pts.size() != t.size()) throw InputError("lift of " + t.str() + " has the wrong number of points");
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i].size() != n || wrapped_distance(pts[i], coords.at(t[i])) > kMergeTolerance)
                throw InputError("lift of " + t.str() + " does not project to its vertex coordinates");
    }
}

PolytopalComplex intersect_linear(const GeomComplex& k1, const GeomComplex& k2) {
    k1.validate();
    k2.validate();
    if (k1.tag != k2.tag) throw InputError("intersect: complexes from different geometries");
    const int n = k1.complex.dimension();
    if (n < 1 || n > 3) throw InputError("intersect: dimension must be 1, 2 or 3");
    if (k2.complex.dimension() != n || k1.manifold_dim() != n || k2.manifold_dim() != n)
        throw InputError("intersect: complexes must be top-dimensional in the same space");
    PolytopalComplex p;
    p.n = n;
    p.tag = k1.tag;
    p.k1 = k1.complex;
    p.k2 = k2.complex;
    std::vector<GeomPoint> all;
    for (const auto& [v, x] : k1.coords) all.push_back(x);
    for (const auto& [v, x] : k2.coords) all.push_back(x);
    p.chart = LinearChart::for_points(k1.tag, n, all);

    auto charted = [&](const GeomComplex& k, const Simplex& s) {
        std::vector<Vec> out;
        for (VertexId v : s) out.push_back(p.chart.to_chart(k.coords.at(v)));
        return out;
    };
    const auto tops1 = [&] { auto t = k1.complex.top_simplexes(); std::sort(t.begin(), t.end()); return t; }();
    const auto tops2 = [&] { auto t = k2.complex.top_simplexes(); std::sort(t.begin(), t.end()); return t; }();
    std::vector<std::vector<Vec>> lift2;
    for (const auto& t : tops2) {
        lift2.push_back(charted(k2, t));
        p.region_measure2 += simplex_volume(lift2.back());
    }
    Assembler assembler(p);
    for (const auto& t1 : tops1) {
        const auto s1 = charted(k1, t1);
        p.region_measure1 += simplex_volume(s1);
        for (std::size_t j = 0; j < tops2.size(); ++j) {
            if (!boxes_overlap(s1, lift2[j])) continue;
            if (auto cell = clip(s1, lift2[j])) assembler.add(t1, tops2[j], std::move(*cell));
        }
    }
    return p;
}

PolytopalComplex torus_intersect(const FlatTorusComplex& k1, const FlatTorusComplex& k2) {
    k1.validate();
    k2.validate();
    if (k1.n != k2.n) throw InputError("torus_intersect: tori of different dimensions");
    const int n = k1.n;
    for (const auto* k : {&k1, &k2}) {
        const double d = k->max_diameter();
        if (d >= 0.5)
            throw InputError("torus_intersect: simplex diameter " + std::to_string(d) +
                             " is not below 1/2; subdivide first");
    }
    PolytopalComplex p;
    p.n = n;
    p.torus = true;
    p.chart = LinearChart::for_points(GeometryTag::euclidean, n, {});
    p.k1 = k1.complex;
    p.k2 = k2.complex;
    p.region_measure1 = k1.measure();
    p.region_measure2 = k2.measure();
    p.log.push_back("torus cells are computed by translate enumeration of lifted simplexes");

    auto tops1 = k1.complex.top_simplexes();
    auto tops2 = k2.complex.top_simplexes();
    std::sort(tops1.begin(), tops1.end());
    std::sort(tops2.begin(), tops2.end());
    std::vector<std::vector<Vec>> lift2;
    for (const auto& t : tops2) lift2.push_back(k2.lift(t));

    int translates = 1;
    for (int i = 0; i < n; ++i) translates *= 3;
    Assembler assembler(p);
    for (const auto& t1 : tops1) {
        const auto s1 = k1.lift(t1);
        for (std::size_t j = 0; j < tops2.size(); ++j) {
            Vec z0 = s1[0] - lift2[j][0];
            for (Eigen::Index i = 0; i < n; ++i) z0(i) = std::round(z0(i));
            std::optional<LocalCell> found;
            for (int code = 0; code < translates; ++code) {
                Vec z = z0;
                int c = code;
                for (Eigen::Index i = 0; i < n; ++i, c /= 3) z(i) += c % 3 - 1;
                std::vector<Vec> s2 = lift2[j];
                for (auto& x : s2) x += z;
                if (!boxes_overlap(s1, s2)) continue;
                auto cell = clip(s1, s2);
                if (!cell) continue;
                if (found)
                    throw InputError("torus_intersect: simplexes " + t1.str() + " and " + tops2[j].str() +
                                     " meet in more than one translate");
                found = std::move(cell);
            }
            if (found) assembler.add(t1, tops2[j], std::move(*found));
        }
    }
    return p;
}

std::map<VertexId, std::pair<VertexId, VertexId>> CommonSubdivision::common_vertices() const {
    std::map<VertexId, std::pair<VertexId, VertexId>> out;
    for (VertexId v : complex.vertices()) {
        const Simplex& c1 = over1.carrier.of_vertex(v);
        const Simplex& c2 = over2.carrier.of_vertex(v);
        if (c1.size() == 1 && c2.size() == 1) out.emplace(v, std::make_pair(c1.front(), c2.front()));
    }
    return out;
}

CommonSubdivision barycentric_polytopal(const PolytopalComplex& p) {
    CommonSubdivision out;
    out.n = p.n;
    out.tag = p.tag;
    out.torus = p.torus;
    out.chart = p.chart;

    std::vector<std::size_t> order(p.faces.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& fa = p.faces[a];
        const auto& fb = p.faces[b];
        return std::tie(fa.dim, fa.points) < std::tie(fb.dim, fb.points);
    });
    std::vector<VertexId> label(p.faces.size());
    for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<VertexId>(i);

    out.over1.parent = p.k1;
    out.over2.parent = p.k2;
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
        out.over1.carrier.assign(label[f], p.faces[f].carrier1);
        out.over2.carrier.assign(label[f], p.faces[f].carrier2);
    }

    for (const auto& cell : p.cells) {
        auto centroid = [&](std::size_t f) {
            std::vector<Vec> pts;
            for (auto i : p.faces[f].points) pts.push_back(cell.local.at(i));
            return average(pts);
        };
        for (auto f : cell.faces)
            if (!out.coords.contains(label[f])) {
                const Vec c = centroid(f);
                out.coords.emplace(label[f], p.torus ? wrap(c) : c);
            }
        std::vector<std::size_t> chain;
        std::function<void(std::size_t)> walk = [&](std::size_t f) {
            chain.push_back(f);
            if (p.faces[f].dim == 0) {
                std::vector<VertexId> verts;
                std::vector<std::pair<VertexId, Vec>> placed;
                for (auto g : chain) placed.emplace_back(label[g], centroid(g));
                std::sort(placed.begin(), placed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                std::vector<Vec> lift;
                for (auto& [v, x] : placed) {
                    verts.push_back(v);
                    lift.push_back(x);
                }
                const Simplex top(verts);
                out.complex.insert_with_faces(top);
                out.lifts.emplace(top, std::move(lift));
            } else {
                for (auto g : cell.faces)
                    if (p.faces[g].dim == p.faces[f].dim - 1 && is_subset(p.faces[g].points, p.faces[f].points))
                        walk(g);
            }
            chain.pop_back();
        };
        walk(cell.face);
    }
    out.complex.reserve_labels_below(static_cast<VertexId>(p.faces.size()));
    out.over1.complex = out.complex;
    out.over2.complex = out.complex;
    return out;
}

GeomComplex to_geom_complex(const CommonSubdivision& c) {
    if (c.torus) throw InputError("a torus subdivision has no global geometric model");
    GeomComplex g{c.tag, c.complex, {}};
    for (const auto& [v, x] : c.coords) g.coords.emplace(v, c.chart.from_chart(x));
    return g;
}

FlatTorusComplex to_torus_complex(const CommonSubdivision& c) {
    if (!c.torus) throw InputError("not a torus subdivision");
    FlatTorusComplex t;
    t.n = c.n;
    t.complex = c.complex;
    t.coords = c.coords;
    t.lifts = c.lifts;
    return t;
}

bool CountCheck::all_pass() const {
    return std::all_of(pass.begin(), pass.end(), [](bool b) { return b; });
}

CountCheck commonsub_count_check(const CommonSubdivision& c) {
    CountCheck r;
    r.n = c.n;
    r.p = f_vector(c.over1.parent);
    r.q = f_vector(c.over2.parent);
    r.s = skeleton_counts(c.over1);
    BigInt fact = 1;
    for (int i = 2; i <= c.n + 1; ++i) fact *= i;
    const BigInt factor = ((BigInt(1) << c.n) - 1) * fact * fact;
    for (int i = 0; i <= c.n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const BigInt bound = factor * r.p[ui] * r.q[static_cast<std::size_t>(c.n)];
        r.bound.push_back(bound);
        r.pass.push_back(BigInt(r.s[ui]) < bound);
    }
    return r;
}

Json to_json(const FlatTorusComplex& k) {
    Json j = to_json(k.complex);
    j["geometry"] = "euclidean";
    j["torus"] = true;
    j["n"] = k.n;
    Json coords = Json::object();
    for (const auto& [v, x] : k.coords)
        if (k.complex.has_vertex(v)) coords[std::to_string(v)] = vec_json(x);
    j["coordinates"] = std::move(coords);
    Json lifts = Json::array();
    for (const auto& [t, pts] : k.lifts) {
        Json l = Json::array();
        for (const auto& x : pts) l.push_back(vec_json(x));
        lifts.push_back({{"simplex", to_json(t)}, {"coords", std::move(l)}});
    }
    j["lifts"] = std::move(lifts);
    return j;
}

FlatTorusComplex torus_complex_from_json(const Json& j) {
    FlatTorusComplex k;
    k.complex = complex_from_json(j);
    k.n = j.contains("n") ? j.at("n").get<int>() : k.complex.dimension();
    if (!j.contains("coordinates") || !j.at("coordinates").is_object()) throw InputError("missing \"coordinates\" object");
    for (const auto& [key, value] : j.at("coordinates").items()) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size() || key.empty()) throw InputError("coordinate key \"" + key + "\" is not a vertex label");
        k.coords.emplace(static_cast<VertexId>(v), vec_from_json(value, k.n, "coordinates of vertex " + key));
    }
    if (j.contains("lifts")) {
        for (const auto& l : j.at("lifts")) {
            const Simplex t = simplex_from_json(l.at("simplex"));
            std::vector<Vec> pts;
            for (const auto& x : l.at("coords")) pts.push_back(vec_from_json(x, k.n, "lift of " + t.str()));
            k.lifts.emplace(t, std::move(pts));
        }
    }
    k.validate();
    return k;
}

Json to_json(const PolytopalComplex& p) {
    Json j;
    j["n"] = p.n;
    j["geometry"] = to_string(p.tag);
    j["torus"] = p.torus;
    Json pts = Json::array();
    for (const auto& x : p.points) pts.push_back(vec_json(x));
    j["points"] = std::move(pts);
    Json cells = Json::array();
    for (const auto& c : p.cells) {
        Json local = Json::array();
        for (const auto& [id, x] : c.local) local.push_back(vec_json(x));
        Json ids = Json::array();
        for (const auto& [id, x] : c.local) ids.push_back(id);
        cells.push_back({{"k1", to_json(c.k1)}, {"k2", to_json(c.k2)}, {"points", std::move(ids)},
                         {"coords", std::move(local)}, {"measure", c.measure},
                         {"faces", c.faces}});
    }
    j["cells"] = std::move(cells);
    Json faces = Json::array();
    for (const auto& f : p.faces)
        faces.push_back({{"dim", f.dim}, {"points", f.points}, {"carrier1", to_json(f.carrier1)}, {"carrier2", to_json(f.carrier2)}});
    j["faces"] = std::move(faces);
    j["total_measure"] = p.total_measure();
    j["region_measure1"] = p.region_measure1;
    j["region_measure2"] = p.region_measure2;
    j["log"] = p.log;
    return j;
}

Json to_json(const CommonSubdivision& c) {
    Json j = to_json(c.complex);
    j["geometry"] = to_string(c.tag);
    j["torus"] = c.torus;
    j["n"] = c.n;
    Json coords = Json::object();
    if (c.torus) {
        for (const auto& [v, x] : c.coords) coords[std::to_string(v)] = vec_json(x);
    } else {
        for (const auto& [v, x] : c.coords) coords[std::to_string(v)] = to_json(c.chart.from_chart(x));
    }
    j["coordinates"] = std::move(coords);
    if (c.torus) {
        Json lifts = Json::array();
        for (const auto& [t, pts] : c.lifts) {
            Json l = Json::array();
            for (const auto& x : pts) l.push_back(vec_json(x));
            lifts.push_back({{"simplex", to_json(t)}, {"coords", std::move(l)}});
        }
        j["lifts"] = std::move(lifts);
    }
    j["parent1"] = to_json(c.over1.parent);
    j["parent2"] = to_json(c.over2.parent);
    Json c1 = Json::array(), c2 = Json::array();
    for (VertexId v : c.complex.vertices()) {
        c1.push_back(Json::array({Json::array({v}), to_json(c.over1.carrier.of_vertex(v))}));
        c2.push_back(Json::array({Json::array({v}), to_json(c.over2.carrier.of_vertex(v))}));
    }
    j["carrier1"] = std::move(c1);
    j["carrier2"] = std::move(c2);
    return j;
}

Json to_json(const CountCheck& c) {
    Json j;
    j["n"] = c.n;
    j["p"] = c.p;
    j["q"] = c.q;
    j["s"] = c.s;
    Json bounds = Json::array();
    for (const auto& b : c.bound) bounds.push_back(b.str());
    j["bound"] = std::move(bounds);
    Json pass = Json::array();
    for (bool b : c.pass) pass.push_back(b);
    j["pass"] = std::move(pass);
    j["all_pass"] = c.all_pass();
    return j;
}

}  // namespace geotri
