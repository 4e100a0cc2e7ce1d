#include "geotri/subdivision.hpp"

#include <algorithm>
#include <numeric>

#include "geotri/errors.hpp"

namespace geotri {

const Simplex& Carrier::of_vertex(VertexId v) const {
    auto it = map_.find(v);
    if (it == map_.end()) throw InvariantError("carrier missing for vertex " + std::to_string(v));
    return it->second;
}

Simplex Carrier::operator()(const Simplex& s) const {
    Simplex out;
    for (VertexId v : s) out = out.empty() ? of_vertex(v) : out.unite(of_vertex(v));
    return out;
}

SubdividedComplex SubdividedComplex::identity(const Complex& k) {
    SubdividedComplex s{k, k, {}};
    for (VertexId v : k.vertices()) s.carrier.assign(v, Simplex{v});
    return s;
}

void SubdividedComplex::validate() const {
    for (VertexId v : complex.vertices()) {
        const auto& c = carrier.of_vertex(v);
        if (!parent.contains(c))
            throw InvariantError("carrier of vertex " + std::to_string(v) + " is not a parent simplex");
    }
    std::unordered_map<Simplex, bool, SimplexHash> covered;
    for (const auto& s : complex.raw()) {
        const auto c = carrier(s);
        if (!parent.contains(c))
            throw InvariantError("carrier of " + s.str() + " is not a parent simplex");
        if (s.dim() > c.dim()) throw InvariantError("simplex " + s.str() + " exceeds its carrier's dimension");
        if (s.dim() == c.dim()) covered[c] = true;
    }
    for (const auto& p : parent.raw())
        if (!covered.contains(p)) throw InvariantError("parent simplex " + p.str() + " is not subdivided");
    std::unordered_map<VertexId, int> original;
    for (VertexId v : complex.vertices()) {
        const auto& c = carrier.of_vertex(v);
        if (c.size() == 1 && ++original[c.front()] > 1)
            throw InvariantError("parent vertex " + std::to_string(c.front()) + " has two representatives");
    }
}

ApexLabels allocate_apex_labels(const Complex& k, VertexId first) {
    ApexLabels labels;
    VertexId next = first;
    for (int d = 1; d <= k.dimension(); ++d)
        for (const auto& s : k.simplexes_of_dim(d)) labels.emplace(s, next++);
    return labels;
}

namespace {

void permute_chains(const Simplex& top, const ApexLabels& labels, Complex& out) {
    std::vector<VertexId> perm(top.begin(), top.end());
    do {
        std::vector<VertexId> chain;
        chain.reserve(perm.size());
        std::vector<VertexId> prefix;
        for (VertexId v : perm) {
            prefix.push_back(v);
            if (prefix.size() == 1) {
                chain.push_back(v);
            } else {
                chain.push_back(labels.at(Simplex(prefix)));
            }
        }
        out.insert_with_faces(Simplex(chain));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

SubdividedComplex barycentric(const Complex& k, const ApexLabels& labels) {
    SubdividedComplex s;
    s.parent = k;
    for (const auto& [simplex, label] : labels)
        if (k.has_vertex(label)) throw InputError("barycentric: apex label " + std::to_string(label) + " is a vertex");
    for (const auto& m : k.maximal_simplexes()) permute_chains(m, labels, s.complex);
    for (VertexId v : k.vertices()) s.carrier.assign(v, Simplex{v});
    for (const auto& [simplex, label] : labels)
        if (s.complex.has_vertex(label)) s.carrier.assign(label, simplex);
    s.complex.reserve_labels_below(k.next_free_label());
    return s;
}

SubdividedComplex barycentric(const Complex& k, std::optional<VertexId> first_label) {
    return barycentric(k, allocate_apex_labels(k, first_label.value_or(k.next_free_label())));
}

SubdividedComplex compose(const SubdividedComplex& outer, const SubdividedComplex& inner) {
    SubdividedComplex s;
    s.complex = outer.complex;
    s.parent = inner.parent;
    for (const auto& [v, c] : outer.carrier.vertex_map()) s.carrier.assign(v, inner.carrier(c));
    return s;
}

SubdividedComplex iterated_barycentric(const Complex& k, int m, const SubdivisionLimits& limits) {
    if (m < 0) throw InputError("iterated_barycentric: negative depth");
    auto s = SubdividedComplex::identity(k);
    const int n = k.dimension();
    std::size_t factorial = 1;
    for (int i = 2; i <= n + 1; ++i) factorial *= static_cast<std::size_t>(i);
    for (int level = 0; level < m; ++level) {
        const double predicted = static_cast<double>(s.complex.count(n)) * static_cast<double>(factorial);
        if (predicted > static_cast<double>(limits.max_top_simplexes))
            throw ResourceCapError("iterated_barycentric: level " + std::to_string(level + 1) + " would have " +
                                   std::to_string(static_cast<long long>(predicted)) + " top simplexes");
        s = compose(barycentric(s.complex), s);
    }
    return s;
}

SubdividedComplex partial_relative(const Complex& k, const SubdividedComplex& alpha, int r,
                                   const ApexLabels* labels) {
    const int n = k.dimension();
    if (r < 0 || r > std::max(n, 0)) throw InputError("partial_relative: r out of range");
    if (alpha.parent.size() != k.size() || !(alpha.parent == k))
        throw InputError("partial_relative: alpha does not subdivide the given complex");

    SubdividedComplex out;
    out.parent = k;
    std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash> by_carrier;
    for (const auto& s : alpha.complex.raw()) {
        auto c = alpha.carrier(s);
        if (c.dim() > r) continue;
        if (!k.contains(c)) throw InvariantError("partial_relative: inconsistent carrier for " + s.str());
        out.complex.insert_with_faces(s);
        by_carrier[c].push_back(s);
    }
    for (VertexId v : out.complex.vertices()) out.carrier.assign(v, alpha.carrier.of_vertex(v));

    VertexId next = std::max(alpha.complex.next_free_label(), k.next_free_label());
    for (int d = r + 1; d <= n; ++d) {
        for (const auto& a : k.simplexes_of_dim(d)) {
            VertexId apex;
            if (labels) {
                auto it = labels->find(a);
                if (it == labels->end()) throw InputError("partial_relative: no apex label for " + a.str());
                apex = it->second;
            } else {
                apex = next++;
            }
            if (out.complex.has_vertex(apex))
                throw InputError("partial_relative: apex label " + std::to_string(apex) + " already used");
            std::vector<Simplex> cone{Simplex{apex}};
            for (const auto& f : a.faces()) {
                if (f.size() == a.size()) continue;
                auto it = by_carrier.find(f);
                if (it == by_carrier.end()) throw InvariantError("partial_relative: face " + f.str() + " not subdivided");
                for (const auto& t : it->second) cone.push_back(t.with(apex));
            }
            for (const auto& c : cone) out.complex.insert_with_faces(c);
            out.carrier.assign(apex, a);
            by_carrier[a] = std::move(cone);
        }
    }
    out.complex.reserve_labels_below(next);
    return out;
}

std::vector<std::int64_t> skeleton_counts(const SubdividedComplex& s) {
    const int n = std::max(s.parent.dimension(), 0);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& x : s.complex.raw()) {
        if (x.dim() > n) continue;
        if (s.carrier(x).dim() == x.dim()) ++counts[static_cast<std::size_t>(x.dim())];
    }
    return counts;
}

}  // namespace geotri
