#include "geotri/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "geotri/errors.hpp"

namespace geotri {

namespace {

std::vector<BigInt> to_big(const std::vector<std::int64_t>& v) {
    return {v.begin(), v.end()};
}

std::size_t factorial(int n) {
    std::size_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
    return f;
}

// The vertex of alpha with carrier {v}, for every vertex v of K.
std::map<VertexId, VertexId> parent_vertex_map(const Complex& k, const SubdividedComplex& alpha) {
    std::map<VertexId, VertexId> phi;
    for (VertexId v : alpha.complex.vertices()) {
        const Simplex& c = alpha.carrier.of_vertex(v);
        if (c.size() != 1) continue;
        if (!phi.emplace(c.front(), v).second)
            throw InvariantError("carrier inconsistency: two vertices carried by vertex " + std::to_string(c.front()));
    }
    for (VertexId v : k.vertices())
        if (!phi.contains(v)) throw InvariantError("carrier inconsistency: no vertex carried by vertex " + std::to_string(v));
    return phi;
}

}  // namespace

ReductionResult alpha_to_beta(const Complex& k, const SubdividedComplex& alpha, const ReductionOptions& options) {
    const int n = k.dimension();
    if (n < 1) throw InputError("alpha_to_beta: K must have positive dimension");
    if (!is_closed_pseudomanifold(k)) throw InputError("alpha_to_beta: K is not a closed pseudomanifold");
    if (!(alpha.parent == k)) throw InputError("alpha_to_beta: the subdivision is not a subdivision of K");
    try {
        alpha.validate();
    } catch (const InvariantError& e) {
        throw InputError(std::string("alpha_to_beta: ") + e.what());
    }

    ReductionResult out;
    out.start = alpha.complex;
    out.vertex_map = parent_vertex_map(k, alpha);
    const VertexId first = options.first_apex_label.value_or(alpha.complex.next_free_label());
    if (first < alpha.complex.next_free_label())
        throw InputError("alpha_to_beta: apex labels would collide with the subdivision's labels");
    out.apex_labels = allocate_apex_labels(k, first);

    ReductionTrace& trace = out.trace;
    trace.n = n;
    trace.p = f_vector(k);
    trace.s = skeleton_counts(alpha);
    trace.notes.push_back("per-level bounds use p_0 = 2 (the vertices of a ridge link) and p_{-1} = 1, "
                          "not the vertex count of K");
    const auto p_big = to_big(trace.p);

    Complex cur = alpha.complex;
    cur.reserve_labels_below(first);
    Carrier carrier = alpha.carrier;
    std::vector<PachnerMove> moves;
    std::unordered_set<VertexId> parent_images;
    for (const auto& [v, image] : out.vertex_map) parent_images.insert(image);

    for (int r = n; r >= 1; --r) {
        std::map<Simplex, std::vector<Simplex>> pieces;
        for (const auto& sigma : cur.simplexes_of_dim(r)) {
            Simplex c = carrier(sigma);
            if (c.dim() == r) pieces[std::move(c)].push_back(sigma);
        }
        LevelSummary level;
        level.r = r;
        level.s_r = trace.s[static_cast<std::size_t>(r)];
        for (const auto& a : k.simplexes_of_dim(r)) {
            if (!pieces.contains(a)) throw InvariantError("alpha_to_beta: no piece of the subdivision carried by " + a.str());
        }
        for (const auto& [a, sigmas] : pieces) {
            std::set<Simplex> tops;
            for (const auto& sigma : sigmas)
                for (auto& t : cur.cofaces_of_dim(sigma, n)) tops.insert(std::move(t));
            const std::size_t expected = sigmas.size() * factorial(n - r) * k.cofaces_of_dim(a, n).size();
            if (tops.size() != expected)
                throw InvariantError("alpha_to_beta: S(" + a.str() + ") has " + std::to_string(tops.size()) +
                                     " top simplexes, expected " + std::to_string(expected));
            const auto search = find_shelling(std::vector<Simplex>(tops.begin(), tops.end()), options.shelling);
            if (search.status == SearchStatus::cap_reached)
                throw ResourceCapError("alpha_to_beta: shelling search for S(" + a.str() + ") hit the node cap after " +
                                       std::to_string(search.nodes) + " nodes");
            if (search.status == SearchStatus::exhausted)
                throw InputError("alpha_to_beta: S(" + a.str() +
                                 ") is not shellable; pre-subdivide (for example with the second derived bridge)");
            const VertexId apex = out.apex_labels.at(a);
            auto starred = star_in_place(cur, *search.shelling, apex, options.check_pseudomanifold);
            for (const auto& m : starred) {
                if (auto v = m.removed_vertex()) {
                    if (parent_images.contains(*v))
                        throw InvariantError("alpha_to_beta: move removes vertex " + std::to_string(*v) + " of K");
                    trace.removed_vertices.push_back(*v);
                }
            }
            carrier.assign(apex, a);
            trace.records.push_back({r, a, apex, sigmas.size(), tops.size(), starred.size(), search.nodes});
            level.moves += starred.size();
            moves.insert(moves.end(), std::make_move_iterator(starred.begin()), std::make_move_iterator(starred.end()));
        }
        level.bound = level_bound(n, r, p_big, BigInt(level.s_r));
        level.within_bound = BigInt(level.moves) <= level.bound;
        if (options.verify_levels) {
            const auto expected = partial_relative(k, alpha, r - 1, &out.apex_labels);
            if (!(cur == expected.complex))
                throw InvariantError("alpha_to_beta: complex after level " + std::to_string(r) +
                                     " differs from the partial subdivision");
            level.verified = true;
        }
        trace.total_moves += level.moves;
        trace.levels.push_back(level);
    }
    trace.total_bound = induction_bound(n, p_big, to_big(trace.s));
    trace.within_total_bound = BigInt(trace.total_moves) <= trace.total_bound;

    ApexLabels translated;
    for (const auto& [a, label] : out.apex_labels) {
        std::vector<VertexId> image;
        for (VertexId v : a) image.push_back(out.vertex_map.at(v));
        translated.emplace(Simplex(image), label);
    }
    const auto target = barycentric(relabel(k, out.vertex_map), translated);
    if (!(cur == target.complex)) throw InvariantError("alpha_to_beta: final complex differs from the barycentric subdivision");

    const auto beta = barycentric(k);
    for (VertexId v : beta.complex.vertices()) {
        const Simplex& c = beta.carrier.of_vertex(v);
        out.to_beta.vertex_map.emplace(v, c.size() == 1 ? out.vertex_map.at(c.front()) : out.apex_labels.at(c));
    }
    if (!is_isomorphism(beta.complex, cur, out.to_beta))
        throw InvariantError("alpha_to_beta: the end complex is not isomorphic to the barycentric subdivision");

    trace.parent_vertices_kept = std::none_of(trace.removed_vertices.begin(), trace.removed_vertices.end(),
                                              [&](VertexId v) { return parent_images.contains(v); });
    out.end = std::move(cur);
    out.sequence = make_sequence(out.start, std::move(moves), out.end);
    return out;
}

ReductionResult beta2_bridge(const Complex& k, const SubdividedComplex& kprime, const ReductionOptions& options) {
    if (!(kprime.parent == k)) throw InputError("beta2_bridge: K' does not subdivide K");
    const auto alpha = compose(iterated_barycentric(kprime.complex, 2), kprime);
    auto out = alpha_to_beta(k, alpha, options);
    const int n = k.dimension();
    out.trace.bridge_bound = mainlemma_bound(n, to_big(out.trace.p), to_big(skeleton_counts(kprime)));
    if (*out.trace.bridge_bound != out.trace.total_bound)
        throw InvariantError("beta2_bridge: second derived counts disagree with the bound in terms of K'");
    return out;
}

RelateResult relate(const CommonSubdivision& common, double Lambda, const RelateOptions& options) {
    const Complex& k1 = common.over1.parent;
    const Complex& k2 = common.over2.parent;
    const int n = k1.dimension();
    if (k2.dimension() != n) throw InputError("relate: triangulations of different dimensions");
    if (!(common.over1.complex == common.complex) || !(common.over2.complex == common.complex))
        throw InputError("relate: inconsistent common subdivision");

    RelateResult out;
    out.Lambda = Lambda;
    out.counts = commonsub_count_check(common);

    const auto beta2 = iterated_barycentric(common.complex, 2);
    std::size_t positive1 = 0;
    for (const auto& s : k1.raw())
        if (s.dim() > 0) ++positive1;
    ReductionOptions o1 = options.reduction;
    o1.first_apex_label = beta2.complex.next_free_label();
    ReductionOptions o2 = options.reduction;
    o2.first_apex_label = *o1.first_apex_label + static_cast<VertexId>(positive1);

    out.bridge1 = beta2_bridge(k1, common.over1, o1);
    out.bridge2 = beta2_bridge(k2, common.over2, o2);
    if (!(out.bridge1.start == out.bridge2.start)) throw InvariantError("relate: the two bridges start at different complexes");

    out.sequence = concatenate(reversed(out.bridge1.sequence), out.bridge2.sequence);
    out.start = out.bridge1.end;
    out.end = out.bridge2.end;

    ReplayOptions replay;
    replay.check_digests = true;
    replay.check_pseudomanifold = true;
    replay.full_check_every = options.full_check_every;
    const Complex replayed = apply_sequence(out.start, out.sequence, replay);
    if (!(replayed == out.end)) throw InvariantError("relate: replay does not reach the end complex");
    out.replay_verified = true;

    out.endpoints_verified = is_isomorphism(barycentric(k1).complex, out.start, out.bridge1.to_beta) &&
                             is_isomorphism(barycentric(k2).complex, out.end, out.bridge2.to_beta);
    if (!out.endpoints_verified) throw InvariantError("relate: endpoints are not the barycentric subdivisions");

    const auto shared = common.common_vertices();
    out.common_vertices = shared.size();
    std::unordered_set<VertexId> removed;
    for (VertexId v : out.sequence.removed_vertices()) removed.insert(v);
    out.common_vertices_kept = std::none_of(shared.begin(), shared.end(),
                                            [&](const auto& entry) { return removed.contains(entry.first); });
    if (!out.common_vertices_kept) throw InvariantError("relate: a common vertex is removed");

    // depth of pre-subdivision needed for diameters below 2 r(M) = inj
    const double kappa_e = static_cast<double>(n) / (n + 1);
    double diam = Lambda;
    while (diam >= options.inj) {
        diam *= kappa_e;
        ++out.presubdivision_depth;
    }
    if (out.presubdivision_depth > 0)
        out.notes.push_back("inputs need " + std::to_string(out.presubdivision_depth) +
                            " barycentric subdivisions before intersecting");

    const auto p = static_cast<std::int64_t>(k1.count(n));
    const auto q = static_cast<std::int64_t>(k2.count(n));
    out.m = depth_m(mu(GeometryTag::euclidean, n, Real(Lambda)), Real(Lambda), Real(options.inj));
    out.mprime = depth_mprime(out.m, n);
    out.bound = total_bound(n, p, q, out.mprime);
    out.within_bound = BigInt(out.sequence.size()) < out.bound;
    if (!out.within_bound) throw InvariantError("relate: sequence is not shorter than the bound");
    out.notes.push_back("sequence: reverse of the bridge from K1, then the bridge from K2, through beta^2 K'");
    return out;
}

RelateResult relate_torus(const FlatTorusComplex& k1, const FlatTorusComplex& k2, const RelateOptions& options) {
    const auto cells = torus_intersect(k1, k2);
    const double rel = std::abs(cells.total_measure() - 1.0);
    if (rel > 1e-6) throw InvariantError("relate_torus: cells do not cover the torus (measure " + std::to_string(cells.total_measure()) + ")");
    const auto common = barycentric_polytopal(cells);
    const double Lambda = std::max(k1.max_diameter(), k2.max_diameter());
    auto out = relate(common, Lambda, options);
    out.notes.push_back("common subdivision computed on lifts to R^n by translate enumeration");
    for (const auto& line : cells.log) out.notes.push_back(line);
    return out;
}

Json to_json(const ReductionTrace& t) {
    Json j;
    j["n"] = t.n;
    j["p"] = t.p;
    j["s"] = t.s;
    Json levels = Json::array();
    for (const auto& l : t.levels)
        levels.push_back({{"r", l.r}, {"moves", l.moves}, {"s_r", l.s_r}, {"bound", l.bound.str()},
                          {"within_bound", l.within_bound}, {"verified", l.verified}});
    j["levels"] = std::move(levels);
    Json records = Json::array();
    for (const auto& r : t.records)
        records.push_back({{"r", r.r}, {"A", to_json(r.A)}, {"apex", r.apex}, {"pieces", r.pieces},
                           {"ball_size", r.ball_size}, {"moves", r.moves}, {"search_nodes", r.search_nodes}});
    j["records"] = std::move(records);
    j["total_moves"] = t.total_moves;
    j["total_bound"] = t.total_bound.str();
    j["within_total_bound"] = t.within_total_bound;
    if (t.bridge_bound) j["bridge_bound"] = t.bridge_bound->str();
    j["removed_vertices"] = t.removed_vertices.size();
    j["parent_vertices_kept"] = t.parent_vertices_kept;
    j["notes"] = t.notes;
    return j;
}

Json to_json(const RelateResult& r) {
    Json j;
    j["length"] = r.sequence.size();
    j["bridge1"] = to_json(r.bridge1.trace);
    j["bridge2"] = to_json(r.bridge2.trace);
    j["counts"] = to_json(r.counts);
    j["common_vertices"] = r.common_vertices;
    j["common_vertices_kept"] = r.common_vertices_kept;
    j["replay_verified"] = r.replay_verified;
    j["endpoints_verified"] = r.endpoints_verified;
    j["presubdivision_depth"] = r.presubdivision_depth;
    j["Lambda"] = r.Lambda;
    j["m"] = r.m;
    j["mprime"] = r.mprime;
    j["bound"] = r.bound.str();
    j["within_bound"] = r.within_bound;
    j["notes"] = r.notes;
    return j;
}

std::string format_trace(const ReductionTrace& t) {
    std::ostringstream os;
    os << "level  moves      bound      s_r        verified\n";
    for (const auto& l : t.levels) {
        os << std::left;
        os.width(7);
        os << l.r;
        os.width(11);
        os << l.moves;
        os.width(11);
        os << l.bound.str();
        os.width(11);
        os << l.s_r;
        os << (l.verified ? "yes" : "no") << '\n';
    }
    os << "total  " << t.total_moves << " <= " << t.total_bound.str() << (t.within_total_bound ? "" : "  (EXCEEDED)") << '\n';
    if (t.bridge_bound) os << "bound in terms of K': " << t.bridge_bound->str() << '\n';
    for (const auto& note : t.notes) os << "note: " << note << '\n';
    return os.str();
}

}  // namespace geotri
