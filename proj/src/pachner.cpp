#include "geotri/pachner.hpp"

#include <algorithm>
#include <unordered_map>

#include "geotri/errors.hpp"
#include "geotri/io.hpp"

namespace geotri {

std::optional<VertexId> PachnerMove::removed_vertex() const {
    if (source.size() == 1) return source.front();
    return std::nullopt;
}

std::optional<VertexId> PachnerMove::added_vertex() const {
    if (target.size() == 1) return target.front();
    return std::nullopt;
}

std::vector<VertexId> MoveSequence::removed_vertices() const {
    std::vector<VertexId> out;
    for (const auto& m : moves)
        if (auto v = m.removed_vertex()) out.push_back(*v);
    return out;
}

std::optional<Simplex> applicable(const Complex& k, const Simplex& source) {
    if (!k.contains(source)) throw InputError("applicable: " + source.str() + " is not in the complex");
    const int n = k.dimension();
    const int r = source.dim();
    if (r == n) return Simplex{k.next_free_label()};
    const auto cof = k.cofaces(source);
    std::vector<VertexId> verts;
    for (const auto& c : cof)
        for (VertexId v : c)
            if (!source.contains(v)) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (static_cast<int>(verts.size()) != n - r + 1) return std::nullopt;
    Simplex target(verts);
    if (k.contains(target)) return std::nullopt;
    // the link is a subcomplex of the proper faces of `target`; equality is a count
    const std::size_t link_size = cof.size() - 1;
    const std::size_t boundary_size = (std::size_t{1} << verts.size()) - 2;
    if (link_size != boundary_size) return std::nullopt;
    return target;
}

namespace {

void check_move(const Complex& k, const PachnerMove& move) {
    if (!move.source.disjoint(move.target)) throw InputError("move: source and target intersect");
    const int n = k.dimension();
    if (move.source.dim() + move.target.dim() != n)
        throw InputError("move: dimensions " + std::to_string(move.source.dim()) + " + " +
                         std::to_string(move.target.dim()) + " do not sum to " + std::to_string(n));
    if (move.source.dim() == n) {
        if (!k.contains(move.source)) throw InputError("move: " + move.source.str() + " is not in the complex");
        if (k.has_vertex(move.target.front()))
            throw InputError("move: new vertex " + std::to_string(move.target.front()) + " already exists");
        return;
    }
    auto b = applicable(k, move.source);
    if (!b || *b != move.target)
        throw InputError("move: link of " + move.source.str() + " is not the boundary of " + move.target.str() +
                         " or the target already exists");
}

std::vector<VertexId> fresh_vertices(const Complex& k, const Simplex& target) {
    std::vector<VertexId> out;
    for (VertexId v : target)
        if (!k.has_vertex(v)) out.push_back(v);
    return out;
}

}  // namespace

void apply_in_place(Complex& k, const PachnerMove& move) {
    check_move(k, move);
    if (fresh_vertices(k, move.target) != move.fresh)
        throw InputError("move: recorded fresh vertices do not match");
    k.erase_cofaces(move.source);
    if (move.source.size() == 1) {
        k.insert_with_faces(move.target);
    } else {
        for (const auto& f : move.source.facets()) k.insert_with_faces(f.unite(move.target));
    }
}

Complex apply(const Complex& k, const PachnerMove& move) {
    Complex out = k;
    apply_in_place(out, move);
    return out;
}

PachnerMove invert(const PachnerMove& move) {
    PachnerMove inv{move.target, move.source, {}};
    if (move.source.size() == 1) inv.fresh = {move.source.front()};
    return inv;
}

MoveSequence reversed(const MoveSequence& seq) {
    MoveSequence out;
    out.start_digest = seq.end_digest;
    out.end_digest = seq.start_digest;
    out.moves.reserve(seq.moves.size());
    for (auto it = seq.moves.rbegin(); it != seq.moves.rend(); ++it) out.moves.push_back(invert(*it));
    return out;
}

MoveSequence concatenate(const MoveSequence& first, const MoveSequence& second) {
    if (first.end_digest != second.start_digest)
        throw InputError("concatenate: sequences do not meet (" + first.end_digest + " vs " + second.start_digest + ")");
    MoveSequence out = first;
    out.moves.insert(out.moves.end(), second.moves.begin(), second.moves.end());
    out.end_digest = second.end_digest;
    return out;
}

std::vector<PachnerMove> enumerate_moves(const Complex& k) {
    auto all = k.simplexes();
    std::stable_sort(all.begin(), all.end(), [](const Simplex& a, const Simplex& b) { return a.dim() < b.dim(); });
    std::vector<PachnerMove> out;
    for (const auto& a : all) {
        auto b = applicable(k, a);
        if (!b) continue;
        PachnerMove m{a, *b, {}};
        m.fresh = fresh_vertices(k, *b);
        out.push_back(std::move(m));
    }
    return out;
}

bool is_locally_closed_after(const Complex& k, const PachnerMove& move) {
    const int n = k.dimension();
    auto ok = [&](const Simplex& t) {
        if (t.dim() != n) return false;
        for (const auto& ridge : t.facets())
            if (k.cofaces_of_dim(ridge, n).size() != 2) return false;
        return true;
    };
    if (move.source.size() == 1) return ok(move.target);
    for (const auto& f : move.source.facets())
        if (!ok(f.unite(move.target))) return false;
    return true;
}

Complex apply_sequence(const Complex& k, const MoveSequence& seq, const ReplayOptions& options) {
    if (options.check_digests && !seq.start_digest.empty() && digest(k) != seq.start_digest)
        throw InvariantError("replay: start complex digest mismatch");
    if (options.check_pseudomanifold && !is_closed_pseudomanifold(k))
        throw InvariantError("replay: start complex is not a closed pseudomanifold");
    Complex cur = k;
    for (std::size_t i = 0; i < seq.moves.size(); ++i) {
        try {
            apply_in_place(cur, seq.moves[i]);
        } catch (const InputError& e) {
            throw InvariantError("replay: move " + std::to_string(i) + " not applicable: " + e.what());
        }
        if (options.check_pseudomanifold) {
            if (!is_locally_closed_after(cur, seq.moves[i]))
                throw InvariantError("replay: after move " + std::to_string(i) +
                                     " the rewritten region is not a closed pseudomanifold");
            if (options.full_check_every && (i + 1) % options.full_check_every == 0 && !is_closed_pseudomanifold(cur))
                throw InvariantError("replay: complex after move " + std::to_string(i) + " is not a closed pseudomanifold");
        }
    }
    if (options.check_pseudomanifold && !is_closed_pseudomanifold(cur))
        throw InvariantError("replay: end complex is not a closed pseudomanifold");
    if (options.check_digests && !seq.end_digest.empty() && digest(cur) != seq.end_digest)
        throw InvariantError("replay: end complex digest mismatch");
    return cur;
}

MoveSequence make_sequence(const Complex& start, std::vector<PachnerMove> moves, const Complex& end) {
    return MoveSequence{std::move(moves), digest(start), digest(end)};
}

std::optional<BfsResult> bfs_equivalence(const Complex& k, const Complex& l, const BfsOptions& options) {
    struct State {
        Complex complex;
        std::ptrdiff_t parent;
        PachnerMove move;
        int depth;
    };
    const auto target_sig = isomorphism_signature(l);
    std::vector<State> states;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    states.push_back({k, -1, {}, 0});
    seen[isomorphism_signature(k)].push_back(0);

    auto finish = [&](std::size_t idx, Isomorphism iso) {
        std::vector<PachnerMove> path;
        for (auto i = static_cast<std::ptrdiff_t>(idx); states[i].parent >= 0; i = states[i].parent)
            path.push_back(states[i].move);
        std::reverse(path.begin(), path.end());
        BfsResult r;
        r.end = states[idx].complex;
        r.sequence = make_sequence(k, std::move(path), r.end);
        r.to_target = std::move(iso);
        r.visited = states.size();
        return r;
    };

    for (std::size_t head = 0; head < states.size(); ++head) {
        if (isomorphism_signature(states[head].complex) == target_sig)
            if (auto iso = find_isomorphism(states[head].complex, l)) return finish(head, std::move(*iso));
        if (states[head].depth >= options.max_depth) continue;
        for (auto& m : enumerate_moves(states[head].complex)) {
            Complex next = apply(states[head].complex, m);
            const auto sig = isomorphism_signature(next);
            auto& bucket = seen[sig];
            bool duplicate = false;
            for (auto idx : bucket)
                if (find_isomorphism(states[idx].complex, next)) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            if (states.size() >= options.max_states) throw ResourceCapError("bfs_equivalence: state cap reached");
            bucket.push_back(states.size());
            states.push_back({std::move(next), static_cast<std::ptrdiff_t>(head), std::move(m), states[head].depth + 1});
        }
    }
    return std::nullopt;
}

}  // namespace geotri
