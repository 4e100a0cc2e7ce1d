#include "geotri/shelling.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "geotri/errors.hpp"

namespace geotri {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::exhausted: return "exhausted";
        case SearchStatus::cap_reached: return "cap_reached";
    }
    return "unknown";
}

namespace {

std::vector<Simplex> pure_tops(const Complex& ball) {
    auto tops = ball.top_simplexes();
    if (ball.maximal_simplexes().size() != tops.size()) throw InputError("expected a pure complex");
    return tops;
}

struct StateKey {
    std::uint64_t a, b;
    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ULL); }
};

// Indexed view of a pure complex's top simplexes with live ridge counts, so
// removing or restoring a top simplex costs time proportional to its vertex stars.
class ShellState {
public:
    explicit ShellState(std::vector<Simplex> tops) : tops_(std::move(tops)) {
        if (tops_.empty()) throw InputError("cannot shell an empty complex");
        std::sort(tops_.begin(), tops_.end());
        n_ = tops_.front().dim();
        const std::size_t count = tops_.size();
        std::unordered_map<Simplex, int, SimplexHash> ridge_index;
        std::unordered_map<VertexId, std::vector<int>> vtops;
        top_ridges_.resize(count);
        for (std::size_t t = 0; t < count; ++t) {
            if (tops_[t].dim() != n_) throw InputError("expected a pure complex");
            for (const auto& f : tops_[t].facets()) {
                auto [it, inserted] = ridge_index.emplace(f, static_cast<int>(ridge_alive_.size()));
                if (inserted) ridge_alive_.push_back(0);
                ++ridge_alive_[static_cast<std::size_t>(it->second)];
                top_ridges_[t].push_back(it->second);
            }
            for (VertexId v : tops_[t]) vtops[v].push_back(static_cast<int>(t));
        }
        if (n_ == 0 && count > 1) throw InputError("a 0-dimensional ball is a single point");
        vertex_tops_ = std::move(vtops);
        alive_.assign(count, 1);
        remaining_ = count;
        std::mt19937_64 rng(0x5eed5e11ULL);
        zobrist_.resize(count);
        for (auto& z : zobrist_) z = {rng(), rng()};
        for (const auto& z : zobrist_) {
            key_.a ^= z.a;
            key_.b ^= z.b;
        }
        status_.resize(count);
        for (std::size_t t = 0; t < count; ++t) status_[t] = compute_status(static_cast<int>(t));
    }

    std::size_t remaining() const { return remaining_; }
    const StateKey& key() const { return key_; }
    const Simplex& top(int t) const { return tops_[static_cast<std::size_t>(t)]; }
    int last_alive() const {
        for (std::size_t t = 0; t < alive_.size(); ++t)
            if (alive_[t]) return static_cast<int>(t);
        return -1;
    }

    // |A| of the unique elementary shelling of top t, or 0 if none.
    int status(int t) const { return status_[static_cast<std::size_t>(t)]; }

    ShellingStep step(int t) const {
        const auto& s = top(t);
        std::vector<VertexId> a, b;
        for (std::size_t i = 0; i < s.size(); ++i) (is_boundary_ridge(t, i) ? a : b).push_back(s[i]);
        return {Simplex(a), Simplex(b)};
    }

    std::vector<int> candidates() const {
        std::vector<int> out;
        for (std::size_t t = 0; t < alive_.size(); ++t)
            if (alive_[t] && status_[t] > 0) out.push_back(static_cast<int>(t));
        std::stable_sort(out.begin(), out.end(), [&](int x, int y) { return status(x) > status(y); });
        return out;
    }

    void remove(int t) { toggle(t, false); }
    void restore(int t) { toggle(t, true); }

private:
    bool is_boundary_ridge(int t, std::size_t i) const {
        return ridge_alive_[static_cast<std::size_t>(top_ridges_[static_cast<std::size_t>(t)][i])] == 1;
    }

    int compute_status(int t) const {
        const auto& s = top(t);
        std::vector<VertexId> a;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (is_boundary_ridge(t, i)) a.push_back(s[i]);
        if (a.empty() || a.size() == s.size()) return 0;
        // A must not lie in the boundary: no boundary ridge of any live top contains it
        const Simplex A(a);
        for (int u : vertex_tops_.at(a.front())) {
            if (!alive_[static_cast<std::size_t>(u)] || !A.is_face_of(top(u))) continue;
            const auto& su = top(u);
            for (std::size_t i = 0; i < su.size(); ++i)
                if (!A.contains(su[i]) && is_boundary_ridge(u, i)) return 0;
        }
        return static_cast<int>(a.size());
    }

    void toggle(int t, bool on) {
        const auto ut = static_cast<std::size_t>(t);
        alive_[ut] = on ? 1 : 0;
        for (int r : top_ridges_[ut]) ridge_alive_[static_cast<std::size_t>(r)] += on ? 1 : -1;
        remaining_ = on ? remaining_ + 1 : remaining_ - 1;
        key_.a ^= zobrist_[ut].a;
        key_.b ^= zobrist_[ut].b;
        for (VertexId v : top(t))
            for (int u : vertex_tops_.at(v))
                if (alive_[static_cast<std::size_t>(u)]) status_[static_cast<std::size_t>(u)] = compute_status(u);
    }

    std::vector<Simplex> tops_;
    int n_ = 0;
    std::vector<std::vector<int>> top_ridges_;
    std::vector<int> ridge_alive_;
    std::unordered_map<VertexId, std::vector<int>> vertex_tops_;
    std::vector<char> alive_;
    std::vector<int> status_;
    std::size_t remaining_ = 0;
    std::vector<StateKey> zobrist_;
    StateKey key_{0, 0};
};

}  // namespace

Complex boundary_complex(const Complex& ball) {
    const auto tops = pure_tops(ball);
    Complex out;
    out.reserve_labels_below(ball.next_free_label());
    const int n = ball.dimension();
    if (n <= 0) return out;
    for (const auto& t : tops)
        for (const auto& f : t.facets())
            if (ball.cofaces_of_dim(f, n).size() == 1) out.insert_with_faces(f);
    return out;
}

std::vector<ShellingStep> elementary_shellings(const Complex& ball) {
    ShellState state(pure_tops(ball));
    std::vector<ShellingStep> out;
    for (int t : state.candidates()) out.push_back(state.step(t));
    return out;
}

ShellingResult find_shelling(const std::vector<Simplex>& tops, const ShellingOptions& options) {
    ShellState state(tops);
    ShellingResult result;
    struct Frame {
        std::vector<int> candidates;
        std::size_t next = 0;
        int removed = -1;
        ShellingStep step;
    };
    auto finish = [&](const std::vector<Frame>& stack) {
        Shelling sh;
        for (const auto& f : stack) sh.steps.push_back(f.step);
        sh.last = state.top(state.last_alive());
        result.status = SearchStatus::found;
        result.shelling = std::move(sh);
        return result;
    };
    if (state.remaining() == 1) return finish({});

    std::unordered_set<StateKey, StateKeyHash> failed;
    std::vector<Frame> stack;
    stack.push_back(Frame{state.candidates(), 0, -1, {}});
    result.nodes = 1;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.removed >= 0) {
            state.restore(f.removed);
            f.removed = -1;
        }
        if (f.next == f.candidates.size()) {
            failed.insert(state.key());
            stack.pop_back();
            continue;
        }
        const int t = f.candidates[f.next++];
        f.step = state.step(t);
        state.remove(t);
        f.removed = t;
        if (state.remaining() == 1) return finish(stack);
        if (failed.contains(state.key())) continue;
        if (++result.nodes > options.max_nodes) {
            result.status = SearchStatus::cap_reached;
            return result;
        }
        stack.push_back(Frame{state.candidates(), 0, -1, {}});
    }
    result.status = SearchStatus::exhausted;
    return result;
}

ShellingResult find_shelling(const Complex& ball, const ShellingOptions& options) {
    return find_shelling(pure_tops(ball), options);
}

SphereShellingResult find_sphere_shelling(const Complex& sphere, const ShellingOptions& options) {
    const auto tops = pure_tops(sphere);
    SphereShellingResult out;
    bool capped = false;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        std::vector<Simplex> rest;
        rest.reserve(tops.size() - 1);
        for (std::size_t j = 0; j < tops.size(); ++j)
            if (j != i) rest.push_back(tops[j]);
        if (rest.empty()) break;
        ShellingOptions budget = options;
        budget.max_nodes = options.max_nodes > out.nodes ? options.max_nodes - out.nodes : 0;
        auto r = find_shelling(rest, budget);
        out.nodes += r.nodes;
        if (r.status == SearchStatus::found) {
            out.status = SearchStatus::found;
            out.removed = tops[i];
            out.shelling = std::move(r.shelling);
            return out;
        }
        if (r.status == SearchStatus::cap_reached) {
            capped = true;
            break;
        }
    }
    out.status = capped ? SearchStatus::cap_reached : SearchStatus::exhausted;
    return out;
}

bool verify_shelling(const Complex& ball, const Shelling& shelling, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<Simplex> tops;
    try {
        tops = pure_tops(ball);
    } catch (const InputError& e) {
        return fail(e.what());
    }
    Complex cur = close_under_faces(tops);
    for (std::size_t i = 0; i < shelling.steps.size(); ++i) {
        const auto& s = shelling.steps[i];
        const std::string at = "step " + std::to_string(i) + " (A=" + s.A.str() + ", B=" + s.B.str() + "): ";
        if (!s.A.disjoint(s.B) || s.A.empty() || s.B.empty()) return fail(at + "A and B must be disjoint and nonempty");
        const Simplex t = s.top();
        if (t.dim() != cur.dimension() || !cur.contains(t)) return fail(at + "not a top simplex of the current ball");
        const Complex bd = boundary_complex(cur);
        if (bd.contains(s.A)) return fail(at + "A lies in the boundary");
        for (const auto& a : s.A)
            if (!bd.contains(t.without(a))) return fail(at + "B * boundary(A) is not in the boundary");
        std::vector<Simplex> rest;
        for (const auto& u : cur.top_simplexes())
            if (u != t) rest.push_back(u);
        cur = close_under_faces(rest);
    }
    const auto remaining = cur.maximal_simplexes();
    if (remaining.size() != 1 || remaining.front() != shelling.last)
        return fail("the shelling does not end at " + shelling.last.str());
    return true;
}

std::vector<PachnerMove> star_in_place(Complex& ambient, const Shelling& shelling, VertexId apex,
                                       bool check_pseudomanifold) {
    std::vector<PachnerMove> moves;
    moves.reserve(shelling.steps.size() + 1);
    moves.push_back({shelling.last, Simplex{apex}, {apex}});
    for (auto it = shelling.steps.rbegin(); it != shelling.steps.rend(); ++it)
        moves.push_back({it->A, it->B.with(apex), {}});
    for (std::size_t i = 0; i < moves.size(); ++i) {
        try {
            apply_in_place(ambient, moves[i]);
        } catch (const InputError& e) {
            throw InvariantError("starring: move " + std::to_string(i) + " rejected by the ambient complex: " + e.what());
        }
        if (check_pseudomanifold && !is_locally_closed_after(ambient, moves[i]))
            throw InvariantError("starring: move " + std::to_string(i) + " broke the pseudomanifold condition");
    }
    return moves;
}

StarResult star_via_shelling(const Complex& ambient, const Complex& ball, std::optional<VertexId> apex,
                             const ShellingOptions& options) {
    if (ball.empty()) throw InputError("star_via_shelling: empty ball");
    if (ball.dimension() != ambient.dimension())
        throw InputError("star_via_shelling: ball is not full-dimensional in the ambient complex");
    for (const auto& s : ball.raw())
        if (!ambient.contains(s)) throw InputError("star_via_shelling: " + s.str() + " is not in the ambient complex");
    const VertexId v = apex.value_or(ambient.next_free_label());
    if (ambient.has_vertex(v)) throw InputError("star_via_shelling: apex " + std::to_string(v) + " already exists");

    auto search = find_shelling(ball, options);
    if (search.status == SearchStatus::cap_reached)
        throw ResourceCapError("star_via_shelling: shelling search cap reached after " + std::to_string(search.nodes) +
                               " nodes");
    if (search.status == SearchStatus::exhausted) throw InputError("star_via_shelling: the ball is not shellable");

    StarResult out;
    out.apex = v;
    out.shelling = *search.shelling;
    out.result = ambient;
    auto moves = star_in_place(out.result, out.shelling, v);
    if (!(link(Simplex{v}, out.result) == boundary_complex(ball)))
        throw InvariantError("star_via_shelling: link of the apex differs from the ball boundary");
    out.sequence = make_sequence(ambient, std::move(moves), out.result);
    return out;
}

}  // namespace geotri
