#include "geotri/complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "geotri/errors.hpp"

namespace geotri {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    // splitmix-style combine; stable across platforms
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
    return h;
}

}  // namespace

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::initializer_list<VertexId> vertices)
    : Simplex(std::span<const VertexId>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const VertexId> vertices) : v_(vertices.begin(), vertices.end()) {
    std::sort(v_.begin(), v_.end());
    if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
        throw InputError("simplex has a repeated vertex");
}

Simplex Simplex::from_sorted(Storage vertices) {
    Simplex s;
    s.v_ = std::move(vertices);
    return s;
}

bool Simplex::contains(VertexId v) const { return std::binary_search(v_.begin(), v_.end(), v); }

bool Simplex::is_face_of(const Simplex& other) const {
    return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
}

bool Simplex::disjoint(const Simplex& other) const {
    auto a = v_.begin();
    auto b = other.v_.begin();
    while (a != v_.end() && b != other.v_.end()) {
        if (*a == *b) return false;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return true;
}

Simplex Simplex::with(VertexId v) const {
    Storage out(v_);
    auto it = std::lower_bound(out.begin(), out.end(), v);
    if (it != out.end() && *it == v) return *this;
    out.insert(it, v);
    return from_sorted(std::move(out));
}

Simplex Simplex::without(VertexId v) const {
    Storage out;
    for (VertexId x : v_)
        if (x != v) out.push_back(x);
    return from_sorted(std::move(out));
}

Simplex Simplex::unite(const Simplex& other) const {
    Storage out;
    std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
}

Simplex Simplex::minus(const Simplex& other) const {
    Storage out;
    std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                        std::back_inserter(out));
    return from_sorted(std::move(out));
}

Simplex Simplex::intersect(const Simplex& other) const {
    Storage out;
    std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                          std::back_inserter(out));
    return from_sorted(std::move(out));
}

std::vector<Simplex> Simplex::facets() const {
    std::vector<Simplex> out;
    if (v_.size() < 2) return out;
    out.reserve(v_.size());
    for (std::size_t skip = 0; skip < v_.size(); ++skip) {
        Storage f;
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (i != skip) f.push_back(v_[i]);
        out.push_back(from_sorted(std::move(f)));
    }
    return out;
}

std::vector<Simplex> Simplex::faces() const {
    const std::size_t k = v_.size();
    if (k > 20) throw ResourceCapError("face enumeration of a simplex with more than 20 vertices");
    std::vector<Simplex> out;
    out.reserve((std::size_t{1} << k) - 1);
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        Storage f;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) f.push_back(v_[i]);
        out.push_back(from_sorted(std::move(f)));
    }
    return out;
}

std::size_t Simplex::hash() const {
    std::uint64_t h = 0x51ed270b27u + v_.size();
    for (VertexId v : v_) h = mix(h, v);
    return static_cast<std::size_t>(h);
}

std::string Simplex::str() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? "," : "") << v_[i];
    os << '}';
    return os.str();
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare_three_way(a.v_.begin(), a.v_.end(), b.v_.begin(),
                                                  b.v_.end());
}

// ---------------------------------------------------------------- Complex

int Complex::dimension() const {
    for (int d = static_cast<int>(count_by_dim_.size()) - 1; d >= 0; --d)
        if (count_by_dim_[d] > 0) return d;
    return -1;
}

std::size_t Complex::count(int dim) const {
    if (dim < 0 || dim >= static_cast<int>(count_by_dim_.size())) return 0;
    return count_by_dim_[dim];
}

std::vector<VertexId> Complex::vertices() const {
    std::vector<VertexId> out;
    out.reserve(star_.size());
    for (const auto& [v, _] : star_) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> Complex::simplexes() const {
    std::vector<Simplex> out(simplexes_.begin(), simplexes_.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> Complex::simplexes_of_dim(int dim) const {
    std::vector<Simplex> out;
    if (dim < 0) return out;
    out.reserve(count(dim));
    for (const auto& s : simplexes_)
        if (s.dim() == dim) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> Complex::maximal_simplexes() const {
    std::vector<Simplex> out;
    for (const auto& s : simplexes_) {
        bool maximal = true;
        for (const auto& c : star_.at(s.front())) {
            if (c.size() > s.size() && s.is_face_of(c)) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> Complex::cofaces(const Simplex& s) const {
    std::vector<Simplex> out;
    if (s.empty() || !contains(s)) return out;
    // scan the smallest vertex star
    const std::vector<Simplex>* best = nullptr;
    for (VertexId v : s) {
        const auto& st = star_.at(v);
        if (!best || st.size() < best->size()) best = &st;
    }
    for (const auto& c : *best)
        if (c.size() >= s.size() && s.is_face_of(c)) out.push_back(c);
    return out;
}

std::vector<Simplex> Complex::cofaces_of_dim(const Simplex& s, int dim) const {
    std::vector<Simplex> out;
    if (s.empty() || !contains(s)) return out;
    const std::vector<Simplex>* best = nullptr;
    for (VertexId v : s) {
        const auto& st = star_.at(v);
        if (!best || st.size() < best->size()) best = &st;
    }
    for (const auto& c : *best)
        if (c.dim() == dim && s.is_face_of(c)) out.push_back(c);
    return out;
}

std::size_t Complex::vertex_star_size(VertexId v) const {
    auto it = star_.find(v);
    return it == star_.end() ? 0 : it->second.size();
}

void Complex::reserve_labels_below(VertexId bound) { next_label_ = std::max(next_label_, bound); }

void Complex::insert_one(const Simplex& s) {
    if (!simplexes_.insert(s).second) return;
    const auto d = static_cast<std::size_t>(s.dim());
    if (count_by_dim_.size() <= d) count_by_dim_.resize(d + 1, 0);
    ++count_by_dim_[d];
    for (VertexId v : s) star_[v].push_back(s);
    next_label_ = std::max<VertexId>(next_label_, s[s.size() - 1] + 1);
}

void Complex::erase_one(const Simplex& s) {
    if (simplexes_.erase(s) == 0) return;
    --count_by_dim_[static_cast<std::size_t>(s.dim())];
    for (VertexId v : s) {
        auto it = star_.find(v);
        auto& vec = it->second;
        auto pos = std::find(vec.begin(), vec.end(), s);
        *pos = std::move(vec.back());
        vec.pop_back();
        if (vec.empty()) star_.erase(it);
    }
}

void Complex::insert_with_faces(const Simplex& s) {
    if (s.empty()) throw InputError("empty simplex");
    if (contains(s)) return;
    for (const auto& f : s.faces()) insert_one(f);
}

void Complex::erase_cofaces(const Simplex& s) {
    for (const auto& c : cofaces(s)) erase_one(c);
}

// ---------------------------------------------------------------- operations

Simplex Isomorphism::operator()(const Simplex& s) const {
    std::vector<VertexId> out;
    out.reserve(s.size());
    for (VertexId v : s) {
        auto it = vertex_map.find(v);
        if (it == vertex_map.end()) throw InputError("isomorphism does not cover vertex " + std::to_string(v));
        out.push_back(it->second);
    }
    return Simplex(out);
}

Complex close_under_faces(std::span<const Simplex> maximal) {
    Complex k;
    for (const auto& s : maximal) k.insert_with_faces(s);
    return k;
}

Complex close_under_faces(std::initializer_list<Simplex> maximal) {
    return close_under_faces(std::span<const Simplex>(maximal.begin(), maximal.size()));
}

Complex link(const Simplex& face, const Complex& k) {
    if (!k.contains(face)) throw InputError("link: simplex " + face.str() + " is not in the complex");
    Complex out;
    for (const auto& c : k.cofaces(face))
        if (c.size() > face.size()) out.insert_with_faces(c.minus(face));
    out.reserve_labels_below(k.next_free_label());
    return out;
}

Complex star(const Simplex& face, const Complex& k) {
    if (!k.contains(face)) throw InputError("star: simplex " + face.str() + " is not in the complex");
    Complex out;
    for (const auto& c : k.cofaces(face)) out.insert_with_faces(c);
    out.reserve_labels_below(k.next_free_label());
    return out;
}

Complex join(const Complex& k, const Complex& l) {
    for (VertexId v : k.vertices())
        if (l.has_vertex(v)) throw InputError("join: complexes share vertex " + std::to_string(v));
    if (k.empty()) return l;
    if (l.empty()) return k;
    Complex out;
    const auto mk = k.maximal_simplexes();
    const auto ml = l.maximal_simplexes();
    for (const auto& a : mk)
        for (const auto& b : ml) out.insert_with_faces(a.unite(b));
    return out;
}

Complex simplex_closure(const Simplex& s) {
    Complex out;
    out.insert_with_faces(s);
    return out;
}

Complex simplex_boundary(const Simplex& s) {
    Complex out;
    for (const auto& f : s.facets()) out.insert_with_faces(f);
    out.reserve_labels_below(s[s.size() - 1] + 1);
    return out;
}

std::vector<std::int64_t> f_vector(const Complex& k) {
    std::vector<std::int64_t> out;
    for (int d = 0; d <= k.dimension(); ++d) out.push_back(static_cast<std::int64_t>(k.count(d)));
    return out;
}

std::int64_t euler_characteristic(const Complex& k) {
    std::int64_t chi = 0;
    for (int d = 0; d <= k.dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(k.count(d));
    return chi;
}

bool is_pure(const Complex& k) {
    const int n = k.dimension();
    for (const auto& s : k.raw())
        if (s.dim() < n && k.cofaces_of_dim(s, s.dim() + 1).empty()) return false;
    return true;
}

bool is_closed_pseudomanifold(const Complex& k) {
    const int n = k.dimension();
    if (n < 0) return false;
    if (n == 0) return k.count(0) == 2;
    if (!is_pure(k)) return false;
    const auto tops = k.top_simplexes();
    std::unordered_map<Simplex, std::size_t, SimplexHash> index;
    for (std::size_t i = 0; i < tops.size(); ++i) index.emplace(tops[i], i);
    std::vector<std::vector<std::size_t>> adj(tops.size());
    for (const auto& ridge : k.simplexes_of_dim(n - 1)) {
        auto cof = k.cofaces_of_dim(ridge, n);
        if (cof.size() != 2) return false;
        std::size_t a = index.at(cof[0]), b = index.at(cof[1]);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(tops.size(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        auto t = q.front();
        q.pop();
        for (auto u : adj[t])
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                q.push(u);
            }
    }
    return reached == tops.size();
}

Complex relabel(const Complex& k, const std::map<VertexId, VertexId>& map) {
    Complex out;
    for (const auto& s : k.maximal_simplexes()) {
        std::vector<VertexId> img;
        for (VertexId v : s) {
            auto it = map.find(v);
            img.push_back(it == map.end() ? v : it->second);
        }
        out.insert_with_faces(Simplex(img));
    }
    if (out.size() != k.size()) throw InputError("relabel: map is not injective on the complex");
    return out;
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IndexedComplex {
    std::vector<VertexId> labels;                          // index -> label
    std::unordered_map<VertexId, std::uint32_t> index;     // label -> index
    std::vector<std::vector<std::uint32_t>> neighbours;    // sorted
    std::vector<std::vector<Simplex>> stars;               // simplexes containing each vertex
    std::vector<std::uint64_t> colour;
};

IndexedComplex index_complex(const Complex& k) {
    IndexedComplex ic;
    ic.labels = k.vertices();
    for (std::uint32_t i = 0; i < ic.labels.size(); ++i) ic.index.emplace(ic.labels[i], i);
    const std::size_t n = ic.labels.size();
    ic.neighbours.resize(n);
    ic.stars.resize(n);
    ic.colour.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const Simplex v{ic.labels[i]};
        ic.stars[i] = k.cofaces(v);
        for (const auto& e : ic.stars[i])
            if (e.size() == 2) ic.neighbours[i].push_back(ic.index.at(e[0] == ic.labels[i] ? e[1] : e[0]));
        std::sort(ic.neighbours[i].begin(), ic.neighbours[i].end());
        // initial colour: link f-vector (degree is its first entry)
        std::vector<std::uint64_t> fv;
        for (const auto& s : ic.stars[i]) {
            const auto d = s.size() - 1;
            if (fv.size() <= d) fv.resize(d + 1, 0);
            ++fv[d];
        }
        std::uint64_t h = 0x1234567u;
        for (auto c : fv) h = mix(h, c);
        ic.colour[i] = h;
    }
    return ic;
}

void refine_colours(IndexedComplex& ic, int rounds) {
    for (int r = 0; r < rounds; ++r) {
        std::vector<std::uint64_t> next(ic.colour.size());
        for (std::size_t i = 0; i < ic.colour.size(); ++i) {
            std::vector<std::uint64_t> nb;
            nb.reserve(ic.neighbours[i].size());
            for (auto j : ic.neighbours[i]) nb.push_back(ic.colour[j]);
            std::sort(nb.begin(), nb.end());
            std::uint64_t h = mix(ic.colour[i], 0xabcdefu + r);
            for (auto c : nb) h = mix(h, c);
            next[i] = h;
        }
        ic.colour = std::move(next);
    }
}

std::vector<std::uint64_t> sorted_colours(const IndexedComplex& ic) {
    auto c = ic.colour;
    std::sort(c.begin(), c.end());
    return c;
}

class IsoSearch {
public:
    IsoSearch(const Complex& k, const Complex& l, IndexedComplex ik, IndexedComplex il,
              std::size_t max_nodes)
        : k_(k), l_(l), ik_(std::move(ik)), il_(std::move(il)), max_nodes_(max_nodes) {
        const std::size_t n = ik_.labels.size();
        fwd_.assign(n, kUnmapped);
        bwd_.assign(n, kUnmapped);
        for (std::size_t j = 0; j < n; ++j) by_colour_[il_.colour[j]].push_back(static_cast<std::uint32_t>(j));
        build_order();
    }

    bool run() { return extend(0); }

    Isomorphism result() const {
        Isomorphism iso;
        for (std::size_t i = 0; i < fwd_.size(); ++i) iso.vertex_map[ik_.labels[i]] = il_.labels[fwd_[i]];
        return iso;
    }

private:
    static constexpr std::uint32_t kUnmapped = 0xffffffffu;

    void build_order() {
        const std::size_t n = ik_.labels.size();
        std::unordered_map<std::uint64_t, std::size_t> freq;
        for (auto c : ik_.colour) ++freq[c];
        std::vector<char> placed(n, 0);
        std::vector<std::size_t> mapped_nb(n, 0);
        order_.reserve(n);
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t best = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (placed[i]) continue;
                if (best == n) {
                    best = i;
                    continue;
                }
                auto key = [&](std::size_t x) {
                    return std::make_tuple(-static_cast<long>(mapped_nb[x]), freq[ik_.colour[x]], x);
                };
                if (key(i) < key(best)) best = i;
            }
            placed[best] = 1;
            order_.push_back(static_cast<std::uint32_t>(best));
            for (auto j : ik_.neighbours[best]) ++mapped_nb[j];
        }
    }

    bool consistent(std::uint32_t u, std::uint32_t x) {
        for (auto w : ik_.neighbours[u]) {
            if (fwd_[w] == kUnmapped) continue;
            if (!std::binary_search(il_.neighbours[x].begin(), il_.neighbours[x].end(), fwd_[w])) return false;
        }
        fwd_[u] = x;
        bwd_[x] = u;
        bool ok = true;
        for (const auto& s : ik_.stars[u]) {
            std::vector<VertexId> img;
            img.reserve(s.size());
            for (VertexId v : s) {
                auto m = fwd_[ik_.index.at(v)];
                if (m == kUnmapped) break;
                img.push_back(il_.labels[m]);
            }
            if (img.size() == s.size() && !l_.contains(Simplex(img))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            for (const auto& s : il_.stars[x]) {
                std::vector<VertexId> pre;
                pre.reserve(s.size());
                for (VertexId v : s) {
                    auto m = bwd_[il_.index.at(v)];
                    if (m == kUnmapped) break;
                    pre.push_back(ik_.labels[m]);
                }
                if (pre.size() == s.size() && !k_.contains(Simplex(pre))) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            fwd_[u] = kUnmapped;
            bwd_[x] = kUnmapped;
        }
        return ok;
    }

    bool extend(std::size_t depth) {
        if (depth == order_.size()) return true;
        if (++nodes_ > max_nodes_) throw ResourceCapError("isomorphism search node cap reached");
        const auto u = order_[depth];
        // candidates: neighbours of the image of an already mapped neighbour, else same colour class
        const std::vector<std::uint32_t>* pool = &by_colour_[ik_.colour[u]];
        for (auto w : ik_.neighbours[u])
            if (fwd_[w] != kUnmapped) {
                pool = &il_.neighbours[fwd_[w]];
                break;
            }
        for (auto x : *pool) {
            if (bwd_[x] != kUnmapped || il_.colour[x] != ik_.colour[u]) continue;
            if (!consistent(u, x)) continue;
            if (extend(depth + 1)) return true;
            fwd_[u] = kUnmapped;
            bwd_[x] = kUnmapped;
        }
        return false;
    }

    const Complex& k_;
    const Complex& l_;
    IndexedComplex ik_, il_;
    std::size_t max_nodes_;
    std::size_t nodes_ = 0;
    std::vector<std::uint32_t> fwd_, bwd_, order_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_colour_;
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const Complex& k, const Complex& l,
                                            const IsomorphismOptions& options) {
    if (f_vector(k) != f_vector(l)) return std::nullopt;
    if (k.empty()) return Isomorphism{};
    auto ik = index_complex(k);
    auto il = index_complex(l);
    refine_colours(ik, 3);
    refine_colours(il, 3);
    if (sorted_colours(ik) != sorted_colours(il)) return std::nullopt;
    IsoSearch search(k, l, std::move(ik), std::move(il), options.max_nodes);
    if (!search.run()) return std::nullopt;
    return search.result();
}

bool is_isomorphism(const Complex& k, const Complex& l, const Isomorphism& iso) {
    if (k.size() != l.size()) return false;
    std::unordered_set<VertexId> image;
    for (VertexId v : k.vertices()) {
        auto it = iso.vertex_map.find(v);
        if (it == iso.vertex_map.end() || !image.insert(it->second).second) return false;
    }
    for (const auto& s : k.raw())
        if (!l.contains(iso(s))) return false;
    return true;
}

std::uint64_t isomorphism_signature(const Complex& k) {
    auto ik = index_complex(k);
    refine_colours(ik, 2);
    std::uint64_t h = 0xfeedu;
    for (auto c : f_vector(k)) h = mix(h, static_cast<std::uint64_t>(c));
    for (auto c : sorted_colours(ik)) h = mix(h, c);
    return h;
}

}  // namespace geotri
