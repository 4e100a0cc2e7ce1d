#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace geotri {

using VertexId = std::uint32_t;

/// A nonempty, strictly increasing tuple of vertex labels.
class Simplex {
public:
    using Storage = boost::container::small_vector<VertexId, 6>;
    using const_iterator = Storage::const_iterator;

    Simplex() = default;
    Simplex(std::initializer_list<VertexId> vertices);
    explicit Simplex(std::span<const VertexId> vertices);
    explicit Simplex(const std::vector<VertexId>& vertices)
        : Simplex(std::span<const VertexId>(vertices)) {}

    /// Wraps an already sorted, duplicate-free tuple without re-checking.
    static Simplex from_sorted(Storage vertices);

    int dim() const { return static_cast<int>(v_.size()) - 1; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    VertexId operator[](std::size_t i) const { return v_[i]; }
    VertexId front() const { return v_.front(); }
    const_iterator begin() const { return v_.begin(); }
    const_iterator end() const { return v_.end(); }
    std::vector<VertexId> to_vector() const { return {v_.begin(), v_.end()}; }

    bool contains(VertexId v) const;
    bool is_face_of(const Simplex& other) const;
    bool disjoint(const Simplex& other) const;

    Simplex with(VertexId v) const;
    Simplex without(VertexId v) const;
    Simplex unite(const Simplex& other) const;
    Simplex minus(const Simplex& other) const;
    Simplex intersect(const Simplex& other) const;

    /// Codimension-one faces, in the order "drop vertex 0, drop vertex 1, ...".
    std::vector<Simplex> facets() const;
    /// Every nonempty face, the simplex itself included.
    std::vector<Simplex> faces() const;

    std::size_t hash() const;
    std::string str() const;

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);

private:
    Storage v_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return s.hash(); }
};

using SimplexSet = std::unordered_set<Simplex, SimplexHash>;

/// Downward-closed set of simplexes, stored in full.
///
/// Value type: copies are deep. The mutators exist for builders that assemble
/// or rewrite a complex step by step; every public operation in the library
/// that takes a `const Complex&` leaves its argument untouched.
class Complex {
public:
    Complex() = default;

    bool contains(const Simplex& s) const { return simplexes_.contains(s); }
    bool has_vertex(VertexId v) const { return star_.contains(v); }
    std::size_t size() const { return simplexes_.size(); }
    bool empty() const { return simplexes_.empty(); }
    /// Largest simplex dimension, -1 for the empty complex.
    int dimension() const;
    std::size_t count(int dim) const;

    std::vector<VertexId> vertices() const;
    std::vector<Simplex> simplexes() const;
    std::vector<Simplex> simplexes_of_dim(int dim) const;
    std::vector<Simplex> maximal_simplexes() const;
    /// Simplexes of dimension `dimension()`.
    std::vector<Simplex> top_simplexes() const { return simplexes_of_dim(dimension()); }
    const SimplexSet& raw() const { return simplexes_; }

    /// Every simplex containing `s` (including `s`), unordered. Empty if `s` is absent.
    std::vector<Simplex> cofaces(const Simplex& s) const;
    /// Cofaces of `s` with dimension `dim`, unordered.
    std::vector<Simplex> cofaces_of_dim(const Simplex& s, int dim) const;
    std::size_t vertex_star_size(VertexId v) const;

    /// Lowest label never used in this complex's lineage.
    VertexId next_free_label() const { return next_label_; }
    VertexId allocate_label() { return next_label_++; }
    void reserve_labels_below(VertexId bound);

    void insert_with_faces(const Simplex& s);
    /// Removes every simplex containing `s`.
    void erase_cofaces(const Simplex& s);

    friend bool operator==(const Complex& a, const Complex& b) { return a.simplexes_ == b.simplexes_; }

private:
    void insert_one(const Simplex& s);
    void erase_one(const Simplex& s);

    SimplexSet simplexes_;
    std::unordered_map<VertexId, std::vector<Simplex>> star_;
    std::vector<std::size_t> count_by_dim_;
    VertexId next_label_ = 0;
};

/// Bijection between vertex sets inducing a bijection of simplexes.
struct Isomorphism {
    std::map<VertexId, VertexId> vertex_map;

    Simplex operator()(const Simplex& s) const;
};

Complex close_under_faces(std::span<const Simplex> maximal);
Complex close_under_faces(std::initializer_list<Simplex> maximal);

Complex link(const Simplex& face, const Complex& k);
Complex star(const Simplex& face, const Complex& k);
Complex join(const Complex& k, const Complex& l);
/// Subcomplex made of all faces of `s` (the simplex together with its boundary).
Complex simplex_closure(const Simplex& s);
/// Proper faces of `s`.
Complex simplex_boundary(const Simplex& s);

std::vector<std::int64_t> f_vector(const Complex& k);
std::int64_t euler_characteristic(const Complex& k);
bool is_pure(const Complex& k);
/// Pure, every ridge in exactly two top simplexes, strongly connected through ridges.
bool is_closed_pseudomanifold(const Complex& k);

Complex relabel(const Complex& k, const std::map<VertexId, VertexId>& map);

struct IsomorphismOptions {
    std::size_t max_nodes = 50'000'000;
};

/// Backtracking search; candidates ordered by refined (degree, link f-vector) colours.
std::optional<Isomorphism> find_isomorphism(const Complex& k, const Complex& l,
                                            const IsomorphismOptions& options = {});
bool is_isomorphism(const Complex& k, const Complex& l, const Isomorphism& iso);

/// Relabelling-invariant hash (f-vector plus sorted vertex-link profiles).
std::uint64_t isomorphism_signature(const Complex& k);

}  // namespace geotri
