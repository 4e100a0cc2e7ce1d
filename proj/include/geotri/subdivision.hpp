#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "geotri/complex.hpp"

namespace geotri {

/// Sends each vertex of a subdivision to the parent simplex that contains it in
/// its relative interior. The carrier of a simplex (smallest parent simplex
/// containing it) is the union of its vertices' carriers, which makes the map
/// monotone under taking faces by construction.
class Carrier {
public:
    void assign(VertexId v, Simplex parent) { map_[v] = std::move(parent); }
    bool has(VertexId v) const { return map_.contains(v); }
    const Simplex& of_vertex(VertexId v) const;
    Simplex operator()(const Simplex& s) const;
    std::size_t size() const { return map_.size(); }
    const std::unordered_map<VertexId, Simplex>& vertex_map() const { return map_; }

private:
    std::unordered_map<VertexId, Simplex> map_;
};

struct SubdividedComplex {
    Complex complex;
    Complex parent;
    Carrier carrier;

    static SubdividedComplex identity(const Complex& k);
    /// Throws InvariantError if the carrier is missing, points outside the
    /// parent, or leaves some parent simplex uncovered.
    void validate() const;
};

struct SubdivisionLimits {
    std::size_t max_top_simplexes = 5'000'000;
};

/// Labels reserved for cone apexes, keyed by the parent simplex they subdivide.
using ApexLabels = std::map<Simplex, VertexId>;

/// One fresh vertex per positive-dimensional simplex, allocated in (dimension,
/// lexicographic) order starting at `first_label` (default: the complex's next
/// free label). Original vertices keep their labels.
SubdividedComplex barycentric(const Complex& k, std::optional<VertexId> first_label = std::nullopt);
/// Same, with apex labels taken from `labels`.
SubdividedComplex barycentric(const Complex& k, const ApexLabels& labels);

/// `outer` subdivides `inner.complex`; the result subdivides `inner.parent`.
SubdividedComplex compose(const SubdividedComplex& outer, const SubdividedComplex& inner);

SubdividedComplex iterated_barycentric(const Complex& k, int m, const SubdivisionLimits& limits = {});

/// The relative partial subdivision: parent simplexes of dimension <= r keep
/// their subdivision from `alpha`, higher ones are coned over their already
/// subdivided boundary, dimension by dimension. Apex labels come from `labels`
/// when given, else fresh above `alpha.complex` in (dimension, lexicographic)
/// order.
SubdividedComplex partial_relative(const Complex& k, const SubdividedComplex& alpha, int r,
                                   const ApexLabels* labels = nullptr);

/// s_i: number of i-simplexes whose carrier has dimension i, for i = 0..dim(parent).
std::vector<std::int64_t> skeleton_counts(const SubdividedComplex& s);

/// Reserves apex labels for every positive-dimensional simplex of `k`, in
/// (dimension, lexicographic) order starting at `first`.
ApexLabels allocate_apex_labels(const Complex& k, VertexId first);

}  // namespace geotri
