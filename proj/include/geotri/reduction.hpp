#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geotri/bounds.hpp"
#include "geotri/complex.hpp"
#include "geotri/intersect.hpp"
#include "geotri/io.hpp"
#include "geotri/pachner.hpp"
#include "geotri/shelling.hpp"
#include "geotri/subdivision.hpp"

namespace geotri {

/// One starring: the ball S(A) around the r-simplex A of K replaced by the
/// cone from A's apex over its boundary.
struct TraceRecord {
    int r = 0;
    Simplex A;
    VertexId apex = 0;
    /// Number of r-simplexes of the subdivision carried by A.
    std::size_t pieces = 0;
    /// Top simplexes of S(A); equals the number of moves spent.
    std::size_t ball_size = 0;
    std::size_t moves = 0;
    std::size_t search_nodes = 0;
};

struct LevelSummary {
    int r = 0;
    std::size_t moves = 0;
    std::int64_t s_r = 0;
    BigInt bound;
    bool within_bound = false;
    /// The level ended exactly at the partial subdivision with the reserved apex labels.
    bool verified = false;
};

struct ReductionTrace {
    int n = 0;
    /// f-vector of K and s-vector of the subdivision being reduced.
    std::vector<std::int64_t> p;
    std::vector<std::int64_t> s;
    std::vector<TraceRecord> records;
    std::vector<LevelSummary> levels;
    std::size_t total_moves = 0;
    /// Sum of the per-level bounds.
    BigInt total_bound;
    bool within_total_bound = false;
    /// Bound stated in terms of K' for the second-derived bridge.
    std::optional<BigInt> bridge_bound;
    std::vector<VertexId> removed_vertices;
    bool parent_vertices_kept = false;
    std::vector<std::string> notes;
};

struct ReductionOptions {
    ShellingOptions shelling;
    /// Compare the complex after every level with the independently built partial subdivision.
    bool verify_levels = true;
    /// Local pseudomanifold check after every move.
    bool check_pseudomanifold = false;
    /// First apex label (default: the subdivision's next free label).
    std::optional<VertexId> first_apex_label;
};

struct ReductionResult {
    MoveSequence sequence;
    ReductionTrace trace;
    /// The complex the sequence starts from (the subdivision) and ends at.
    Complex start;
    Complex end;
    /// Vertex of the subdivision standing for each vertex of K.
    std::map<VertexId, VertexId> vertex_map;
    /// Apex label of every positive-dimensional simplex of K.
    ApexLabels apex_labels;
    /// Isomorphism from barycentric(K) (default labels) onto `end`.
    Isomorphism to_beta;
};

/// Moves from alpha(K) to beta(K): for r = n..1 and every r-simplex A of K,
/// the ball S(A) is shelled and starred from A's apex.
ReductionResult alpha_to_beta(const Complex& k, const SubdividedComplex& alpha, const ReductionOptions& options = {});

/// alpha_to_beta with alpha the second derived subdivision of K'.
ReductionResult beta2_bridge(const Complex& k, const SubdividedComplex& kprime, const ReductionOptions& options = {});

struct RelateOptions {
    ReductionOptions reduction;
    /// Full pseudomanifold check every this many moves during the final replay.
    std::size_t full_check_every = 2000;
    /// Lower bound on the injectivity radius used for the depth in the bound.
    double inj = 0.5;
};

struct RelateResult {
    MoveSequence sequence;
    ReductionResult bridge1;
    ReductionResult bridge2;
    CountCheck counts;
    Complex start;
    Complex end;
    std::size_t common_vertices = 0;
    bool common_vertices_kept = false;
    bool replay_verified = false;
    bool endpoints_verified = false;
    /// Smallest depth with kappa^depth Lambda below 2 r(M) = inj.
    std::int64_t presubdivision_depth = 0;
    double Lambda = 0.0;
    std::int64_t m = 1;
    std::int64_t mprime = 1;
    BigInt bound;
    bool within_bound = false;
    std::vector<std::string> notes;
};

/// beta K1 -> beta2 K' -> beta K2 through a common subdivision with carriers
/// into both parents, which must be closed pseudomanifolds.
RelateResult relate(const CommonSubdivision& common, double Lambda, const RelateOptions& options = {});
/// Intersects two flat-torus triangulations and relates them.
RelateResult relate_torus(const FlatTorusComplex& k1, const FlatTorusComplex& k2, const RelateOptions& options = {});

Json to_json(const ReductionTrace& t);
Json to_json(const RelateResult& r);
std::string format_trace(const ReductionTrace& t);

}  // namespace geotri
