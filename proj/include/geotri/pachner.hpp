#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geotri/complex.hpp"

namespace geotri {

/// The bistellar move that removes `source * boundary(target)` and inserts
/// `boundary(source) * target`. Valid when link(source) = boundary(target) and
/// target is not already in the complex.
struct PachnerMove {
    Simplex source;
    Simplex target;
    /// Vertices of `target` that do not exist before the move (only when target is a vertex).
    std::vector<VertexId> fresh;

    /// The interior vertex deleted by the move, if `source` is a vertex.
    std::optional<VertexId> removed_vertex() const;
    /// The vertex created by the move, if `target` is a vertex.
    std::optional<VertexId> added_vertex() const;

    friend bool operator==(const PachnerMove&, const PachnerMove&) = default;
};

struct MoveSequence {
    std::vector<PachnerMove> moves;
    std::string start_digest;
    std::string end_digest;

    std::size_t size() const { return moves.size(); }
    /// Vertices deleted by some move of the sequence, in order of removal.
    std::vector<VertexId> removed_vertices() const;
};

/// The simplex B with link(A, K) = boundary(B) and B not in K, if any. When A is
/// top-dimensional, B is the next free label of K.
std::optional<Simplex> applicable(const Complex& k, const Simplex& source);

/// Applies a move, throwing InputError if its precondition fails.
Complex apply(const Complex& k, const PachnerMove& move);
/// In-place variant used by long replays; same checks.
void apply_in_place(Complex& k, const PachnerMove& move);

/// True when every ridge of the top simplexes inserted by `move` (already
/// applied to `k`) lies in exactly two top simplexes.
bool is_locally_closed_after(const Complex& k, const PachnerMove& move);

PachnerMove invert(const PachnerMove& move);
MoveSequence reversed(const MoveSequence& seq);
/// Concatenation; the end digest of `first` must match the start digest of `second`.
MoveSequence concatenate(const MoveSequence& first, const MoveSequence& second);

/// Every applicable move, ordered by (dim source, source vertices).
std::vector<PachnerMove> enumerate_moves(const Complex& k);

struct ReplayOptions {
    /// Verify the start/end digests recorded in the sequence.
    bool check_digests = true;
    /// After each move, check that the rewritten region is locally a closed
    /// pseudomanifold (every ridge of the inserted top simplexes has two cofaces);
    /// the full check runs at the start, the end and every `full_check_every` moves.
    bool check_pseudomanifold = false;
    std::size_t full_check_every = 0;
};

Complex apply_sequence(const Complex& k, const MoveSequence& seq, const ReplayOptions& options = {});
/// Builds a sequence record for moves that take `start` to `end`.
MoveSequence make_sequence(const Complex& start, std::vector<PachnerMove> moves, const Complex& end);

struct BfsResult {
    MoveSequence sequence;
    Complex end;
    /// Isomorphism from `end` onto the requested target.
    Isomorphism to_target;
    std::size_t visited = 0;
};

struct BfsOptions {
    int max_depth = 4;
    std::size_t max_states = 200'000;
};

/// Shortest move sequence from `k` to a complex isomorphic to `l`, exploring
/// states up to isomorphism. Absent if none exists within `max_depth`; throws
/// ResourceCapError when `max_states` is exceeded.
std::optional<BfsResult> bfs_equivalence(const Complex& k, const Complex& l, const BfsOptions& options = {});

}  // namespace geotri
