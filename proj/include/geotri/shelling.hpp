#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geotri/complex.hpp"
#include "geotri/pachner.hpp"

namespace geotri {

/// Removal of the top simplex A * B from a ball M, allowed when A meets the
/// boundary of M exactly in the boundary of A and B * boundary(A) lies in the
/// boundary of M.
struct ShellingStep {
    Simplex A;
    Simplex B;

    Simplex top() const { return A.unite(B); }
    friend bool operator==(const ShellingStep&, const ShellingStep&) = default;
};

/// Steps in the order they are applied, and the single simplex that remains.
struct Shelling {
    std::vector<ShellingStep> steps;
    Simplex last;
};

enum class SearchStatus { found, exhausted, cap_reached };

std::string to_string(SearchStatus s);

struct ShellingOptions {
    /// Search nodes (states expanded) before giving up with `cap_reached`.
    std::size_t max_nodes = 2'000'000;
};

struct ShellingResult {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<Shelling> shelling;
    std::size_t nodes = 0;
};

struct SphereShellingResult {
    SearchStatus status = SearchStatus::exhausted;
    /// The top simplex removed to obtain the ball, with the ball's shelling.
    std::optional<Simplex> removed;
    std::optional<Shelling> shelling;
    std::size_t nodes = 0;
};

/// Codimension-one simplexes lying in exactly one top simplex, closed under faces.
Complex boundary_complex(const Complex& ball);

/// Every elementary shelling available in `ball`, ordered by decreasing |A|
/// then by the removed simplex. A top simplex admits at most one: A must be
/// the set of vertices opposite its boundary facets.
std::vector<ShellingStep> elementary_shellings(const Complex& ball);

/// Depth-first search preferring the largest A, with failed residual states
/// memoized. `exhausted` means no shelling exists; `cap_reached` means the
/// search was cut off and nothing is claimed.
ShellingResult find_shelling(const Complex& ball, const ShellingOptions& options = {});
ShellingResult find_shelling(const std::vector<Simplex>& tops, const ShellingOptions& options = {});

/// Tries removing each top simplex in order and shelling the remaining ball.
SphereShellingResult find_sphere_shelling(const Complex& sphere, const ShellingOptions& options = {});

/// Replays a shelling on explicit complexes, re-deriving the boundary at every
/// step. Returns false (and a reason, if requested) on the first invalid step.
bool verify_shelling(const Complex& ball, const Shelling& shelling, std::string* why = nullptr);

/// The moves that turn the ball spanned by a shelling into apex * boundary:
/// kappa(last, apex) followed by kappa(A, apex * B) for the steps in reverse.
/// Applies them to `ambient` in place (each checked) and returns them.
std::vector<PachnerMove> star_in_place(Complex& ambient, const Shelling& shelling, VertexId apex,
                                       bool check_pseudomanifold = false);

struct StarResult {
    MoveSequence sequence;
    Complex result;
    VertexId apex = 0;
    Shelling shelling;
};

/// Replaces the ball (a full-dimensional subcomplex of `ambient`) by the cone
/// from `apex` (fresh by default) over its boundary, using one move per top
/// simplex of the ball. Throws InputError if the ball is not shellable,
/// ResourceCapError if the search is cut off, InvariantError if the result
/// fails the link check.
StarResult star_via_shelling(const Complex& ambient, const Complex& ball, std::optional<VertexId> apex = std::nullopt,
                             const ShellingOptions& options = {});

}  // namespace geotri
