#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "geotri/io.hpp"
#include "geotri/tags.hpp"

namespace geotri {

using BigInt = boost::multiprecision::cpp_int;
using Real = boost::multiprecision::cpp_dec_float_50;

/// Inputs to the bound calculator. Optional fields are used when present.
struct ManifoldData {
    GeometryTag tag = GeometryTag::euclidean;
    int n = 2;
    Real Lambda = 1;
    std::int64_t p = 1;
    std::int64_t q = 1;
    std::optional<Real> inj;
    std::optional<Real> vol;
    std::optional<Real> diam;
    /// Lower bound on edge lengths; recorded only (see notes in the report).
    std::optional<Real> lambda;
    /// Length of the shortest closed geodesic.
    std::optional<Real> l_c;
};

/// n+1, 2n+1 or n cosh^{n-1}(Lambda) + 1.
Real mu(GeometryTag tag, int n, const Real& Lambda);
/// (mu - 1) / mu: the per-level diameter contraction.
Real kappa_exact(GeometryTag tag, int n, const Real& Lambda);

/// Smallest integer strictly greater than `x`.
std::int64_t smallest_integer_above(const Real& x);
/// max(1, smallest integer strictly greater than mu ln(Lambda/inj)).
std::int64_t depth_m(const Real& mu, const Real& Lambda, const Real& inj);
/// max(2^{n+1}, m).
std::int64_t depth_mprime(std::int64_t m, int n);

/// 2 pi^{(n+1)/2} / Gamma((n+1)/2).
Real sphere_volume(int n);
/// diam, sin^{n-1}(diam) or sinh^{n-1}(diam).
Real delta(GeometryTag tag, int n, const Real& diam);
/// pi vol / (delta vol(S^n)).
Real inj_lower(GeometryTag tag, int n, const Real& vol, const Real& diam);

struct RadiusChain {
    Real l_c;
    Real inj;
    Real r;
};
/// inj = l_c / 2 and convexity radius r = l_c / 4 in constant curvature.
RadiusChain radius_chain(const Real& l_c);

/// 2^n (n+1)!^{4+3 m'} p q (p+q).
BigInt total_bound(int n, const BigInt& p, const BigInt& q, std::int64_t mprime);
/// (n+1)!^{2m+2} p^2.
BigInt barymoves_bound(int n, std::int64_t m, const BigInt& p);
/// sum_{i=1}^{n} (n-i)! p_{n-i-1} s_i with p_0 := 2 and p_{-1} := 1.
BigInt induction_bound(int n, const std::vector<BigInt>& p, const std::vector<BigInt>& s);
/// sum_{i=1}^{n} (n-i)! (i+1)!^2 p_{n-i-1} s_i with the same conventions.
BigInt mainlemma_bound(int n, const std::vector<BigInt>& p, const std::vector<BigInt>& s);
/// One term of the induction sum: (n-r)! s_r p_{n-r-1}.
BigInt level_bound(int n, int r, const std::vector<BigInt>& p, const BigInt& s_r);

enum class VolhypVariant { automatic, orientable3, even, general };
std::string to_string(VolhypVariant v);
VolhypVariant parse_volhyp_variant(std::string_view name);

/// Lower bound on the subdivision depth for closed hyperbolic manifolds from
/// universal volume bounds. `quantity` is the expression m must exceed.
struct VolhypResult {
    VolhypVariant variant;
    Real quantity;
    std::int64_t m;
};
/// Closed orientable hyperbolic 3-manifold volume bound.
inline const Real kHyperbolic3VolumeBound{"0.9427"};
VolhypResult volhyp_m(int n, std::int64_t p, const Real& Lambda, VolhypVariant variant = VolhypVariant::automatic);

struct BoundReport {
    ManifoldData data;
    Real mu;
    Real kappa;
    std::optional<Real> inj_used;
    std::optional<Real> log_quantity;
    std::int64_t m = 1;
    std::int64_t mprime = 1;
    BigInt total;
    BigInt total_small_n;
    BigInt barymoves_p;
    std::optional<RadiusChain> chain;
    std::optional<VolhypResult> volhyp;
    std::vector<std::string> notes;
};

/// Evaluates every formula that the data supports. inj is taken from the
/// data, else from l_c, else from the volume/diameter bound (diameter
/// defaulting to p Lambda), else from the hyperbolic volume-bound depth.
BoundReport compute_report(const ManifoldData& data);

ManifoldData manifold_data_from_json(const Json& j);
Json to_json(const BoundReport& r);
/// Fixed-width table for terminals.
std::string format_report(const BoundReport& r);

/// Decimal string with `digits` significant digits.
std::string to_decimal(const Real& x, int digits = 50);

}  // namespace geotri
