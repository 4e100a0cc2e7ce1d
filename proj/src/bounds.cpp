#include "geotri/bounds.hpp"

#include <iomanip>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "geotri/errors.hpp"

namespace geotri {

namespace {

const Real& pi() {
    static const Real value = boost::math::constants::pi<Real>();
    return value;
}

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

void check_dimension(int n) {
    if (n < 1) throw InputError("dimension must be at least 1");
}

// p_j with the conventions p_0 = 2 (vertices in the link of a ridge) and p_{-1} = 1.
BigInt p_term(const std::vector<BigInt>& p, int j) {
    if (j == -1) return 1;
    if (j == 0) return 2;
    return p.at(static_cast<std::size_t>(j));
}

void check_vectors(int n, const std::vector<BigInt>& p, const std::vector<BigInt>& s) {
    check_dimension(n);
    const auto want = static_cast<std::size_t>(n) + 1;
    if (p.size() != want || s.size() != want)
        throw InputError("expected p and s vectors of length " + std::to_string(want) + ", got " +
                         std::to_string(p.size()) + " and " + std::to_string(s.size()));
}

}  // namespace

std::string to_string(GeometryTag tag) {
    switch (tag) {
        case GeometryTag::euclidean: return "euclidean";
        case GeometryTag::spherical: return "spherical";
        case GeometryTag::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

GeometryTag parse_geometry_tag(std::string_view name) {
    if (name == "euclidean") return GeometryTag::euclidean;
    if (name == "spherical") return GeometryTag::spherical;
    if (name == "hyperbolic") return GeometryTag::hyperbolic;
    throw InputError("unknown geometry \"" + std::string(name) + "\"");
}

Real mu(GeometryTag tag, int n, const Real& Lambda) {
    check_dimension(n);
    switch (tag) {
        case GeometryTag::euclidean: return Real(n + 1);
        case GeometryTag::spherical: return Real(2 * n + 1);
        case GeometryTag::hyperbolic: return n * pow(cosh(Lambda), n - 1) + 1;
    }
    return 0;
}

Real kappa_exact(GeometryTag tag, int n, const Real& Lambda) {
    const Real m = mu(tag, n, Lambda);
    return (m - 1) / m;
}

std::int64_t smallest_integer_above(const Real& x) {
    // A value within rounding distance of an integer k is treated as k, so the
    // result never falls short of the true bound.
    static const Real slack{"1e-40"};
    const Real f = floor(x + slack);
    return static_cast<std::int64_t>(f.convert_to<long long>()) + 1;
}

std::int64_t depth_m(const Real& mu_value, const Real& Lambda, const Real& inj) {
    if (Lambda <= 0 || inj <= 0) throw InputError("depth_m: Lambda and inj must be positive");
    return std::max<std::int64_t>(1, smallest_integer_above(mu_value * log(Lambda / inj)));
}

std::int64_t depth_mprime(std::int64_t m, int n) {
    check_dimension(n);
    return std::max<std::int64_t>(std::int64_t{1} << (n + 1), m);
}

Real sphere_volume(int n) {
    if (n < 0) throw InputError("sphere_volume: negative dimension");
    // vol(S^n) = 2 pi vol(S^{n-2}) / (n - 1), from vol(S^0) = 2 and vol(S^1) = 2 pi
    Real v = (n % 2 == 0) ? Real(2) : 2 * pi();
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) v = 2 * pi() * v / (k - 1);
    return v;
}

Real delta(GeometryTag tag, int n, const Real& diam) {
    check_dimension(n);
    switch (tag) {
        case GeometryTag::euclidean: return diam;
        case GeometryTag::spherical: return pow(sin(diam), n - 1);
        case GeometryTag::hyperbolic: return pow(sinh(diam), n - 1);
    }
    return 0;
}

Real inj_lower(GeometryTag tag, int n, const Real& vol, const Real& diam) {
    if (vol <= 0 || diam <= 0) throw InputError("inj_lower: vol and diam must be positive");
    return pi() * vol / (delta(tag, n, diam) * sphere_volume(n));
}

RadiusChain radius_chain(const Real& l_c) {
    if (l_c <= 0) throw InputError("radius_chain: l_c must be positive");
    return {l_c, l_c / 2, l_c / 4};
}

BigInt total_bound(int n, const BigInt& p, const BigInt& q, std::int64_t mprime) {
    check_dimension(n);
    if (p <= 0 || q <= 0 || mprime <= 0) throw InputError("total_bound: arguments must be positive");
    const std::int64_t exponent = 4 + 3 * mprime;
    if (exponent > 1'000'000) throw ResourceCapError("total_bound: exponent too large to evaluate");
    return (BigInt(1) << n) * pow(factorial(n + 1), static_cast<unsigned>(exponent)) * p * q * (p + q);
}

BigInt barymoves_bound(int n, std::int64_t m, const BigInt& p) {
    check_dimension(n);
    if (m < 0 || p < 0) throw InputError("barymoves_bound: negative argument");
    return pow(factorial(n + 1), static_cast<unsigned>(2 * m + 2)) * p * p;
}

BigInt level_bound(int n, int r, const std::vector<BigInt>& p, const BigInt& s_r) {
    return factorial(n - r) * s_r * p_term(p, n - r - 1);
}

BigInt induction_bound(int n, const std::vector<BigInt>& p, const std::vector<BigInt>& s) {
    check_vectors(n, p, s);
    BigInt total = 0;
    for (int i = 1; i <= n; ++i) total += level_bound(n, i, p, s[static_cast<std::size_t>(i)]);
    return total;
}

BigInt mainlemma_bound(int n, const std::vector<BigInt>& p, const std::vector<BigInt>& s) {
    check_vectors(n, p, s);
    BigInt total = 0;
    for (int i = 1; i <= n; ++i) {
        const BigInt f = factorial(i + 1);
        total += factorial(n - i) * f * f * p_term(p, n - i - 1) * s[static_cast<std::size_t>(i)];
    }
    return total;
}

std::string to_string(VolhypVariant v) {
    switch (v) {
        case VolhypVariant::automatic: return "automatic";
        case VolhypVariant::orientable3: return "orientable3";
        case VolhypVariant::even: return "even";
        case VolhypVariant::general: return "general";
    }
    return "unknown";
}

VolhypVariant parse_volhyp_variant(std::string_view name) {
    if (name == "automatic") return VolhypVariant::automatic;
    if (name == "orientable3") return VolhypVariant::orientable3;
    if (name == "even") return VolhypVariant::even;
    if (name == "general") return VolhypVariant::general;
    throw InputError("unknown volume-bound variant \"" + std::string(name) + "\"");
}

VolhypResult volhyp_m(int n, std::int64_t p, const Real& Lambda, VolhypVariant variant) {
    if (n < 2) throw InputError("volhyp_m: needs n >= 2");
    if (p <= 0 || Lambda <= 0) throw InputError("volhyp_m: p and Lambda must be positive");
    if (variant == VolhypVariant::automatic)
        variant = n == 3 ? VolhypVariant::orientable3 : (n % 2 == 0 ? VolhypVariant::even : VolhypVariant::general);
    const Real growth = mu(GeometryTag::hyperbolic, n, Lambda);
    const Real floor_exp = Real(std::int64_t{1} << (n + 1));
    VolhypResult out{variant, 0, 0};
    switch (variant) {
        case VolhypVariant::orientable3:
            if (n != 3) throw InputError("volhyp_m: the orientable variant needs n = 3");
            out.quantity = growth * log(2 * pi() * p * Lambda * Lambda / kHyperbolic3VolumeBound);
            out.m = smallest_integer_above(out.quantity);
            return out;
        case VolhypVariant::even: {
            if (n % 2 != 0) throw InputError("volhyp_m: the even variant needs even n");
            const Real x = growth * log(2 * p * Lambda * Lambda / pi());
            out.quantity = std::max(floor_exp, x);
            break;
        }
        case VolhypVariant::general: {
            if (n <= 2) throw InputError("volhyp_m: the general variant needs n > 2");
            const Real x = growth * log(2 * p * Lambda * Lambda * n * pow(Real(n + 3), n) * pow(pi(), n * (n - 1)));
            out.quantity = std::max(floor_exp, x);
            break;
        }
        case VolhypVariant::automatic: break;
    }
    out.m = smallest_integer_above(out.quantity);
    return out;
}

BoundReport compute_report(const ManifoldData& d) {
    check_dimension(d.n);
    if (d.Lambda <= 0) throw InputError("Lambda must be positive");
    if (d.p <= 0 || d.q <= 0) throw InputError("p and q must be positive");
    if (d.tag == GeometryTag::spherical && d.Lambda > pi() / 2)
        throw InputError("spherical triangulations need Lambda <= pi/2");
    BoundReport r;
    r.data = d;
    r.mu = mu(d.tag, d.n, d.Lambda);
    r.kappa = kappa_exact(d.tag, d.n, d.Lambda);
    if (d.l_c) r.chain = radius_chain(*d.l_c);

    if (d.inj) {
        r.inj_used = d.inj;
        r.notes.push_back("injectivity radius supplied");
    } else if (d.l_c) {
        r.inj_used = r.chain->inj;
        r.notes.push_back("injectivity radius taken as l_c / 2");
    } else if (d.vol) {
        Real diam;
        if (d.diam) {
            diam = *d.diam;
        } else {
            diam = d.p * d.Lambda;
            r.notes.push_back("diameter replaced by p * Lambda");
        }
        r.inj_used = inj_lower(d.tag, d.n, *d.vol, diam);
        r.notes.push_back("injectivity radius bounded below by pi vol / (delta vol(S^n))");
    }
    if (r.inj_used) {
        r.log_quantity = r.mu * log(d.Lambda / *r.inj_used);
        r.m = depth_m(r.mu, d.Lambda, *r.inj_used);
        if (*r.log_quantity < 1) r.notes.push_back("depth clamped to m = 1 because mu ln(Lambda/inj) < 1");
    } else if (d.tag == GeometryTag::hyperbolic && d.n >= 2) {
        r.volhyp = volhyp_m(d.n, d.p, d.Lambda);
        r.m = std::max<std::int64_t>(1, r.volhyp->m);
        r.notes.push_back("depth from the universal hyperbolic volume bound (" + to_string(r.volhyp->variant) + ")");
        if (r.volhyp->variant == VolhypVariant::orientable3) r.notes.push_back("assumes M is orientable");
    } else {
        r.notes.push_back("no injectivity data: depth defaults to m = 1");
    }
    if (d.lambda) r.notes.push_back("lambda recorded; a volume lower bound must be supplied as vol");
    r.mprime = depth_mprime(r.m, d.n);
    r.total = total_bound(d.n, d.p, d.q, r.mprime);
    if (d.n <= 4) r.total_small_n = total_bound(d.n, d.p, d.q, r.m);
    r.barymoves_p = barymoves_bound(d.n, r.m, d.p);
    return r;
}

namespace {

Real real_field(const Json& j, const char* name) {
    const Json& v = j.at(name);
    if (v.is_string()) {
        try {
            return Real(v.get<std::string>());
        } catch (const std::exception&) {
            throw InputError(std::string("field ") + name + " is not a number");
        }
    }
    if (!v.is_number()) throw InputError(std::string("field ") + name + " must be a number");
    return Real(v.dump());
}

std::optional<Real> optional_real(const Json& j, const char* name) {
    if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
    Real x = real_field(j, name);
    if (x <= 0) throw InputError(std::string("field ") + name + " must be positive");
    return x;
}

}  // namespace

ManifoldData manifold_data_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("manifold data must be a JSON object");
    for (const char* key : {"geometry", "n", "Lambda", "p", "q"})
        if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    ManifoldData d;
    if (!j.at("geometry").is_string()) throw InputError("\"geometry\" must be a string");
    d.tag = parse_geometry_tag(j.at("geometry").get<std::string>());
    if (!j.at("n").is_number_integer()) throw InputError("\"n\" must be an integer");
    d.n = j.at("n").get<int>();
    d.Lambda = real_field(j, "Lambda");
    for (auto [key, slot] : {std::pair{"p", &d.p}, std::pair{"q", &d.q}}) {
        if (!j.at(key).is_number_integer()) throw InputError(std::string("\"") + key + "\" must be an integer");
        *slot = j.at(key).get<std::int64_t>();
    }
    d.inj = optional_real(j, "inj");
    d.vol = optional_real(j, "vol");
    d.diam = optional_real(j, "diam");
    d.lambda = optional_real(j, "lambda");
    d.l_c = optional_real(j, "l_c");
    return d;
}

std::string to_decimal(const Real& x, int digits) { return x.str(digits); }

Json to_json(const BoundReport& r) {
    Json j;
    Json in;
    in["geometry"] = to_string(r.data.tag);
    in["n"] = r.data.n;
    in["Lambda"] = to_decimal(r.data.Lambda);
    in["p"] = r.data.p;
    in["q"] = r.data.q;
    auto put = [&](Json& o, const char* key, const std::optional<Real>& v) {
        if (v) o[key] = to_decimal(*v);
    };
    put(in, "inj", r.data.inj);
    put(in, "vol", r.data.vol);
    put(in, "diam", r.data.diam);
    put(in, "lambda", r.data.lambda);
    put(in, "l_c", r.data.l_c);
    j["input"] = std::move(in);
    j["mu"] = to_decimal(r.mu);
    j["kappa"] = to_decimal(r.kappa);
    put(j, "inj_used", r.inj_used);
    put(j, "mu_log_Lambda_over_inj", r.log_quantity);
    j["m"] = r.m;
    j["mprime"] = r.mprime;
    j["total_bound"] = r.total.str();
    if (r.data.n <= 4) j["total_bound_direct"] = r.total_small_n.str();
    j["barymoves_bound"] = r.barymoves_p.str();
    if (r.chain) j["radius_chain"] = {{"l_c", to_decimal(r.chain->l_c)}, {"inj", to_decimal(r.chain->inj)}, {"r", to_decimal(r.chain->r)}};
    if (r.volhyp)
        j["volume_bound_depth"] = {{"variant", to_string(r.volhyp->variant)},
                                   {"quantity", to_decimal(r.volhyp->quantity)},
                                   {"m", r.volhyp->m}};
    j["notes"] = r.notes;
    return j;
}

std::string format_report(const BoundReport& r) {
    std::ostringstream os;
    auto row = [&](const std::string& name, const std::string& value) {
        os << std::left << std::setw(24) << name << value << '\n';
    };
    row("geometry", to_string(r.data.tag));
    row("n", std::to_string(r.data.n));
    row("Lambda", to_decimal(r.data.Lambda, 20));
    row("p, q", std::to_string(r.data.p) + ", " + std::to_string(r.data.q));
    row("mu", to_decimal(r.mu, 20));
    row("kappa", to_decimal(r.kappa, 20));
    if (r.inj_used) row("inj (used)", to_decimal(*r.inj_used, 20));
    if (r.volhyp) row("volume-bound quantity", to_decimal(r.volhyp->quantity, 20));
    row("m", std::to_string(r.m));
    row("m'", std::to_string(r.mprime));
    const std::string total = r.total.str();
    row("total bound digits", std::to_string(total.size()));
    row("total bound", total.size() > 60 ? total.substr(0, 20) + "...(" + std::to_string(total.size()) + " digits)" : total);
    for (const auto& note : r.notes) row("note", note);
    return os.str();
}

}  // namespace geotri
