#include "iks/lfun.hpp"

#include "iks/error.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace iks {

namespace {

BigInt big_pow(std::uint64_t base, unsigned e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

Rational frac(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

nlohmann::json rational_json(const Rational& r) {
    const BigInt& num = r.get_num();
    const BigInt& den = r.get_den();
    if (num.fits_slong_p() && den.fits_slong_p()) return {num.get_si(), den.get_si()};
    return {num.get_str(), den.get_str()};
}

nlohmann::json cyclo_json(const CycloRational& c) {
    if (c.is_rational()) return rational_json(c.coefficients()[0]);
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& x : c.coefficients()) basis.push_back(rational_json(x));
    return {{"zeta_basis", basis}};
}

// Sign of the cross product (b - a) x (c - a).
int turn(const PolygonPoint& a, const PolygonPoint& b, const PolygonPoint& c) {
    const Rational v = Rational(static_cast<long>(b.x) - static_cast<long>(a.x)) * (c.y - a.y) -
                       (b.y - a.y) * Rational(static_cast<long>(c.x) - static_cast<long>(a.x));
    return sgn(v);
}

}  // namespace

CycloRational untwisted_sum(const FieldPtr& F, unsigned k, unsigned n, Elem b, const EnumOptions& opts) {
    return reduce_mod_phi(kloosterman_sum(F, k, n, b, CharacterTuple::trivial(n + 1), opts));
}

std::vector<CycloRational> power_sums(const FieldPtr& F, unsigned n, Elem b, unsigned K, const EnumOptions& opts) {
    const std::uint32_t p = F->characteristic();
    if ((n + 1) % p == 0) {
        throw DomainError("p = " + std::to_string(p) + " divides n + 1 = " + std::to_string(n + 1) +
                          ": the auxiliary Laurent polynomial is degenerate and the L-function has no fixed shape");
    }
    // Refuse before doing any of the cheaper degrees.
    check_budget(std::pow(std::pow(static_cast<double>(F->order()), K) - 1, n), opts,
                 "power sum S*_" + std::to_string(K) + " for n = " + std::to_string(n) + " over F_" +
                     std::to_string(F->order()));
    std::vector<CycloRational> out;
    for (unsigned k = 1; k <= K; ++k) {
        const BigInt qk = big_pow(F->order(), k);
        CycloRational s = untwisted_sum(F, k, n, b, opts);
        BigInt shift;
        mpz_pow_ui(shift.get_mpz_t(), BigInt(qk - 1).get_mpz_t(), n);
        out.push_back(s * Rational(qk) + CycloRational::integer(p, Rational(shift)));
    }
    return out;
}

std::vector<CycloRational> newton_to_elementary(const std::vector<CycloRational>& p) {
    if (p.empty()) return {};
    const std::uint32_t c = p.front().conductor();
    std::vector<CycloRational> e{CycloRational::integer(c, 1)};
    for (std::size_t k = 1; k <= p.size(); ++k) {
        CycloRational acc(c);
        for (std::size_t i = 1; i <= k; ++i) {
            const CycloRational term = e[k - i] * p[i - 1];
            if (i % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc *= frac(1, static_cast<long>(k));
        e.push_back(std::move(acc));
    }
    e.erase(e.begin());
    return e;
}

std::vector<CycloRational> elementary_to_newton(const std::vector<CycloRational>& e, unsigned K) {
    if (e.empty()) throw DomainError("need at least one elementary symmetric function");
    const std::uint32_t c = e.front().conductor();
    auto e_at = [&](std::size_t i) { return i <= e.size() ? e[i - 1] : CycloRational(c); };
    std::vector<CycloRational> p;
    for (std::size_t k = 1; k <= K; ++k) {
        CycloRational acc(c);
        for (std::size_t i = 1; i < k; ++i) {
            const CycloRational term = e_at(i) * p[k - i - 1];
            if (i % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        CycloRational last = e_at(k) * Rational(static_cast<long>(k));
        if (k % 2 == 1) {
            acc += last;
        } else {
            acc -= last;
        }
        p.push_back(std::move(acc));
    }
    return p;
}

std::vector<TrivialFactor> trivial_factors(unsigned n, std::uint64_t q) {
    std::vector<TrivialFactor> out{{BigInt(1), static_cast<long>(n) + 1}};
    for (unsigned j = 2; j <= n; ++j) {
        const long c = binomial(n, j).get_si();
        out.push_back({big_pow(q, j - 1), j % 2 == 1 ? c : -c});
    }
    return out;
}

LFactorization strip_trivial_roots(const std::vector<CycloRational>& s_star, unsigned n, std::uint64_t q) {
    if (s_star.size() < 2 * n) {
        throw DomainError("need S*_1 .. S*_" + std::to_string(2 * n) + ", got " + std::to_string(s_star.size()));
    }
    const std::uint32_t p = s_star.front().conductor();
    LFactorization L;
    L.n = n;
    L.p = p;
    L.q = q;
    L.sign = n % 2 == 0 ? -1 : 1;
    L.s_star.assign(s_star.begin(), s_star.begin() + 2 * n);

    // Power sums of the beta_i: (-1)^n S*_k - 1 - q^k.
    std::vector<CycloRational> beta_sums;
    for (unsigned k = 1; k <= 2 * n; ++k) {
        CycloRational v = n % 2 == 0 ? s_star[k - 1] : -s_star[k - 1];
        v -= CycloRational::integer(p, Rational(big_pow(q, k) + 1));
        beta_sums.push_back(std::move(v));
    }
    const auto e = newton_to_elementary(beta_sums);
    // prod (1 - alpha_i T) = sum_k (-1)^k e_k(beta) q^{-k} T^k.
    L.P.push_back(CycloRational::integer(p, 1));
    for (unsigned k = 1; k <= 2 * n; ++k) {
        CycloRational c = e[k - 1] * frac(1, big_pow(q, k));
        if (k % 2 == 1) c = -c;
        if (!c.is_integral()) {
            throw VerificationFailure("coefficient of T^" + std::to_string(k) +
                                      " of P(T) is not integral; the power sums and the trivial factors disagree");
        }
        if (!c.is_rational()) L.rational_coefficients = false;
        L.P.push_back(std::move(c));
    }
    return L;
}

void assemble_lfunction(LFactorization& L) { L.trivial = trivial_factors(L.n, L.q); }

std::vector<PolygonPoint> newton_polygon(const std::vector<CycloRational>& coeffs, std::uint64_t q,
                                         std::vector<PolygonPoint>* points) {
    std::vector<PolygonPoint> pts;
    for (unsigned k = 0; k < coeffs.size(); ++k) {
        const auto v = ord_q(coeffs[k], q);
        if (v) pts.push_back({k, *v});
    }
    if (points) *points = pts;
    std::vector<PolygonPoint> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
        hull.push_back(pt);
    }
    return hull;
}

std::vector<Slope> polygon_slopes(const std::vector<PolygonPoint>& hull) {
    std::vector<Slope> out;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const unsigned len = hull[i].x - hull[i - 1].x;
        out.push_back({(hull[i].y - hull[i - 1].y) / Rational(len), len});
    }
    return out;
}

std::vector<Slope> expected_hodge_slopes(unsigned n) {
    std::vector<Slope> out{{Rational(0), 1}};
    for (unsigned j = 1; j < n; ++j) out.push_back({Rational(j), 2});
    out.push_back({Rational(n), 1});
    return out;
}

std::vector<PolygonPoint> polygon_from_slopes(const std::vector<Slope>& slopes) {
    std::vector<PolygonPoint> out{{0, Rational(0)}};
    for (const auto& s : slopes) {
        const auto& last = out.back();
        out.push_back({last.x + s.length, last.y + s.slope * Rational(s.length)});
    }
    return out;
}

Rational polygon_value(const std::vector<PolygonPoint>& v, unsigned x) {
    if (v.empty() || x < v.front().x || x > v.back().x) throw DomainError("x outside the polygon's range");
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (x <= v[i].x) {
            const Rational t = frac(static_cast<long>(x - v[i - 1].x), static_cast<long>(v[i].x - v[i - 1].x));
            return v[i - 1].y + t * (v[i].y - v[i - 1].y);
        }
    }
    return v.front().y;
}

PolygonComparison compare_polygons(const std::vector<PolygonPoint>& upper, const std::vector<PolygonPoint>& lower) {
    PolygonComparison c;
    if (upper.empty() || lower.empty()) return c;
    c.same_endpoints = upper.front().x == lower.front().x && upper.front().y == lower.front().y &&
                       upper.back().x == lower.back().x && upper.back().y == lower.back().y;
    if (!c.same_endpoints) return c;
    c.on_or_above = true;
    c.equal = true;
    for (unsigned x = upper.front().x; x <= upper.back().x; ++x) {
        const Rational u = polygon_value(upper, x);
        const Rational l = polygon_value(lower, x);
        if (u < l) c.on_or_above = false;
        if (u != l) c.equal = false;
    }
    return c;
}

std::vector<std::complex<double>> complex_roots(const std::vector<CycloRational>& P) {
    if (P.size() <= 1) return {};
    const std::size_t d = P.size() - 1;
    // alpha are the roots of x^d + c_1 x^{d-1} + ... + c_d.
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    const std::complex<double> lead = P[0].embed();
    for (std::size_t i = 0; i < d; ++i) {
        C(0, static_cast<Eigen::Index>(i)) = -P[i + 1].embed() / lead;
        if (i + 1 < d) C(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
    if (solver.info() != Eigen::Success) throw Error("companion eigenvalue iteration did not converge");
    std::vector<std::complex<double>> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i]);
    std::sort(out.begin(), out.end(), [](auto x, auto y) {
        return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : std::arg(x) < std::arg(y);
    });
    return out;
}

std::vector<double> complex_weights(const std::vector<CycloRational>& P) {
    std::vector<double> out;
    for (auto z : complex_roots(P)) out.push_back(std::abs(z));
    std::sort(out.begin(), out.end());
    return out;
}

CycloRational predicted_sum(const LFactorization& L, unsigned k) {
    if (k == 0) throw DomainError("k must be positive");
    std::vector<CycloRational> e;
    for (unsigned i = 1; i < L.P.size(); ++i) e.push_back(i % 2 == 1 ? -L.P[i] : L.P[i]);
    CycloRational total(L.p);
    if (!e.empty()) total = elementary_to_newton(e, k)[k - 1];
    for (const auto& t : L.trivial) {
        BigInt rk;
        mpz_pow_ui(rk.get_mpz_t(), t.root.get_mpz_t(), k);
        total += CycloRational::integer(L.p, Rational(rk * t.multiplicity));
    }
    return L.n % 2 == 0 ? total : -total;
}

std::vector<HeldoutResult> heldout_check(const LFactorization& L, const FieldPtr& F, const std::vector<unsigned>& extra,
                                         const EnumOptions& opts) {
    std::vector<HeldoutResult> out;
    for (unsigned k : extra) {
        HeldoutResult r;
        r.k = k;
        r.predicted = predicted_sum(L, k);
        r.computed = untwisted_sum(F, k, L.n, L.b, opts);
        r.match = r.predicted == r.computed;
        out.push_back(std::move(r));
    }
    return out;
}

LFactorization compute_lfunction(const FieldPtr& F, unsigned n, Elem b, const EnumOptions& opts) {
    if (n == 0) throw DomainError("n must be at least 1");
    if (b == 0 || b >= F->order()) throw DomainError("b must be a nonzero field element");
    const auto s = power_sums(F, n, b, 2 * n, opts);
    LFactorization L = strip_trivial_roots(s, n, F->order());
    L.a = F->degree();
    L.b = b;
    assemble_lfunction(L);
    L.newton_polygon = newton_polygon(L.P, L.q, &L.np_points);
    L.slopes = polygon_slopes(L.newton_polygon);
    L.complex_roots = complex_roots(L.P);
    return L;
}

std::string to_json(const LFactorization& L, const std::vector<HeldoutResult>& heldout) {
    nlohmann::json j;
    j["n"] = L.n;
    j["p"] = L.p;
    j["a"] = L.a;
    j["q"] = L.q;
    j["b"] = L.b;
    j["sign"] = L.sign;
    j["trivial"] = nlohmann::json::array();
    for (const auto& t : L.trivial) j["trivial"].push_back({t.root.get_str(), t.multiplicity});
    j["P"] = nlohmann::json::array();
    for (const auto& c : L.P) j["P"].push_back(cyclo_json(c));
    j["rational_coefficients"] = L.rational_coefficients;
    j["newton_polygon"] = nlohmann::json::array();
    for (const auto& v : L.newton_polygon) {
        auto y = rational_json(v.y);
        j["newton_polygon"].push_back({v.x, y[0], y[1]});
    }
    j["slopes"] = nlohmann::json::array();
    for (const auto& s : L.slopes) {
        auto y = rational_json(s.slope);
        j["slopes"].push_back({y[0], y[1], s.length});
    }
    j["complex_magnitudes"] = nlohmann::json::array();
    for (auto z : L.complex_roots) j["complex_magnitudes"].push_back(std::abs(z));
    if (!heldout.empty()) {
        nlohmann::json h = nlohmann::json::array();
        bool all = true;
        for (const auto& r : heldout) {
            h.push_back({{"k", r.k}, {"match", r.match}});
            all = all && r.match;
        }
        j["heldout"] = {{"cases", h}, {"match", all}};
    }
    return j.dump();
}

}  // namespace iks
