#include "iks/verify.hpp"

#include "iks/error.hpp"
#include "iks/lfun.hpp"
#include "iks/polytope.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

namespace iks {

namespace {

constexpr double kTolerance = 1e-6;
constexpr double kWeightTolerance = 1e-5;
// Held-out degrees are added while one enumeration stays below this many points.
constexpr double kHeldoutPoints = 3e8;

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p < bound; ++p) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

void require_primes(const std::vector<std::uint32_t>& ps) {
    for (auto p : ps) {
        if (!is_prime(p)) throw DomainError("--p " + std::to_string(p) + " is not prime");
    }
}

std::complex<double> root_of_unity(std::uint64_t num, std::uint64_t den) {
    const double t = 2 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
}

// Calls f(chi) for every tuple of `count` characters of F_q^*.
void for_each_tuple(std::uint32_t q, unsigned count, const std::function<void(const CharacterTuple&)>& f) {
    CharacterTuple chi = CharacterTuple::trivial(count);
    const std::uint32_t N = q - 1;
    while (true) {
        f(chi);
        unsigned i = 0;
        while (i < count && chi.index[i] + 1 == N) {
            chi.index[i] = 0;
            ++i;
        }
        if (i == count) break;
        ++chi.index[i];
    }
}

std::vector<Elem> b_values(const FieldTable& F, const VerifyOptions& opts) {
    if (opts.b) {
        if (*opts.b == 0 || *opts.b >= F.order()) throw DomainError("--b must be a nonzero element of F_" + std::to_string(F.order()));
        return {*opts.b};
    }
    std::vector<Elem> out;
    for (Elem b = 1; b < F.order(); ++b) out.push_back(b);
    return out;
}

// Worst instance of an inequality lhs <= rhs over a family.
struct Worst {
    double lhs = 0, rhs = 0, ratio = -1;
    std::size_t count = 0;
    bool ok = true;
    void add(double l, double r) {
        ++count;
        if (l > r + kTolerance) ok = false;
        const double q = r > 0 ? l / r : l;
        if (q > ratio) {
            ratio = q;
            lhs = l;
            rhs = r;
        }
    }
};

VerifyCase bound_case(std::string kind, std::string label, std::string check, const Worst& w, double t0) {
    VerifyCase c;
    c.kind = std::move(kind);
    c.label = std::move(label);
    c.check = std::move(check);
    c.lhs = fmt(w.lhs);
    c.rhs = fmt(w.rhs);
    c.instances = w.count;
    c.status = w.ok ? CaseStatus::pass : CaseStatus::fail;
    c.seconds = t0;
    c.note = "worst lhs/rhs = " + fmt(w.ratio);
    return c;
}

std::string label_qn(std::uint32_t q, unsigned n) { return "q=" + std::to_string(q) + " n=" + std::to_string(n); }

void add_field(VerifyReport& r, const FieldTable& F) {
    for (const auto& h : r.fields) {
        if (h.p == F.characteristic() && h.a == F.degree()) return;
    }
    r.fields.push_back({F.characteristic(), F.degree(), F.modulus(), F.generator()});
}


// ---------------------------------------------------------------- thm0 / thm2

VerifyReport twisted_bounds(const VerifyOptions& opts, bool sharp) {
    VerifyReport rep;
    rep.suite = sharp ? "thm2" : "thm0";
    rep.title = sharp ? "Twisted inverted Kloosterman sums: bounds (2n+1) q^{n/2} and 2(n+1) q^{n/2} for p not dividing n+1"
                      : "Twisted inverted Kloosterman sums: bound q^{(n+1)/2}";
    const auto primes = opts.primes.empty() ? std::vector<std::uint32_t>{3, 5, 7} : opts.primes;
    const auto ns = opts.ns.empty() ? std::vector<unsigned>{1, 2} : opts.ns;
    require_primes(primes);
    for (auto p : primes) {
        const FieldPtr F = make_field(p, 1);
        add_field(rep, *F);
        const ExtensionMaps maps = field_maps(F, 1);
        const std::uint32_t q = p;
        for (unsigned n : ns) {
            const auto t0 = Clock::now();
            const double qd = q;
            const double rhs_equal = sharp ? (2 * n + 1) * std::pow(qd, n / 2.0) : std::pow(qd, (n + 1) / 2.0);
            const double rhs_distinct = sharp ? 2 * (n + 1) * std::pow(qd, n / 2.0) : std::pow(qd, (n + 1) / 2.0);
            const double shift = sharp ? (std::pow(qd - 1, n) - (n % 2 == 0 ? 1.0 : -1.0)) / qd : std::pow(qd - 1, n) / qd;
            Worst eq, ne;
            double observed = 0;
            const bool degenerate = sharp && (n + 1) % p == 0;
            for (Elem b : b_values(*F, opts)) {
                for_each_tuple(q, n + 1, [&](const CharacterTuple& chi) {
                    const auto z = kloosterman_sum(maps, n, b, chi, opts.enumeration).embed();
                    if (chi.all_equal()) {
                        const auto chi1 = root_of_unity(std::uint64_t{chi.index[0]} * F->log(b), q - 1);
                        const double l = std::abs(z + shift * chi1);
                        eq.add(l, rhs_equal);
                        observed = std::max(observed, l / std::pow(qd, n / 2.0));
                    } else {
                        const double l = std::abs(z);
                        ne.add(l, rhs_distinct);
                        observed = std::max(observed, l / std::pow(qd, n / 2.0));
                    }
                });
            }
            const double secs = since(t0);
            if (degenerate) {
                VerifyCase c;
                c.kind = "bound";
                c.label = label_qn(q, n);
                c.check = "not asserted: p divides n+1";
                c.instances = eq.count + ne.count;
                c.status = CaseStatus::skip;
                c.note = "p | n+1, the auxiliary polynomial is degenerate; observed max |main-term-corrected S| / q^{n/2} = " +
                         fmt(observed);
                c.seconds = secs;
                rep.cases.push_back(std::move(c));
                continue;
            }
            const std::string eq_check = sharp ? "|S + ((q-1)^n - (-1)^n)/q chi_1(b)| <= (2n+1) q^{n/2}"
                                               : "|S + (q-1)^n/q chi_1(b)| <= q^{(n+1)/2}";
            const std::string ne_check = sharp ? "|S| <= 2(n+1) q^{n/2}" : "|S| <= q^{(n+1)/2}";
            rep.cases.push_back(bound_case("equal", label_qn(q, n) + " equal characters", eq_check, eq, secs));
            if (ne.count > 0) {
                rep.cases.push_back(bound_case("distinct", label_qn(q, n) + " distinct characters", ne_check, ne, 0));
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- cor1

std::vector<std::pair<unsigned, std::uint32_t>> pairs_or(const VerifyOptions& opts,
                                                         std::vector<std::pair<unsigned, std::uint32_t>> def) {
    if (opts.primes.empty() && opts.ns.empty()) return def;
    require_primes(opts.primes);
    std::vector<std::pair<unsigned, std::uint32_t>> out;
    std::vector<unsigned> ns = opts.ns;
    std::vector<std::uint32_t> ps = opts.primes;
    if (ns.empty()) {
        for (const auto& [n, p] : def) {
            if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
        }
    }
    if (ps.empty()) {
        for (const auto& [n, p] : def) {
            if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
        }
    }
    for (unsigned n : ns) {
        for (auto p : ps) out.emplace_back(n, p);
    }
    return out;
}

VerifyReport cor1_suite(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "cor1";
    rep.title = "Untwisted sums over F_{q^k}: |S_{k,n}(b) + ((q^k-1)^n - (-1)^n (q^k+1))/q^k| <= 2n q^{nk/2}";
    for (const auto& [n, p] : pairs_or(opts, {{1, 3}, {1, 5}, {2, 7}})) {
        const FieldPtr F = make_field(p, 1);
        add_field(rep, *F);
        const unsigned K = opts.kmax.value_or(2 * n);
        for (unsigned k = 1; k <= K; ++k) {
            const auto t0 = Clock::now();
            const std::string label = "q=" + std::to_string(p) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
            if ((n + 1) % p == 0) {
                rep.cases.push_back({"bound", label, "not asserted", "", "", 0, CaseStatus::skip,
                                     "p | n+1, the auxiliary polynomial is degenerate", 0});
                continue;
            }
            try {
                const ExtensionMaps maps = field_maps(F, k);
                const double Q = maps.ext().order();
                const double shift = (std::pow(Q - 1, n) - (n % 2 == 0 ? 1.0 : -1.0) * (Q + 1)) / Q;
                const double rhs = 2.0 * n * std::pow(Q, n / 2.0);
                Worst w;
                for (Elem b : b_values(*F, opts)) {
                    const auto z = kloosterman_sum(maps, n, b, CharacterTuple::trivial(n + 1), opts.enumeration).embed();
                    w.add(std::abs(z + shift), rhs);
                }
                rep.cases.push_back(bound_case("bound", label, "|S_k + ((Q-1)^n - (-1)^n (Q+1))/Q| <= 2n Q^{n/2}, Q = q^k",
                                               w, since(t0)));
            } catch (const BudgetExceeded& e) {
                rep.cases.push_back({"bound", label, "", "", "", 0, CaseStatus::skip, e.what(), 0});
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- thm1

std::string slopes_string(const std::vector<Slope>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& x : s) {
        for (unsigned i = 0; i < x.length; ++i) {
            out += (first ? "" : ",") + x.slope.get_str();
            first = false;
        }
    }
    return out + "}";
}

std::vector<unsigned> heldout_degrees(unsigned n, std::uint64_t q, const VerifyOptions& opts) {
    std::vector<unsigned> out;
    if (opts.kmax) {
        for (unsigned k = 2 * n + 1; k <= *opts.kmax; ++k) out.push_back(k);
        return out;
    }
    for (unsigned k = 2 * n + 1; k <= 2 * n + 2; ++k) {
        if (std::pow(std::pow(static_cast<double>(q), k) - 1, n) > kHeldoutPoints) break;
        out.push_back(k);
    }
    return out;
}

VerifyReport thm1_suite(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "thm1";
    rep.title = "L-function of untwisted sums: shape, slopes {0,1,1,...,n-1,n-1,n}, weights q^{n/2}, held-out power sums";
    for (const auto& [n, p] : pairs_or(opts, {{1, 3}, {1, 5}, {2, 7}, {2, 13}, {2, 5}})) {
        const FieldPtr F = make_field(p, 1);
        add_field(rep, *F);
        const std::uint64_t q = p;
        const bool ordinary = p % (n + 1) == 1;
        for (Elem b : b_values(*F, opts)) {
            const std::string label = "n=" + std::to_string(n) + " q=" + std::to_string(q) + " b=" + std::to_string(b);
            const auto t0 = Clock::now();
            LFactorization L;
            try {
                L = compute_lfunction(F, n, b, opts.enumeration);
            } catch (const BudgetExceeded& e) {
                rep.cases.push_back({"shape", label, "", "", "", 0, CaseStatus::skip, e.what(), 0});
                continue;
            } catch (const DomainError& e) {
                rep.cases.push_back({"shape", label, "", "", "", 0, CaseStatus::skip, e.what(), 0});
                continue;
            } catch (const VerificationFailure& e) {
                rep.cases.push_back({"shape", label, "P(T) integral of degree 2n", "", "", 1, CaseStatus::fail, e.what(), 0});
                continue;
            }
            const double secs = since(t0);
            const bool shape_ok = L.P.size() == 2 * n + 1 && L.P[0] == CycloRational::integer(L.p, 1) &&
                                  !L.P.back().is_zero();
            rep.cases.push_back({"shape", label, "P(T) has degree 2n, constant term 1, integral coefficients",
                                 "degree " + std::to_string(L.P.size() - 1), "degree " + std::to_string(2 * n), 1,
                                 shape_ok ? CaseStatus::pass : CaseStatus::fail,
                                 L.rational_coefficients ? "coefficients lie in Z"
                                                         : "coefficients lie in Z[zeta_p] and are not all rational",
                                 secs});

            const auto hp = polygon_from_slopes(expected_hodge_slopes(n));
            const auto cmp = compare_polygons(L.newton_polygon, hp);
            if (ordinary) {
                rep.cases.push_back({"slopes", label, "Newton polygon slopes equal the Hodge slopes",
                                     slopes_string(L.slopes), slopes_string(expected_hodge_slopes(n)), 1,
                                     cmp.equal ? CaseStatus::pass : CaseStatus::fail, "", 0});
            } else {
                const bool ok = cmp.same_endpoints && cmp.on_or_above && !cmp.equal;
                rep.cases.push_back({"contrast", label,
                                     "Newton polygon on or above the Hodge polygon, same endpoints, not equal",
                                     slopes_string(L.slopes), slopes_string(expected_hodge_slopes(n)), 1,
                                     ok ? CaseStatus::pass : CaseStatus::fail,
                                     std::string("endpoints ") + (cmp.same_endpoints ? "agree" : "differ") + ", " +
                                         (cmp.on_or_above ? "on or above" : "dips below") + ", " +
                                         (cmp.equal ? "equal" : "differs"),
                                     0});
            }

            const double target = std::pow(static_cast<double>(q), n / 2.0);
            double worst = 0;
            for (auto z : L.complex_roots) worst = std::max(worst, std::abs(std::abs(z) - target) / target);
            rep.cases.push_back({"weights", label, "|alpha_i| = q^{n/2} within relative 1e-5", fmt(worst), "1e-05",
                                 L.complex_roots.size(),
                                 worst <= kWeightTolerance && L.complex_roots.size() == 2 * n ? CaseStatus::pass
                                                                                             : CaseStatus::fail,
                                 "lhs is the max relative deviation of |alpha_i| from q^{n/2} = " + fmt(target), 0});

            const auto ks = heldout_degrees(n, q, opts);
            if (!ks.empty()) {
                const auto th = Clock::now();
                std::string got, want;
                bool all = true;
                try {
                    for (const auto& h : heldout_check(L, F, ks, opts.enumeration)) {
                        all = all && h.match;
                        got += (got.empty() ? "" : " ") + std::string("k=") + std::to_string(h.k) + (h.match ? ":match" : ":MISMATCH");
                    }
                    rep.cases.push_back({"heldout", label, "predicted S_{k,n}(b) equals a fresh enumeration exactly", got,
                                         "all match", ks.size(), all ? CaseStatus::pass : CaseStatus::fail, "",
                                         since(th)});
                } catch (const BudgetExceeded& e) {
                    rep.cases.push_back({"heldout", label, "", "", "", 0, CaseStatus::skip, e.what(), 0});
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- polytope suites

std::vector<unsigned> ns_or(const VerifyOptions& opts, std::vector<unsigned> def) { return opts.ns.empty() ? def : opts.ns; }

VerifyReport prop31_suite(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "prop31";
    rep.title = "Auxiliary polytope: D = 1, vertex determinants -(n+1) and n+1, (n+2)! Vol = 2n+2, non-degenerate iff p does not divide n+1";
    const auto primes = opts.primes.empty() ? primes_below(30) : opts.primes;
    require_primes(primes);
    for (unsigned n : ns_or(opts, {1, 2, 3, 4})) {
        const auto t0 = Clock::now();
        const std::string label = "n=" + std::to_string(n);
        const IkPolytope ik = ik_polytope(n);
        const long N1 = static_cast<long>(n) + 1;
        rep.cases.push_back({"denominator", label, "D = 1", std::to_string(ik.poly.D), "1", 1,
                             ik.poly.D == 1 ? CaseStatus::pass : CaseStatus::fail, "", since(t0)});
        const BigInt d1 = determinant(ik.M1), d2 = determinant(ik.M2);
        rep.cases.push_back({"determinants", label, "det M(delta_1) = -(n+1), det M(delta_2) = n+1",
                             d1.get_str() + ", " + d2.get_str(), std::to_string(-N1) + ", " + std::to_string(N1), 1,
                             d1 == -N1 && d2 == N1 ? CaseStatus::pass : CaseStatus::fail, "", 0});
        const HodgeData h = hodge_data(ik.poly, std::nullopt, kDefaultBoxBudget, opts.enumeration.threads);
        const BigInt facial = abs(d1) + abs(d2);
        rep.cases.push_back({"volume", label, "(n+2)! Vol = sum H = |det M1| + |det M2| = 2n+2",
                             h.normalized_volume.get_str() + ", " + facial.get_str(), std::to_string(2 * N1), 1,
                             h.normalized_volume == 2 * N1 && facial == 2 * N1 ? CaseStatus::pass : CaseStatus::fail, "",
                             0});
        std::string got;
        bool ok = true;
        for (auto p : primes) {
            const bool nd = diagonal_nondegenerate(ik.M1, p) && diagonal_nondegenerate(ik.M2, p);
            const bool want = (n + 1) % p != 0;
            ok = ok && nd == want;
            got += (got.empty() ? "" : " ") + std::to_string(p) + (nd ? ":nd" : ":deg");
        }
        rep.cases.push_back({"nondegenerate", label, "both facets non-degenerate iff p does not divide n+1", got,
                             "nd exactly when p does not divide " + std::to_string(N1), primes.size(),
                             ok ? CaseStatus::pass : CaseStatus::fail, "", 0});
    }
    return rep;
}

VerifyReport thm33_suite(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "thm33";
    rep.title = "Auxiliary polytope: Hodge numbers {1,2,...,2,1}, weight generating function, ordinary iff p = 1 mod n+1";
    for (unsigned n : ns_or(opts, {1, 2, 3, 4})) {
        const auto t0 = Clock::now();
        const std::string label = "n=" + std::to_string(n);
        const IkPolytope ik = ik_polytope(n);
        const unsigned dim = n + 2;
        const long D = ik.poly.D;
        const HodgeData h = hodge_data(ik.poly, static_cast<unsigned>(dim * D + 2), kDefaultBoxBudget,
                                       opts.enumeration.threads);
        std::vector<BigInt> want(n + 2, 2);
        want.front() = 1;
        want.back() = 1;
        std::vector<BigInt> got(h.H.begin(), h.H.begin() + std::min<std::size_t>(h.H.size(), n + 2));
        auto join = [](const std::vector<BigInt>& v) {
            std::string s = "{";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
            return s + "}";
        };
        rep.cases.push_back({"hodge", label, "H(0..n+1) = {1,2,...,2,1}", join(got), join(want), 1,
                             got == want ? CaseStatus::pass : CaseStatus::fail, "", since(t0)});

        bool zero_tail = true;
        std::vector<BigInt> tail;
        for (std::size_t k = n + 2; k < h.H.size(); ++k) {
            tail.push_back(h.H[k]);
            if (h.H[k] != 0) zero_tail = false;
        }
        rep.cases.push_back({"vanishing", label, "H(k) = 0 for n+1 < k <= (n+2)D + 2", join(tail), "all zero",
                             tail.size(), zero_tail ? CaseStatus::pass : CaseStatus::fail, "", 0});

        BigInt total = 0;
        for (std::size_t k = 0; k < h.H.size(); ++k) total += h.H[k];
        rep.cases.push_back({"volume", label, "sum H = 2n+2", total.get_str(), std::to_string(2 * n + 2), 1,
                             total == 2 * n + 2 ? CaseStatus::pass : CaseStatus::fail, "", 0});

        // (sum_k W(k) x^k) (1-x)^{n+2} up to degree n+1.
        std::vector<BigInt> series;
        for (unsigned k = 0; k <= n + 1; ++k) {
            BigInt s = 0;
            for (unsigned i = 0; i <= std::min(k, dim); ++i) {
                const BigInt t = binomial(dim, i) * h.W[k - i];
                if (i % 2 == 0) {
                    s += t;
                } else {
                    s -= t;
                }
            }
            series.push_back(s);
        }
        rep.cases.push_back({"generating", label, "(sum W(k) x^k)(1-x)^{n+2} = 1 + 2x + ... + 2x^n + x^{n+1} to degree n+1",
                             join(series), join(want), 1, series == want ? CaseStatus::pass : CaseStatus::fail, "", 0});
    }

    const auto primes = opts.primes.empty() ? primes_below(30) : opts.primes;
    require_primes(primes);
    for (unsigned n : ns_or(opts, {1, 2, 3})) {
        const auto t0 = Clock::now();
        std::string got, want;
        bool ok = true;
        std::size_t count = 0;
        for (auto p : primes) {
            if ((n + 1) % p == 0) continue;
            const FieldPtr F = make_field(p, 1);
            const auto r = facial_ordinary(inverted_kloosterman_laurent(*F, n, 1), p);
            const bool expect = p % (n + 1) == 1;
            ok = ok && r.ordinary == expect;
            ++count;
            got += (got.empty() ? "" : " ") + std::to_string(p) + (r.ordinary ? ":ord" : ":non");
            want += (want.empty() ? "" : " ") + std::to_string(p) + (expect ? ":ord" : ":non");
        }
        rep.cases.push_back({"ordinary", "n=" + std::to_string(n), "facial ordinariness iff p = 1 mod n+1, p not dividing n+1",
                             got, want, count, ok ? CaseStatus::pass : CaseStatus::fail, "", since(t0)});
    }
    return rep;
}

// ---------------------------------------------------------------- identities

SumValue lifted(const SumValue& v, std::uint32_t m) {
    return v.multiplicative_conductor() == m ? v : lift_conductor(v, m);
}

VerifyReport identities_suite(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "identities";
    rep.title = "Exact identities: E_n reduction, toric relation S*_k = q^k S_{k,n} + (q^k-1)^n, T_n transform, Gauss-sum formula";
    const auto primes = opts.primes.empty() ? std::vector<std::uint32_t>{3, 5, 7} : opts.primes;
    const auto ns = opts.ns.empty() ? std::vector<unsigned>{1, 2} : opts.ns;
    require_primes(primes);
    for (auto p : primes) {
        const FieldPtr F = make_field(p, 1);
        add_field(rep, *F);
        const ExtensionMaps maps = field_maps(F, 1);
        const std::uint32_t q = p, N = q - 1;
        for (unsigned n : ns) {
            const std::string label = label_qn(q, n);
            // E_n reduction.
            {
                const auto t0 = Clock::now();
                std::size_t count = 0, bad = 0;
                for (Elem b : b_values(*F, opts)) {
                    for_each_tuple(q, n + 1, [&](const CharacterTuple& chi) {
                        const SumValue S = lifted(kloosterman_sum(maps, n, b, chi, opts.enumeration), N);
                        const SumValue E = lifted(e_sum(F, n, b, chi, opts.enumeration), N);
                        const SumValue lhs = S.scaled(q);
                        SumValue rhs;
                        if (chi.all_equal()) {
                            const SumValue c1 = lifted(character_value(*F, chi.index[0], b), N);
                            BigInt shift;
                            mpz_ui_pow_ui(shift.get_mpz_t(), q - 1, n);
                            rhs = c1 * E - c1.scaled(shift);
                        } else {
                            rhs = lifted(character_value(*F, chi.index[n], b), N) * E;
                        }
                        ++count;
                        if (!exactly_equal(lhs, rhs)) ++bad;
                    });
                }
                rep.cases.push_back({"e_sum", label,
                                     "q S = -(q-1)^n chi_1(b) + chi_1(b) E (equal), q S = chi_{n+1}(b) E (otherwise)",
                                     std::to_string(count - bad) + " exact", std::to_string(count), count,
                                     bad == 0 ? CaseStatus::pass : CaseStatus::fail, "", since(t0)});
            }
            // T_n transform.
            {
                const auto t0 = Clock::now();
                std::size_t count = 0, bad = 0;
                std::string first_error;
                for (Elem b : b_values(*F, opts)) {
                    for_each_tuple(q, n + 1, [&](const CharacterTuple& chi) {
                        ++count;
                        try {
                            tn_transform(F, n, b, chi, opts.enumeration);
                        } catch (const VerificationFailure& e) {
                            ++bad;
                            if (first_error.empty()) first_error = e.what();
                        }
                    });
                }
                rep.cases.push_back({"tn", label, "T_n(chi,b) = chi_1...chi_{n+1}(b) S_n(chi, b^{-(n+1)}) exactly",
                                     std::to_string(count - bad) + " exact", std::to_string(count), count,
                                     bad == 0 ? CaseStatus::pass : CaseStatus::fail, first_error, since(t0)});
            }
            // Gauss-sum formula against enumeration.
            {
                const auto t0 = Clock::now();
                Worst w;
                std::size_t exact_bad = 0;
                const double rhs = kTolerance * std::pow(static_cast<double>(q), (n + 1) / 2.0);
                for (Elem b : b_values(*F, opts)) {
                    for_each_tuple(q, n + 1, [&](const CharacterTuple& chi) {
                        const SumValue S = kloosterman_sum(maps, n, b, chi, opts.enumeration);
                        const ScaledSum G = gauss_formula_sum(maps, n, b, chi, opts.enumeration);
                        w.add(std::abs(S.embed() - G.embed()), rhs);
                        if (!exactly_equal(lifted(S, N).scaled(G.denominator), G.numerator)) ++exact_bad;
                    });
                }
                VerifyCase c = bound_case("gauss", label, "|formula - enumeration| <= 1e-6 q^{(n+1)/2}, and exact equality", w,
                                          since(t0));
                c.note = std::to_string(w.count - exact_bad) + "/" + std::to_string(w.count) + " exactly equal";
                if (exact_bad > 0) c.status = CaseStatus::fail;
                rep.cases.push_back(std::move(c));
            }
        }
    }

    // Toric relation on the L-function grid.
    for (const auto& [n, p] : pairs_or(opts, {{1, 3}, {1, 5}, {2, 7}, {2, 13}})) {
        const FieldPtr F = make_field(p, 1);
        add_field(rep, *F);
        const unsigned K = opts.kmax.value_or(2 * n);
        for (unsigned k = 1; k <= K; ++k) {
            const auto t0 = Clock::now();
            const std::string label = "n=" + std::to_string(n) + " q=" + std::to_string(p) + " k=" + std::to_string(k);
            try {
                const ExtensionMaps maps = field_maps(F, k);
                const BigInt Q = maps.ext().order();
                BigInt shift;
                mpz_pow_ui(shift.get_mpz_t(), BigInt(Q - 1).get_mpz_t(), n);
                std::size_t count = 0, bad = 0;
                for (Elem b : b_values(*F, opts)) {
                    const SumValue star = inverted_kloosterman_toric_sum(maps, n, b, opts.enumeration);
                    const SumValue S = kloosterman_sum(maps, n, b, CharacterTuple::trivial(n + 1), opts.enumeration);
                    ++count;
                    if (!exactly_equal(star, S.scaled(Q) + SumValue::integer(p, 1, shift))) ++bad;
                }
                rep.cases.push_back({"toric", label, "S*_k(f) = q^k S_{k,n}(b) + (q^k-1)^n exactly",
                                     std::to_string(count - bad) + " exact", std::to_string(count), count,
                                     bad == 0 ? CaseStatus::pass : CaseStatus::fail,
                                     "S*_k by fibering over x_1 + ... + x_n + b/(x_1...x_n)", since(t0)});
            } catch (const BudgetExceeded& e) {
                rep.cases.push_back({"toric", label, "", "", "", 0, CaseStatus::skip, e.what(), 0});
            }
        }
    }
    return rep;
}

std::string status_string(CaseStatus s) {
    switch (s) {
        case CaseStatus::pass:
            return "PASS";
        case CaseStatus::fail:
            return "FAIL";
        case CaseStatus::skip:
            return "SKIP";
    }
    return "?";
}

}  // namespace

bool VerifyReport::passed() const {
    for (const auto& c : cases) {
        if (c.status == CaseStatus::fail) return false;
    }
    return true;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"thm0", "thm2", "cor1", "thm1", "prop31", "thm33", "identities"};
    return names;
}

VerifyReport run_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "thm0") return twisted_bounds(opts, false);
    if (name == "thm2") return twisted_bounds(opts, true);
    if (name == "cor1") return cor1_suite(opts);
    if (name == "thm1") return thm1_suite(opts);
    if (name == "prop31") return prop31_suite(opts);
    if (name == "thm33") return thm33_suite(opts);
    if (name == "identities") return identities_suite(opts);
    throw DomainError("unknown suite '" + name + "'");
}

std::string to_json(const VerifyReport& r, bool timing) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["title"] = r.title;
    j["fields"] = nlohmann::json::array();
    for (const auto& f : r.fields) {
        j["fields"].push_back({{"p", f.p}, {"a", f.a}, {"modulus", f.modulus}, {"generator", f.generator}});
    }
    j["cases"] = nlohmann::json::array();
    for (const auto& c : r.cases) {
        nlohmann::json x{{"kind", c.kind},           {"label", c.label}, {"check", c.check},
                         {"lhs", c.lhs},             {"rhs", c.rhs},     {"instances", c.instances},
                         {"status", status_string(c.status)}, {"note", c.note}};
        if (timing) x["seconds"] = c.seconds;
        j["cases"].push_back(std::move(x));
    }
    j["pass"] = r.passed();
    return j.dump();
}

std::string to_table(const VerifyReport& r, bool timing) {
    std::ostringstream os;
    os << "suite " << r.suite << ": " << r.title << "\n";
    for (const auto& f : r.fields) {
        os << "  field F_" << f.p;
        if (f.a > 1) os << "^" << f.a;
        os << "  modulus [";
        for (std::size_t i = 0; i < f.modulus.size(); ++i) os << (i ? " " : "") << f.modulus[i];
        os << "]  g = " << f.generator << "\n";
    }
    for (const auto& c : r.cases) {
        os << status_string(c.status) << "  " << std::left << std::setw(14) << c.kind << std::setw(26) << c.label;
        if (!c.lhs.empty() || !c.rhs.empty()) os << " lhs " << c.lhs << "  rhs " << c.rhs;
        if (c.instances != 1) os << "  (" << c.instances << " instances)";
        if (timing) os << "  " << fmt(c.seconds) << "s";
        if (!c.note.empty()) os << "  # " << c.note;
        os << "\n";
    }
    os << (r.passed() ? "PASS" : "FAIL") << " " << r.suite << "\n";
    return os.str();
}

std::string to_csv(const VerifyReport& r, bool timing) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "suite,kind,label,status,lhs,rhs,instances,note" << (timing ? ",seconds" : "") << "\n";
    for (const auto& c : r.cases) {
        os << r.suite << "," << quote(c.kind) << "," << quote(c.label) << "," << status_string(c.status) << ","
           << quote(c.lhs) << "," << quote(c.rhs) << "," << c.instances << "," << quote(c.note);
        if (timing) os << "," << fmt(c.seconds);
        os << "\n";
    }
    return os.str();
}

}  // namespace iks
