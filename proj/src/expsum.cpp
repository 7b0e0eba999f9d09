#include "iks/expsum.hpp"

#include "iks/error.hpp"

#include <cmath>
#include <sstream>

namespace iks {

namespace {

using Histogram = std::vector<std::int64_t>;

// Sum over x_1..x_n in (F^*)^n, x_{n+1} = g^{prod_log} / (x_1...x_n), of
// prod chi_i(x_i) psi(g^{num_log} / (x_1 + ... + x_{n+1})), skipping zero
// denominators. Characters enter through per-variable log multipliers mod mq.
struct KloostermanKernel {
    const FieldTable& E;
    unsigned n;
    std::uint32_t prod_log;
    std::uint32_t num_log;
    std::vector<std::uint32_t> mu;  // n + 1 multipliers, empty when untwisted
    std::uint32_t mq = 1;

    std::uint32_t width() const { return mu.empty() ? 1 : mq; }

    enum Mode { kTrace, kTwisted, kValues };

    template <Mode M>
    void innermost(std::uint32_t lo, std::uint32_t hi, std::uint32_t ps, std::uint32_t es, std::uint32_t cs,
                   Histogram& h) const {
        const std::uint32_t N = E.group_order();
        const std::uint32_t Z = E.zero_log();
        const std::uint32_t* zech = E.zech_table().data();
        const std::uint32_t* tr = E.trace_by_log_table().data();
        const std::uint32_t m = width();
        const std::uint32_t mu_in = M == kTwisted ? mu[n - 1] % mq : 0;
        const std::uint32_t mu_last = M == kTwisted ? mu[n] % mq : 0;

        auto add = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
            if (x == Z) return y;
            if (y == Z) return x;
            std::uint32_t d = y >= x ? y - x : y + N - x;
            std::uint32_t z = zech[d];
            if (z == Z) return Z;
            std::uint32_t s = x + z;
            return s >= N ? s - N : s;
        };

        // last = prod_log - es - e (mod N), decremented as e advances.
        std::uint64_t last = (std::uint64_t{prod_log} + 2 * N - es - lo) % N;
        std::uint32_t num = num_log;
        for (std::uint32_t e = lo; e < hi; ++e) {
            const std::uint32_t s = add(add(ps, e), static_cast<std::uint32_t>(last));
            if constexpr (M == kValues) {
                ++h[s];
            } else if (s != Z) {
                std::uint32_t inv = num + N - s;
                if (inv >= N) inv -= N;
                if constexpr (M == kTwisted) {
                    const std::uint64_t c = (cs + std::uint64_t{mu_in} * (e % mq) + std::uint64_t{mu_last} * (last % mq)) % mq;
                    ++h[std::size_t{tr[inv]} * m + c];
                } else {
                    ++h[tr[inv]];
                }
            }
            last = last == 0 ? N - 1 : last - 1;
        }
    }

    template <Mode M>
    void level(unsigned i, std::uint32_t lo, std::uint32_t hi, std::uint32_t ps, std::uint32_t es, std::uint32_t cs,
               Histogram& h) const {
        if (i + 1 == n) {
            innermost<M>(lo, hi, ps, es, cs, h);
            return;
        }
        const std::uint32_t N = E.group_order();
        for (std::uint32_t e = lo; e < hi; ++e) {
            const std::uint32_t ps2 = E.add_logs(ps, e);
            const std::uint32_t es2 = static_cast<std::uint32_t>((std::uint64_t{es} + e) % N);
            std::uint32_t cs2 = cs;
            if constexpr (M == kTwisted) cs2 = static_cast<std::uint32_t>((cs + std::uint64_t{mu[i]} * (e % mq)) % mq);
            level<M>(i + 1, 0, N, ps2, es2, cs2, h);
        }
    }

    template <Mode M>
    Histogram run_mode(unsigned threads, std::size_t size) const {
        return parallel_reduce<Histogram>(
            E.group_order(), threads, [&] { return Histogram(size, 0); },
            [&](std::size_t lo, std::size_t hi, Histogram& h) {
                level<M>(0, static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi), E.zero_log(), 0, 0, h);
            },
            [](Histogram& a, const Histogram& b) {
                for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            });
    }

    Histogram run(unsigned threads) const {
        const std::size_t size = std::size_t{E.characteristic()} * width();
        return mu.empty() ? run_mode<kTrace>(threads, size) : run_mode<kTwisted>(threads, size);
    }

    /// Number of points with each value of log(x_1 + ... + x_{n+1}); index
    /// zero_log() counts the zero sums.
    Histogram value_counts(unsigned threads) const { return run_mode<kValues>(threads, E.order()); }
};

// Toric sum of sum_j a_j x^{V_j} over (F^*)^{n_vars} with per-variable
// character multipliers mod mq.
struct ToricKernel {
    const FieldTable& E;
    unsigned nv;
    std::vector<std::uint32_t> coeff_log;
    std::vector<std::vector<std::int64_t>> expo;  // expo[j][i], reduced mod N
    std::vector<std::uint32_t> mu;                // empty when untwisted
    std::uint32_t mq = 1;

    std::uint32_t width() const { return mu.empty() ? 1 : mq; }

    void recurse(unsigned i, std::uint32_t lo, std::uint32_t hi, std::vector<std::uint32_t>& term_log, std::uint32_t cs,
                 Histogram& h) const {
        const std::uint32_t N = E.group_order();
        const std::size_t J = coeff_log.size();
        const std::uint32_t m = width();
        std::vector<std::uint32_t> local(J);
        for (std::size_t j = 0; j < J; ++j) {
            local[j] = static_cast<std::uint32_t>((term_log[j] + static_cast<std::uint64_t>(expo[j][i]) * lo) % N);
        }
        std::uint32_t c = mu.empty() ? 0 : static_cast<std::uint32_t>((cs + std::uint64_t{mu[i]} * (lo % mq)) % mq);
        const std::uint32_t step_c = mu.empty() ? 0 : mu[i] % mq;
        for (std::uint32_t e = lo; e < hi; ++e) {
            if (i + 1 == nv) {
                std::uint32_t s = E.zero_log();
                for (std::size_t j = 0; j < J; ++j) s = E.add_logs(s, local[j]);
                const std::uint32_t t = s == E.zero_log() ? 0 : E.trace_of_log(s);
                ++h[std::size_t{t} * m + c];
            } else {
                recurse(i + 1, 0, N, local, c, h);
            }
            for (std::size_t j = 0; j < J; ++j) {
                std::uint64_t v = local[j] + static_cast<std::uint64_t>(expo[j][i]);
                local[j] = static_cast<std::uint32_t>(v >= N ? v - N : v);
            }
            if (!mu.empty()) {
                c += step_c;
                if (c >= mq) c -= mq;
            }
        }
    }

    Histogram run(unsigned threads) const {
        const std::uint32_t N = E.group_order();
        const std::size_t size = std::size_t{E.characteristic()} * width();
        return parallel_reduce<Histogram>(
            N, threads, [&] { return Histogram(size, 0); },
            [&](std::size_t lo, std::size_t hi, Histogram& h) {
                std::vector<std::uint32_t> start = coeff_log;
                recurse(0, static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi), start, 0, h);
            },
            [](Histogram& a, const Histogram& b) {
                for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            });
    }
};

std::string describe_field(const FieldTable& F) {
    std::ostringstream os;
    os << "F_" << F.characteristic();
    if (F.degree() > 1) os << "^" << F.degree();
    return os.str();
}

}  // namespace

CharacterTuple CharacterTuple::from(const FieldTable& F, const std::vector<std::int64_t>& indices) {
    CharacterTuple chi;
    for (auto j : indices) chi.index.push_back(static_cast<std::uint32_t>(mod(j, F.group_order())));
    return chi;
}

bool CharacterTuple::all_trivial() const noexcept {
    for (auto j : index) {
        if (j != 0) return false;
    }
    return true;
}

bool CharacterTuple::all_equal() const noexcept {
    for (auto j : index) {
        if (j != index.front()) return false;
    }
    return true;
}

void check_budget(double points, const EnumOptions& opts, const std::string& what) {
    if (opts.force || points <= opts.budget) return;
    std::ostringstream os;
    os << what << " needs " << points << " points, above the enumeration budget of " << opts.budget
       << "; lower k or n, raise --budget, or pass --force";
    throw BudgetExceeded(os.str(), points, opts.budget);
}

SumValue character_value(const FieldTable& F, std::uint32_t j, Elem x) {
    if (x == 0) throw DomainError("multiplicative character evaluated at 0");
    const std::uint32_t m = F.group_order();
    return SumValue::monomial(F.characteristic(), m, 0, static_cast<std::int64_t>((std::uint64_t{j} * F.log(x)) % m));
}

SumValue lift_conductor(const SumValue& v, std::uint32_t m) {
    const std::uint32_t m0 = v.multiplicative_conductor();
    if (m % m0 != 0) throw DomainError("cannot lift conductor " + std::to_string(m0) + " to " + std::to_string(m));
    const std::uint32_t p = v.additive_conductor();
    const std::uint32_t f = m / m0;
    std::vector<BigInt> c(std::size_t{p} * m);
    for (std::uint32_t t = 0; t < p; ++t) {
        for (std::uint32_t j = 0; j < m0; ++j) c[std::size_t{t} * m + j * f] = v.at(t, j);
    }
    return SumValue::from_counts(p, m, std::move(c));
}

SumValue gauss_sum(const FieldTable& F, std::uint32_t j) {
    const std::uint32_t N = F.group_order();
    const std::uint32_t p = F.characteristic();
    Histogram h(std::size_t{p} * N, 0);
    j %= N;
    for (std::uint32_t e = 0; e < N; ++e) {
        ++h[std::size_t{F.trace_of_log(e)} * N + (std::uint64_t{j} * e) % N];
    }
    return SumValue::from_counts(p, N, h);
}

SumValue kloosterman_sum(const ExtensionMaps& maps, unsigned n, Elem b, const CharacterTuple& chi,
                         const EnumOptions& opts) {
    const FieldTable& B = maps.base();
    const FieldTable& E = maps.ext();
    if (n == 0) throw DomainError("the number of variables n must be at least 1");
    if (b == 0 || b >= B.order()) throw DomainError("b must be a nonzero element of the base field");
    if (chi.size() != n + 1) {
        throw DomainError("expected " + std::to_string(n + 1) + " characters, got " + std::to_string(chi.size()));
    }
    const double points = std::pow(static_cast<double>(E.group_order()), n);
    check_budget(points, opts, "inverted Kloosterman sum over " + describe_field(E) + " with n = " + std::to_string(n));

    KloostermanKernel K{E, n, E.log(maps.embed(b)), 0, {}, 1};
    if (!chi.all_trivial()) {
        K.mq = B.group_order();
        for (auto j : chi.index) K.mu.push_back(static_cast<std::uint32_t>((std::uint64_t{j} * maps.norm_log_factor()) % K.mq));
    }
    const Histogram h = K.run(opts.threads);
    return SumValue::from_counts(E.characteristic(), K.width(), h);
}

SumValue kloosterman_sum(const FieldPtr& base, unsigned k, unsigned n, Elem b, const CharacterTuple& chi,
                         const EnumOptions& opts) {
    const double points = std::pow(std::pow(static_cast<double>(base->order()), k) - 1, n);
    check_budget(points, opts, "inverted Kloosterman sum over F_" + std::to_string(base->order()) + "^" + std::to_string(k));
    return kloosterman_sum(field_maps(base, k), n, b, chi, opts);
}

SumValue toric_sum(const ExtensionMaps& maps, const LaurentPoly& f, const CharacterTuple& chi, const EnumOptions& opts) {
    const FieldTable& B = maps.base();
    const FieldTable& E = maps.ext();
    if (f.p != B.characteristic() || f.a != B.degree()) throw DomainError("polynomial is not over the base field");
    if (f.n_vars == 0) throw DomainError("toric sums need at least one variable");
    if (chi.size() != f.n_vars) {
        throw DomainError("expected one character per variable (" + std::to_string(f.n_vars) + "), got " +
                          std::to_string(chi.size()));
    }
    const double points = std::pow(static_cast<double>(E.group_order()), f.n_vars);
    check_budget(points, opts, "toric sum over " + describe_field(E) + " in " + std::to_string(f.n_vars) + " variables");

    const std::uint32_t N = E.group_order();
    ToricKernel K{E, f.n_vars, {}, {}, {}, 1};
    for (const auto& t : f.terms) {
        if (t.coeff == 0) continue;
        K.coeff_log.push_back(E.log(maps.embed(t.coeff)));
        std::vector<std::int64_t> e;
        for (int v : t.exponent) e.push_back(mod(v, N));
        K.expo.push_back(std::move(e));
    }
    if (!chi.all_trivial()) {
        K.mq = B.group_order();
        for (auto j : chi.index) K.mu.push_back(static_cast<std::uint32_t>((std::uint64_t{j} * maps.norm_log_factor()) % K.mq));
    }
    const Histogram h = K.run(opts.threads);
    return SumValue::from_counts(E.characteristic(), K.width(), h);
}

LaurentPoly inverted_kloosterman_laurent(const FieldTable& F, unsigned n, Elem b) {
    if (b == 0) throw DomainError("b must be nonzero");
    LaurentPoly f;
    f.p = F.characteristic();
    f.a = F.degree();
    f.n_vars = n + 2;
    const Elem minus_one = F.neg(1);
    for (unsigned i = 0; i < n; ++i) {
        std::vector<int> e(n + 2, 0);
        e[i] = 1;
        e[n] = 1;
        e[n + 1] = 1;
        f.terms.push_back({minus_one, e});
    }
    std::vector<int> e(n + 2, -1);
    e[n] = 1;
    e[n + 1] = 1;
    f.terms.push_back({F.neg(b), e});
    std::vector<int> y(n + 2, 0), z(n + 2, 0);
    y[n] = 1;
    z[n + 1] = 1;
    f.terms.push_back({1, y});
    f.terms.push_back({1, z});
    return canonicalize(F, std::move(f));
}

SumValue e_sum(const FieldPtr& F, unsigned n, Elem b, const CharacterTuple& chi, const EnumOptions& opts) {
    if (chi.size() != n + 1) {
        throw DomainError("expected " + std::to_string(n + 1) + " characters, got " + std::to_string(chi.size()));
    }
    const std::uint32_t N = F->group_order();
    CharacterTuple twist;
    for (unsigned i = 0; i < n; ++i) twist.index.push_back((chi.index[i] + N - chi.index[n] % N) % N);
    twist.index.push_back(0);
    twist.index.push_back(0);
    return toric_sum(field_maps(F, 1), inverted_kloosterman_laurent(*F, n, b), twist, opts);
}

ScaledSum gauss_formula_sum(const ExtensionMaps& maps, unsigned n, Elem b, const CharacterTuple& chi,
                            const EnumOptions& opts) {
    const FieldTable& B = maps.base();
    const FieldTable& E = maps.ext();
    if (n == 0) throw DomainError("the number of variables n must be at least 1");
    if (b == 0 || b >= B.order()) throw DomainError("b must be a nonzero element of the base field");
    if (chi.size() != n + 1) {
        throw DomainError("expected " + std::to_string(n + 1) + " characters, got " + std::to_string(chi.size()));
    }
    const std::uint32_t N = E.group_order();
    const std::uint32_t Q = E.order();
    const std::uint32_t p = E.characteristic();
    // Each of the N terms is a chain of n + 3 sparse products of width up to p N.
    const double work = static_cast<double>(N) * N * N * p * (n + 3);
    check_budget(work, opts, "Gauss-sum formula over " + describe_field(E));

    // Characters of F_Q^*: index l, chi_l(G^e) = zeta_N^{l e}. Base characters
    // lift through the norm: chi_j o N has index j * c * N / (q - 1).
    const std::uint64_t lift = std::uint64_t{N} / B.group_order() * maps.norm_log_factor();
    std::vector<std::uint32_t> J;
    std::uint64_t J_sum = 0;
    for (auto j : chi.index) {
        J.push_back(static_cast<std::uint32_t>(j * lift % N));
        J_sum += J.back();
    }
    std::vector<SumValue> G(N);
    for (std::uint32_t l = 0; l < N; ++l) G[l] = gauss_sum(E, l);

    const std::uint32_t lb = E.log(maps.embed(b));
    const std::uint32_t log_minus_one = p == 2 ? 0 : N / 2;

    SumValue total(p, N);
    // Main term: Q(Q-1) S_1 = -(Q-1)^{n+1} chi_1(b) when all characters agree.
    if (chi.all_equal()) {
        BigInt c;
        mpz_ui_pow_ui(c.get_mpz_t(), N, n + 1);
        total -= SumValue::monomial(p, N, 0, static_cast<std::int64_t>(std::uint64_t{J[0]} * lb % N), c);
    }
    // Q(Q-1) S_2 = sum_chi chibar(b) rho(-1) G(rhobar)^2 prod_i G(chi chi_i),
    // rho = chi^{n+1} chi_1 ... chi_{n+1}.
    for (std::uint32_t l = 0; l < N; ++l) {
        const std::uint64_t r = (std::uint64_t{n + 1} * l + J_sum) % N;
        const std::uint64_t phase = ((N - std::uint64_t{l} * lb % N) + r * log_minus_one) % N;
        SumValue term = SumValue::monomial(p, N, 0, static_cast<std::int64_t>(phase));
        const SumValue& g_rho_bar = G[(N - r) % N];
        term = term * g_rho_bar;
        term = term * g_rho_bar;
        for (unsigned i = 0; i <= n; ++i) term = term * G[(l + J[i]) % N];
        total += term;
    }
    BigInt den = BigInt(Q) * BigInt(N);
    return {std::move(total), den};
}

SumValue inverted_kloosterman_toric_sum(const ExtensionMaps& maps, unsigned n, Elem b, const EnumOptions& opts) {
    const FieldTable& B = maps.base();
    const FieldTable& E = maps.ext();
    if (n == 0) throw DomainError("the number of variables n must be at least 1");
    if (b == 0 || b >= B.order()) throw DomainError("b must be a nonzero element of the base field");
    const std::uint32_t N = E.group_order();
    const std::uint32_t Z = E.zero_log();
    const std::uint32_t p = E.characteristic();
    const double points = std::pow(static_cast<double>(N), n) + 2.0 * N * N;
    check_budget(points, opts, "fibered toric sum over " + describe_field(E) + " with n = " + std::to_string(n));

    // c(s): how often x_1 + ... + x_n + b/(x_1...x_n) takes the value s.
    const KloostermanKernel K{E, n, E.log(maps.embed(b)), 0, {}, 1};
    const Histogram c = K.value_counts(opts.threads);

    // Fibers of (y, z) in (F^*)^2 over u = z + y - yz and over u = z + y.
    std::vector<std::int64_t> m1(std::size_t{N} + 1, 0), m0(std::size_t{N} + 1, 0);
    const std::uint32_t log_minus_one = p == 2 ? 0 : N / 2;
    for (std::uint32_t y = 0; y < N; ++y) {
        for (std::uint32_t z = 0; z < N; ++z) {
            const std::uint32_t sum = E.add_logs(y, z);
            ++m0[sum];
            const std::uint32_t yz = static_cast<std::uint32_t>((std::uint64_t{y} + z + log_minus_one) % N);
            ++m1[E.add_logs(sum, yz)];
        }
    }

    // T(s) = sum_{y,z} psi(z + y - s y z): for s != 0 substitute y, z -> y/s, z/s
    // to get sum_u m1(u) psi(u / s); for s = 0 it is sum_u m0(u) psi(u).
    std::vector<__int128> acc(p, 0);
    std::vector<std::int64_t> T(p);
    for (std::uint32_t s = 0; s <= N; ++s) {
        if (c[s] == 0) continue;
        std::fill(T.begin(), T.end(), 0);
        if (s == Z) {
            T[0] += m0[Z];
            for (std::uint32_t u = 0; u < N; ++u) T[E.trace_of_log(u)] += m0[u];
        } else {
            T[0] += m1[Z];
            for (std::uint32_t u = 0; u < N; ++u) {
                if (m1[u] == 0) continue;
                T[E.trace_of_log(u >= s ? u - s : u + N - s)] += m1[u];
            }
        }
        for (std::uint32_t t = 0; t < p; ++t) acc[t] += static_cast<__int128>(c[s]) * T[t];
    }
    std::vector<BigInt> out(p);
    for (std::uint32_t t = 0; t < p; ++t) {
        const bool neg = acc[t] < 0;
        unsigned __int128 v = neg ? -static_cast<unsigned __int128>(acc[t]) : acc[t];
        const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64), lo = static_cast<std::uint64_t>(v);
        BigInt x = BigInt(std::to_string(hi)) * BigInt("18446744073709551616") + BigInt(std::to_string(lo));
        out[t] = neg ? BigInt(-x) : x;
    }
    return SumValue::from_counts(p, 1, std::move(out));
}

SumValue tn_transform(const FieldPtr& F, unsigned n, Elem b, const CharacterTuple& chi, const EnumOptions& opts) {
    if (n == 0) throw DomainError("the number of variables n must be at least 1");
    if (b == 0 || b >= F->order()) throw DomainError("b must be a nonzero element of the field");
    if (chi.size() != n + 1) {
        throw DomainError("expected " + std::to_string(n + 1) + " characters, got " + std::to_string(chi.size()));
    }
    const FieldTable& E = *F;
    const double points = std::pow(static_cast<double>(E.group_order()), n);
    check_budget(points, opts, "T_n transform over " + describe_field(E));

    KloostermanKernel K{E, n, 0, E.log(b), {}, 1};
    if (!chi.all_trivial()) {
        K.mq = E.group_order();
        K.mu = chi.index;
    }
    const SumValue direct = SumValue::from_counts(E.characteristic(), K.width(), K.run(opts.threads));

    const Elem b_shift = E.pow(b, -static_cast<std::int64_t>(n + 1));
    const SumValue s = kloosterman_sum(field_maps(F, 1), n, b_shift, chi, opts);
    SumValue via_s = s;
    if (!chi.all_trivial()) {
        std::uint64_t j_sum = 0;
        for (auto j : chi.index) j_sum += j;
        via_s = character_value(E, static_cast<std::uint32_t>(j_sum % E.group_order()), b) * s;
    }
    if (!exactly_equal(direct, via_s)) {
        throw VerificationFailure("T_n computed directly differs from chi(b) S_n(chi, b^-(n+1))");
    }
    return direct;
}

}  // namespace iks
