#include "iks/cyclotomic.hpp"

#include "iks/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace iks {

namespace {

std::size_t index_mod(std::int64_t x, std::uint32_t n) { return static_cast<std::size_t>(mod(x, n)); }

// In-place remainder of `a` modulo the monic polynomial `m` (lowest first).
void reduce_monic(std::vector<BigInt>& a, const std::vector<BigInt>& m) {
    const std::size_t dm = m.size() - 1;
    for (std::size_t i = a.size(); i-- > dm;) {
        if (a[i] == 0) continue;
        const BigInt c = a[i];
        const std::size_t shift = i - dm;
        for (std::size_t k = 0; k <= dm; ++k) a[shift + k] -= c * m[k];
    }
    a.resize(std::min(a.size(), dm));
    a.resize(dm, 0);
}

void trim(std::vector<BigInt>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

void require_same_shape(const SumValue& a, const SumValue& b) {
    if (a.additive_conductor() != b.additive_conductor() ||
        a.multiplicative_conductor() != b.multiplicative_conductor()) {
        throw DomainError("sum values with different conductors (" + std::to_string(a.additive_conductor()) +
                          "," + std::to_string(a.multiplicative_conductor()) + ") vs (" +
                          std::to_string(b.additive_conductor()) + "," +
                          std::to_string(b.multiplicative_conductor()) + ")");
    }
}

}  // namespace

// ---------------------------------------------------------------- SumValue

SumValue::SumValue(std::uint32_t p, std::uint32_t m) : p_(p), m_(m), counts_(std::size_t{p} * m) {
    if (p == 0 || m == 0) throw DomainError("conductors must be positive");
}

SumValue SumValue::integer(std::uint32_t p, std::uint32_t m, const BigInt& c) {
    SumValue v(p, m);
    v.counts_[0] = c;
    return v;
}

SumValue SumValue::monomial(std::uint32_t p, std::uint32_t m, std::int64_t t, std::int64_t j, const BigInt& c) {
    SumValue v(p, m);
    v.counts_[index_mod(t, p) * m + index_mod(j, m)] = c;
    return v;
}

SumValue SumValue::from_counts(std::uint32_t p, std::uint32_t m, std::vector<BigInt> counts) {
    SumValue v(p, m);
    if (counts.size() != v.counts_.size()) throw DomainError("histogram size does not match p*m");
    v.counts_ = std::move(counts);
    return v;
}

SumValue SumValue::from_counts(std::uint32_t p, std::uint32_t m, std::span<const std::int64_t> counts) {
    SumValue v(p, m);
    if (counts.size() != v.counts_.size()) throw DomainError("histogram size does not match p*m");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        mpz_set_si(v.counts_[i].get_mpz_t(), static_cast<long>(counts[i]));
    }
    return v;
}

SumValue& SumValue::operator+=(const SumValue& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
    return *this;
}

SumValue& SumValue::operator-=(const SumValue& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] -= o.counts_[i];
    return *this;
}

SumValue SumValue::operator-() const {
    SumValue r = *this;
    for (auto& c : r.counts_) c = -c;
    return r;
}

SumValue SumValue::scaled(const BigInt& c) const {
    SumValue r = *this;
    for (auto& x : r.counts_) x *= c;
    return r;
}

SumValue SumValue::mul(const SumValue& o, std::uint64_t budget) const {
    require_same_shape(*this, o);
    struct Entry {
        std::uint32_t t, j;
        const BigInt* c;
    };
    auto collect = [](const SumValue& v) {
        std::vector<Entry> out;
        for (std::uint32_t t = 0; t < v.p_; ++t) {
            for (std::uint32_t j = 0; j < v.m_; ++j) {
                const BigInt& c = v.counts_[std::size_t{t} * v.m_ + j];
                if (c != 0) out.push_back({t, j, &c});
            }
        }
        return out;
    };
    const auto a = collect(*this);
    const auto b = collect(o);
    const double work = static_cast<double>(a.size()) * static_cast<double>(b.size());
    if (work > static_cast<double>(budget)) {
        throw BudgetExceeded("sum-value product needs " + std::to_string(static_cast<std::uint64_t>(work)) +
                                 " term products, budget is " + std::to_string(budget),
                             work, static_cast<double>(budget));
    }
    SumValue r(p_, m_);
    for (const auto& x : a) {
        for (const auto& y : b) {
            std::uint32_t t = x.t + y.t;
            if (t >= p_) t -= p_;
            std::uint32_t j = x.j + y.j;
            if (j >= m_) j -= m_;
            mpz_addmul(r.counts_[std::size_t{t} * m_ + j].get_mpz_t(), x.c->get_mpz_t(), y.c->get_mpz_t());
        }
    }
    return r;
}

BigInt SumValue::mass() const {
    BigInt s = 0;
    for (const auto& c : counts_) s += abs(c);
    return s;
}

std::size_t SumValue::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : counts_) n += (c != 0);
    return n;
}

std::complex<double> SumValue::embed() const {
    std::vector<std::complex<double>> zp(p_), zm(m_);
    for (std::uint32_t t = 0; t < p_; ++t) zp[t] = std::polar(1.0, 2 * std::numbers::pi * t / p_);
    for (std::uint32_t j = 0; j < m_; ++j) zm[j] = std::polar(1.0, 2 * std::numbers::pi * j / m_);
    std::complex<double> total = 0;
    for (std::uint32_t t = 0; t < p_; ++t) {
        std::complex<double> row = 0;
        for (std::uint32_t j = 0; j < m_; ++j) {
            const BigInt& c = counts_[std::size_t{t} * m_ + j];
            if (c != 0) row += c.get_d() * zm[j];
        }
        total += row * zp[t];
    }
    return total;
}

SumValue SumValue::conjugate() const {
    SumValue r(p_, m_);
    for (std::uint32_t t = 0; t < p_; ++t) {
        for (std::uint32_t j = 0; j < m_; ++j) {
            r.counts_[((p_ - t) % p_) * std::size_t{m_} + (m_ - j) % m_] = counts_[std::size_t{t} * m_ + j];
        }
    }
    return r;
}

SumValue SumValue::conjugate_additive() const { return galois_additive(p_ - 1); }

SumValue SumValue::galois_additive(std::uint32_t c) const {
    if (std::gcd(c, p_) != 1) throw DomainError("Galois multiplier must be prime to p");
    SumValue r(p_, m_);
    for (std::uint32_t t = 0; t < p_; ++t) {
        const std::size_t dst = (std::uint64_t{t} * c % p_) * m_;
        for (std::uint32_t j = 0; j < m_; ++j) r.counts_[dst + j] = counts_[std::size_t{t} * m_ + j];
    }
    return r;
}

std::vector<BigInt> SumValue::canonical_coordinates() const {
    if (std::gcd(p_, m_) != 1) throw DomainError("canonical form needs coprime conductors");
    const auto phi_m = cyclotomic_polynomial(m_);
    const std::size_t dm = phi_m.size() - 1;
    // Rows: reduce each zeta_m polynomial modulo Phi_m.
    std::vector<std::vector<BigInt>> rows(p_);
    for (std::uint32_t t = 0; t < p_; ++t) {
        rows[t].assign(counts_.begin() + std::size_t{t} * m_, counts_.begin() + std::size_t{t + 1} * m_);
        reduce_monic(rows[t], phi_m);
    }
    // Columns: zeta_p^{p-1} = -(1 + ... + zeta_p^{p-2}).
    std::vector<BigInt> out((p_ - 1) * dm);
    for (std::uint32_t a = 0; a + 1 < p_; ++a) {
        for (std::size_t b = 0; b < dm; ++b) out[a * dm + b] = rows[a][b] - rows[p_ - 1][b];
    }
    return out;
}

bool exactly_equal(const SumValue& a, const SumValue& b) {
    require_same_shape(a, b);
    return a.canonical_coordinates() == b.canonical_coordinates();
}

std::complex<double> ScaledSum::embed() const { return numerator.embed() / denominator.get_d(); }

// ----------------------------------------------------------- CycloRational

CycloRational::CycloRational(std::uint32_t p) : p_(p), c_(p - 1) {
    if (p < 2) throw DomainError("cyclotomic conductor must be at least 2");
}

CycloRational CycloRational::integer(std::uint32_t p, const Rational& c) {
    CycloRational x(p);
    x.c_[0] = c;
    return x;
}

CycloRational CycloRational::zeta_power(std::uint32_t p, std::int64_t t) {
    std::vector<Rational> c(p);
    c[index_mod(t, p)] = 1;
    return from_powers(p, c);
}

CycloRational CycloRational::from_powers(std::uint32_t p, std::span<const Rational> c) {
    std::vector<Rational> folded(p);
    for (std::size_t i = 0; i < c.size(); ++i) folded[i % p] += c[i];
    CycloRational x(p);
    for (std::uint32_t t = 0; t + 1 < p; ++t) x.c_[t] = folded[t] - folded[p - 1];
    return x;
}

CycloRational& CycloRational::operator+=(const CycloRational& o) {
    if (o.p_ != p_) throw DomainError("conductor mismatch in cyclotomic addition");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycloRational& CycloRational::operator-=(const CycloRational& o) {
    if (o.p_ != p_) throw DomainError("conductor mismatch in cyclotomic subtraction");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycloRational& CycloRational::operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

CycloRational CycloRational::operator-() const {
    CycloRational r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycloRational CycloRational::operator*(const CycloRational& o) const {
    if (o.p_ != p_) throw DomainError("conductor mismatch in cyclotomic multiplication");
    std::vector<Rational> prod(2 * p_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return from_powers(p_, prod);
}

bool CycloRational::is_zero() const {
    for (const auto& x : c_) {
        if (x != 0) return false;
    }
    return true;
}

bool CycloRational::is_integral() const {
    for (const auto& x : c_) {
        if (x.get_den() != 1) return false;
    }
    return true;
}

bool CycloRational::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

BigInt CycloRational::denominator() const {
    BigInt d = 1;
    for (const auto& x : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
}

std::complex<double> CycloRational::embed() const {
    std::complex<double> s = 0;
    for (std::size_t t = 0; t < c_.size(); ++t) {
        if (c_[t] != 0) s += c_[t].get_d() * std::polar(1.0, 2 * std::numbers::pi * t / p_);
    }
    return s;
}

CycloRational CycloRational::galois(std::uint32_t c) const {
    if (std::gcd(c, p_) != 1) throw DomainError("Galois multiplier must be prime to p");
    std::vector<Rational> powers(p_);
    for (std::size_t t = 0; t < c_.size(); ++t) powers[t * c % p_] += c_[t];
    return from_powers(p_, powers);
}

// -------------------------------------------------------------- algebra

std::vector<BigInt> cyclotomic_polynomial(std::uint32_t m) {
    if (m == 0) throw DomainError("cyclotomic index must be positive");
    // Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}: multiply the positive factors,
    // then divide out the negative ones.
    auto mobius = [](std::uint32_t n) {
        int mu = 1;
        for (std::uint32_t d = 2; d * d <= n; ++d) {
            if (n % d) continue;
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
        return n > 1 ? -mu : mu;
    };
    std::vector<BigInt> f{1};
    std::vector<std::uint32_t> divide_by;
    for (std::uint32_t d = 1; d <= m; ++d) {
        if (m % d) continue;
        const int mu = mobius(m / d);
        if (mu == -1) divide_by.push_back(d);
        if (mu != 1) continue;
        std::vector<BigInt> g(f.size() + d);
        for (std::size_t i = 0; i < f.size(); ++i) {
            g[i + d] += f[i];
            g[i] -= f[i];
        }
        f = std::move(g);
    }
    for (std::uint32_t d : divide_by) {
        // f = (x^d - 1) h  =>  h_i = h_{i-d} - f_i, read from the bottom.
        std::vector<BigInt> h(f.size() - d);
        for (std::size_t i = 0; i < h.size(); ++i) h[i] = (i >= d ? h[i - d] : BigInt(0)) - f[i];
        f = std::move(h);
    }
    return f;
}

BigInt resultant(std::span<const BigInt> f_in, std::span<const BigInt> g_in) {
    std::vector<BigInt> f(f_in.begin(), f_in.end()), g(g_in.begin(), g_in.end());
    trim(f);
    trim(g);
    if (f.empty() || g.empty()) return 0;
    const std::size_t df = f.size() - 1, dg = g.size() - 1;
    if (df == 0 && dg == 0) return 1;
    if (dg == 0) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), df);
        return r;
    }
    if (df == 0) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), dg);
        return r;
    }
    const std::size_t n = df + dg;
    std::vector<std::vector<BigInt>> S(n, std::vector<BigInt>(n));
    for (std::size_t r = 0; r < dg; ++r) {
        for (std::size_t i = 0; i <= df; ++i) S[r][r + i] = f[df - i];
    }
    for (std::size_t r = 0; r < df; ++r) {
        for (std::size_t i = 0; i <= dg; ++i) S[dg + r][r + i] = g[dg - i];
    }
    // Bareiss fraction-free elimination.
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (S[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && S[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(S[k], S[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                S[i][j] = S[i][j] * S[k][k] - S[i][k] * S[k][j];
                mpz_divexact(S[i][j].get_mpz_t(), S[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = S[k][k];
    }
    return sign * S[n - 1][n - 1];
}

Rational norm(const CycloRational& x) {
    const std::uint32_t p = x.conductor();
    const BigInt d = x.denominator();
    std::vector<BigInt> X(x.coefficients().size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        Rational scaled = x.coefficients()[i] * d;
        X[i] = scaled.get_num();
    }
    const auto phi = cyclotomic_polynomial(p);
    BigInt dn;
    mpz_pow_ui(dn.get_mpz_t(), d.get_mpz_t(), p - 1);
    Rational r(resultant(phi, X), dn);
    r.canonicalize();
    return r;
}

CycloRational reduce_mod_phi(const SumValue& v) {
    if (v.multiplicative_conductor() != 1) {
        throw DomainError("reduce_mod_phi needs an untwisted value (m = 1), got m = " +
                          std::to_string(v.multiplicative_conductor()));
    }
    const std::uint32_t p = v.additive_conductor();
    std::vector<Rational> powers(p);
    for (std::uint32_t t = 0; t < p; ++t) powers[t] = v.at(t, 0);
    return CycloRational::from_powers(p, powers);
}

Valuation ord_pi(const CycloRational& x) {
    if (x.is_zero()) return std::nullopt;
    const std::uint32_t p = x.conductor();
    const BigInt d = x.denominator();
    std::vector<BigInt> X(x.coefficients().size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        Rational scaled = x.coefficients()[i] * d;
        X[i] = scaled.get_num();
    }
    const auto phi = cyclotomic_polynomial(p);
    const BigInt res = resultant(phi, X);
    const long v = static_cast<long>(p_adic_valuation(res, p)) -
                   static_cast<long>(p - 1) * static_cast<long>(p_adic_valuation(d, p));
    return Rational(v);
}

Valuation ord_q(const CycloRational& x, std::uint64_t q) {
    const std::uint32_t p = x.conductor();
    unsigned a = 0;
    std::uint64_t r = q;
    while (r > 1 && r % p == 0) {
        r /= p;
        ++a;
    }
    if (r != 1 || a == 0) {
        throw DomainError("q = " + std::to_string(q) + " is not a power of the conductor " + std::to_string(p));
    }
    auto v = ord_pi(x);
    if (!v) return std::nullopt;
    Rational out = *v / Rational(static_cast<long>((p - 1) * a));
    out.canonicalize();
    return out;
}

}  // namespace iks
