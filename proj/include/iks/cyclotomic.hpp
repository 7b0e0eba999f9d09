#pragma once

// Exact values of character sums.
//
// SumValue is an element of Z[zeta_p, zeta_m] stored as a p x m integer
// histogram: entry (t, j) is the coefficient of zeta_p^t zeta_m^j. The
// representation is not unique (1 + zeta_p + ... + zeta_p^{p-1} = 0); use
// canonical_coordinates() or exactly_equal() to compare values.
//
// CycloRational is an element of Q(zeta_p) in the basis 1, zeta, ...,
// zeta^{p-2}, i.e. reduced modulo the p-th cyclotomic polynomial. That basis
// is canonical.

#include "iks/numeric.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace iks {

/// Largest number of nonzero-pair products one SumValue multiplication may do.
inline constexpr std::uint64_t kDefaultProductBudget = 400'000'000;

class SumValue {
public:
    SumValue() = default;
    /// The zero value with additive conductor p and multiplicative conductor m.
    SumValue(std::uint32_t p, std::uint32_t m);

    static SumValue integer(std::uint32_t p, std::uint32_t m, const BigInt& c);
    /// c * zeta_p^t * zeta_m^j (indices reduced).
    static SumValue monomial(std::uint32_t p, std::uint32_t m, std::int64_t t, std::int64_t j,
                             const BigInt& c = 1);
    /// Takes a p*m row-major histogram (row = additive index t).
    static SumValue from_counts(std::uint32_t p, std::uint32_t m, std::vector<BigInt> counts);
    static SumValue from_counts(std::uint32_t p, std::uint32_t m, std::span<const std::int64_t> counts);

    std::uint32_t additive_conductor() const noexcept { return p_; }
    std::uint32_t multiplicative_conductor() const noexcept { return m_; }
    const BigInt& at(std::uint32_t t, std::uint32_t j) const { return counts_[std::size_t{t} * m_ + j]; }
    const std::vector<BigInt>& counts() const noexcept { return counts_; }

    SumValue& operator+=(const SumValue& o);
    SumValue& operator-=(const SumValue& o);
    SumValue operator-() const;
    SumValue scaled(const BigInt& c) const;
    /// Convolution product; throws BudgetExceeded above `budget` pair products.
    SumValue mul(const SumValue& o, std::uint64_t budget = kDefaultProductBudget) const;

    friend SumValue operator+(SumValue a, const SumValue& b) { return a += b; }
    friend SumValue operator-(SumValue a, const SumValue& b) { return a -= b; }
    friend SumValue operator*(const SumValue& a, const SumValue& b) { return a.mul(b); }

    /// Sum of absolute counts; a sum of N unit terms has mass <= N.
    BigInt mass() const;
    std::size_t nonzeros() const;

    /// Evaluation at zeta_p = e^{2 pi i/p}, zeta_m = e^{2 pi i/m}. The
    /// rounding error is at most mass() * 1e-14 in absolute value.
    std::complex<double> embed() const;

    /// Complex conjugate: (t, j) -> (-t, -j).
    SumValue conjugate() const;
    /// Replaces psi by its conjugate: (t, j) -> (-t, j).
    SumValue conjugate_additive() const;
    /// Galois action zeta_p -> zeta_p^c on the additive part, c prime to p.
    SumValue galois_additive(std::uint32_t c) const;

    /// Coordinates in the Z-basis zeta_p^a zeta_m^b, a < p-1, b < phi(m).
    /// Requires gcd(p, m) == 1. Two values are equal iff these agree.
    std::vector<BigInt> canonical_coordinates() const;

    friend bool exactly_equal(const SumValue& a, const SumValue& b);
    friend bool operator==(const SumValue& a, const SumValue& b) { return exactly_equal(a, b); }

private:
    std::uint32_t p_ = 1;
    std::uint32_t m_ = 1;
    std::vector<BigInt> counts_;
};

/// S = numerator / denominator, for sums produced by formulas carrying a
/// known integer denominator.
struct ScaledSum {
    SumValue numerator;
    BigInt denominator = 1;

    std::complex<double> embed() const;
};

class CycloRational {
public:
    CycloRational() = default;
    explicit CycloRational(std::uint32_t p);

    static CycloRational integer(std::uint32_t p, const Rational& c);
    /// zeta_p^t.
    static CycloRational zeta_power(std::uint32_t p, std::int64_t t);
    /// Reduces sum_t c_t zeta^t (any length) into the canonical basis.
    static CycloRational from_powers(std::uint32_t p, std::span<const Rational> c);

    std::uint32_t conductor() const noexcept { return p_; }
    /// p-1 coordinates in the basis 1, zeta, ..., zeta^{p-2}.
    const std::vector<Rational>& coefficients() const noexcept { return c_; }

    CycloRational& operator+=(const CycloRational& o);
    CycloRational& operator-=(const CycloRational& o);
    CycloRational& operator*=(const Rational& s);
    CycloRational operator-() const;
    CycloRational operator*(const CycloRational& o) const;

    friend CycloRational operator+(CycloRational a, const CycloRational& b) { return a += b; }
    friend CycloRational operator-(CycloRational a, const CycloRational& b) { return a -= b; }
    friend CycloRational operator*(CycloRational a, const Rational& s) { return a *= s; }
    friend CycloRational operator*(const Rational& s, CycloRational a) { return a *= s; }
    friend bool operator==(const CycloRational& a, const CycloRational& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    bool is_zero() const;
    /// All coordinates are integers (element of Z[zeta_p]).
    bool is_integral() const;
    /// Element of Q (only the constant coordinate can be nonzero).
    bool is_rational() const;
    /// Least common denominator of the coordinates.
    BigInt denominator() const;

    std::complex<double> embed() const;
    /// zeta -> zeta^c for c prime to p.
    CycloRational galois(std::uint32_t c) const;
    CycloRational conjugate() const { return galois(p_ - 1); }

private:
    std::uint32_t p_ = 2;
    std::vector<Rational> c_;
};

/// Integer coefficients of the m-th cyclotomic polynomial, lowest first.
std::vector<BigInt> cyclotomic_polynomial(std::uint32_t m);

/// Resultant of two integer polynomials (lowest coefficient first), by a
/// fraction-free determinant of the Sylvester matrix.
BigInt resultant(std::span<const BigInt> f, std::span<const BigInt> g);

/// Norm of x from Q(zeta_p) to Q, as the resultant Res(Phi_p, X) scaled by
/// the denominator.
Rational norm(const CycloRational& x);

/// Folds an untwisted value (m == 1) into Q(zeta_p): c'_t = c_t - c_{p-1}.
CycloRational reduce_mod_phi(const SumValue& v);

/// pi-adic valuation, pi = zeta_p - 1; nullopt for zero.
Valuation ord_pi(const CycloRational& x);

/// ord_q(x) = ord_pi(x) / ((p-1) a) for q = p^a.
Valuation ord_q(const CycloRational& x, std::uint64_t q);

inline std::complex<double> embed_complex(const SumValue& v) { return v.embed(); }
inline std::complex<double> embed_complex(const CycloRational& v) { return v.embed(); }

}  // namespace iks
