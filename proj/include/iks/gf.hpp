#pragma once

// Table-driven finite fields F_{p^a} and relative maps F_{q^k} -> F_q.
//
// Elements are encoded as integers in [0, q): the coefficient vector
// (c_0, ..., c_{a-1}) of the polynomial-basis representation read as the
// base-p number c_0 + c_1 p + ... + c_{a-1} p^{a-1}. Zero encodes 0 and one
// encodes 1. Multiplicative structure is carried by discrete logarithms with
// respect to a fixed generator; addition in the log domain goes through the
// Zech table log(1 + g^e).

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace iks {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultTableCap = std::uint64_t{1} << 26;

class FieldTable {
public:
    /// Builds F_{p^a}. The modulus is the lexicographically smallest monic
    /// irreducible polynomial (coefficients compared from the constant term
    /// upward) and the generator is the primitive element of smallest
    /// encoding. Throws DomainError for non-prime p or a == 0 and
    /// BudgetExceeded when p^a exceeds `cap`.
    static FieldTable build(std::uint32_t p, unsigned a, std::uint64_t cap = kDefaultTableCap);

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return a_; }
    std::uint32_t order() const noexcept { return q_; }
    /// q - 1, the order of the multiplicative group.
    std::uint32_t group_order() const noexcept { return q_ - 1; }

    /// Modulus coefficients c_0, ..., c_a (monic: c_a == 1).
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    Elem generator() const noexcept { return generator_; }

    /// Log-domain sentinel for the zero element.
    std::uint32_t zero_log() const noexcept { return q_ - 1; }

    Elem exp(std::uint64_t e) const noexcept { return exp_[e % (q_ - 1)]; }
    /// Discrete log of a nonzero element, in [0, q-1). log(0) == zero_log().
    std::uint32_t log(Elem x) const noexcept { return log_[x]; }
    /// Inverse of a nonzero element; inv(0) == 0.
    Elem inv(Elem x) const noexcept { return inv_[x]; }
    /// Absolute trace to the prime field, as an integer in [0, p).
    std::uint32_t trace(Elem x) const noexcept { return trace_[x]; }
    /// Absolute trace of g^e for e in [0, q-1).
    std::uint32_t trace_of_log(std::uint32_t e) const noexcept { return trace_by_log_[e]; }
    /// log(1 + g^e), or zero_log() when 1 + g^e == 0.
    std::uint32_t zech(std::uint32_t e) const noexcept { return zech_[e]; }

    std::span<const std::uint32_t> zech_table() const noexcept { return zech_; }
    std::span<const std::uint32_t> trace_by_log_table() const noexcept { return trace_by_log_; }

    /// Log-domain addition: log(g^x + g^y) where either side may be zero_log().
    std::uint32_t add_logs(std::uint32_t x, std::uint32_t y) const noexcept {
        const std::uint32_t n = q_ - 1;
        if (x == n) return y;
        if (y == n) return x;
        std::uint32_t d = y >= x ? y - x : y + n - x;
        std::uint32_t z = zech_[d];
        if (z == n) return n;
        std::uint32_t s = x + z;
        return s >= n ? s - n : s;
    }

    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    Elem mul(Elem x, Elem y) const noexcept;
    /// Throws DomainError on division by zero.
    Elem div(Elem x, Elem y) const;
    Elem pow(Elem x, std::int64_t e) const;

    /// The prime-field element congruent to the integer c.
    Elem from_int(std::int64_t c) const noexcept;
    bool is_prime_field_element(Elem x) const noexcept { return x < p_; }

    /// Coefficient vector of x in the polynomial basis.
    std::vector<std::uint32_t> coefficients(Elem x) const;
    Elem from_coefficients(std::span<const std::uint32_t> c) const;

private:
    FieldTable() = default;

    std::uint32_t p_ = 0;
    unsigned a_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    Elem generator_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> inv_;
    std::vector<std::uint32_t> trace_;
    std::vector<std::uint32_t> trace_by_log_;
    std::vector<std::uint32_t> zech_;
};

using FieldPtr = std::shared_ptr<const FieldTable>;

inline FieldPtr make_field(std::uint32_t p, unsigned a, std::uint64_t cap = kDefaultTableCap) {
    return std::make_shared<const FieldTable>(FieldTable::build(p, a, cap));
}

/// Bytes of table storage a field of order q needs.
std::uint64_t field_table_bytes(std::uint64_t q);

/// Relative structure of F_{q^k} over F_q.
class ExtensionMaps {
public:
    const FieldTable& base() const noexcept { return *base_; }
    const FieldTable& ext() const noexcept { return *ext_; }
    const FieldPtr& base_ptr() const noexcept { return base_; }
    const FieldPtr& ext_ptr() const noexcept { return ext_; }
    unsigned relative_degree() const noexcept { return k_; }

    Elem embed(Elem y) const noexcept { return embed_[y]; }
    Elem trace(Elem x) const noexcept { return tr_rel_[x]; }
    Elem norm(Elem x) const noexcept { return norm_rel_[x]; }

    /// c with N(G) = g^c, G and g the fixed generators of ext and base.
    /// A base character with index j acts on G^e through index j*c*e.
    std::uint32_t norm_log_factor() const noexcept { return norm_log_factor_; }

    friend ExtensionMaps field_maps(FieldPtr base, unsigned k, std::uint64_t cap);

private:
    FieldPtr base_;
    FieldPtr ext_;
    unsigned k_ = 1;
    std::vector<Elem> embed_;
    std::vector<Elem> tr_rel_;
    std::vector<Elem> norm_rel_;
    std::uint32_t norm_log_factor_ = 1;
};

/// Builds F_{q^k} together with the embedding F_q -> F_{q^k}, the relative
/// trace and the relative norm. For k == 1 the extension is the base itself.
ExtensionMaps field_maps(FieldPtr base, unsigned k, std::uint64_t cap = kDefaultTableCap);

}  // namespace iks
