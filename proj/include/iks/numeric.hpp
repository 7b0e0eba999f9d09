#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iks {

using BigInt = mpz_class;
using Rational = mpq_class;

/// A valuation; std::nullopt stands for +infinity (valuation of zero).
using Valuation = std::optional<Rational>;

bool is_prime(std::uint64_t n);

/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Exponent of the prime p in n (n != 0).
unsigned long p_adic_valuation(const BigInt& n, unsigned long p);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// base^exp, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

BigInt binomial(unsigned n, unsigned k);

inline long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

std::string to_string(const Rational& r);

}  // namespace iks
