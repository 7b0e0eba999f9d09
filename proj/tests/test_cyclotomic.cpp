#include "oracle.hpp"

#include "iks/cyclotomic.hpp"
#include "iks/error.hpp"

#include <doctest.h>

#include <random>

using namespace iks;

namespace {

SumValue random_value(std::uint32_t p, std::uint32_t m, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<std::int64_t> c(std::size_t{p} * m);
    for (auto& x : c) x = d(rng);
    return SumValue::from_counts(p, m, std::span<const std::int64_t>(c));
}

std::complex<double> naive_embed(const SumValue& v) {
    std::complex<double> z = 0;
    const auto p = v.additive_conductor(), m = v.multiplicative_conductor();
    for (std::uint32_t t = 0; t < p; ++t) {
        for (std::uint32_t j = 0; j < m; ++j) z += v.at(t, j).get_d() * oracle::zeta(t, p) * oracle::zeta(j, m);
    }
    return z;
}

}  // namespace

TEST_CASE("relation 1 + zeta + ... + zeta^{p-1} = 0 is recognized") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        std::vector<std::int64_t> ones(p, 1);
        const SumValue s = SumValue::from_counts(p, 1, std::span<const std::int64_t>(ones));
        CHECK(exactly_equal(s, SumValue(p, 1)));
        CHECK(std::abs(s.embed()) < 1e-12);
    }
    // zeta_4^0 + zeta_4^2 = 0
    CHECK(exactly_equal(SumValue::monomial(3, 4, 0, 0) + SumValue::monomial(3, 4, 0, 2), SumValue(3, 4)));
}

TEST_CASE("embedding, products and conjugation agree with complex arithmetic") {
    std::mt19937 rng(7);
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 4}, {7, 6}, {3, 8}, {5, 1}}) {
        const SumValue a = random_value(p, m, rng), b = random_value(p, m, rng);
        CHECK(std::abs(a.embed() - naive_embed(a)) < 1e-9);
        CHECK(std::abs((a * b).embed() - a.embed() * b.embed()) < 1e-8);
        CHECK(std::abs((a + b).embed() - a.embed() - b.embed()) < 1e-9);
        CHECK(std::abs(a.conjugate().embed() - std::conj(a.embed())) < 1e-9);
        CHECK(std::abs(a.scaled(5).embed() - 5.0 * a.embed()) < 1e-8);
        CHECK(exactly_equal(a * b, b * a));
        CHECK(exactly_equal(a - a, SumValue(p, m)));
    }
}

TEST_CASE("canonical coordinates separate distinct values") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const SumValue a = random_value(5, 4, rng), b = random_value(5, 4, rng);
        const bool close = std::abs(a.embed() - b.embed()) < 1e-9;
        CHECK(exactly_equal(a, b) == close);
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<BigInt>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<BigInt>{1, -1, 1});
    CHECK(cyclotomic_polynomial(5) == std::vector<BigInt>{1, 1, 1, 1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
}

TEST_CASE("resultants and norms") {
    // Res(x^2 + 1, x - 2) = 5
    const std::vector<BigInt> f{1, 0, 1}, g{-2, 1};
    CHECK(abs(resultant(f, g)) == 5);
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        const CycloRational one = CycloRational::integer(p, 1);
        const CycloRational pi = CycloRational::zeta_power(p, 1) - one;
        CHECK(norm(pi) == Rational(p));
        CHECK(norm(one) == 1);
        BigInt two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, p - 1);
        CHECK(norm(CycloRational::integer(p, 2)) == Rational(two_pow));
        CHECK(norm(CycloRational::integer(p, Rational(1, 3))) * norm(CycloRational::integer(p, 3)) == 1);
    }
}

TEST_CASE("pi-adic valuations") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const CycloRational one = CycloRational::integer(p, 1);
        const CycloRational pi = CycloRational::zeta_power(p, 1) - one;
        CHECK(*ord_pi(pi) == 1);
        CHECK(*ord_pi(pi * pi * pi) == 3);
        CHECK(*ord_pi(CycloRational::integer(p, p)) == p - 1);
        CHECK(*ord_pi(CycloRational::integer(p, Rational(1, p))) == -Rational(p - 1));
        CHECK(*ord_pi(one) == 0);
        CHECK(!ord_pi(CycloRational(p)).has_value());
        CHECK(*ord_q(CycloRational::integer(p, p), p) == 1);
        CHECK(*ord_q(CycloRational::integer(p, p), std::uint64_t{p} * p) == Rational(1, 2));
        CHECK(*ord_q(pi, p) == Rational(1, p - 1));
    }
}

TEST_CASE("reduction into Q(zeta_p) and Galois action") {
    // untwisted Gauss-type value zeta + zeta^2 + zeta^4 over p = 7
    std::vector<std::int64_t> c{0, 1, 1, 0, 1, 0, 0};
    const SumValue v = SumValue::from_counts(7, 1, std::span<const std::int64_t>(c));
    const CycloRational r = reduce_mod_phi(v);
    CHECK(std::abs(r.embed() - v.embed()) < 1e-12);
    // the quadratic Gauss sum satisfies eta^2 + eta + 2 = 0
    const CycloRational e2 = r * r + r + CycloRational::integer(7, 2);
    CHECK(e2.is_zero());
    CHECK(r.galois(2) == r);
    CHECK(r.galois(3) == r.conjugate());
    CHECK(r.is_integral());
    CHECK(!r.is_rational());
    CHECK((r * Rational(1, 4)).denominator() == 4);
    CHECK_THROWS_AS(reduce_mod_phi(SumValue(7, 6)), DomainError);
}
