#include "oracle.hpp"

#include "iks/error.hpp"
#include "iks/expsum.hpp"

#include <doctest.h>

using namespace iks;

namespace {

constexpr double kEps = 1e-9;

std::vector<CharacterTuple> all_tuples(std::uint32_t q, unsigned count) {
    std::vector<CharacterTuple> out;
    CharacterTuple chi = CharacterTuple::trivial(count);
    while (true) {
        out.push_back(chi);
        unsigned i = 0;
        while (i < count && chi.index[i] + 2 == q) chi.index[i++] = 0;
        if (i == count) break;
        ++chi.index[i];
    }
    return out;
}

// S_n over F_{p^k} with base-field characters acting through the norm to F_p.
std::complex<double> extension_oracle(std::uint32_t p, unsigned k, unsigned n, std::uint32_t b,
                                      const std::vector<std::uint32_t>& chi) {
    const oracle::Field E = oracle::make(p, k);
    const oracle::Field B = oracle::make(p, 1);
    const std::uint64_t e = (E.q - 1) / (p - 1);
    std::complex<double> total = 0;
    std::vector<std::uint32_t> x(n, 1);
    auto chi_of = [&](std::uint32_t j, std::uint32_t y) {
        const std::uint32_t nm = E.pow(y, e);  // lies in F_p, encoded as itself
        return oracle::zeta(std::uint64_t{j} * B.log[nm], p - 1);
    };
    while (true) {
        std::uint32_t prod = 1, s = 0;
        std::complex<double> c = 1;
        for (unsigned i = 0; i < n; ++i) {
            prod = E.mul(prod, x[i]);
            s = E.add(s, x[i]);
            c *= chi_of(chi[i], x[i]);
        }
        const std::uint32_t last = E.mul(b, E.inv(prod));
        s = E.add(s, last);
        c *= chi_of(chi[n], last);
        if (s != 0) total += c * oracle::zeta(E.trace(E.inv(s)), p);
        unsigned i = 0;
        while (i < n && x[i] + 1 == E.q) x[i++] = 1;
        if (i == n) break;
        ++x[i];
    }
    return total;
}

}  // namespace

TEST_CASE("smallest example: S_1 over F_3 with b = 1 is -1") {
    const FieldPtr F = make_field(3, 1);
    const SumValue s = kloosterman_sum(F, 1, 1, 1, CharacterTuple::trivial(2));
    CHECK(s.multiplicative_conductor() == 1);
    CHECK(exactly_equal(s, SumValue::integer(3, 1, -1)));
}

TEST_CASE("twisted sums over prime fields agree with direct summation") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const FieldPtr F = make_field(q, 1);
        const ExtensionMaps M = field_maps(F, 1);
        const oracle::Field O = oracle::make(q, 1);
        for (unsigned n : {1u, 2u}) {
            for (Elem b = 1; b < q; ++b) {
                for (const auto& chi : all_tuples(q, n + 1)) {
                    const auto got = kloosterman_sum(M, n, b, chi).embed();
                    const auto want = oracle::kloosterman(O, n, b, chi.index);
                    CHECK(std::abs(got - want) < kEps);
                }
            }
        }
    }
}

TEST_CASE("twisted sums over F_9 and F_8 as base fields") {
    for (auto [p, a] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 2}, {2, 3}}) {
        const FieldPtr F = make_field(p, a);
        const ExtensionMaps M = field_maps(F, 1);
        const oracle::Field O = oracle::make(p, a);
        const std::uint32_t q = O.q;
        for (Elem b : {1u, 2u, q - 1}) {
            for (const auto& chi : all_tuples(q, 2)) {
                CHECK(std::abs(kloosterman_sum(M, 1, b, chi).embed() - oracle::kloosterman(O, 1, b, chi.index)) < kEps);
            }
        }
        const CharacterTuple chi{{1, 2, 3}};
        CHECK(std::abs(kloosterman_sum(M, 2, 1, chi).embed() - oracle::kloosterman(O, 2, 1, chi.index)) < kEps);
    }
}

TEST_CASE("sums over extensions act through the norm") {
    for (auto [p, k, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{3, 2, 1}, {3, 3, 1}, {5, 2, 1}, {3, 2, 2}, {2, 3, 1}}) {
        const FieldPtr F = make_field(p, 1);
        const ExtensionMaps M = field_maps(F, k);
        for (Elem b = 1; b < p; ++b) {
            for (const auto& chi : all_tuples(p, n + 1)) {
                CAPTURE(p);
                CAPTURE(k);
                CHECK(std::abs(kloosterman_sum(M, n, b, chi).embed() - extension_oracle(p, k, n, b, chi.index)) < 1e-8);
            }
        }
    }
}

TEST_CASE("Gauss sums") {
    for (auto [p, a] : std::vector<std::pair<std::uint32_t, unsigned>>{{5, 1}, {7, 1}, {3, 2}, {2, 3}}) {
        const FieldTable F = FieldTable::build(p, a);
        const oracle::Field O = oracle::make(p, a);
        CHECK(exactly_equal(gauss_sum(F, 0), SumValue::integer(p, F.group_order(), -1)));
        for (std::uint32_t j = 1; j < F.group_order(); ++j) {
            const auto g = gauss_sum(F, j).embed();
            CHECK(std::abs(std::norm(g) - F.order()) < 1e-9);
            std::complex<double> want = 0;
            for (std::uint32_t x = 1; x < O.q; ++x) want += oracle::zeta(std::uint64_t{j} * O.log[x], O.q - 1) * oracle::zeta(O.trace(x), p);
            CHECK(std::abs(g - want) < kEps);
        }
    }
}

TEST_CASE("Gauss-sum formula equals enumeration exactly") {
    for (std::uint32_t q : {3u, 5u}) {
        const FieldPtr F = make_field(q, 1);
        const ExtensionMaps M = field_maps(F, 1);
        for (unsigned n : {1u, 2u}) {
            for (Elem b = 1; b < q; ++b) {
                for (const auto& chi : all_tuples(q, n + 1)) {
                    const SumValue S = kloosterman_sum(M, n, b, chi);
                    const ScaledSum G = gauss_formula_sum(M, n, b, chi);
                    const SumValue lhs = lift_conductor(S, q - 1).scaled(G.denominator);
                    CHECK(exactly_equal(lhs, G.numerator));
                }
            }
        }
    }
    // over an extension the conductor is Q - 1
    const FieldPtr F = make_field(3, 1);
    const ExtensionMaps M = field_maps(F, 2);
    const CharacterTuple chi{{1, 0}};
    const ScaledSum G = gauss_formula_sum(M, 1, 2, chi);
    CHECK(std::abs(G.embed() - kloosterman_sum(M, 1, 2, chi).embed()) < kEps);
}

TEST_CASE("toric sums agree with direct summation") {
    const FieldPtr F = make_field(5, 1);
    const ExtensionMaps M = field_maps(F, 1);
    const oracle::Field O = oracle::make(5, 1);
    const LaurentPoly f = parse_laurent("x1 + 2*x2 + 3*x1^-1*x2^-1 + x1*x2^2", *F);
    for (const auto& chi : all_tuples(5, 2)) {
        std::complex<double> want = 0;
        for (std::uint32_t x = 1; x < 5; ++x) {
            for (std::uint32_t y = 1; y < 5; ++y) {
                std::uint32_t v = O.add(x, O.mul(2, y));
                v = O.add(v, O.mul(3, O.inv(O.mul(x, y))));
                v = O.add(v, O.mul(x, O.mul(y, y)));
                want += oracle::zeta(std::uint64_t{chi.index[0]} * O.log[x] + std::uint64_t{chi.index[1]} * O.log[y], 4) *
                        oracle::zeta(v, 5);
            }
        }
        CHECK(std::abs(toric_sum(M, f, chi).embed() - want) < kEps);
    }
}

TEST_CASE("auxiliary polynomial and the toric relation") {
    const FieldPtr F3 = make_field(3, 1);
    const LaurentPoly f = inverted_kloosterman_laurent(*F3, 1, 1);
    CHECK(f.n_vars == 3);
    CHECK(f.terms.size() == 4);
    // S*_1 = q S + (q-1)^n = 3(-1) + 2 = -1
    CHECK(exactly_equal(toric_sum(field_maps(F3, 1), f, CharacterTuple::trivial(3)), SumValue::integer(3, 1, -1)));

    for (auto [p, n, k] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{3, 1, 1}, {3, 1, 2}, {5, 1, 1}, {5, 2, 1}, {3, 2, 2}, {2, 1, 2}}) {
        const FieldPtr F = make_field(p, 1);
        const ExtensionMaps M = field_maps(F, k);
        const std::uint64_t Q = M.ext().order();
        for (Elem b = 1; b < p; ++b) {
            const SumValue direct = toric_sum(M, inverted_kloosterman_laurent(*F, n, b), CharacterTuple::trivial(n + 2));
            const SumValue fibered = inverted_kloosterman_toric_sum(M, n, b);
            const SumValue S = kloosterman_sum(M, n, b, CharacterTuple::trivial(n + 1));
            BigInt shift;
            mpz_ui_pow_ui(shift.get_mpz_t(), Q - 1, n);
            CHECK(exactly_equal(direct, fibered));
            CHECK(exactly_equal(direct, S.scaled(BigInt(static_cast<unsigned long>(Q))) + SumValue::integer(p, 1, shift)));
        }
    }
}

TEST_CASE("E_n relation and the T_n transform") {
    const FieldPtr F = make_field(5, 1);
    const ExtensionMaps M = field_maps(F, 1);
    for (Elem b = 1; b < 5; ++b) {
        for (const auto& chi : all_tuples(5, 3)) {
            const auto S = kloosterman_sum(M, 2, b, chi).embed();
            const auto E = e_sum(F, 2, b, chi).embed();
            const auto c1 = character_value(*F, chi.index[0], b).embed();
            if (chi.all_equal()) {
                CHECK(std::abs(5.0 * S - (-16.0 * c1 + c1 * E)) < 1e-8);
            } else {
                CHECK(std::abs(5.0 * S - character_value(*F, chi.index[2], b).embed() * E) < 1e-8);
            }
            CHECK_NOTHROW(tn_transform(F, 2, b, chi));
        }
    }
}

TEST_CASE("thread count does not change values") {
    const FieldPtr F = make_field(7, 1);
    const ExtensionMaps M = field_maps(F, 2);
    EnumOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const CharacterTuple chi{{1, 2, 3}};
    CHECK(kloosterman_sum(M, 2, 3, chi, one).counts() == kloosterman_sum(M, 2, 3, chi, four).counts());
    CHECK(inverted_kloosterman_toric_sum(M, 2, 3, one).counts() == inverted_kloosterman_toric_sum(M, 2, 3, four).counts());
}

TEST_CASE("budget guard") {
    const FieldPtr F = make_field(5, 1);
    EnumOptions tight;
    tight.budget = 100;
    CHECK_THROWS_AS(kloosterman_sum(F, 2, 2, 1, CharacterTuple::trivial(3), tight), BudgetExceeded);
    CHECK_NOTHROW(kloosterman_sum(F, 1, 2, 1, CharacterTuple::trivial(3), tight));
    tight.force = true;
    CHECK_NOTHROW(kloosterman_sum(F, 2, 2, 1, CharacterTuple::trivial(3), tight));
    try {
        kloosterman_sum(make_field(13, 1), 6, 2, 1, CharacterTuple::trivial(3));
        FAIL("expected a budget refusal");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() > e.budget());
    }
}

TEST_CASE("character tuples") {
    const FieldTable F = FieldTable::build(7, 1);
    const CharacterTuple chi = CharacterTuple::from(F, {-1, 7, 2});
    CHECK(chi.index == std::vector<std::uint32_t>{5, 1, 2});
    CHECK(!chi.all_equal());
    CHECK(CharacterTuple::trivial(3).all_trivial());
    CHECK(CharacterTuple::from(F, {4, 4, -2}).all_equal());
    CHECK_THROWS_AS(kloosterman_sum(field_maps(make_field(7, 1), 1), 2, 1, CharacterTuple::trivial(2)), DomainError);
}
