#include "oracle.hpp"

#include "iks/error.hpp"
#include "iks/gf.hpp"

#include <doctest.h>

using namespace iks;

namespace {

void compare_with_oracle(std::uint32_t p, unsigned a) {
    const FieldTable F = FieldTable::build(p, a);
    const oracle::Field O = oracle::make(p, a);
    REQUIRE(F.order() == O.q);
    CHECK(F.modulus() == O.modulus);
    CHECK(F.generator() == O.g);
    for (Elem x = 0; x < F.order(); ++x) {
        CHECK(F.trace(x) == O.trace(x));
        if (x != 0) {
            CHECK(F.log(x) == O.log[x]);
            CHECK(F.inv(x) == O.inv(x));
        }
        for (Elem y = 0; y < F.order(); y += 1 + F.order() / 13) {
            CHECK(F.add(x, y) == O.add(x, y));
            CHECK(F.mul(x, y) == O.mul(x, y));
        }
    }
}

}  // namespace

TEST_CASE("field tables agree with polynomial-basis arithmetic") {
    for (auto [p, a] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {7, 1}, {13, 1}, {2, 3}, {2, 4},
                                                                       {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
        CAPTURE(p);
        CAPTURE(a);
        compare_with_oracle(p, a);
    }
}

TEST_CASE("modulus and generator for F_9") {
    const FieldTable F = FieldTable::build(3, 2);
    CHECK(F.modulus() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(F.zero_log() == 8);
    CHECK(F.log(0) == F.zero_log());
    CHECK(F.exp(F.log(F.generator())) == F.generator());
}

TEST_CASE("log-domain addition matches element addition") {
    const FieldTable F = FieldTable::build(5, 2);
    for (Elem x = 0; x < F.order(); ++x) {
        for (Elem y = 0; y < F.order(); ++y) {
            const auto s = F.add_logs(F.log(x), F.log(y));
            CHECK(s == F.log(F.add(x, y)));
        }
    }
}

TEST_CASE("field arithmetic identities") {
    const FieldTable F = FieldTable::build(7, 2);
    for (Elem x = 1; x < F.order(); ++x) {
        CHECK(F.mul(x, F.inv(x)) == 1);
        CHECK(F.add(x, F.neg(x)) == 0);
        CHECK(F.pow(x, F.order() - 1) == 1);
        CHECK(F.div(x, x) == 1);
        CHECK(F.sub(x, x) == 0);
    }
    CHECK(F.from_int(-1) == 6);
    CHECK_THROWS_AS(F.div(3, 0), DomainError);
    const auto c = F.coefficients(10);
    CHECK(F.from_coefficients(c) == 10);
}

TEST_CASE("field construction errors") {
    CHECK_THROWS_AS(FieldTable::build(4, 1), DomainError);
    CHECK_THROWS_AS(FieldTable::build(3, 0), DomainError);
    CHECK_THROWS_AS(FieldTable::build(3, 30, 1000), BudgetExceeded);
}

TEST_CASE("relative trace and norm") {
    for (auto [p, a, k] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{3, 1, 2}, {2, 2, 2}, {5, 1, 3}, {3, 1, 4}}) {
        CAPTURE(p);
        CAPTURE(k);
        const FieldPtr base = make_field(p, a);
        const ExtensionMaps M = field_maps(base, k);
        const FieldTable& E = M.ext();
        const std::uint32_t q = base->order();
        // embedding is a ring homomorphism
        for (Elem x = 0; x < q; ++x) {
            for (Elem y = 0; y < q; ++y) {
                CHECK(M.embed(base->mul(x, y)) == E.mul(M.embed(x), M.embed(y)));
                CHECK(M.embed(base->add(x, y)) == E.add(M.embed(x), M.embed(y)));
            }
        }
        for (Elem x = 0; x < E.order(); ++x) {
            Elem tr = 0, nm = 1, y = x;
            for (unsigned i = 0; i < k; ++i) {
                tr = E.add(tr, y);
                nm = E.mul(nm, y);
                y = E.pow(y, q);
            }
            CHECK(M.embed(M.trace(x)) == tr);
            CHECK(M.embed(M.norm(x)) == nm);
        }
        CHECK(M.norm(E.generator()) == base->exp(M.norm_log_factor()));
        // absolute trace factors through the relative one
        for (Elem x = 0; x < E.order(); ++x) CHECK(E.trace(x) == base->trace(M.trace(x)));
    }
}

TEST_CASE("degree-one extension is the base field") {
    const FieldPtr base = make_field(5, 1);
    const ExtensionMaps M = field_maps(base, 1);
    CHECK(M.ext().order() == 5);
    for (Elem x = 0; x < 5; ++x) {
        CHECK(M.embed(x) == x);
        CHECK(M.trace(x) == x);
        CHECK(M.norm(x) == x);
    }
}
