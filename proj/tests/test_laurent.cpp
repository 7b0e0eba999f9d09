#include "iks/error.hpp"
#include "iks/laurent.hpp"

#include <doctest.h>

using namespace iks;

TEST_CASE("text form over F_3") {
    const FieldTable F = FieldTable::build(3, 1);
    const LaurentPoly f = parse_laurent("x1 + x2 + 2*x1^-1*x2^-1", F);
    CHECK(f.n_vars == 2);
    REQUIRE(f.terms.size() == 3);
    std::vector<std::vector<int>> exps;
    for (const auto& t : f.terms) exps.push_back(t.exponent);
    CHECK(std::find(exps.begin(), exps.end(), std::vector<int>{1, 0}) != exps.end());
    CHECK(std::find(exps.begin(), exps.end(), std::vector<int>{0, 1}) != exps.end());
    CHECK(std::find(exps.begin(), exps.end(), std::vector<int>{-1, -1}) != exps.end());
}

TEST_CASE("zero terms are dropped and empty polynomials rejected") {
    const FieldTable F3 = FieldTable::build(3, 1);
    const LaurentPoly f = parse_laurent("0*x1 + x2", F3);
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].exponent == std::vector<int>{0, 1});
    CHECK_THROWS_AS(parse_laurent("0*x1", F3), ParseError);
    const FieldTable F2 = FieldTable::build(2, 1);
    CHECK_THROWS_AS(parse_laurent("x1 + x1", F2), ParseError);
    // 3 == 0 in F_3
    CHECK_THROWS_AS(parse_laurent("3*x1", F3), ParseError);
}

TEST_CASE("duplicates merge and signs reduce mod p") {
    const FieldTable F = FieldTable::build(5, 1);
    const LaurentPoly f = parse_laurent("x1*x2 - 3*x1*x2 + 4 - x1^-2", F);
    REQUIRE(f.terms.size() == 3);
    for (const auto& t : f.terms) {
        if (t.exponent == std::vector<int>{1, 1}) CHECK(t.coeff == 3);
        if (t.exponent == std::vector<int>{0, 0}) CHECK(t.coeff == 4);
        if (t.exponent == std::vector<int>{-2, 0}) CHECK(t.coeff == 4);
    }
}

TEST_CASE("parse errors carry a position") {
    const FieldTable F = FieldTable::build(3, 1);
    try {
        parse_laurent("x1 +\n  x2^^2", F);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 0);
    }
    CHECK_THROWS_AS(parse_laurent("x0 + x1", F), ParseError);
    CHECK_THROWS_AS(parse_laurent("{\"p\":3,\"terms\":", F), ParseError);
    CHECK_THROWS_AS(parse_laurent("", F), ParseError);
}

TEST_CASE("JSON form and round trip") {
    const FieldTable F = FieldTable::build(7, 1);
    const std::string js = R"({"p":7,"a":1,"vars":3,"terms":[{"c":1,"e":[1,0,0]},{"c":3,"e":[-1,-1,1]}]})";
    const LaurentPoly f = parse_laurent(js, F);
    CHECK(f.n_vars == 3);
    CHECK(f.terms.size() == 2);
    CHECK(parse_laurent(to_json(f), F) == f);
    CHECK(parse_laurent(to_text(f), F, 3) == f);
    // coefficient outside F_7
    CHECK_THROWS_AS(parse_laurent(R"({"p":7,"a":1,"vars":1,"terms":[{"c":9,"e":[1]}]})", F), ParseError);
    // exponent of the wrong length
    CHECK_THROWS_AS(parse_laurent(R"({"p":7,"a":1,"vars":2,"terms":[{"c":1,"e":[1]}]})", F), ParseError);
}

TEST_CASE("text form over an extension field uses encoded coefficients") {
    const FieldTable F = FieldTable::build(3, 2);
    const LaurentPoly f = parse_laurent(R"({"p":3,"a":2,"vars":1,"terms":[{"c":5,"e":[2]}]})", F);
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].coeff == 5);
    CHECK(f.field_order() == 9);
}
