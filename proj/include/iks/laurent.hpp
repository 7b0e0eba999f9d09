#pragma once

#include "iks/gf.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace iks {

struct LaurentTerm {
    Elem coeff = 0;
    std::vector<int> exponent;

    friend bool operator==(const LaurentTerm&, const LaurentTerm&) = default;
};

/// A Laurent polynomial over F_{p^a}: nonzero coefficients attached to
/// pairwise distinct exponent vectors.
struct LaurentPoly {
    std::uint32_t p = 0;
    unsigned a = 1;
    unsigned n_vars = 0;
    std::vector<LaurentTerm> terms;

    std::uint64_t field_order() const;
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
};

/// Merges repeated exponents (adding coefficients in F), drops zero terms
/// and sorts terms by exponent. Checks that every exponent has n_vars entries.
LaurentPoly canonicalize(const FieldTable& F, LaurentPoly f);

/// JSON form: {"p":7,"a":1,"vars":3,"terms":[{"c":1,"e":[1,0,0]}, ...]}
/// where c is the integer encoding of the coefficient. Throws ParseError.
LaurentPoly parse_laurent_json(std::string_view json);
std::string to_json(const LaurentPoly& f);

/// Text form: terms `c*x1^e1*...*xn^en` joined by `+` / `-`, integer
/// coefficients read modulo p, exponents possibly negative. `n_vars == 0`
/// takes the largest variable index that occurs. The result is canonical;
/// an empty polynomial is rejected.
LaurentPoly parse_laurent_text(std::string_view text, const FieldTable& F, unsigned n_vars = 0);

/// Dispatches on the first non-blank character: `{` means JSON.
LaurentPoly parse_laurent(std::string_view text, const FieldTable& F, unsigned n_vars = 0);

std::string to_text(const LaurentPoly& f);

}  // namespace iks
