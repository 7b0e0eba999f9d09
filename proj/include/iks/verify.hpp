#pragma once

// Verification suites: each runs a grid of checks and returns a report.
//
//   thm0        square-root bound q^{(n+1)/2} for twisted sums
//   thm2        sharper bounds (2n+1) q^{n/2}, 2(n+1) q^{n/2} when p does not divide n+1
//   cor1        bound 2n q^{nk/2} for untwisted sums over F_{q^k}
//   thm1        L-function shape, slopes, weights, held-out power sums
//   prop31      auxiliary polytope: D, vertex determinants, volume, non-degeneracy
//   thm33       Hodge numbers, weight generating function, ordinariness table
//   identities  exact relations between the different evaluators

#include "iks/expsum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iks {

enum class CaseStatus { pass, fail, skip };

struct VerifyCase {
    /// Which family of checks the case belongs to (e.g. "slopes", "weights").
    std::string kind;
    std::string label;
    /// The checked relation in words.
    std::string check;
    std::string lhs;
    std::string rhs;
    /// Number of individual instances folded into the case.
    std::size_t instances = 1;
    CaseStatus status = CaseStatus::pass;
    std::string note;
    double seconds = 0;
};

struct FieldHeader {
    std::uint32_t p = 0;
    unsigned a = 1;
    std::vector<std::uint32_t> modulus;
    Elem generator = 0;
};

struct VerifyReport {
    std::string suite;
    std::string title;
    std::vector<FieldHeader> fields;
    std::vector<VerifyCase> cases;

    bool passed() const;
};

struct VerifyOptions {
    /// Empty means the suite's default grid.
    std::vector<std::uint32_t> primes;
    std::vector<unsigned> ns;
    std::optional<Elem> b;
    /// Largest extension degree (cor1) or held-out degree (thm1).
    std::optional<unsigned> kmax;
    EnumOptions enumeration;
    /// Include per-case runtimes in the report (makes it non-reproducible).
    bool timing = false;
};

const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
VerifyReport run_suite(const std::string& name, const VerifyOptions& opts = {});

std::string to_json(const VerifyReport& r, bool timing = false);
std::string to_table(const VerifyReport& r, bool timing = false);
std::string to_csv(const VerifyReport& r, bool timing = false);

}  // namespace iks
