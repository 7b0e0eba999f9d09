#pragma once

// Exact evaluators for the character sums: Gauss sums, twisted and untwisted
// inverted Kloosterman sums over F_{q^k}, generic toric sums, the auxiliary
// toric sum E_n, the Gauss-sum formula for S_n and Katz's T_n.
//
// Conventions. psi(x) = zeta_p^{Tr(x)} with Tr the absolute trace. A
// multiplicative character of F_q^* is an index j mod (q-1) with
// chi_j(g^t) = zeta_{q-1}^{j t} for the field's fixed generator g. Over
// F_{q^k} a base character acts through the relative norm.
//
// Results whose characters are all trivial have multiplicative conductor
// m = 1 (a pure trace histogram); otherwise m = q - 1 for the sums over
// (extensions of) F_q, and m = q^k - 1 for the Gauss-sum formula.

#include "iks/cyclotomic.hpp"
#include "iks/gf.hpp"
#include "iks/laurent.hpp"
#include "iks/parallel.hpp"

#include <cstdint>
#include <vector>

namespace iks {

inline constexpr double kDefaultEnumerationBudget = 1e10;

struct EnumOptions {
    /// Largest number of points an enumeration may visit.
    double budget = kDefaultEnumerationBudget;
    /// Skip the budget check.
    bool force = false;
    unsigned threads = default_threads();
};

/// Indices j_1, ..., j_r of base-field characters, reduced mod (q - 1).
struct CharacterTuple {
    std::vector<std::uint32_t> index;

    static CharacterTuple trivial(std::size_t count) { return {std::vector<std::uint32_t>(count, 0)}; }
    static CharacterTuple from(const FieldTable& F, const std::vector<std::int64_t>& indices);

    std::size_t size() const noexcept { return index.size(); }
    bool all_trivial() const noexcept;
    bool all_equal() const noexcept;
};

/// Throws BudgetExceeded unless `points` fits the budget (or force is set).
void check_budget(double points, const EnumOptions& opts, const std::string& what);

SumValue gauss_sum(const FieldTable& F, std::uint32_t j);

/// S_n(chi, b) over F_{q^k}: sum over (x_1..x_n) in (F_{q^k}^*)^n with
/// s = x_1 + ... + x_n + b/(x_1...x_n) != 0 of
/// chi_1(x_1)...chi_n(x_n) chi_{n+1}(b/(x_1...x_n)) psi(Tr(1/s)).
/// chi has n + 1 entries; b is an element of the base field.
SumValue kloosterman_sum(const ExtensionMaps& maps, unsigned n, Elem b, const CharacterTuple& chi,
                         const EnumOptions& opts = {});
SumValue kloosterman_sum(const FieldPtr& base, unsigned k, unsigned n, Elem b, const CharacterTuple& chi,
                         const EnumOptions& opts = {});

/// S*_k(chi, f): sum over the torus (F_{q^k}^*)^{n_vars} of
/// prod chi_i(N(x_i)) psi(Tr f(x)). chi has one entry per variable.
SumValue toric_sum(const ExtensionMaps& maps, const LaurentPoly& f, const CharacterTuple& chi,
                   const EnumOptions& opts = {});

/// f(x_1..x_{n+2}) = x_{n+1}(1 - x_{n+2}(x_1 + ... + x_n + b/(x_1...x_n))) + x_{n+2}.
LaurentPoly inverted_kloosterman_laurent(const FieldTable& F, unsigned n, Elem b);

/// E_n(chi, b): the toric sum of inverted_kloosterman_laurent with twist
/// (chi_1/chi_{n+1}, ..., chi_n/chi_{n+1}, 1, 1) over F_q.
SumValue e_sum(const FieldPtr& F, unsigned n, Elem b, const CharacterTuple& chi, const EnumOptions& opts = {});

/// S_n(chi, b) over F_{q^k} from orthogonality of characters: the closed
/// main term plus the character sum of Gauss-sum products. Returns
/// Q(Q-1) S as an exact histogram over Z[zeta_p, zeta_{Q-1}] with
/// denominator Q(Q-1), Q = q^k. Independent of the enumeration kernel.
ScaledSum gauss_formula_sum(const ExtensionMaps& maps, unsigned n, Elem b, const CharacterTuple& chi,
                            const EnumOptions& opts = {});

/// S*_k of inverted_kloosterman_laurent over F_{q^k}, evaluated by fibering:
/// the distribution of s = x_1 + ... + x_n + b/(x_1...x_n) over the torus is
/// combined with sum_{y,z} psi(z + y - s y z) tabulated for every s. Costs
/// (q^k-1)^n + 2(q^k-1)^2 instead of (q^k-1)^{n+2}.
SumValue inverted_kloosterman_toric_sum(const ExtensionMaps& maps, unsigned n, Elem b, const EnumOptions& opts = {});

/// Katz's T_n(chi, b) = sum over x_1...x_{n+1} = 1, sum != 0 of
/// prod chi_i(x_i) psi(b / sum). Computed directly and checked exactly
/// against chi_1...chi_{n+1}(b) S_n(chi, b^{-(n+1)}); throws
/// VerificationFailure if they differ.
SumValue tn_transform(const FieldPtr& F, unsigned n, Elem b, const CharacterTuple& chi, const EnumOptions& opts = {});

/// Value of chi_j at x in Z[zeta_{q-1}] as a SumValue with conductors (p, q-1).
SumValue character_value(const FieldTable& F, std::uint32_t j, Elem x);

/// Raises the multiplicative conductor of v to m (m a multiple of the current one).
SumValue lift_conductor(const SumValue& v, std::uint32_t m);

}  // namespace iks
