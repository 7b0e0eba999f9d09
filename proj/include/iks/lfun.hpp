#pragma once

// L-function of the untwisted inverted Kloosterman sums S_{k,n}(b).
//
// With S*_k = q^k S_{k,n}(b) + (q^k - 1)^n the toric sums of the auxiliary
// Laurent polynomial, the reciprocal roots gamma of L*^{(-1)^{n+1}} have
// power sums (-1)^n S*_k. Two of them are the trivial roots 1 and q; the
// remaining 2n are beta_i = q alpha_i, and
//
//   L_n(b,T)^{(-1)^{n+1}} = (1-T)^{n+1} prod_{j=2}^{n} (1-q^{j-1}T)^{C(n,j)(-1)^{j-1}} P(T),
//   P(T) = prod_{i=1}^{2n} (1 - alpha_i T).

#include "iks/cyclotomic.hpp"
#include "iks/expsum.hpp"
#include "iks/gf.hpp"

#include <complex>
#include <string>
#include <vector>

namespace iks {

/// (1 - root T)^multiplicity.
struct TrivialFactor {
    BigInt root;
    long multiplicity = 0;
};

struct PolygonPoint {
    unsigned x = 0;
    Rational y;
};

/// A side of a polygon: `length` reciprocal roots of slope `slope`.
struct Slope {
    Rational slope;
    unsigned length = 0;

    friend bool operator==(const Slope&, const Slope&) = default;
};

struct LFactorization {
    unsigned n = 0;
    std::uint32_t p = 0;
    unsigned a = 1;
    std::uint64_t q = 0;
    Elem b = 0;
    /// (-1)^{n+1}, the exponent applied to L_n.
    int sign = 1;
    std::vector<TrivialFactor> trivial;
    /// Coefficients of P(T), constant term first; 2n + 1 entries.
    std::vector<CycloRational> P;
    /// The power sums S*_1 .. S*_{2n} the factorization was built from.
    std::vector<CycloRational> s_star;
    /// (k, ord_q P_k) for the nonzero coefficients.
    std::vector<PolygonPoint> np_points;
    /// Vertices of the lower convex hull.
    std::vector<PolygonPoint> newton_polygon;
    std::vector<Slope> slopes;
    std::vector<std::complex<double>> complex_roots;
    /// Whether every coefficient of P lies in Q (rather than only in Q(zeta_p)).
    bool rational_coefficients = true;
};

/// An untwisted S_{k,n}(b) reduced into Q(zeta_p).
CycloRational untwisted_sum(const FieldPtr& F, unsigned k, unsigned n, Elem b, const EnumOptions& opts = {});

/// S*_k = q^k S_{k,n}(b) + (q^k - 1)^n for k = 1..K. Refuses p | (n+1),
/// where the auxiliary polynomial is degenerate.
std::vector<CycloRational> power_sums(const FieldPtr& F, unsigned n, Elem b, unsigned K, const EnumOptions& opts = {});

/// e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i, returns e_1..e_d.
std::vector<CycloRational> newton_to_elementary(const std::vector<CycloRational>& p);

/// Power sums p_1..p_K of the roots whose elementary symmetric functions
/// are e_1..e_d (e_i = 0 beyond d).
std::vector<CycloRational> elementary_to_newton(const std::vector<CycloRational>& e, unsigned K);

/// Builds P(T) from S*_1..S*_{2n}. Throws VerificationFailure when a
/// coefficient is not integral.
LFactorization strip_trivial_roots(const std::vector<CycloRational>& s_star, unsigned n, std::uint64_t q);

/// Fills in the trivial factors of L_n(b,T)^{(-1)^{n+1}}.
void assemble_lfunction(LFactorization& L);

/// (1, n+1) and (q^{j-1}, C(n,j)(-1)^{j-1}) for j = 2..n.
std::vector<TrivialFactor> trivial_factors(unsigned n, std::uint64_t q);

/// Lower convex hull of (k, ord_q c_k) over the nonzero coefficients.
std::vector<PolygonPoint> newton_polygon(const std::vector<CycloRational>& coeffs, std::uint64_t q,
                                         std::vector<PolygonPoint>* points = nullptr);
std::vector<Slope> polygon_slopes(const std::vector<PolygonPoint>& hull);

/// {0, 1, 1, ..., n-1, n-1, n} as sides.
std::vector<Slope> expected_hodge_slopes(unsigned n);

/// Vertices of the polygon with the given sides, starting at (0, 0).
std::vector<PolygonPoint> polygon_from_slopes(const std::vector<Slope>& slopes);

/// Value of a polygon (given by its vertices) at integer x.
Rational polygon_value(const std::vector<PolygonPoint>& vertices, unsigned x);

struct PolygonComparison {
    bool same_endpoints = false;
    /// upper(x) >= lower(x) at every integer x.
    bool on_or_above = false;
    bool equal = false;
};

PolygonComparison compare_polygons(const std::vector<PolygonPoint>& upper, const std::vector<PolygonPoint>& lower);

/// Complex roots alpha of P (reciprocal roots of P(T)).
std::vector<std::complex<double>> complex_roots(const std::vector<CycloRational>& P);
/// |alpha| sorted ascending.
std::vector<double> complex_weights(const std::vector<CycloRational>& P);

/// S_{k,n}(b) predicted by the assembled factorization.
CycloRational predicted_sum(const LFactorization& L, unsigned k);

struct HeldoutResult {
    unsigned k = 0;
    bool match = false;
    CycloRational predicted;
    CycloRational computed;
};

/// Compares predicted_sum with a fresh enumeration for each k in `extra`.
std::vector<HeldoutResult> heldout_check(const LFactorization& L, const FieldPtr& F, const std::vector<unsigned>& extra,
                                         const EnumOptions& opts = {});

/// power_sums, strip_trivial_roots, assemble_lfunction, the Newton
/// polygon and the complex roots.
LFactorization compute_lfunction(const FieldPtr& F, unsigned n, Elem b, const EnumOptions& opts = {});

/// JSON report; `heldout` may be empty.
std::string to_json(const LFactorization& L, const std::vector<HeldoutResult>& heldout = {});

}  // namespace iks
