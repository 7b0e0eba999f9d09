#pragma once

// Newton polyhedra of Laurent polynomials: facets and their functionals,
// the weight function, weight counts W(k), Hodge numbers and polygon, and
// the diagonal (Stickelberger) tests for non-degeneracy and ordinariness.
//
// All arithmetic is exact. Points and normals are machine integers; every
// rational quantity is a Rational.

#include "iks/expsum.hpp"
#include "iks/gf.hpp"
#include "iks/laurent.hpp"
#include "iks/lfun.hpp"
#include "iks/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iks {

using IVec = std::vector<long>;
/// Row-major integer matrix.
using IMatrix = std::vector<IVec>;

struct Facet {
    /// Primitive integer normal a with a.x <= offset on the polytope.
    IVec normal;
    long offset = 0;
    /// Indices into PolytopeData::points of the points lying on the facet.
    std::vector<std::size_t> on_facet;
    /// Indices into PolytopeData::vertices.
    std::vector<std::size_t> vertices;
    /// a / offset, the functional equal to 1 on the facet (offset > 0 only).
    std::vector<Rational> functional;

    bool through_origin() const noexcept { return offset == 0; }
    /// Denominator of the functional: lcm of its coefficient denominators.
    long denominator() const;
};

struct PolytopeData {
    unsigned dim = 0;
    /// The origin followed by the distinct input points.
    std::vector<IVec> points;
    std::vector<IVec> vertices;
    std::vector<Facet> facets;
    long D = 1;
    bool origin_is_vertex = false;

    /// Facets not containing the origin.
    std::vector<const Facet*> outer_facets() const;
    /// Simplicial: exactly dim vertices.
    bool simplicial(const Facet& f) const { return f.vertices.size() == dim; }
};

/// Convex hull of the origin and `points`. Throws DomainError when the hull
/// is not full-dimensional (naming the dimension of its affine hull).
PolytopeData build_polytope(const std::vector<IVec>& points);
/// Newton polyhedron of f: hull of the origin and the exponents of f.
PolytopeData build_polytope(const LaurentPoly& f);

/// {"vertices": [[...], ...]}. Throws ParseError.
std::vector<IVec> parse_vertices_json(std::string_view text);

struct IkPolytope {
    unsigned n = 0;
    PolytopeData poly;
    /// V_0 .. V_{n+3}.
    std::vector<IVec> V;
    /// Columns V_1..V_{n+2} and V_1..V_{n+1}, V_{n+3}.
    IMatrix M1, M2;
};

/// Newton polyhedron of the (n+2)-variable auxiliary polynomial, in R^{n+2}.
/// Throws VerificationFailure if the two non-origin facets are not the
/// expected ones.
IkPolytope ik_polytope(unsigned n);

/// Gauge of the polytope at u; nullopt outside the cone over it.
Valuation weight(const PolytopeData& P, const IVec& u);

struct HodgeData {
    long D = 1;
    unsigned dim = 0;
    unsigned k_max = 0;
    /// W[k] = #{u : w(u) = k/D}, k = 0..k_max.
    std::vector<BigInt> W;
    /// H[k] for k = 0..k_max.
    std::vector<BigInt> H;
    /// (0,0) and the points Q_k of the Hodge polygon for k <= min(k_max, dim D)
    /// with H(k) != 0.
    std::vector<PolygonPoint> polygon;
    BigInt normalized_volume;
};

inline constexpr double kDefaultBoxBudget = 1e8;

/// Weight counts up to k_max (default dim * D) by lattice enumeration.
HodgeData hodge_data(const PolytopeData& P, std::optional<unsigned> k_max = std::nullopt,
                     double box_budget = kDefaultBoxBudget, unsigned threads = default_threads());

/// Hodge polygon sides: slope k/D with length H(k).
std::vector<Slope> hodge_slopes(const HodgeData& h);

BigInt determinant(const IMatrix& M);
IMatrix matrix_from_columns(const std::vector<IVec>& columns);

/// gcd(|det M|, p) == 1. Throws DomainError for singular or non-square M.
bool diagonal_nondegenerate(const IMatrix& M, std::uint32_t p);

struct SolutionGroup {
    IMatrix M;
    BigInt det;
    /// Elements r in [0,1)^n with M r integral.
    std::vector<std::vector<Rational>> elements;
    /// Indices of the elements whose order is prime to p.
    std::vector<std::size_t> prime_to_p;
    /// |r| == |{p r}| on the prime-to-p part.
    bool ordinary = false;
};

/// |r| = r_1 + ... + r_n.
Rational coordinate_sum(const std::vector<Rational>& r);

inline constexpr long kMaxSolutionGroupOrder = 1'000'000;

/// Solution group via Smith normal form, and the Stickelberger verdict.
SolutionGroup ordinary_test(const IMatrix& M, std::uint32_t p);

struct FacetVerdict {
    std::size_t facet = 0;
    IMatrix M;
    BigInt det;
    bool nondegenerate = false;
    bool ordinary = false;
};

struct FacialReport {
    std::vector<FacetVerdict> facets;
    /// Conjunction over the facets (non-degenerate and ordinary).
    bool ordinary = false;
};

/// Per-facet ordinariness for a polynomial whose restriction to every
/// non-origin facet is diagonal. Throws DomainError naming the first facet
/// that is not.
FacialReport facial_ordinary(const LaurentPoly& f, std::uint32_t p);

enum class Nondegeneracy { degenerate, no_witness, diagonal_certified };

std::string to_string(Nondegeneracy v);

struct NondegeneracyReport {
    Nondegeneracy verdict = Nondegeneracy::no_witness;
    struct FacetResult {
        std::size_t facet = 0;
        Nondegeneracy verdict = Nondegeneracy::no_witness;
        /// Extension degree and exponent logs of a common zero, if found.
        unsigned m = 0;
        std::vector<std::uint32_t> witness_logs;
    };
    std::vector<FacetResult> facets;
};

/// For every non-origin facet: a diagonal restriction is settled by the
/// determinant test; otherwise searches (F_{q^m}^*)^dim, m = 1..m_max, for
/// a common zero of x_i d/dx_i f^delta. Faces of lower dimension are not
/// examined.
NondegeneracyReport nondegeneracy_search(const FieldPtr& F, const LaurentPoly& f, unsigned m_max = 3,
                                         const EnumOptions& opts = {});

std::string to_json(const PolytopeData& P, const HodgeData& h);
/// Hodge polygon as "x,y" rows.
std::string polygon_csv(const HodgeData& h);

}  // namespace iks
