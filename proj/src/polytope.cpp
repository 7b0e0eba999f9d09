#include "iks/polytope.hpp"

#include "iks/error.hpp"
#include "iks/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace iks {

namespace {

using i128 = __int128;

// Fraction-free determinant (Bareiss) of a small integer matrix.
long det_small(std::vector<std::vector<i128>> A) {
    const std::size_t n = A.size();
    if (n == 0) return 1;
    i128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && A[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(A[k], A[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
        }
        prev = A[k][k];
    }
    return static_cast<long>(sign * A[n - 1][n - 1]);
}

std::size_t rank_of(const std::vector<IVec>& rows, unsigned dim) {
    std::vector<std::vector<Rational>> A;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (long x : r) row.emplace_back(x);
        A.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (unsigned c = 0; c < dim && rank < A.size(); ++c) {
        std::size_t piv = rank;
        while (piv < A.size() && A[piv][c] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[rank]);
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == rank || A[i][c] == 0) continue;
            const Rational f = A[i][c] / A[rank][c];
            for (unsigned j = c; j < dim; ++j) A[i][j] -= f * A[rank][j];
        }
        ++rank;
    }
    return rank;
}

long dot(const IVec& a, const IVec& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double binomial_double(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

std::string vec_string(const IVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string facet_string(const Facet& f) {
    std::ostringstream os;
    os << vec_string(f.normal) << ".x = " << f.offset;
    return os.str();
}

Rational frac_part(const Rational& x) {
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rational(fl);
}

}  // namespace

long Facet::denominator() const {
    BigInt d = 1;
    for (const auto& c : functional) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    return d.get_si();
}

std::vector<const Facet*> PolytopeData::outer_facets() const {
    std::vector<const Facet*> out;
    for (const auto& f : facets) {
        if (!f.through_origin()) out.push_back(&f);
    }
    return out;
}

PolytopeData build_polytope(const std::vector<IVec>& input) {
    if (input.empty()) throw DomainError("polytope needs at least one point besides the origin");
    const unsigned d = static_cast<unsigned>(input.front().size());
    if (d == 0) throw DomainError("points must have at least one coordinate");
    PolytopeData P;
    P.dim = d;
    P.points.push_back(IVec(d, 0));
    std::set<IVec> seen{P.points.front()};
    for (const auto& v : input) {
        if (v.size() != d) throw DomainError("points have mixed dimensions");
        if (seen.insert(v).second) P.points.push_back(v);
    }
    const std::size_t r = rank_of(P.points, d);
    if (r < d) {
        throw DomainError("polytope is not full-dimensional: its affine hull has dimension " + std::to_string(r) +
                          " in R^" + std::to_string(d));
    }
    const std::size_t N = P.points.size();
    if (binomial_double(N, d) > 2e8) {
        throw BudgetExceeded("facet search over " + std::to_string(N) + " points in dimension " + std::to_string(d) +
                                 " is too large",
                             binomial_double(N, d), 2e8);
    }

    std::set<std::pair<IVec, long>> found;
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<i128>> minor(d - 1, std::vector<i128>(d - 1));
    while (true) {
        // Normal of the hyperplane through the chosen points: cofactors of
        // the (d-1) x d matrix of differences.
        const IVec& base = P.points[idx[0]];
        IVec a(d);
        bool nonzero = false;
        for (unsigned skip = 0; skip < d; ++skip) {
            for (unsigned k = 1; k < d; ++k) {
                unsigned cc = 0;
                for (unsigned c = 0; c < d; ++c) {
                    if (c == skip) continue;
                    minor[k - 1][cc++] = P.points[idx[k]][c] - base[c];
                }
            }
            long m = det_small(minor);
            a[skip] = (skip % 2 == 0) ? m : -m;
            nonzero = nonzero || a[skip] != 0;
        }
        if (nonzero) {
            long g = 0;
            for (long x : a) g = std::gcd(g, x);
            for (long& x : a) x /= g;
            long c = dot(a, base);
            bool le = true, ge = true;
            for (const auto& x : P.points) {
                const long s = dot(a, x) - c;
                le = le && s <= 0;
                ge = ge && s >= 0;
            }
            if (ge && !le) {
                for (long& x : a) x = -x;
                c = -c;
            }
            if (le || ge) found.insert({a, c});
        }
        // Next d-subset.
        int i = static_cast<int>(d) - 1;
        while (i >= 0 && idx[i] == N - d + static_cast<std::size_t>(i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }

    for (const auto& [a, c] : found) {
        Facet f;
        f.normal = a;
        f.offset = c;
        for (std::size_t i = 0; i < N; ++i) {
            if (dot(a, P.points[i]) == c) f.on_facet.push_back(i);
        }
        if (c > 0) {
            for (long x : a) {
                Rational q(x, c);
                q.canonicalize();
                f.functional.push_back(q);
            }
        }
        P.facets.push_back(std::move(f));
    }
    // Outer facets first, then by normal, for a stable report order.
    std::stable_sort(P.facets.begin(), P.facets.end(), [](const Facet& x, const Facet& y) {
        if (x.through_origin() != y.through_origin()) return !x.through_origin();
        return x.normal > y.normal;
    });

    // A point is a vertex iff the normals of the facets through it span R^d.
    std::vector<long> vertex_id(N, -1);
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<IVec> normals;
        for (const auto& f : P.facets) {
            if (std::find(f.on_facet.begin(), f.on_facet.end(), i) != f.on_facet.end()) normals.push_back(f.normal);
        }
        if (!normals.empty() && rank_of(normals, d) == d) {
            vertex_id[i] = static_cast<long>(P.vertices.size());
            P.vertices.push_back(P.points[i]);
            if (i == 0) P.origin_is_vertex = true;
        }
    }
    for (auto& f : P.facets) {
        for (auto i : f.on_facet) {
            if (vertex_id[i] >= 0) f.vertices.push_back(static_cast<std::size_t>(vertex_id[i]));
        }
    }
    BigInt D = 1;
    for (const auto* f : P.outer_facets()) {
        BigInt fd = f->denominator();
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), fd.get_mpz_t());
    }
    P.D = D.get_si();
    return P;
}

PolytopeData build_polytope(const LaurentPoly& f) {
    std::vector<IVec> pts;
    for (const auto& t : f.terms) pts.emplace_back(t.exponent.begin(), t.exponent.end());
    return build_polytope(pts);
}

std::vector<IVec> parse_vertices_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        auto v = j.at("vertices").get<std::vector<IVec>>();
        if (v.empty()) throw ParseError("vertex list is empty");
        return v;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed polytope JSON: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("polytope JSON does not match the schema: ") + e.what());
    }
}

IMatrix matrix_from_columns(const std::vector<IVec>& columns) {
    if (columns.empty()) return {};
    IMatrix M(columns.front().size(), IVec(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t i = 0; i < M.size(); ++i) M[i][j] = columns[j][i];
    }
    return M;
}

BigInt determinant(const IMatrix& M) {
    const std::size_t n = M.size();
    for (const auto& r : M) {
        if (r.size() != n) throw DomainError("determinant of a non-square matrix");
    }
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A[i][j] = M[i][j];
    }
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && A[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(A[k], A[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]);
                mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = A[k][k];
    }
    return sign * A[n - 1][n - 1];
}

IkPolytope ik_polytope(unsigned n) {
    if (n < 1 || n > 8) throw DomainError("ik_polytope needs 1 <= n <= 8");
    const unsigned d = n + 2;
    IkPolytope out;
    out.n = n;
    out.V.push_back(IVec(d, 0));
    for (unsigned i = 0; i < n; ++i) {
        IVec v(d, 0);
        v[i] = 1;
        v[n] = 1;
        v[n + 1] = 1;
        out.V.push_back(v);
    }
    IVec w(d, -1);
    w[n] = 1;
    w[n + 1] = 1;
    out.V.push_back(w);
    IVec y(d, 0), z(d, 0);
    y[n] = 1;
    z[n + 1] = 1;
    out.V.push_back(y);
    out.V.push_back(z);

    out.poly = build_polytope(std::vector<IVec>(out.V.begin() + 1, out.V.end()));
    std::vector<IVec> c1(out.V.begin() + 1, out.V.begin() + n + 3);
    std::vector<IVec> c2(out.V.begin() + 1, out.V.begin() + n + 2);
    c2.push_back(out.V[n + 3]);
    out.M1 = matrix_from_columns(c1);
    out.M2 = matrix_from_columns(c2);

    // The two non-origin facets must be x_{n+1} = 1 and x_{n+2} = 1 carrying
    // exactly the columns of M1 and M2.
    const auto outer = out.poly.outer_facets();
    auto vertex_set = [&](const Facet& f) {
        std::set<IVec> s;
        for (auto i : f.vertices) s.insert(out.poly.vertices[i]);
        return s;
    };
    bool ok = outer.size() == 2 && out.poly.vertices.size() == n + 4;
    if (ok) {
        const std::set<IVec> s1(c1.begin(), c1.end()), s2(c2.begin(), c2.end());
        IVec e1(d, 0), e2(d, 0);
        e1[n] = 1;
        e2[n + 1] = 1;
        for (const auto* f : outer) {
            const bool is1 = f->normal == e1 && f->offset == 1 && vertex_set(*f) == s1;
            const bool is2 = f->normal == e2 && f->offset == 1 && vertex_set(*f) == s2;
            ok = ok && (is1 || is2);
        }
    }
    if (!ok) throw VerificationFailure("the auxiliary polytope does not have the expected two outer facets");
    return out;
}

Valuation weight(const PolytopeData& P, const IVec& u) {
    if (u.size() != P.dim) throw DomainError("point dimension does not match the polytope");
    Rational w = 0;
    for (const auto& f : P.facets) {
        const long s = dot(f.normal, u);
        if (f.through_origin()) {
            if (s > 0) return std::nullopt;
        } else {
            Rational v(s, f.offset);
            v.canonicalize();
            if (v > w) w = v;
        }
    }
    return w;
}

HodgeData hodge_data(const PolytopeData& P, std::optional<unsigned> k_max_opt, double box_budget, unsigned threads) {
    const unsigned d = P.dim;
    HodgeData h;
    h.D = P.D;
    h.dim = d;
    h.k_max = k_max_opt.value_or(static_cast<unsigned>(d * P.D));
    const long kmax = h.k_max;

    // Integer functionals A = D * a / c measure weight in units of 1/D.
    std::vector<IVec> A, cone;
    for (const auto& f : P.facets) {
        if (f.through_origin()) {
            cone.push_back(f.normal);
        } else {
            IVec row;
            for (const auto& c : f.functional) {
                Rational v = c * Rational(P.D);
                row.push_back(v.get_num().get_si());
            }
            A.push_back(std::move(row));
        }
    }
    // Points of weight <= kmax / D lie in (kmax / D) * Delta.
    IVec lo(d, 0), hi(d, 0);
    for (const auto& v : P.vertices) {
        for (unsigned i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    double box = 1;
    for (unsigned i = 0; i < d; ++i) {
        Rational l = Rational(lo[i] * kmax) / Rational(P.D), u = Rational(hi[i] * kmax) / Rational(P.D);
        BigInt fl, ce;
        mpz_fdiv_q(fl.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
        mpz_cdiv_q(ce.get_mpz_t(), u.get_num_mpz_t(), u.get_den_mpz_t());
        lo[i] = fl.get_si();
        hi[i] = ce.get_si();
        box *= static_cast<double>(hi[i] - lo[i] + 1);
    }
    if (box > box_budget) {
        throw BudgetExceeded("weight enumeration box has " + std::to_string(static_cast<long long>(box)) +
                                 " lattice points",
                             box, box_budget);
    }

    using Counts = std::vector<long long>;
    const std::size_t span0 = static_cast<std::size_t>(hi[0] - lo[0] + 1);
    const Counts W = parallel_reduce<Counts>(
        span0, threads, [&] { return Counts(h.k_max + 1, 0); },
        [&](std::size_t b, std::size_t e, Counts& acc) {
            IVec u(lo);
            for (std::size_t x0 = b; x0 < e; ++x0) {
                u = lo;
                u[0] = lo[0] + static_cast<long>(x0);
                while (true) {
                    bool in_cone = true;
                    for (const auto& c : cone) {
                        if (dot(c, u) > 0) {
                            in_cone = false;
                            break;
                        }
                    }
                    if (in_cone) {
                        long w = 0;
                        for (const auto& a : A) w = std::max(w, dot(a, u));
                        if (w <= kmax) ++acc[static_cast<std::size_t>(w)];
                    }
                    unsigned i = 1;
                    while (i < d && u[i] == hi[i]) {
                        u[i] = lo[i];
                        ++i;
                    }
                    if (i >= d) break;
                    ++u[i];
                }
            }
        },
        [](Counts& x, const Counts& y) {
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
        });

    for (auto w : W) h.W.emplace_back(static_cast<long>(w));
    for (long k = 0; k <= kmax; ++k) {
        BigInt s = 0;
        for (unsigned i = 0; i <= d; ++i) {
            const long j = k - static_cast<long>(i) * P.D;
            if (j < 0) break;
            const BigInt term = binomial(d, i) * h.W[static_cast<std::size_t>(j)];
            if (i % 2 == 0) {
                s += term;
            } else {
                s -= term;
            }
        }
        h.H.push_back(s);
    }
    const long top = std::min<long>(kmax, static_cast<long>(d) * P.D);
    h.polygon.push_back({0, Rational(0)});
    BigInt x = 0;
    Rational y = 0;
    h.normalized_volume = 0;
    for (long k = 0; k <= top; ++k) {
        x += h.H[k];
        y += Rational(h.H[k] * k) / Rational(P.D);
        h.normalized_volume += h.H[k];
        if (h.H[k] != 0) h.polygon.push_back({static_cast<unsigned>(x.get_ui()), y});
    }
    return h;
}

std::vector<Slope> hodge_slopes(const HodgeData& h) {
    std::vector<Slope> out;
    const long top = std::min<long>(h.k_max, static_cast<long>(h.dim) * h.D);
    for (long k = 0; k <= top; ++k) {
        if (h.H[k] == 0) continue;
        Rational s(k, h.D);
        s.canonicalize();
        out.push_back({s, static_cast<unsigned>(h.H[k].get_ui())});
    }
    return out;
}

bool diagonal_nondegenerate(const IMatrix& M, std::uint32_t p) {
    const BigInt det = determinant(M);
    if (det == 0) throw DomainError("vertex matrix is singular");
    BigInt g;
    BigInt pp = p;
    mpz_gcd(g.get_mpz_t(), det.get_mpz_t(), pp.get_mpz_t());
    return g == 1;
}

Rational coordinate_sum(const std::vector<Rational>& r) {
    Rational s = 0;
    for (const auto& x : r) s += x;
    return s;
}

SolutionGroup ordinary_test(const IMatrix& M, std::uint32_t p) {
    SolutionGroup G;
    G.M = M;
    G.det = determinant(M);
    if (G.det == 0) throw DomainError("vertex matrix is singular");
    if (abs(G.det) > kMaxSolutionGroupOrder) {
        throw BudgetExceeded("solution group of order " + BigInt(abs(G.det)).get_str() + " is too large",
                             BigInt(abs(G.det)).get_d(), static_cast<double>(kMaxSolutionGroupOrder));
    }
    const std::size_t n = M.size();

    // Diagonalize U M V = S by unimodular row and column operations, keeping V.
    std::vector<std::vector<long>> S = M;
    std::vector<std::vector<long>> V(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) V[i][i] = 1;
    auto col_sub = [&](std::size_t j, std::size_t t, long q) {
        for (std::size_t i = 0; i < n; ++i) {
            S[i][j] -= q * S[i][t];
            V[i][j] -= q * V[i][t];
        }
    };
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            std::size_t bi = n, bj = n;
            for (std::size_t i = t; i < n; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (S[i][j] != 0 && (bi == n || std::labs(S[i][j]) < std::labs(S[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            std::swap(S[t], S[bi]);
            for (std::size_t i = 0; i < n; ++i) {
                std::swap(S[i][t], S[i][bj]);
                std::swap(V[i][t], V[i][bj]);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                const long q = S[i][t] / S[t][t];
                for (std::size_t j = t; j < n; ++j) S[i][j] -= q * S[t][j];
                clean = clean && S[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                col_sub(j, t, S[t][j] / S[t][t]);
                clean = clean && S[t][j] == 0;
            }
            if (clean) break;
        }
        if (S[t][t] < 0) {
            for (std::size_t i = 0; i < n; ++i) {
                S[i][t] = -S[i][t];
                V[i][t] = -V[i][t];
            }
        }
    }

    // M^{-1} Z^n = V S^{-1} Z^n: r = frac(V (t_1/d_1, ..., t_n/d_n)).
    std::vector<long> dvec(n), t(n, 0);
    for (std::size_t i = 0; i < n; ++i) dvec[i] = S[i][i];
    while (true) {
        std::vector<Rational> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < n; ++j) {
                Rational c(V[i][j] * t[j], dvec[j]);
                c.canonicalize();
                s += c;
            }
            r[i] = frac_part(s);
        }
        G.elements.push_back(std::move(r));
        std::size_t i = 0;
        while (i < n && t[i] + 1 == dvec[i]) {
            t[i] = 0;
            ++i;
        }
        if (i == n) break;
        ++t[i];
    }
    std::sort(G.elements.begin(), G.elements.end());

    G.ordinary = true;
    for (std::size_t e = 0; e < G.elements.size(); ++e) {
        const auto& r = G.elements[e];
        BigInt order = 1;
        for (const auto& x : r) mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), x.get_den_mpz_t());
        if (order % p == 0) continue;
        G.prime_to_p.push_back(e);
        std::vector<Rational> pr;
        for (const auto& x : r) pr.push_back(frac_part(x * Rational(p)));
        if (coordinate_sum(r) != coordinate_sum(pr)) G.ordinary = false;
    }
    return G;
}

namespace {

// Exponents of f lying on the facet.
std::vector<std::size_t> terms_on(const LaurentPoly& f, const Facet& fc) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < f.terms.size(); ++j) {
        IVec e(f.terms[j].exponent.begin(), f.terms[j].exponent.end());
        if (dot(fc.normal, e) == fc.offset) out.push_back(j);
    }
    return out;
}

}  // namespace

FacialReport facial_ordinary(const LaurentPoly& f, std::uint32_t p) {
    const PolytopeData P = build_polytope(f);
    FacialReport rep;
    rep.ordinary = true;
    std::size_t index = 0;
    for (const auto* fc : P.outer_facets()) {
        const auto on = terms_on(f, *fc);
        if (on.size() != P.dim || !P.simplicial(*fc)) {
            throw DomainError("facet " + facet_string(*fc) + " is not diagonal: it carries " +
                              std::to_string(on.size()) + " terms of f and " + std::to_string(fc->vertices.size()) +
                              " vertices in dimension " + std::to_string(P.dim));
        }
        std::vector<IVec> cols;
        for (auto j : on) cols.emplace_back(f.terms[j].exponent.begin(), f.terms[j].exponent.end());
        FacetVerdict v;
        v.facet = index++;
        v.M = matrix_from_columns(cols);
        v.det = determinant(v.M);
        v.nondegenerate = diagonal_nondegenerate(v.M, p);
        v.ordinary = v.nondegenerate && ordinary_test(v.M, p).ordinary;
        rep.ordinary = rep.ordinary && v.ordinary;
        rep.facets.push_back(std::move(v));
    }
    return rep;
}

std::string to_string(Nondegeneracy v) {
    switch (v) {
        case Nondegeneracy::degenerate:
            return "degenerate";
        case Nondegeneracy::no_witness:
            return "no-witness-found";
        case Nondegeneracy::diagonal_certified:
            return "diagonal-certified";
    }
    return "unknown";
}

NondegeneracyReport nondegeneracy_search(const FieldPtr& F, const LaurentPoly& f, unsigned m_max,
                                         const EnumOptions& opts) {
    const PolytopeData P = build_polytope(f);
    const std::uint32_t p = F->characteristic();
    NondegeneracyReport rep;
    bool all_certified = true, any_degenerate = false;
    std::size_t index = 0;
    for (const auto* fc : P.outer_facets()) {
        NondegeneracyReport::FacetResult res;
        res.facet = index++;
        const auto on = terms_on(f, *fc);
        std::vector<IVec> cols;
        for (auto j : on) cols.emplace_back(f.terms[j].exponent.begin(), f.terms[j].exponent.end());
        if (on.size() == P.dim && determinant(matrix_from_columns(cols)) != 0) {
            res.verdict = diagonal_nondegenerate(matrix_from_columns(cols), p) ? Nondegeneracy::diagonal_certified
                                                                              : Nondegeneracy::degenerate;
        } else {
            res.verdict = Nondegeneracy::no_witness;
            for (unsigned m = 1; m <= m_max && res.verdict == Nondegeneracy::no_witness; ++m) {
                const ExtensionMaps maps = field_maps(F, m);
                const FieldTable& E = maps.ext();
                const std::uint32_t N = E.group_order();
                check_budget(std::pow(static_cast<double>(N), P.dim), opts,
                             "non-degeneracy search over F_" + std::to_string(E.order()));
                // Coefficient logs of x_i d/dx_i f^delta: a_j * V_j[i].
                std::vector<std::vector<std::uint32_t>> coef(P.dim, std::vector<std::uint32_t>(on.size()));
                for (unsigned i = 0; i < P.dim; ++i) {
                    for (std::size_t t = 0; t < on.size(); ++t) {
                        const auto& term = f.terms[on[t]];
                        const Elem c = E.mul(maps.embed(term.coeff), E.from_int(term.exponent[i]));
                        coef[i][t] = E.log(c);
                    }
                }
                std::vector<std::uint32_t> e(P.dim, 0);
                while (true) {
                    bool zero = true;
                    for (unsigned i = 0; i < P.dim && zero; ++i) {
                        std::uint32_t s = E.zero_log();
                        for (std::size_t t = 0; t < on.size(); ++t) {
                            if (coef[i][t] == E.zero_log()) continue;
                            long lg = coef[i][t];
                            for (unsigned k = 0; k < P.dim; ++k) lg += static_cast<long>(cols[t][k]) * e[k];
                            s = E.add_logs(s, static_cast<std::uint32_t>(mod(lg, N)));
                        }
                        zero = s == E.zero_log();
                    }
                    if (zero) {
                        res.verdict = Nondegeneracy::degenerate;
                        res.m = m;
                        res.witness_logs = e;
                        break;
                    }
                    unsigned i = 0;
                    while (i < P.dim && e[i] + 1 == N) {
                        e[i] = 0;
                        ++i;
                    }
                    if (i == P.dim) break;
                    ++e[i];
                }
            }
        }
        all_certified = all_certified && res.verdict == Nondegeneracy::diagonal_certified;
        any_degenerate = any_degenerate || res.verdict == Nondegeneracy::degenerate;
        rep.facets.push_back(std::move(res));
    }
    rep.verdict = any_degenerate  ? Nondegeneracy::degenerate
                  : all_certified ? Nondegeneracy::diagonal_certified
                                  : Nondegeneracy::no_witness;
    return rep;
}

std::string to_json(const PolytopeData& P, const HodgeData& h) {
    nlohmann::json j;
    j["dim"] = P.dim;
    j["vertices"] = P.vertices;
    j["facets"] = nlohmann::json::array();
    for (const auto& f : P.facets) {
        j["facets"].push_back({{"normal", f.normal},
                               {"offset", f.offset},
                               {"vertices", f.vertices},
                               {"simplicial", P.simplicial(f)}});
    }
    j["D"] = h.D;
    j["W"] = nlohmann::json::array();
    for (const auto& w : h.W) j["W"].push_back(w.get_si());
    j["H"] = nlohmann::json::array();
    for (const auto& x : h.H) j["H"].push_back(x.get_si());
    j["polygon"] = nlohmann::json::array();
    for (const auto& v : h.polygon) j["polygon"].push_back({v.x, v.y.get_num().get_si(), v.y.get_den().get_si()});
    j["nvol"] = h.normalized_volume.get_si();
    return j.dump();
}

std::string polygon_csv(const HodgeData& h) {
    std::ostringstream os;
    os << "x,y,y_exact\n";
    for (const auto& v : h.polygon) os << v.x << "," << v.y.get_d() << "," << v.y.get_str() << "\n";
    return os.str();
}

}  // namespace iks
