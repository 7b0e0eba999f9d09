#include "iks/gf.hpp"

#include "iks/error.hpp"
#include "iks/numeric.hpp"

#include <algorithm>
#include <string>

namespace iks {

namespace {

// Dense polynomials over Z/p, lowest coefficient first, no trailing zeros.
using PolyP = std::vector<std::uint32_t>;

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = x;
    while (new_r != 0) {
        std::int64_t qq = r / new_r;
        t = std::exchange(new_t, t - qq * new_t);
        r = std::exchange(new_r, r - qq * new_r);
    }
    return static_cast<std::uint32_t>(mod(t, p));
}

PolyP poly_rem(PolyP a, const PolyP& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
        }
        trim(a);
    }
    return a;
}

PolyP poly_mulmod(const PolyP& x, const PolyP& y, const PolyP& m, std::uint32_t p) {
    if (x.empty() || y.empty()) return {};
    PolyP r(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{x[i]} * y[j]) % p);
        }
    }
    return poly_rem(std::move(r), m, p);
}

PolyP poly_powmod(PolyP base, std::uint64_t e, const PolyP& m, std::uint32_t p) {
    PolyP r{1};
    base = poly_rem(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

PolyP poly_gcd(PolyP a, PolyP b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = poly_rem(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// Ben-Or: f of degree a is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= a/2.
bool is_irreducible(const PolyP& f, std::uint32_t p) {
    const std::size_t a = f.size() - 1;
    if (a <= 1) return a == 1;
    PolyP h{0, 1};
    for (std::size_t i = 1; i <= a / 2; ++i) {
        h = poly_powmod(h, p, f, p);
        PolyP d = h;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        if (d.empty()) return false;
        if (poly_gcd(d, f, p).size() > 1) return false;
    }
    return true;
}

PolyP decode(Elem x, std::uint32_t p, unsigned a) {
    PolyP c(a);
    for (unsigned i = 0; i < a; ++i) {
        c[i] = x % p;
        x /= p;
    }
    trim(c);
    return c;
}

Elem encode(const PolyP& c, std::uint32_t p) {
    Elem x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * p + c[i];
    return x;
}

}  // namespace

std::uint64_t field_table_bytes(std::uint64_t q) {
    // exp, log, inv, trace, trace_by_log, zech
    return 6 * q * sizeof(std::uint32_t);
}

FieldTable FieldTable::build(std::uint32_t p, unsigned a, std::uint64_t cap) {
    if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    if (a == 0) throw DomainError("field extension degree must be at least 1");
    auto q64 = checked_pow(p, a);
    if (!q64 || *q64 > cap || *q64 > (std::uint64_t{1} << 31)) {
        const double required = q64 ? static_cast<double>(*q64) : 1e300;
        throw BudgetExceeded("field of order " + std::to_string(p) + "^" + std::to_string(a) +
                                 " exceeds the table cap of " + std::to_string(cap) +
                                 " elements (needs about " +
                                 std::to_string(q64 ? field_table_bytes(*q64) >> 20 : 0) + " MiB)",
                             required, static_cast<double>(cap));
    }

    FieldTable F;
    F.p_ = p;
    F.a_ = a;
    F.q_ = static_cast<std::uint32_t>(*q64);
    const std::uint32_t q = F.q_;
    const std::uint32_t n = q - 1;

    // Smallest irreducible with c_0 as the most significant comparison key.
    const std::uint64_t pa1 = ipow(p, a - 1);
    for (std::uint64_t idx = 0; idx < *q64; ++idx) {
        PolyP f(a + 1);
        std::uint64_t rest = idx;
        for (unsigned i = 0; i < a; ++i) {
            const std::uint64_t place = pa1 / ipow(p, i);
            f[i] = static_cast<std::uint32_t>(rest / place);
            rest %= place;
        }
        f[a] = 1;
        if (is_irreducible(f, p)) {
            F.modulus_ = f;
            break;
        }
    }

    const PolyP& m = F.modulus_;
    auto order_divisors = prime_factors(n);
    auto is_generator = [&](Elem g) {
        const PolyP gp = decode(g, p, a);
        for (auto l : order_divisors) {
            if (poly_powmod(gp, n / l, m, p) == PolyP{1}) return false;
        }
        return true;
    };
    F.generator_ = 1;
    for (Elem g = 1; g < q; ++g) {
        if (is_generator(g)) {
            F.generator_ = g;
            break;
        }
    }

    F.exp_.resize(n);
    F.log_.assign(q, n);
    const PolyP gp = decode(F.generator_, p, a);
    PolyP cur{1};
    for (std::uint32_t e = 0; e < n; ++e) {
        const Elem x = encode(cur, p);
        F.exp_[e] = x;
        F.log_[x] = e;
        cur = poly_mulmod(cur, gp, m, p);
    }

    F.inv_.assign(q, 0);
    for (Elem x = 1; x < q; ++x) F.inv_[x] = F.exp_[(n - F.log_[x]) % n];

    // Trace of each basis monomial, then extend linearly.
    std::vector<std::uint32_t> basis_trace(a);
    for (unsigned j = 0; j < a; ++j) {
        PolyP mono(j + 1, 0);
        mono[j] = 1;
        PolyP acc;
        PolyP power = poly_rem(mono, m, p);
        for (unsigned i = 0; i < a; ++i) {
            acc.resize(std::max(acc.size(), power.size()), 0);
            for (std::size_t t = 0; t < power.size(); ++t) acc[t] = (acc[t] + power[t]) % p;
            power = poly_powmod(power, p, m, p);
        }
        trim(acc);
        basis_trace[j] = acc.empty() ? 0 : acc[0];
    }
    F.trace_.assign(q, 0);
    for (Elem x = 0; x < q; ++x) {
        std::uint64_t t = 0;
        Elem y = x;
        for (unsigned j = 0; j < a; ++j) {
            t += std::uint64_t{y % p} * basis_trace[j];
            y /= p;
        }
        F.trace_[x] = static_cast<std::uint32_t>(t % p);
    }
    F.trace_by_log_.resize(n);
    for (std::uint32_t e = 0; e < n; ++e) F.trace_by_log_[e] = F.trace_[F.exp_[e]];

    F.zech_.resize(n);
    for (std::uint32_t e = 0; e < n; ++e) {
        const Elem x = F.exp_[e];
        const Elem c0 = x % p;
        const Elem y = x - c0 + (c0 + 1) % p;
        F.zech_[e] = F.log_[y];
    }
    return F;
}

Elem FieldTable::add(Elem x, Elem y) const {
    if (x == 0) return y;
    if (y == 0) return x;
    const std::uint32_t s = add_logs(log_[x], log_[y]);
    return s == zero_log() ? Elem{0} : exp_[s];
}

Elem FieldTable::neg(Elem x) const {
    if (x == 0) return 0;
    // -1 = g^{(q-1)/2} in odd characteristic; -x = x in characteristic 2.
    if (p_ == 2) return x;
    return exp_[(log_[x] + (q_ - 1) / 2) % (q_ - 1)];
}

Elem FieldTable::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Elem FieldTable::mul(Elem x, Elem y) const noexcept {
    if (x == 0 || y == 0) return 0;
    std::uint32_t s = log_[x] + log_[y];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

Elem FieldTable::div(Elem x, Elem y) const {
    if (y == 0) throw DomainError("division by zero in F_" + std::to_string(q_));
    return mul(x, inv_[y]);
}

Elem FieldTable::pow(Elem x, std::int64_t e) const {
    if (x == 0) {
        if (e < 0) throw DomainError("zero raised to a negative power");
        return e == 0 ? 1 : 0;
    }
    const std::int64_t n = q_ - 1;
    const std::int64_t idx = mod(static_cast<long>((static_cast<__int128>(log_[x]) * e) % n), n);
    return exp_[static_cast<std::size_t>(idx)];
}

Elem FieldTable::from_int(std::int64_t c) const noexcept { return static_cast<Elem>(mod(c, p_)); }

std::vector<std::uint32_t> FieldTable::coefficients(Elem x) const {
    std::vector<std::uint32_t> c(a_);
    for (unsigned i = 0; i < a_; ++i) {
        c[i] = x % p_;
        x /= p_;
    }
    return c;
}

Elem FieldTable::from_coefficients(std::span<const std::uint32_t> c) const {
    Elem x = 0;
    for (std::size_t i = std::min<std::size_t>(c.size(), a_); i-- > 0;) x = x * p_ + c[i] % p_;
    return x;
}

ExtensionMaps field_maps(FieldPtr base, unsigned k, std::uint64_t cap) {
    if (k == 0) throw DomainError("extension degree must be at least 1");
    ExtensionMaps M;
    M.base_ = base;
    M.k_ = k;
    const FieldTable& B = *base;
    const std::uint32_t q = B.order();
    if (k == 1) {
        M.ext_ = base;
        M.embed_.resize(q);
        for (Elem x = 0; x < q; ++x) M.embed_[x] = x;
        M.tr_rel_ = M.embed_;
        M.norm_rel_ = M.embed_;
        M.norm_log_factor_ = 1;
        return M;
    }

    M.ext_ = make_field(B.characteristic(), B.degree() * k, cap);
    const FieldTable& E = *M.ext_;
    const std::uint32_t Q = E.order();

    // Image of the base's polynomial variable: a root of the base modulus.
    Elem root = 0;
    if (B.degree() > 1) {
        const auto& mod_c = B.modulus();
        bool found = false;
        for (Elem y = 0; y < Q && !found; ++y) {
            Elem acc = 0;
            for (std::size_t i = mod_c.size(); i-- > 0;) acc = E.add(E.mul(acc, y), mod_c[i]);
            if (acc == 0) {
                root = y;
                found = true;
            }
        }
        if (!found) throw VerificationFailure("base modulus has no root in the extension field");
    }

    M.embed_.resize(q);
    for (Elem x = 0; x < q; ++x) {
        const auto c = B.coefficients(x);
        Elem acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = E.add(E.mul(acc, root), c[i]);
        M.embed_[x] = acc;
    }
    std::vector<std::int64_t> restrict_back(Q, -1);
    for (Elem x = 0; x < q; ++x) restrict_back[M.embed_[x]] = x;

    auto to_base = [&](Elem z) {
        const std::int64_t y = restrict_back[z];
        if (y < 0) throw VerificationFailure("relative trace/norm left the base field");
        return static_cast<Elem>(y);
    };

    M.tr_rel_.resize(Q);
    M.norm_rel_.resize(Q);
    const std::uint64_t norm_exp = (std::uint64_t{Q} - 1) / (q - 1);
    for (Elem x = 0; x < Q; ++x) {
        Elem t = 0;
        Elem power = x;
        for (unsigned i = 0; i < k; ++i) {
            t = E.add(t, power);
            power = E.pow(power, q);
        }
        M.tr_rel_[x] = to_base(t);
        M.norm_rel_[x] = to_base(E.pow(x, static_cast<std::int64_t>(norm_exp)));
    }
    M.norm_log_factor_ = B.log(M.norm_rel_[E.generator()]);
    return M;
}

}  // namespace iks
