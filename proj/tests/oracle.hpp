#pragma once

// Slow reference implementations used only by the tests. Nothing here calls
// into the library: fields are built from scratch with polynomial arithmetic
// and sums are evaluated in complex doubles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using Poly = std::vector<std::uint32_t>;  // constant term first

inline Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p) {
    std::uint64_t r = 1, b = x % p;
    for (std::uint32_t e = p - 2; e; e >>= 1, b = b * b % p) {
        if (e & 1) r = r * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

// f mod g over F_p, g monic
inline Poly rem(Poly f, const Poly& g, std::uint32_t p) {
    f = trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const std::uint32_t c = f.back();
        const std::size_t s = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) f[s + i] = (f[s + i] + p - c * g[i] % p) % p;
        f = trim(f);
    }
    return f;
}

inline bool irreducible(const Poly& g, std::uint32_t p) {
    const std::size_t d = g.size() - 1;
    // trial division by every monic polynomial of degree 1..d/2
    for (std::size_t e = 1; 2 * e <= d; ++e) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < e; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly h(e + 1);
            std::uint64_t t = c;
            for (std::size_t i = 0; i < e; ++i) {
                h[i] = t % p;
                t /= p;
            }
            h[e] = 1;
            if (rem(g, h, p).empty()) return false;
        }
    }
    return true;
}

struct Field {
    std::uint32_t p, a, q;
    Poly modulus;
    std::uint32_t g = 0;
    std::vector<std::uint32_t> log;  // log[0] unused

    Poly decode(std::uint32_t x) const {
        Poly c(a);
        for (auto& v : c) {
            v = x % p;
            x /= p;
        }
        return c;
    }
    std::uint32_t encode(const Poly& c) const {
        std::uint32_t x = 0;
        for (std::size_t i = c.size(); i-- > 0;) x = x * p + c[i];
        return x;
    }
    std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
        Poly u = decode(x), v = decode(y);
        for (std::uint32_t i = 0; i < a; ++i) u[i] = (u[i] + v[i]) % p;
        return encode(u);
    }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        const Poly u = decode(x), v = decode(y);
        Poly w(2 * a, 0);
        for (std::uint32_t i = 0; i < a; ++i) {
            for (std::uint32_t j = 0; j < a; ++j) w[i + j] = (w[i + j] + u[i] * v[j]) % p;
        }
        Poly r = rem(w, modulus, p);
        r.resize(a, 0);
        return encode(r);
    }
    std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
        std::uint32_t r = 1;
        for (; e; e >>= 1, x = mul(x, x)) {
            if (e & 1) r = mul(r, x);
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t x) const { return pow(x, q - 2); }
    // absolute trace, an element of F_p
    std::uint32_t trace(std::uint32_t x) const {
        std::uint32_t s = 0, y = x;
        for (std::uint32_t i = 0; i < a; ++i) {
            s = add(s, y);
            y = pow(y, p);
        }
        return s;
    }
};

inline Field make(std::uint32_t p, std::uint32_t a) {
    Field F{p, a, 1, {}, 0, {}};
    for (std::uint32_t i = 0; i < a; ++i) F.q *= p;
    // smallest monic irreducible, coefficients compared from the constant term upward
    for (std::uint32_t c = 0; c < F.q; ++c) {
        Poly g = F.decode(c);
        // lexicographic from the constant term: encode reversed
        Poly rev(a);
        for (std::uint32_t i = 0; i < a; ++i) rev[i] = g[a - 1 - i];
        rev.push_back(1);
        if (a == 1 || irreducible(rev, p)) {
            F.modulus = rev;
            break;
        }
    }
    std::vector<std::uint32_t> primes;
    for (std::uint32_t n = F.q - 1, d = 2; n > 1; ++d) {
        if (n % d == 0) {
            primes.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    for (std::uint32_t x = 1; x < F.q; ++x) {
        bool ok = true;
        for (auto r : primes) ok = ok && F.pow(x, (F.q - 1) / r) != 1;
        if (ok) {
            F.g = x;
            break;
        }
    }
    F.log.assign(F.q, 0);
    std::uint32_t y = 1;
    for (std::uint32_t e = 0; e + 1 < F.q; ++e, y = F.mul(y, F.g)) F.log[y] = e;
    return F;
}

inline std::complex<double> zeta(std::uint64_t t, std::uint64_t m) {
    const double th = 2 * std::numbers::pi * static_cast<double>(t % m) / static_cast<double>(m);
    return {std::cos(th), std::sin(th)};
}

// S_n(chi, b) over F by direct summation. Character indices are taken with
// respect to a character group of order N = |F^*| / f, where chi_j(x) =
// zeta_{q0-1}^{j log_F(x) / f}; with f = 1 this is the usual chi_j of F.
inline std::complex<double> kloosterman(const Field& F, unsigned n, std::uint32_t b, const std::vector<std::uint32_t>& chi) {
    std::complex<double> total = 0;
    std::vector<std::uint32_t> x(n, 1);
    const std::uint32_t N = F.q - 1;
    while (true) {
        std::uint32_t prod = 1, s = 0;
        std::uint64_t phase = 0;
        for (unsigned i = 0; i < n; ++i) {
            prod = F.mul(prod, x[i]);
            s = F.add(s, x[i]);
            phase += std::uint64_t{chi[i]} * F.log[x[i]];
        }
        const std::uint32_t last = F.mul(b, F.inv(prod));
        s = F.add(s, last);
        phase += std::uint64_t{chi[n]} * F.log[last];
        if (s != 0) total += zeta(phase, N) * zeta(F.trace(F.inv(s)), F.p);
        unsigned i = 0;
        while (i < n && x[i] + 1 == F.q) x[i++] = 1;
        if (i == n) break;
        ++x[i];
    }
    return total;
}

}  // namespace oracle
