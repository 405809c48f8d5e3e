#pragma once

#include <vector>

#include "injekt/fields.hpp"
#include "injekt/rng.hpp"

namespace injekt {
namespace fpx {

// Univariate polynomials over F_p as trimmed little-endian coefficient
// vectors (empty vector = 0). Enough machinery for squarefree/distinct-degree
// /equal-degree factorization of the elimination polynomials in the secant
// tests; degrees stay below ~100.

using P = std::vector<uint64_t>;

inline Int int_pow_ui(uint64_t base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}


inline void trim(P& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const P& f) { return static_cast<int>(f.size()) - 1; }
inline P x_poly() { return P{0, 1}; }

inline P add(const FpField& K, const P& a, const P& b) {
    P r = a.size() >= b.size() ? a : b;
    const P& s = a.size() >= b.size() ? b : a;
    for (size_t i = 0; i < s.size(); ++i) r[i] = K.add(r[i], s[i]);
    trim(r);
    return r;
}

inline P sub(const FpField& K, const P& a, const P& b) {
    P r = a;
    r.resize(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
    trim(r);
    return r;
}

inline P mul(const FpField& K, const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j)
                if (b[j]) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    return r;
}

inline P scale(const FpField& K, const P& a, uint64_t c) {
    P r = a;
    for (auto& x : r) x = K.mul(x, c);
    trim(r);
    return r;
}

// quotient and remainder, g != 0
inline std::pair<P, P> divmod(const FpField& K, P f, const P& g) {
    trim(f);
    P q;
    if (f.size() >= g.size()) q.assign(f.size() - g.size() + 1, 0);
    uint64_t li = K.inv(g.back());
    while (f.size() >= g.size()) {
        size_t sh = f.size() - g.size();
        uint64_t c = K.mul(f.back(), li);
        q[sh] = c;
        for (size_t j = 0; j < g.size(); ++j) f[sh + j] = K.sub(f[sh + j], K.mul(c, g[j]));
        trim(f);
    }
    return {q, f};
}

inline P mod(const FpField& K, const P& f, const P& g) { return divmod(K, f, g).second; }

inline P monic(const FpField& K, P f) {
    trim(f);
    if (f.empty()) return f;
    uint64_t li = K.inv(f.back());
    for (auto& c : f) c = K.mul(c, li);
    return f;
}

inline P gcd(const FpField& K, P a, P b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        P r = mod(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(K, a);
}

inline P deriv(const FpField& K, const P& f) {
    if (f.size() <= 1) return {};
    P r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = K.mul(f[i], K.from_long(static_cast<long>(i)));
    trim(r);
    return r;
}

inline uint64_t eval(const FpField& K, const P& f, uint64_t x) {
    uint64_t acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = K.add(K.mul(acc, x), f[i]);
    return acc;
}

// base^e mod f in F_p[x]/(f); e may be huge (mpz)
inline P powmod(const FpField& K, P base, Int e, const P& f) {
    P r{1};
    base = mod(K, base, f);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mod(K, mul(K, r, base), f);
        base = mod(K, mul(K, base, base), f);
        e >>= 1;
    }
    return r;
}

inline P squarefree_part(const FpField& K, const P& f) {
    P d = deriv(K, f);
    if (d.empty()) {
        // perfect p-th power; irrelevant for p > deg f, but handle by
        // stripping exponents: f(x) = g(x^p) -> take p-th root coefficientwise
        P g;
        for (size_t i = 0; i < f.size(); i += K.p) g.push_back(f[i]);
        return squarefree_part(K, g);
    }
    return divmod(K, f, gcd(K, f, d)).first;
}

// distinct-degree: (factor product, degree) pairs for a squarefree monic f
inline std::vector<std::pair<P, int>> ddf(const FpField& K, P f) {
    std::vector<std::pair<P, int>> out;
    P xq = x_poly(); // will hold x^{p^d} mod f
    int d = 0;
    while (deg(f) > 0) {
        ++d;
        if (2 * d > deg(f)) {
            out.emplace_back(f, deg(f)); // what's left is irreducible
            break;
        }
        xq = powmod(K, xq, Int(static_cast<unsigned long>(K.p)), f);
        P g = gcd(K, sub(K, xq, x_poly()), f);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divmod(K, f, g).first;
            xq = mod(K, xq, f);
        }
    }
    return out;
}

// Cantor–Zassenhaus equal-degree split of a monic squarefree product of
// irreducibles of degree d (odd p), deterministic under the provided rng.
inline void edf(const FpField& K, const P& f, int d, Rng& rng, std::vector<P>& out) {
    if (deg(f) == d) {
        out.push_back(monic(K, f));
        return;
    }
    Int exp = (int_pow_ui(K.p, static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        P a(deg(f), 0);
        for (auto& c : a) c = rng.below(K.p);
        trim(a);
        if (deg(a) < 1) continue;
        P b = sub(K, powmod(K, a, exp, f), P{1});
        P g = gcd(K, b, f);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            edf(K, g, d, rng, out);
            edf(K, divmod(K, f, g).first, d, rng, out);
            return;
        }
    }
}

// Monic irreducible factors with multiplicities.
inline std::vector<std::pair<P, int>> factor(const FpField& K, P f, uint64_t seed = 1) {
    std::vector<std::pair<P, int>> out;
    trim(f);
    if (deg(f) < 1) return out;
    Rng rng(mix64(seed ^ 0xfac70eu));
    P sf = monic(K, squarefree_part(K, f));
    for (auto& [prod, d] : ddf(K, sf)) {
        std::vector<P> irr;
        edf(K, prod, d, rng, irr);
        for (P& h : irr) {
            int mult = 0;
            for (;;) {
                auto [q, r] = divmod(K, f, h);
                if (!r.empty()) break;
                f = q;
                ++mult;
            }
            out.emplace_back(std::move(h), mult);
        }
    }
    return out;
}

inline bool is_irreducible(const FpField& K, const P& f) {
    int d = deg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    // x^{p^d} == x mod f, and x^{p^{d/l}} != x for prime l | d
    P xq = powmod(K, x_poly(), int_pow_ui(K.p, static_cast<unsigned long>(d)), f);
    if (!sub(K, xq, x_poly()).empty()) return false;
    for (int l = 2; l <= d; ++l) {
        if (d % l) continue;
        bool lp = true;
        for (int m = 2; m * m <= l; ++m)
            if (l % m == 0) lp = false;
        if (!lp) continue;
        P xe = powmod(K, x_poly(), int_pow_ui(K.p, static_cast<unsigned long>(d / l)), f);
        if (deg(gcd(K, sub(K, xe, x_poly()), f)) > 0) return false;
    }
    return true;
}

inline P find_irreducible(const FpField& K, int d, uint64_t seed = 7) {
    Rng rng(mix64(seed * 0x9e3779b9u + static_cast<uint64_t>(d)));
    for (;;) {
        P f(d + 1, 0);
        f[d] = 1;
        for (int i = 0; i < d; ++i) f[i] = rng.below(K.p);
        if (is_irreducible(K, f)) return f;
    }
}

} // namespace fpx
} // namespace injekt
