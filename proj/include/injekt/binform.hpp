#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "injekt/linalg.hpp"

namespace injekt {

// A binary form of degree d in (s0, s1) is a coefficient vector of length
// d+1; index i holds the coefficient of s0^(d-i) s1^i. Dehomogenizing at
// s0 = 1 reads the same vector as a little-endian univariate polynomial in
// x = s1/s0, which is how the Euclidean routines below treat it.
template <class F>
using BF = std::vector<typename F::Element>;

template <class F>
int bf_deg(const BF<F>& f) {
    return static_cast<int>(f.size()) - 1;
}

template <class F>
bool bf_is_zero(const F& fld, const BF<F>& f) {
    for (const auto& c : f)
        if (!fld.is_zero(c)) return false;
    return true;
}

template <class F>
BF<F> bf_zero(const F& fld, int deg) {
    return BF<F>(deg + 1, fld.zero());
}

template <class F>
BF<F> bf_mul(const F& fld, const BF<F>& f, const BF<F>& g) {
    if (f.empty() || g.empty()) return {};
    BF<F> r(f.size() + g.size() - 1, fld.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (fld.is_zero(f[i])) continue;
        for (size_t j = 0; j < g.size(); ++j)
            if (!fld.is_zero(g[j])) r[i + j] = fld.add(r[i + j], fld.mul(f[i], g[j]));
    }
    return r;
}

template <class F>
BF<F> bf_scale(const F& fld, const BF<F>& f, const typename F::Element& c) {
    BF<F> r = f;
    for (auto& x : r) x = fld.mul(x, c);
    return r;
}

template <class F>
BF<F> bf_add(const F& fld, const BF<F>& f, const BF<F>& g) {
    BF<F> r = f;
    for (size_t i = 0; i < g.size(); ++i) r[i] = fld.add(r[i], g[i]);
    return r;
}

template <class F>
BF<F> bf_sub(const F& fld, const BF<F>& f, const BF<F>& g) {
    BF<F> r = f;
    for (size_t i = 0; i < g.size(); ++i) r[i] = fld.sub(r[i], g[i]);
    return r;
}

template <class F>
typename F::Element bf_eval(const F& fld, const BF<F>& f, const typename F::Element& s0,
                            const typename F::Element& s1) {
    // Horner in s1/s0 would divide; evaluate with running powers instead.
    int d = bf_deg<F>(f);
    auto acc = fld.zero();
    auto p1 = fld.one();
    std::vector<typename F::Element> pow1(d + 1);
    for (int i = 0; i <= d; ++i) {
        pow1[i] = p1;
        p1 = fld.mul(p1, s1);
    }
    auto p0 = fld.one();
    for (int i = d; i >= 0; --i) {
        acc = fld.add(acc, fld.mul(f[i], fld.mul(p0, pow1[i])));
        p0 = fld.mul(p0, s0);
    }
    return acc;
}

// (p s0 + q s1)^d
template <class F>
BF<F> bf_linear_power(const F& fld, const typename F::Element& p, const typename F::Element& q, int d) {
    BF<F> r{fld.one()};
    BF<F> lin{p, q};
    for (int i = 0; i < d; ++i) r = bf_mul(fld, r, lin);
    return r;
}

template <class F>
BF<F> bf_d_s0(const F& fld, const BF<F>& f) {
    int d = bf_deg<F>(f);
    if (d == 0) return BF<F>{fld.zero()};
    BF<F> r(d, fld.zero());
    for (int i = 0; i < d; ++i) r[i] = fld.mul(f[i], fld.from_long(d - i));
    return r;
}

template <class F>
BF<F> bf_d_s1(const F& fld, const BF<F>& f) {
    int d = bf_deg<F>(f);
    if (d == 0) return BF<F>{fld.zero()};
    BF<F> r(d, fld.zero());
    for (int i = 0; i < d; ++i) r[i] = fld.mul(f[i + 1], fld.from_long(i + 1));
    return r;
}

// ---- univariate helpers on little-endian vectors (trimmed) ----

template <class F>
void up_trim(const F& fld, BF<F>& f) {
    while (!f.empty() && fld.is_zero(f.back())) f.pop_back();
}

// f mod g and quotient, g nonzero with invertible leading coefficient.
template <class F>
std::pair<BF<F>, BF<F>> up_divmod(const F& fld, BF<F> f, const BF<F>& g) {
    up_trim(fld, f);
    BF<F> q;
    if (f.size() >= g.size()) q.assign(f.size() - g.size() + 1, fld.zero());
    auto li = fld.inv(g.back());
    while (f.size() >= g.size()) {
        size_t sh = f.size() - g.size();
        auto c = fld.mul(f.back(), li);
        q[sh] = c;
        for (size_t j = 0; j < g.size(); ++j) f[sh + j] = fld.sub(f[sh + j], fld.mul(c, g[j]));
        up_trim(fld, f);
    }
    return {q, f};
}

template <class F>
BF<F> up_gcd_monic(const F& fld, BF<F> f, BF<F> g) {
    up_trim(fld, f);
    up_trim(fld, g);
    while (!g.empty()) {
        auto r = up_divmod(fld, f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    if (f.empty()) return f;
    auto li = fld.inv(f.back());
    for (auto& c : f) c = fld.mul(c, li);
    return f;
}

// ---- gcd, divisibility, squarefreeness of binary forms ----

// f = s0^a * s1^b * core with core nonvanishing at [1:0] and [0:1].
template <class F>
void bf_strip(const F& fld, const BF<F>& f, int& s0_pow, int& s1_pow, BF<F>& core) {
    size_t lo = 0, hi = f.size();
    while (lo < hi && fld.is_zero(f[lo])) ++lo;
    while (hi > lo && fld.is_zero(f[hi - 1])) --hi;
    s1_pow = static_cast<int>(lo);
    s0_pow = static_cast<int>(f.size() - hi);
    core.assign(f.begin() + lo, f.begin() + hi);
}

// Monic gcd of two nonzero binary forms (returned as a form of its own degree).
template <class F>
BF<F> bf_gcd(const F& fld, const BF<F>& f, const BF<F>& g) {
    int fa, fb, ga, gb;
    BF<F> fc, gc;
    bf_strip(fld, f, fa, fb, fc);
    bf_strip(fld, g, ga, gb, gc);
    if (fc.empty()) { // f == 0
        BF<F> r = g;
        return r;
    }
    if (gc.empty()) return f;
    BF<F> core = up_gcd_monic(fld, fc, gc);
    int a = std::min(fa, ga), b = std::min(fb, gb);
    BF<F> r(b, fld.zero());
    r.insert(r.end(), core.begin(), core.end());
    r.insert(r.end(), a, fld.zero());
    return r;
}

// Exact division f / g; throws if g does not divide f.
template <class F>
BF<F> bf_divexact(const F& fld, const BF<F>& f, const BF<F>& g) {
    if (bf_is_zero(fld, g)) throw Error("division of binary form by zero");
    if (bf_is_zero(fld, f)) {
        if (f.size() < g.size()) throw Error("binary form division: degree underflow");
        return bf_zero(fld, bf_deg<F>(f) - bf_deg<F>(g));
    }
    int fa, fb, ga, gb;
    BF<F> fc, gc;
    bf_strip(fld, f, fa, fb, fc);
    bf_strip(fld, g, ga, gb, gc);
    if (ga > fa || gb > fb) throw Error("binary form division is not exact (monomial part)");
    auto [q, rem] = up_divmod(fld, fc, gc);
    if (!rem.empty()) throw Error("binary form division is not exact");
    BF<F> r(fb - gb, fld.zero());
    r.insert(r.end(), q.begin(), q.end());
    r.insert(r.end(), fa - ga, fld.zero());
    return r;
}

template <class F>
bool bf_divides(const F& fld, const BF<F>& g, const BF<F>& f) {
    if (bf_is_zero(fld, f)) return true;
    if (bf_is_zero(fld, g)) return false;
    int fa, fb, ga, gb;
    BF<F> fc, gc;
    bf_strip(fld, f, fa, fb, fc);
    bf_strip(fld, g, ga, gb, gc);
    if (ga > fa || gb > fb || gc.size() > fc.size()) return false;
    return up_divmod(fld, fc, gc).second.empty();
}

// Squarefree over the algebraic closure: gcd of the two partials is constant.
// Assumes characteristic 0 or > deg f.
template <class F>
bool bf_squarefree(const F& fld, const BF<F>& f) {
    if (bf_is_zero(fld, f)) return false;
    if (bf_deg<F>(f) <= 1) return true;
    BF<F> g = bf_gcd(fld, bf_d_s0(fld, f), bf_d_s1(fld, f));
    return bf_deg<F>(g) == 0;
}

// Sylvester resultant; rows of f (deg g of them) above rows of g.
template <class F>
typename F::Element bf_resultant(const F& fld, const BF<F>& f, const BF<F>& g) {
    int m = bf_deg<F>(f), n = bf_deg<F>(g);
    if (m == 0 && n == 0) return fld.one();
    size_t size = static_cast<size_t>(m + n);
    Mat<F> syl(size, size, fld);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) syl.at(r, r + j) = f[j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) syl.at(n + r, r + j) = g[j];
    // determinant by Gaussian elimination with exact field division
    auto det = fld.one();
    bool negate = false;
    for (size_t col = 0; col < size; ++col) {
        size_t piv = col;
        while (piv < size && fld.is_zero(syl.at(piv, col))) ++piv;
        if (piv == size) return fld.zero();
        if (piv != col) {
            negate = !negate;
            for (size_t j = col; j < size; ++j) std::swap(syl.at(piv, j), syl.at(col, j));
        }
        det = fld.mul(det, syl.at(col, col));
        auto pinv = fld.inv(syl.at(col, col));
        for (size_t i = col + 1; i < size; ++i) {
            if (fld.is_zero(syl.at(i, col))) continue;
            auto fac = fld.mul(syl.at(i, col), pinv);
            for (size_t j = col; j < size; ++j)
                syl.at(i, j) = fld.sub(syl.at(i, j), fld.mul(fac, syl.at(col, j)));
        }
    }
    return negate ? fld.neg(det) : det;
}

// Discriminant-style certificate for a binary quadratic q = a s0^2 + b s0 s1 + c s1^2.
template <class F>
typename F::Element quadratic_disc(const F& fld, const BF<F>& q) {
    return fld.sub(fld.mul(q[1], q[1]), fld.mul(fld.from_long(4), fld.mul(q[0], q[2])));
}

} // namespace injekt
