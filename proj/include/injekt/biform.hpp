#pragma once

#include "injekt/binform.hpp"

namespace injekt {

// Bihomogeneous form in two binary variable pairs (s, t): c[j] is the
// binary form in s multiplying t0^(dt-j) t1^j.
template <class F>
struct BiF {
    int ds = 0, dt = 0;
    std::vector<BF<F>> c; // size dt+1, each of size ds+1

    static BiF zero(const F& fld, int ds_, int dt_) {
        BiF b;
        b.ds = ds_;
        b.dt = dt_;
        b.c.assign(dt_ + 1, bf_zero(fld, ds_));
        return b;
    }
};

template <class F>
bool bif_is_zero(const F& fld, const BiF<F>& g) {
    for (const auto& cj : g.c)
        if (!bf_is_zero(fld, cj)) return false;
    return true;
}

// G(t, s) from G(s, t)
template <class F>
BiF<F> bif_swap(const F& fld, const BiF<F>& g) {
    BiF<F> h = BiF<F>::zero(fld, g.dt, g.ds);
    for (int j = 0; j <= g.dt; ++j)
        for (int i = 0; i <= g.ds; ++i) h.c[i][j] = g.c[j][i];
    return h;
}

template <class F>
BiF<F> bif_sub(const F& fld, const BiF<F>& a, const BiF<F>& b) {
    BiF<F> r = a;
    for (int j = 0; j <= a.dt; ++j) r.c[j] = bf_sub(fld, a.c[j], b.c[j]);
    return r;
}

// a_s(s) * b_t(t) as a biform
template <class F>
BiF<F> bif_outer(const F& fld, const BF<F>& as, const BF<F>& bt) {
    BiF<F> r = BiF<F>::zero(fld, bf_deg<F>(as), bf_deg<F>(bt));
    for (int j = 0; j <= r.dt; ++j) r.c[j] = bf_scale(fld, as, bt[j]);
    return r;
}

// Specialize s to a point; the result is a binary form in t.
template <class F>
BF<F> bif_spec_s(const F& fld, const BiF<F>& g, const typename F::Element& s0,
                 const typename F::Element& s1) {
    BF<F> r(g.dt + 1, fld.zero());
    for (int j = 0; j <= g.dt; ++j) r[j] = bf_eval(fld, g.c[j], s0, s1);
    return r;
}

// Same with the coefficients lifted into an extension of the base prime field.
inline BF<FqField> bif_spec_s_ext(const FqField& ext, const BiF<FpField>& g,
                                  const FqField::Element& s0, const FqField::Element& s1) {
    BF<FqField> r(g.dt + 1, ext.zero());
    for (int j = 0; j <= g.dt; ++j) {
        // evaluate the F_p form at the extension point
        int d = g.ds;
        FqField::Element acc = ext.zero();
        std::vector<FqField::Element> pow1(d + 1);
        FqField::Element run = ext.one();
        for (int i = 0; i <= d; ++i) {
            pow1[i] = run;
            run = ext.mul(run, s1);
        }
        FqField::Element p0 = ext.one();
        for (int i = d; i >= 0; --i) {
            FqField::Element coeff = ext.zero();
            coeff[0] = g.c[j][i];
            acc = ext.add(acc, ext.mul(coeff, ext.mul(p0, pow1[i])));
            p0 = ext.mul(p0, s0);
        }
        r[j] = acc;
    }
    return r;
}

// Exact division by the diagonal form s0 t1 - s1 t0; returns false when the
// division is not exact. Uses the coefficient recurrence
// G_j = s0 H_{j-1} - s1 H_j (divisibility by s1 checked at every step).
template <class F>
bool bif_divide_diagonal(const F& fld, const BiF<F>& g, BiF<F>& out) {
    if (g.ds < 1 || g.dt < 1) return false;
    BiF<F> h = BiF<F>::zero(fld, g.ds - 1, g.dt - 1);
    // s1 * H_j = s0 * H_{j-1} - G_j, from j = 0 upward (H_{-1} = 0)
    auto mul_s0 = [&](const BF<F>& f) { // degree +1, multiply by s0
        BF<F> r(f.size() + 1, fld.zero());
        for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
        return r;
    };
    auto div_s1 = [&](const BF<F>& f, BF<F>& q) { // f = s1 * q
        if (!fld.is_zero(f[0])) return false;
        q.assign(f.begin() + 1, f.end());
        return true;
    };
    BF<F> prev = bf_zero(fld, g.ds); // s0 * H_{-1}, padded to degree ds
    for (int j = 0; j < g.dt; ++j) {
        BF<F> rhs = bf_sub(fld, prev, g.c[j]); // s1 * H_j = s0 H_{j-1} - G_j
        BF<F> hj;
        if (!div_s1(rhs, hj)) return false;
        h.c[j] = hj;
        prev = mul_s0(hj);
    }
    // final consistency: G_dt = s0 * H_{dt-1}
    BF<F> check = bf_sub(fld, prev, g.c[g.dt]);
    if (!bf_is_zero(fld, check)) return false;
    out = std::move(h);
    return true;
}

// Strip every diagonal factor.
template <class F>
BiF<F> bif_strip_diagonal(const F& fld, BiF<F> g) {
    BiF<F> quo;
    while (g.ds >= 1 && g.dt >= 1 && bif_divide_diagonal(fld, g, quo)) g = quo;
    return g;
}

// Resultant with respect to t as a binary form in s of degree
// ds_a * dt_b + ds_b * dt_a. The Sylvester determinant is computed
// fraction-free (Bareiss) on dehomogenized entries and rehomogenized, the
// resultant being homogeneous of known degree.
template <class F>
BF<F> bif_resultant_t(const F& fld, const BiF<F>& a, const BiF<F>& b) {
    int m = a.dt, n = b.dt;
    size_t size = static_cast<size_t>(m + n);
    int expected_deg = a.ds * n + b.ds * m;
    if (size == 0) return BF<F>{fld.one()};
    using UP = BF<F>; // trimmed little-endian univariate polynomials
    auto trim_of = [&](const BF<F>& f) {
        UP u = f;
        up_trim(fld, u);
        return u;
    };
    auto sub_pad = [&](const UP& f, const UP& g) {
        UP r = f;
        r.resize(std::max(f.size(), g.size()), fld.zero());
        for (size_t i = 0; i < g.size(); ++i) r[i] = fld.sub(r[i], g[i]);
        up_trim(fld, r);
        return r;
    };
    std::vector<std::vector<UP>> syl(size, std::vector<UP>(size));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) syl[r][r + j] = trim_of(a.c[j]);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) syl[n + r][r + j] = trim_of(b.c[j]);
    bool negate = false;
    UP prev{fld.one()};
    for (size_t k = 0; k + 1 < size; ++k) {
        size_t piv = k;
        while (piv < size && syl[piv][k].empty()) ++piv;
        if (piv == size) return bf_zero(fld, expected_deg);
        if (piv != k) {
            std::swap(syl[piv], syl[k]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < size; ++i) {
            for (size_t j = k + 1; j < size; ++j) {
                UP num = sub_pad(bf_mul(fld, syl[k][k], syl[i][j]), bf_mul(fld, syl[i][k], syl[k][j]));
                if (num.empty()) {
                    syl[i][j].clear();
                } else {
                    auto [q, rem] = up_divmod(fld, num, prev);
                    if (!rem.empty()) throw Error("fraction-free division not exact");
                    syl[i][j] = std::move(q);
                }
            }
            syl[i][k].clear();
        }
        prev = syl[k][k];
    }
    UP det = syl[size - 1][size - 1];
    if (negate)
        for (auto& c : det) c = fld.neg(c);
    // rehomogenize to the known degree: the dehomogenization dropped
    // s0-powers only
    BF<F> out = bf_zero(fld, expected_deg);
    for (size_t i = 0; i < det.size(); ++i) out[i] = det[i];
    return out;
}

} // namespace injekt
