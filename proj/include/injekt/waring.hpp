#pragma once

#include "injekt/binform.hpp"

namespace injekt {

// ∂_{s0}^a ∂_{s1}^b f
template <class F>
BF<F> bf_deriv_ab(const F& fld, BF<F> f, int a, int b) {
    for (int i = 0; i < a; ++i) f = bf_d_s0(fld, f);
    for (int i = 0; i < b; ++i) f = bf_d_s1(fld, f);
    return f;
}

// Matrix of g -> g(d/ds0, d/ds1) f on the monomial basis of degree-r forms g.
// Its kernel is the degree-r piece of the apolar ideal of f.
template <class F>
Mat<F> catalecticant(const F& fld, const BF<F>& f, int r) {
    int d = bf_deg<F>(f);
    Mat<F> m(d - r + 1, r + 1, fld);
    for (int j = 0; j <= r; ++j) {
        BF<F> col = bf_deriv_ab(fld, f, r - j, j);
        for (int i = 0; i <= d - r; ++i) m.at(i, j) = col[i];
    }
    return m;
}

// Waring rank of a nonzero binary form over the algebraic closure, by the
// classical apolarity dichotomy: with r1 the least degree of a nonzero
// apolar form g, the rank is r1 when g is squarefree and d - r1 + 2
// otherwise. A two-dimensional apolar piece only occurs when d + 2 = 2*r1,
// where both branches coincide. Needs characteristic 0 or > d.
template <class F>
int waring_rank(const F& fld, const BF<F>& f);

// Public entry point with the supported degree range pinned.
template <class F>
int binary_form_rank(const F& fld, const BF<F>& f) {
    if (bf_deg<F>(f) > 8) throw Error("binary_form_rank supports degree <= 8 only");
    return waring_rank(fld, f);
}

template <class F>
int waring_rank(const F& fld, const BF<F>& f) {
    int d = bf_deg<F>(f);
    if (bf_is_zero(fld, f)) throw Error("waring_rank of the zero form");
    if (d == 0) return 1;
    for (int r = 1; r <= d; ++r) {
        auto kernel = nullspace(fld, catalecticant(fld, f, r));
        if (kernel.empty()) continue;
        if (kernel.size() >= 2) return r;
        BF<F> g(kernel[0].begin(), kernel[0].end());
        return bf_squarefree(fld, g) ? r : d + 2 - r;
    }
    throw Error("waring_rank: no apolar form found"); // unreachable for f != 0
}

} // namespace injekt
