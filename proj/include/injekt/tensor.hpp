#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "injekt/linalg.hpp"

namespace injekt {

// Element of C^2 (x) C^2 (x) C^{m+1}, stored as m+1 exact 2x2 slices;
// slices[c][a][b] is the coefficient of e_a (x) e_b (x) e_c.
struct Tensor222n {
    int m = 0;
    std::vector<std::array<std::array<Rat, 2>, 2>> slices;

    static Tensor222n zero(int m) {
        Tensor222n t;
        t.m = m;
        t.slices.assign(m + 1, {{{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}});
        return t;
    }
    static Tensor222n rank1(const std::array<Rat, 2>& u, const std::array<Rat, 2>& v,
                            const std::vector<Rat>& w) {
        Tensor222n t = zero(static_cast<int>(w.size()) - 1);
        for (int c = 0; c <= t.m; ++c)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) t.slices[c][a][b] = u[a] * v[b] * w[c];
        return t;
    }
    // basis tensor e_a (x) e_b (x) e_c
    static Tensor222n unit(int m, int a, int b, int c) {
        Tensor222n t = zero(m);
        t.slices[c][a][b] = 1;
        return t;
    }
    void add_scaled(const Tensor222n& other, const Rat& s) {
        for (int c = 0; c <= m; ++c)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) slices[c][a][b] += s * other.slices[c][a][b];
    }
    bool is_zero() const {
        for (const auto& sl : slices)
            for (const auto& row : sl)
                for (const Rat& x : row)
                    if (x != 0) return false;
        return true;
    }
    // coordinates in the basis e_a (x) e_b (x) e_c, index ((a*2)+b)*(m+1)+c
    std::vector<Rat> to_vector() const {
        std::vector<Rat> v;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c <= m; ++c) v.push_back(slices[c][a][b]);
        return v;
    }
    bool operator==(const Tensor222n&) const = default;
};

// Rank of the third-factor flattening: the 4 x (m+1) matrix of vectorized
// slices. Bounds border rank from below.
int flattening_rank(const Tensor222n& t);

enum class RankClass { Zero, RankOne, RankTwo, Border2Rank3, BorderAtLeast3 };

std::string rank_class_name(RankClass c);

struct Rank1Summand {
    std::array<Rat, 2> u, v;
    std::vector<Rat> w;
};

struct RankDecision {
    RankClass cls;
    std::vector<Rank1Summand> summands; // rational witness when available
    bool witness_over_extension = false;
    Rat disc = 0; // certificate for the two-distinct-directions split
};

RankDecision rank_decision(const Tensor222n& t);

// true iff span{p,q} intersects span(ws) nontrivially
bool secant_span_meets_subspace(const Tensor222n& p, const Tensor222n& q,
                                const std::vector<Tensor222n>& ws);

// ---- field-generic core (used by the modular oracles as well) ----

template <class F>
using Slices = std::vector<std::array<std::array<typename F::Element, 2>, 2>>;

inline bool is_square(const RatField&, const Rat& x) {
    if (x < 0) return false;
    return mpz_perfect_square_p(x.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(x.get_den().get_mpz_t());
}
inline bool is_square(const FpField& F, uint64_t x) {
    if (x == 0) return true;
    return F.pow(x, (F.p - 1) / 2) == 1;
}

template <class F>
int flattening_rank_core(const F& fld, const Slices<F>& slices) {
    Mat<F> m(4, slices.size(), fld);
    for (size_t c = 0; c < slices.size(); ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m.at(a * 2 + b, c) = slices[c][a][b];
    return static_cast<int>(rank(fld, m));
}

// Decision over the algebraic closure of F, no root extraction: pencils of
// slices are classified by det(xA + yB) and its discriminant.
// split_rational reports whether the two-directions case splits over F itself.
template <class F>
RankClass rank_class_core(const F& fld, const Slices<F>& slices, typename F::Element* disc_out,
                          bool* split_rational) {
    using El = typename F::Element;
    if (disc_out) *disc_out = fld.zero();
    if (split_rational) *split_rational = true;
    int fr = flattening_rank_core(fld, slices);
    if (fr >= 3) return RankClass::BorderAtLeast3;
    if (fr == 0) return RankClass::Zero;
    auto slice_vec = [&](size_t c) {
        return std::array<El, 4>{slices[c][0][0], slices[c][0][1], slices[c][1][0], slices[c][1][1]};
    };
    auto det2 = [&](const std::array<El, 4>& s) {
        return fld.sub(fld.mul(s[0], s[3]), fld.mul(s[1], s[2]));
    };
    if (fr == 1) {
        size_t c0 = 0;
        while (c0 < slices.size()) {
            auto s = slice_vec(c0);
            bool nz = false;
            for (auto& x : s) nz = nz || !fld.is_zero(x);
            if (nz) break;
            ++c0;
        }
        return fld.is_zero(det2(slice_vec(c0))) ? RankClass::RankOne : RankClass::RankTwo;
    }
    // fr == 2: pick two independent slices A, B
    size_t ia = slices.size(), ib = slices.size();
    for (size_t c = 0; c < slices.size() && ib == slices.size(); ++c) {
        auto s = slice_vec(c);
        bool nz = false;
        for (auto& x : s) nz = nz || !fld.is_zero(x);
        if (!nz) continue;
        if (ia == slices.size()) {
            ia = c;
            continue;
        }
        // independent from slice ia?
        Mat<F> two(2, 4, fld);
        auto sa = slice_vec(ia);
        for (int j = 0; j < 4; ++j) {
            two.at(0, j) = sa[j];
            two.at(1, j) = s[j];
        }
        if (rank(fld, two) == 2) ib = c;
    }
    auto A = slice_vec(ia), B = slice_vec(ib);
    // q(x, y) = det(xA + yB) = q0 x^2 + q1 x y + q2 y^2
    El q0 = det2(A);
    El q2 = det2(B);
    El q1 = fld.sub(fld.add(fld.mul(A[0], B[3]), fld.mul(B[0], A[3])),
                    fld.add(fld.mul(A[1], B[2]), fld.mul(B[1], A[2])));
    if (fld.is_zero(q0) && fld.is_zero(q1) && fld.is_zero(q2)) return RankClass::RankTwo;
    El disc = fld.sub(fld.mul(q1, q1), fld.mul(fld.from_long(4), fld.mul(q0, q2)));
    if (disc_out) *disc_out = disc;
    if (fld.is_zero(disc)) return RankClass::Border2Rank3;
    if (split_rational) *split_rational = is_square(fld, disc);
    return RankClass::RankTwo;
}

} // namespace injekt
