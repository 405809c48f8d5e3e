#pragma once

#include <optional>
#include <vector>

#include "injekt/fields.hpp"

namespace injekt {

// Dense row-major matrix over a field object F.
template <class F>
struct Mat {
    using El = typename F::Element;
    size_t rows = 0, cols = 0;
    std::vector<El> a;

    Mat() = default;
    Mat(size_t r, size_t c, const F& fld) : rows(r), cols(c), a(r * c, fld.zero()) {}
    El& at(size_t i, size_t j) { return a[i * cols + j]; }
    const El& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

using MatQ = Mat<RatField>;

// Exact rank over Q via fraction-free (Bareiss) elimination on a
// denominator-cleared integer copy.
size_t rank_rational(const MatQ& m);

// Rank over an arbitrary field by ordinary Gaussian elimination.
template <class F>
size_t rank_field(const F& fld, Mat<F> m) {
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        size_t piv = rank;
        while (piv < m.rows && fld.is_zero(m.at(piv, col))) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        auto pinv = fld.inv(m.at(rank, col));
        for (size_t i = rank + 1; i < m.rows; ++i) {
            if (fld.is_zero(m.at(i, col))) continue;
            auto f = fld.mul(m.at(i, col), pinv);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = fld.sub(m.at(i, j), fld.mul(f, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

// Basis of the right kernel {x : m x = 0}, as column vectors.
template <class F>
std::vector<std::vector<typename F::Element>> nullspace(const F& fld, Mat<F> m) {
    using El = typename F::Element;
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        size_t piv = rank;
        while (piv < m.rows && fld.is_zero(m.at(piv, col))) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        auto pinv = fld.inv(m.at(rank, col));
        for (size_t j = col; j < m.cols; ++j) m.at(rank, j) = fld.mul(m.at(rank, j), pinv);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == rank || fld.is_zero(m.at(i, col))) continue;
            auto f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = fld.sub(m.at(i, j), fld.mul(f, m.at(rank, j)));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<El>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<El> v(m.cols, fld.zero());
        v[free] = fld.one();
        for (size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = fld.neg(m.at(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b, if any.
template <class F>
std::optional<std::vector<typename F::Element>> solve(const F& fld, Mat<F> m,
                                                      std::vector<typename F::Element> b) {
    using El = typename F::Element;
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        size_t piv = rank;
        while (piv < m.rows && fld.is_zero(m.at(piv, col))) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank) {
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
            std::swap(b[piv], b[rank]);
        }
        auto pinv = fld.inv(m.at(rank, col));
        for (size_t j = col; j < m.cols; ++j) m.at(rank, j) = fld.mul(m.at(rank, j), pinv);
        b[rank] = fld.mul(b[rank], pinv);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == rank || fld.is_zero(m.at(i, col))) continue;
            auto f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = fld.sub(m.at(i, j), fld.mul(f, m.at(rank, j)));
            b[i] = fld.sub(b[i], fld.mul(f, b[rank]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (size_t i = rank; i < m.rows; ++i)
        if (!fld.is_zero(b[i])) return std::nullopt;
    std::vector<El> x(m.cols, fld.zero());
    for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return x;
}

// rank() dispatch: Bareiss over Q, Gaussian elimination elsewhere.
inline size_t rank(const RatField&, const MatQ& m) { return rank_rational(m); }
template <class F>
size_t rank(const F& fld, const Mat<F>& m) {
    return rank_field(fld, m);
}

} // namespace injekt
