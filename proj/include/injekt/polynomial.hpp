#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "injekt/fields.hpp"

namespace injekt {

// Exponent vector with one integer block per projective factor (a single
// block for weighted spaces).
struct ExpVec {
    std::vector<std::vector<int32_t>> blocks;

    bool operator==(const ExpVec&) const = default;
    long block_degree(size_t b) const {
        long s = 0;
        for (int32_t e : blocks[b]) s += e;
        return s;
    }
};

// Graded lexicographic within each block, blocks in declaration order.
// This is the serialization order of terms.
struct ExpCmp {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        for (size_t i = 0; i < a.blocks.size(); ++i) {
            long da = a.block_degree(i), db = b.block_degree(i);
            if (da != db) return da < db;
            if (a.blocks[i] != b.blocks[i]) return a.blocks[i] < b.blocks[i];
        }
        return false;
    }
};

// Sparse multivariate polynomial with block-structured exponents. No zero
// coefficients are stored; all exponent vectors share the block shape.
template <class F>
struct Poly {
    using El = typename F::Element;
    std::vector<int> block_sizes;
    std::map<ExpVec, El, ExpCmp> terms;

    explicit Poly(std::vector<int> sizes = {}) : block_sizes(std::move(sizes)) {}

    bool is_zero() const { return terms.empty(); }

    void check_shape(const ExpVec& e) const {
        if (e.blocks.size() != block_sizes.size()) throw ShapeMismatch("exponent block count mismatch");
        for (size_t i = 0; i < e.blocks.size(); ++i)
            if (static_cast<int>(e.blocks[i].size()) != block_sizes[i])
                throw ShapeMismatch("exponent block size mismatch");
    }

    void add_term(const F& fld, const ExpVec& e, const El& c) {
        check_shape(e);
        for (const auto& blk : e.blocks)
            for (int32_t x : blk)
                if (x < 0) throw Error("negative exponent");
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (!fld.is_zero(c)) terms.emplace(e, c);
        } else {
            it->second = fld.add(it->second, c);
            if (fld.is_zero(it->second)) terms.erase(it);
        }
    }
};

using PolyQ = Poly<RatField>;

// Monomial helper: exponent vector with single entries set.
inline ExpVec exp_of(const std::vector<int>& block_sizes,
                     const std::vector<std::pair<std::pair<int, int>, int>>& entries) {
    ExpVec e;
    for (int s : block_sizes) e.blocks.emplace_back(s, 0);
    for (auto& [pos, val] : entries) e.blocks[pos.first][pos.second] = val;
    return e;
}

template <class F>
typename F::Element poly_eval(const F& fld, const Poly<F>& p,
                              const std::vector<std::vector<typename F::Element>>& point) {
    if (point.size() != p.block_sizes.size()) throw ShapeMismatch("evaluation point block count mismatch");
    for (size_t b = 0; b < point.size(); ++b)
        if (static_cast<int>(point[b].size()) != p.block_sizes[b])
            throw ShapeMismatch("evaluation point block size mismatch");
    auto acc = fld.zero();
    for (const auto& [e, c] : p.terms) {
        auto t = c;
        for (size_t b = 0; b < e.blocks.size(); ++b)
            for (size_t j = 0; j < e.blocks[b].size(); ++j)
                for (int32_t k = 0; k < e.blocks[b][j]; ++k) t = fld.mul(t, point[b][j]);
        acc = fld.add(acc, t);
    }
    return acc;
}

template <class F>
Poly<F> poly_mul(const F& fld, const Poly<F>& p, const Poly<F>& q) {
    if (p.block_sizes != q.block_sizes) throw ShapeMismatch("polynomial block shape mismatch");
    Poly<F> r(p.block_sizes);
    for (const auto& [ea, ca] : p.terms)
        for (const auto& [eb, cb] : q.terms) {
            ExpVec e = ea;
            for (size_t b = 0; b < e.blocks.size(); ++b)
                for (size_t j = 0; j < e.blocks[b].size(); ++j) e.blocks[b][j] += eb.blocks[b][j];
            r.add_term(fld, e, fld.mul(ca, cb));
        }
    return r;
}

template <class F>
Poly<F> poly_add(const F& fld, const Poly<F>& p, const Poly<F>& q) {
    if (p.block_sizes != q.block_sizes) throw ShapeMismatch("polynomial block shape mismatch");
    Poly<F> r = p;
    for (const auto& [e, c] : q.terms) r.add_term(fld, e, c);
    return r;
}

inline Poly<FpField> reduce_mod(const PolyQ& p, const FpField& fp) {
    Poly<FpField> r(p.block_sizes);
    for (const auto& [e, c] : p.terms) r.add_term(fp, e, fp.from_rat(c));
    return r;
}

inline std::string exp_to_string(const ExpVec& e) {
    std::ostringstream os;
    os << "[";
    for (size_t b = 0; b < e.blocks.size(); ++b) {
        os << (b ? ";" : "");
        for (size_t j = 0; j < e.blocks[b].size(); ++j) os << (j ? "," : "") << e.blocks[b][j];
    }
    os << "]";
    return os.str();
}

} // namespace injekt
