#pragma once

#include <optional>
#include <string>
#include <vector>

#include "injekt/polynomial.hpp"
#include "injekt/rng.hpp"

namespace injekt {

// A product of projective spaces P^{n_1} x ... x P^{n_r}, or a weighted
// projective space P(q_0,...,q_n).
struct SpaceDescriptor {
    enum class Kind { Product, Weighted };
    Kind kind;
    std::vector<long> data; // dims n_i, or weights q_i

    static SpaceDescriptor product(std::vector<long> dims);
    static SpaceDescriptor weighted(std::vector<long> weights);

    size_t block_count() const { return kind == Kind::Product ? data.size() : 1; }
    int block_size(size_t b) const {
        return kind == Kind::Product ? static_cast<int>(data[b]) + 1 : static_cast<int>(data.size());
    }
    std::vector<int> block_sizes() const {
        std::vector<int> s;
        for (size_t b = 0; b < block_count(); ++b) s.push_back(block_size(b));
        return s;
    }
    long dim() const;
    std::string to_string() const;
    bool operator==(const SpaceDescriptor&) const = default;
};

// Point with one coordinate vector per block; no block is identically zero.
using PPoint = std::vector<std::vector<Rat>>;

// Per-coordinate zero pattern; true = coordinate forced to exactly 0.
using Mask = std::vector<std::vector<bool>>;

void check_point_shape(const SpaceDescriptor& space, const PPoint& x);

// Exact point equality in the space: blockwise proportionality for products;
// existence of t with y_i = t^{q_i} x_i for weighted spaces, decided by the
// Bezout criterion (no root extraction).
bool equivalent_points(const SpaceDescriptor& space, const PPoint& x, const PPoint& y);

// Ordinary projective equality of coordinate tuples (used for images in P^s).
bool proportional(const std::vector<Rat>& x, const std::vector<Rat>& y);

// Deterministic-under-seed rational point of height <= h; masked coordinates
// are exactly zero. Throws if the mask zeroes out a whole block.
PPoint sample_point(const SpaceDescriptor& space, long height, const Mask* mask, Rng& rng);

// Canonical strata used by the verification samplers: single-coordinate and
// zero-prefix patterns per block (V(x_0) vs D(x_0) style case splits).
std::vector<Mask> strata_masks(const SpaceDescriptor& space);

// Common multidegree of all terms: a per-factor degree vector for products,
// a single weighted degree for weighted spaces.
struct Multidegree {
    bool weighted = false;
    std::vector<long> d;
    bool operator==(const Multidegree&) const = default;
    std::string to_string() const;
};

struct NotHomogeneous : Error {
    using Error::Error;
};

Multidegree multidegree(const PolyQ& p, const SpaceDescriptor& space);

// t-rescaling of a point: one block scaled by t (products), or the weighted
// action x_i -> t^{q_i} x_i. Used by equivalence/property tests.
PPoint rescale(const SpaceDescriptor& space, const PPoint& x, const Rat& t, size_t block);

Rat rat_pow(const Rat& a, long e);

} // namespace injekt
