#include "injekt/spaces.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace injekt {

SpaceDescriptor SpaceDescriptor::product(std::vector<long> dims) {
    if (dims.empty()) throw Error("product space needs at least one factor");
    for (long n : dims)
        if (n < 1) throw Error("projective factor dimension must be >= 1");
    return {Kind::Product, std::move(dims)};
}

SpaceDescriptor SpaceDescriptor::weighted(std::vector<long> weights) {
    if (weights.size() < 2) throw Error("weighted space needs at least two weights");
    for (long q : weights)
        if (q < 1) throw Error("weights must be positive");
    return {Kind::Weighted, std::move(weights)};
}

long SpaceDescriptor::dim() const {
    if (kind == Kind::Product) return std::accumulate(data.begin(), data.end(), 0L);
    return static_cast<long>(data.size()) - 1;
}

std::string SpaceDescriptor::to_string() const {
    std::ostringstream os;
    if (kind == Kind::Product) {
        for (size_t i = 0; i < data.size(); ++i) os << (i ? " x " : "") << "P^" << data[i];
    } else {
        os << "P(";
        for (size_t i = 0; i < data.size(); ++i) os << (i ? "," : "") << data[i];
        os << ")";
    }
    return os.str();
}

std::string Multidegree::to_string() const {
    std::ostringstream os;
    if (weighted) {
        os << d[0];
    } else {
        os << "(";
        for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
        os << ")";
    }
    return os.str();
}

void check_point_shape(const SpaceDescriptor& space, const PPoint& x) {
    if (x.size() != space.block_count()) throw ShapeMismatch("point block count mismatch");
    for (size_t b = 0; b < x.size(); ++b) {
        if (static_cast<int>(x[b].size()) != space.block_size(b))
            throw ShapeMismatch("point block size mismatch");
        bool nonzero = false;
        for (const Rat& c : x[b]) nonzero = nonzero || c != 0;
        if (!nonzero) throw Error("point block is identically zero");
    }
}

bool proportional(const std::vector<Rat>& x, const std::vector<Rat>& y) {
    if (x.size() != y.size()) throw ShapeMismatch("proportionality on different lengths");
    size_t pivot = x.size();
    for (size_t i = 0; i < x.size(); ++i) {
        if ((x[i] == 0) != (y[i] == 0)) return false;
        if (pivot == x.size() && x[i] != 0) pivot = i;
    }
    if (pivot == x.size()) return true; // both zero vectors
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] * y[pivot] != y[i] * x[pivot]) return false;
    return true;
}

Rat rat_pow(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    Rat base = a;
    if (e < 0) {
        if (a == 0) throw Error("0^negative");
        base = 1 / a;
        e = -e;
    }
    Rat r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

namespace {

// g = gcd of q over `idx`, with Bezout coefficients a: sum a_i q_i = g.
long bezout_over(const std::vector<long>& q, const std::vector<size_t>& idx, std::vector<long>& a) {
    a.assign(idx.size(), 0);
    long g = q[idx[0]];
    a[0] = 1;
    for (size_t k = 1; k < idx.size(); ++k) {
        long x = g, y = q[idx[k]];
        // extended gcd(x, y)
        long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (y != 0) {
            long quo = x / y;
            long tmp = x - quo * y;
            x = y;
            y = tmp;
            tmp = s0 - quo * s1;
            s0 = s1;
            s1 = tmp;
            tmp = t0 - quo * t1;
            t0 = t1;
            t1 = tmp;
        }
        // x = s0 * g_old + t0 * q[idx[k]]
        for (size_t j = 0; j < k; ++j) a[j] *= s0;
        a[k] = t0;
        g = x;
    }
    return g;
}

} // namespace

bool equivalent_points(const SpaceDescriptor& space, const PPoint& x, const PPoint& y) {
    check_point_shape(space, x);
    check_point_shape(space, y);
    if (space.kind == SpaceDescriptor::Kind::Product) {
        for (size_t b = 0; b < x.size(); ++b)
            if (!proportional(x[b], y[b])) return false;
        return true;
    }
    // weighted: supports must agree, then the Bezout criterion decides
    // whether some t has y_i = t^{q_i} x_i for every support index.
    const std::vector<long>& q = space.data;
    const auto& xv = x[0];
    const auto& yv = y[0];
    std::vector<size_t> supp;
    for (size_t i = 0; i < xv.size(); ++i) {
        if ((xv[i] == 0) != (yv[i] == 0)) return false;
        if (xv[i] != 0) supp.push_back(i);
    }
    if (supp.empty()) return true; // unreachable for valid points
    std::vector<long> a;
    long g = bezout_over(q, supp, a);
    Rat s(1);
    for (size_t k = 0; k < supp.size(); ++k) s *= rat_pow(yv[supp[k]] / xv[supp[k]], a[k]);
    for (size_t k = 0; k < supp.size(); ++k) {
        Rat ratio = yv[supp[k]] / xv[supp[k]];
        if (ratio != rat_pow(s, q[supp[k]] / g)) return false;
    }
    return true;
}

PPoint sample_point(const SpaceDescriptor& space, long height, const Mask* mask, Rng& rng) {
    if (height < 1) throw Error("height must be positive");
    if (mask) {
        if (mask->size() != space.block_count()) throw Error("invalid mask: block count");
        for (size_t b = 0; b < mask->size(); ++b) {
            if (static_cast<int>((*mask)[b].size()) != space.block_size(b))
                throw Error("invalid mask: block size");
            bool free_coord = false;
            for (bool m : (*mask)[b]) free_coord = free_coord || !m;
            if (!free_coord) throw Error("invalid mask: block fully zeroed");
        }
    }
    PPoint x;
    for (size_t b = 0; b < space.block_count(); ++b) {
        std::vector<Rat> blk(space.block_size(b), Rat(0));
        bool nonzero = false;
        for (size_t j = 0; j < blk.size(); ++j) {
            if (mask && (*mask)[b][j]) continue;
            blk[j] = rng.rat(height);
            nonzero = nonzero || blk[j] != 0;
        }
        if (!nonzero) {
            for (size_t j = 0; j < blk.size(); ++j) {
                if (!mask || !(*mask)[b][j]) {
                    blk[j] = 1;
                    break;
                }
            }
        }
        x.push_back(std::move(blk));
    }
    return x;
}

std::vector<Mask> strata_masks(const SpaceDescriptor& space) {
    auto empty_mask = [&] {
        Mask m;
        for (size_t b = 0; b < space.block_count(); ++b)
            m.emplace_back(space.block_size(b), false);
        return m;
    };
    std::set<Mask> seen;
    std::vector<Mask> out;
    auto push = [&](const Mask& m) {
        if (seen.insert(m).second) out.push_back(m);
    };
    for (size_t b = 0; b < space.block_count(); ++b) {
        int sz = space.block_size(b);
        for (int j = 0; j < sz && sz > 1; ++j) { // single coordinate zeroed
            Mask m = empty_mask();
            m[b][j] = true;
            push(m);
        }
        for (int len = 2; len < sz; ++len) { // zero prefixes
            Mask m = empty_mask();
            for (int j = 0; j < len; ++j) m[b][j] = true;
            push(m);
        }
    }
    return out;
}

Multidegree multidegree(const PolyQ& p, const SpaceDescriptor& space) {
    if (p.is_zero()) throw Error("multidegree of the zero polynomial");
    if (p.block_sizes != space.block_sizes()) throw ShapeMismatch("polynomial does not match space");
    Multidegree md;
    md.weighted = space.kind == SpaceDescriptor::Kind::Weighted;
    bool first = true;
    ExpVec first_exp;
    for (const auto& [e, c] : p.terms) {
        std::vector<long> cur;
        if (md.weighted) {
            long w = 0;
            for (size_t i = 0; i < e.blocks[0].size(); ++i) w += space.data[i] * e.blocks[0][i];
            cur.push_back(w);
        } else {
            for (size_t b = 0; b < e.blocks.size(); ++b) cur.push_back(e.block_degree(b));
        }
        if (first) {
            md.d = cur;
            first_exp = e;
            first = false;
        } else if (cur != md.d) {
            throw NotHomogeneous("terms of different degree: " + exp_to_string(first_exp) + " vs " +
                                 exp_to_string(e));
        }
    }
    return md;
}

PPoint rescale(const SpaceDescriptor& space, const PPoint& x, const Rat& t, size_t block) {
    PPoint y = x;
    if (space.kind == SpaceDescriptor::Kind::Product) {
        for (Rat& c : y[block]) c *= t;
    } else {
        for (size_t i = 0; i < y[0].size(); ++i) y[0][i] *= rat_pow(t, space.data[i]);
    }
    return y;
}

} // namespace injekt
