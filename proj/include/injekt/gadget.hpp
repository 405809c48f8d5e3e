#pragma once

#include <array>

#include "injekt/tensor.hpp"

namespace injekt {

// The directed graph on vertices {0..m} whose two edge families drive the
// trilinear construction: E1 the consecutive path, E2 the zig-zag path
// (0,m),(m,1),(1,m-1),... with m-1 edges. Vertex ceil(m/2) touches no E2 edge.
struct GadgetGraph {
    long m = 0;
    std::vector<std::pair<int, int>> e1, e2;

    // E2 successor of vertex j, or -1.
    int e2_target(int j) const {
        for (auto& [s, t] : e2)
            if (s == j) return t;
        return -1;
    }
    int e2_source(int j) const {
        for (auto& [s, t] : e2)
            if (t == j) return s;
        return -1;
    }
};

// Basis tensors u (one per E1 edge) and v (one per E2 edge); their span W
// has dimension 2m-1 with W1 and W2 meeting trivially.
struct GadgetSubspace {
    std::vector<Tensor222n> u, v;
    std::vector<Tensor222n> all() const {
        std::vector<Tensor222n> w = u;
        w.insert(w.end(), v.begin(), v.end());
        return w;
    }
};

GadgetGraph build_graph(long m);
GadgetSubspace build_subspace(const GadgetGraph& g);
std::pair<GadgetGraph, GadgetSubspace> build_gadget(long m);

// Weight function on E = E1 ++ E2, indexed edges-of-e1 then edges-of-e2.
using EdgeWeighting = std::vector<Rat>;

// (incoming E1, outgoing E1, incoming E2, outgoing E2) weight totals at k.
std::array<Rat, 4> psi(const GadgetGraph& g, int vertex, const EdgeWeighting& w);

// dim of the span of psi(0),...,psi(m) in Q^4.
int zw_dimension(const GadgetGraph& g, const EdgeWeighting& w);

// The tensor sum(w_e * u_e) + sum(w_e * v_e).
Tensor222n weighting_tensor(const GadgetGraph& g, const GadgetSubspace& s, const EdgeWeighting& w);

// zw_dimension(w) == flattening_rank(weighting_tensor(w)); the two sides are
// computed through independent routes (edge sums vs slice matrices).
bool check_flattening_correspondence(const GadgetGraph& g, const GadgetSubspace& s,
                                     const EdgeWeighting& w);

struct GadgetReport {
    long m = 0;
    uint64_t trials = 0, seed = 0;
    uint64_t checks_a = 0, checks_b = 0, checks_c = 0, checks_d = 0;
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

// Sampled consequences of the subspace construction:
//  (a) weightings with both components nonzero give flattening rank >= 3,
//  (b) weightings supported on one component are Border2Rank3,
//  (c) spans of two rank-1 tensors miss W,
//  (d) rank-1 tensors are not in W.
GadgetReport check_subspace_samples(long m, uint64_t trials, uint64_t seed);

// The 2m+5 trilinear sections annihilate every u and v and are linearly
// independent (they span the full annihilator of W).
bool check_section_annihilation(long m);

} // namespace injekt
