#pragma once

#include <optional>

#include "injekt/morphism.hpp"

namespace injekt {

struct SubsetSumClash : Error {
    std::vector<int> set_a, set_b; // 1-based indices into dvec
    SubsetSumClash(std::string msg, std::vector<int> a, std::vector<int> b)
        : Error(std::move(msg)), set_a(std::move(a)), set_b(std::move(b)) {}
};

// true iff all pairs of disjoint index subsets of dvec have distinct sums.
bool distinct_subset_sums(const std::vector<long>& dvec);

// Embedding of P^{n_1} x ... x P^{n_r} by all monomials of multidegree
// (d_1,...,d_r); per-block rank-1 decoder when every d_i = 1.
Morphism build_segre_veronese(const std::vector<long>& dims, const std::vector<long>& degrees);

// (P^m)^r -> P(Sym^D), tuple of linear forms to the product of their powers;
// requires distinct subset sums of dvec. Factorization decoder for m = 1.
Morphism build_chow_veronese(long m, const std::vector<long>& dvec);

// P^1 x P^1 -> P^3 and P^2 x P^2 -> P^8 through tangential varieties of
// Veronese images, bidegree (1,2).
Morphism build_tangential_p1p1();
Morphism build_tangential_p2p2();

// The projection point in Sym^3 C^3 whose annihilator the nine
// tangential_p2p2 sections span (coefficients in descending-lex monomial
// order); exposed for the sampled secant-avoidance cross-check.
std::vector<Rat> tangential_p2p2_projection_point();

// P^1 x P^1 -> P^4 of bidegree (1,d), d >= 3: the coefficients of
// T0^{d+1}, T0^d T1, T0^{d-1} T1^2, T0 T1^d, T1^{d+1} in (x.T)(y.T)^d.
Morphism build_p1p1_deg_d(long d);

// Weighted projective constructions. Weights (q_0,...,q_n) with q_0 = 1 and
// lcm of any three distinct weights equal to d = lcm(q_1..q_n).
Morphism build_wps_phi1(const std::vector<long>& weights);
Morphism build_wps_phik(const std::vector<long>& weights, long k);

// P^1 x P^n -> P^{2(n+1)}, bidegree (d,1).
Morphism build_p1pn(long n, long d);

// P^1 x P^1 x P^m -> P^{2(m+2)} by trilinear forms spanning the annihilator
// of the graph-gadget subspace W.
Morphism build_p1p1pm_graph(long m);

// P^{n-1} -> P^{2(n-1)} by the degree-k power-sum sections
// [sum_{i+j=l, i<=j} x_i^{k-1} x_j | l = 2..2n], n >= 2, k >= 2.
Morphism build_pn_duf(long n, long k);

// Shared with the wps_phik decoder: invert the power-sum map on P^{n-1}.
// coords has length 2n-1; returns the n source coordinates.
std::vector<Rat> duf_decode(long n, long k, const std::vector<Rat>& coords);

// CLI-facing registry.
struct FamilyInfo {
    std::string id;
    std::string params; // human-readable parameter list
    std::string target; // ambient dimension formula
};
std::vector<FamilyInfo> family_table();

struct FamilyParams {
    std::vector<long> dims, degrees, weights, dvec;
    std::optional<long> n, d, k, m;
};
Morphism build_family(const std::string& id, const FamilyParams& p);

} // namespace injekt
