#pragma once

#include "injekt/polynomial.hpp"
#include "injekt/spaces.hpp"

namespace injekt {

// Diagonal action of the cyclic group of order k on F_p^{n+1}:
// the generator scales coordinate i by zeta^{q_i}, zeta a fixed primitive
// k-th root of unity (requires p = 1 mod k).
struct CyclicAction {
    long k;
    std::vector<long> weights;
    FpField field;
    uint64_t zeta;

    CyclicAction(long order, std::vector<long> q, uint64_t prime);
};

using FpVec = std::vector<uint64_t>;

bool same_orbit(const CyclicAction& a, const FpVec& v, const FpVec& w);

// Candidate separating set over F_p; construction validates invariance
// termwise (sum q_i e_i = 0 mod k).
struct InvariantSet {
    uint64_t prime;
    std::vector<Poly<FpField>> polys;

    static InvariantSet reduce(const std::vector<PolyQ>& rational, const CyclicAction& a);
};

void validate_invariance(const CyclicAction& a, const PolyQ& f);

struct SepViolation {
    FpVec v, w;
    std::string kind; // "separation" or "invariance"
};

struct SepReport {
    uint64_t trials = 0, seed = 0, prime = 0;
    std::vector<SepViolation> violations;
    bool clean() const { return violations.empty(); }
};

// Samples pairs (random, in-orbit, root-of-unity twisted, coordinate
// surgery) and reports pairs that all invariants fail to separate, plus any
// in-orbit pair with differing values (which must never occur).
SepReport separates(const CyclicAction& a, const InvariantSet& f, uint64_t trials, uint64_t seed);

// Affine-cone vs projective consistency for a weighted projective morphism:
// on shared samples over F_p, the affine value map separates scaled orbits
// exactly when the projective images avoid collisions. Pairs disagreeing
// between the two verdicts are reported.
struct ConeProjReport {
    uint64_t trials = 0, seed = 0, prime = 0;
    uint64_t affine_violations = 0, projective_collisions = 0;
    std::vector<std::string> discrepancies;
    bool consistent() const { return discrepancies.empty(); }
};

ConeProjReport cone_projective_consistency(const std::vector<long>& weights, long degree,
                                           const std::vector<PolyQ>& sections, uint64_t prime,
                                           uint64_t trials, uint64_t seed);

// Seeded falsification search over 5-element sets of linear combinations of
// F (no completeness claim): reports any 5-set that separates all sampled
// pairs, and the first violating pair for the rest.
struct FiveSearchReport {
    uint64_t candidates = 0;
    uint64_t refuted = 0; // candidates with a found violation
    std::vector<std::string> unrefuted; // descriptions of sets the search could not refute
};

FiveSearchReport search_five_subsets(const CyclicAction& a, const std::vector<PolyQ>& big_set,
                                     uint64_t candidates, uint64_t pair_trials, uint64_t seed);

// Smallest `count` primes > 10^6 with p = 1 mod k.
std::vector<uint64_t> default_sepinv_primes(long k, int count = 3);

} // namespace injekt
