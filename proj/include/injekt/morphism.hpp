#pragma once

#include <string>
#include <vector>

#include "injekt/spaces.hpp"

namespace injekt {

// Morphism to P^s given by s+1 multihomogeneous sections of a common
// multidegree. `decoder` names a builtin inverse procedure ("" = none);
// decoder parameters are recovered from source and multidegree.
struct Morphism {
    SpaceDescriptor source;
    Multidegree mdeg;
    std::vector<PolyQ> sections;
    std::string label;
    std::string decoder;

    int ambient_dim() const { return static_cast<int>(sections.size()) - 1; }
};

// Checks the section shapes, homogeneity of every section at the stated
// multidegree, and ambient dimension consistency.
void validate_morphism(const Morphism& m);

struct BaseLocusHit : Error {
    using Error::Error;
};

// Image coordinates of x; throws BaseLocusHit when all sections vanish.
std::vector<Rat> evaluate(const Morphism& m, const PPoint& x);

// Decoders return either a source point, or (for the weighted families on
// the x0 = 0 stratum) the point of the re-weighted presentation P^{n-1}
// together with the power map applied to the source coordinates x_1..x_n:
// round trips there compare decoded[i] against x_{i+1}^{powers[i]}.
struct DecodeResult {
    enum class Kind { SourcePoint, ReweightedPoint, Unavailable };
    Kind kind = Kind::Unavailable;
    PPoint point;              // SourcePoint
    std::vector<Rat> reweighted; // ReweightedPoint coordinates
    std::vector<long> powers;    // ReweightedPoint exponents
    std::string note;
};

bool has_decoder(const Morphism& m);
DecodeResult decode(const Morphism& m, const std::vector<Rat>& image);

struct CollisionWitness {
    PPoint x, y;
    std::vector<Rat> image_x, image_y;
};

struct RoundtripWitness {
    PPoint x;
    std::string reason;
};

struct VerificationReport {
    std::string label;
    std::string check; // "collision_search" or "roundtrip_check"
    uint64_t trials = 0;
    uint64_t seed = 0;
    long height = 100;
    std::vector<std::string> strata_covered;
    std::vector<CollisionWitness> collisions;
    std::vector<PPoint> base_locus_hits;
    std::vector<RoundtripWitness> roundtrip_failures;
    std::string evidence; // "decoder-certified" or "sampled"
    double elapsed_seconds = 0;

    bool clean() const {
        return collisions.empty() && base_locus_hits.empty() && roundtrip_failures.empty();
    }
};

// Samples pairs across mixed strata (unconstrained, shared stratum, distinct
// strata) and records every pair with projectively equal images but
// inequivalent sources, plus any base-locus hits. Deterministic under seed,
// independent of worker count.
VerificationReport collision_search(const Morphism& m, uint64_t trials, uint64_t seed,
                                    long height = 100);

// Samples points across strata and asserts decode(evaluate(x)) ~ x.
VerificationReport roundtrip_check(const Morphism& m, uint64_t trials, uint64_t seed,
                                   long height = 100);

// Thread cap honoring INJEKT_THREADS (default 1).
unsigned worker_count();

} // namespace injekt
