#include "doctest.h"

#include <cstdlib>

#include "injekt/constructions.hpp"

using namespace injekt;

namespace {

const RatField Q;

Morphism square_map() {
    // [x0^2 : x1^2] on P^1, the standard non-injective control
    Morphism m;
    m.source = SpaceDescriptor::product({1});
    m.mdeg = {false, {2}};
    PolyQ s0(std::vector<int>{2}), s1(std::vector<int>{2});
    s0.add_term(Q, exp_of({2}, {{{0, 0}, 2}}), 1);
    s1.add_term(Q, exp_of({2}, {{{0, 1}, 2}}), 1);
    m.sections = {s0, s1};
    m.label = "square_map";
    return m;
}

Morphism identity_p2() {
    Morphism m;
    m.source = SpaceDescriptor::product({2});
    m.mdeg = {false, {1}};
    for (int i = 0; i < 3; ++i) {
        PolyQ s(std::vector<int>{3});
        s.add_term(Q, exp_of({3}, {{{0, i}, 1}}), 1);
        m.sections.push_back(std::move(s));
    }
    m.label = "identity_p2";
    m.decoder = "identity";
    return m;
}

} // namespace

TEST_CASE("validate_morphism rejects mixed degrees and wrong shapes") {
    Morphism m = square_map();
    validate_morphism(m);
    Morphism bad = m;
    PolyQ extra(std::vector<int>{2});
    extra.add_term(Q, exp_of({2}, {{{0, 0}, 1}}), 1); // degree 1 section
    bad.sections.push_back(extra);
    CHECK_THROWS_AS(validate_morphism(bad), NotHomogeneous);
}

TEST_CASE("evaluate raises BaseLocusHit on the indeterminacy locus") {
    Morphism m;
    m.source = SpaceDescriptor::product({1, 1});
    m.mdeg = {false, {1, 1}};
    PolyQ a(std::vector<int>{2, 2}), b(std::vector<int>{2, 2});
    a.add_term(Q, exp_of({2, 2}, {{{0, 0}, 1}, {{1, 0}, 1}}), 1); // x0 y0
    b.add_term(Q, exp_of({2, 2}, {{{0, 0}, 1}, {{1, 1}, 1}}), 1); // x0 y1
    m.sections = {a, b};
    m.label = "pencil_with_base_locus";
    CHECK_THROWS_AS(evaluate(m, {{Rat(0), Rat(1)}, {Rat(1), Rat(1)}}), BaseLocusHit);
    CHECK(evaluate(m, {{Rat(1), Rat(0)}, {Rat(1), Rat(2)}}) == std::vector<Rat>{Rat(1), Rat(2)});
}

TEST_CASE("collision_search finds the square-map collision and stays clean on the Segre") {
    VerificationReport bad = collision_search(square_map(), 500, 0, 10);
    CHECK(!bad.collisions.empty());
    // the witness pair has proportional images and inequivalent sources
    const CollisionWitness& w = bad.collisions[0];
    CHECK(proportional(w.image_x, w.image_y));
    CHECK(!equivalent_points(SpaceDescriptor::product({1}), w.x, w.y));

    Morphism segre = build_segre_veronese({1, 1}, {1, 1});
    VerificationReport good = collision_search(segre, 2000, 0, 50);
    CHECK(good.clean());
    CHECK(good.strata_covered.size() >= 3);
}

TEST_CASE("collision reports also record base-locus hits") {
    Morphism m;
    m.source = SpaceDescriptor::product({1, 1});
    m.mdeg = {false, {1, 1}};
    PolyQ a(std::vector<int>{2, 2}), b(std::vector<int>{2, 2});
    a.add_term(Q, exp_of({2, 2}, {{{0, 0}, 1}, {{1, 0}, 1}}), 1);
    b.add_term(Q, exp_of({2, 2}, {{{0, 0}, 1}, {{1, 1}, 1}}), 1);
    m.sections = {a, b};
    m.label = "pencil_with_base_locus";
    VerificationReport rep = collision_search(m, 400, 1, 10);
    CHECK(!rep.base_locus_hits.empty());
}

TEST_CASE("roundtrip_check on the identity and the weighted family") {
    VerificationReport id = roundtrip_check(identity_p2(), 200, 0, 30);
    CHECK(id.clean());
    CHECK(id.evidence == "decoder-certified");

    Morphism phi1 = build_wps_phi1({1, 6, 10, 15});
    // the printed quintuple decodes by back-substitution
    DecodeResult d = decode(phi1, {Rat(1), Rat(1), Rat(2), Rat(2), Rat(1)});
    REQUIRE(d.kind == DecodeResult::Kind::SourcePoint);
    CHECK(equivalent_points(phi1.source, d.point, {{Rat(1), Rat(1), Rat(1), Rat(1)}}));
    VerificationReport rep = roundtrip_check(phi1, 400, 0, 100);
    CHECK(rep.clean());
}

TEST_CASE("p1pn decode worked example") {
    Morphism m = build_p1pn(1, 2);
    PPoint x{{Rat(1), Rat(1)}, {Rat(1), Rat(0)}};
    auto z = evaluate(m, x);
    CHECK(proportional(z, {Rat(1), Rat(0), Rat(0), Rat(2), Rat(1)}));
    DecodeResult d = decode(m, z);
    REQUIRE(d.kind == DecodeResult::Kind::SourcePoint);
    CHECK(equivalent_points(m.source, d.point, x));
}

TEST_CASE("evaluate respects equivalence (multihomogeneity)") {
    std::vector<Morphism> ms{build_tangential_p1p1(), build_p1pn(2, 2), build_wps_phi1({1, 2, 3}),
                             build_wps_phik({1, 5, 5}, 2)};
    for (const Morphism& m : ms) {
        Rng rng(91);
        for (int trial = 0; trial < 250; ++trial) {
            PPoint x = sample_point(m.source, 10, nullptr, rng);
            Rat t = rng.rat_nonzero(10);
            PPoint y = rescale(m.source, x, t, rng.below(m.source.block_count()));
            CHECK(proportional(evaluate(m, x), evaluate(m, y)));
        }
    }
}

TEST_CASE("verification is deterministic and worker-count independent") {
    Morphism m = build_p1pn(2, 1);
    VerificationReport a = collision_search(m, 600, 42, 20);
    VerificationReport b = collision_search(m, 600, 42, 20);
    CHECK(a.collisions.size() == b.collisions.size());
    CHECK(a.strata_covered == b.strata_covered);
    setenv("INJEKT_THREADS", "3", 1);
    VerificationReport c = collision_search(m, 600, 42, 20);
    unsetenv("INJEKT_THREADS");
    CHECK(c.strata_covered == a.strata_covered);
    CHECK(c.collisions.size() == a.collisions.size());
    CHECK(c.base_locus_hits.size() == a.base_locus_hits.size());
}

TEST_CASE("decoders dominate collision search") {
    // clean round trips imply no collisions on the same seed
    for (Morphism m : {build_p1p1_deg_d(4), build_wps_phik({1, 2, 3}, 2)}) {
        VerificationReport rt = roundtrip_check(m, 500, 7, 50);
        VerificationReport cs = collision_search(m, 500, 7, 50);
        CHECK(rt.clean());
        CHECK(cs.collisions.empty());
    }
}
