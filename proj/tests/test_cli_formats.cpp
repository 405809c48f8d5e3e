#include "doctest.h"

#include "injekt/constructions.hpp"
#include "injekt/json_io.hpp"

using namespace injekt;

namespace {
const RatField Q;
}

TEST_CASE("scalar strings") {
    CHECK(rat_to_string(Rat(5)) == "5");
    CHECK(rat_to_string(Rat(-3, 7)) == "-3/7");
    CHECK(rat_from_string("-3/7") == Rat(-3, 7));
    CHECK(rat_from_string("12") == Rat(12));
    CHECK_THROWS(rat_from_string("x"));
}

TEST_CASE("space serialization round trip") {
    auto p = SpaceDescriptor::product({1, 2, 1});
    auto w = SpaceDescriptor::weighted({1, 6, 10, 15});
    CHECK(space_from_json(space_to_json(p)) == p);
    CHECK(space_from_json(space_to_json(w)) == w);
    CHECK(space_to_json(w)["kind"] == "weighted");
}

TEST_CASE("polynomial serialization is deterministic and reversible") {
    PolyQ f(std::vector<int>{2, 3});
    f.add_term(Q, exp_of({2, 3}, {{{0, 0}, 1}, {{1, 2}, 2}}), Rat(-3, 4));
    f.add_term(Q, exp_of({2, 3}, {{{0, 1}, 1}, {{1, 0}, 2}}), Rat(5));
    Json j = poly_to_json(f);
    PolyQ g = poly_from_json(j);
    CHECK(g.terms == f.terms);
    CHECK(poly_to_json(g).dump() == j.dump());
    CHECK(j["terms"][0]["c"].is_string());
}

TEST_CASE("morphism serialization keeps sections, label, and decoder") {
    for (Morphism m : {build_wps_phi1({1, 6, 10, 15}), build_p1pn(2, 2), build_tangential_p2p2()}) {
        Json j = morphism_to_json(m);
        Morphism back = morphism_from_json(j);
        CHECK(back.source == m.source);
        CHECK(back.mdeg == m.mdeg);
        CHECK(back.label == m.label);
        CHECK(back.decoder == m.decoder);
        REQUIRE(back.sections.size() == m.sections.size());
        for (size_t i = 0; i < m.sections.size(); ++i)
            CHECK(back.sections[i].terms == m.sections[i].terms);
        CHECK(morphism_to_json(back).dump() == j.dump());
    }
    Json j = morphism_to_json(build_wps_phi1({1, 2, 3}));
    CHECK(j["decoder"] == "builtin:wps_phi1");
    Json j2 = morphism_to_json(build_tangential_p2p2());
    CHECK(j2["decoder"].is_null());
}

TEST_CASE("tensor and curve round trips") {
    Tensor222n t = Tensor222n::zero(2);
    t.slices[0][0][1] = Rat(3, 2);
    t.slices[2][1][0] = Rat(-7);
    Tensor222n back = tensor_from_json(tensor_to_json(t));
    CHECK(back == t);

    RationalCurveP3 c = RationalCurveP3::quintic();
    RationalCurveP3 cb = curve_from_json(curve_to_json(c));
    for (int i = 0; i < 4; ++i) CHECK(cb.coords[i] == c.coords[i]);
}

TEST_CASE("verification report JSON carries the reproducibility fields") {
    Morphism m = build_tangential_p1p1();
    VerificationReport rep = collision_search(m, 50, 123, 10);
    Json j = report_to_json(rep);
    CHECK(j["seed"] == 123);
    CHECK(j["trials"] == 50);
    CHECK(j["height"] == 10);
    CHECK(j["clean"] == true);
    CHECK(j.contains("strata_covered"));
    // identical runs serialize identically apart from timing
    VerificationReport rep2 = collision_search(m, 50, 123, 10);
    Json j2 = report_to_json(rep2);
    j.erase("elapsed_seconds");
    j2.erase("elapsed_seconds");
    CHECK(j.dump() == j2.dump());
}

TEST_CASE("morphism JSON validates on load") {
    Json j = morphism_to_json(build_tangential_p1p1());
    j["sections"][0]["terms"][0]["e"][1] = std::vector<int>{9, 9}; // breaks homogeneity
    CHECK_THROWS(morphism_from_json(j));
}
