#include "doctest.h"

#include "injekt/constructions.hpp"
#include "injekt/linalg.hpp"

using namespace injekt;

namespace {

const RatField Q;

std::vector<Rat> ev(const Morphism& m, const PPoint& x) { return evaluate(m, x); }

bool image_is(const Morphism& m, const PPoint& x, const std::vector<long>& expected) {
    auto z = ev(m, x);
    std::vector<Rat> e;
    for (long v : expected) e.emplace_back(v);
    return proportional(z, e);
}

PolyQ wps_mono(const std::vector<int>& sz, std::initializer_list<std::pair<int, int>> exps) {
    PolyQ p(sz);
    std::vector<std::pair<std::pair<int, int>, int>> entries;
    for (auto [var, e] : exps) entries.push_back({{0, var}, e});
    p.add_term(Q, exp_of(sz, entries), 1);
    return p;
}

} // namespace

TEST_CASE("distinct_subset_sums worked examples") {
    CHECK(distinct_subset_sums({1, 2}));
    CHECK(!distinct_subset_sums({1, 1}));
    CHECK(distinct_subset_sums({1, 2, 4}));
    CHECK(!distinct_subset_sums({1, 2, 3}));
}

TEST_CASE("segre_veronese counts and examples") {
    Morphism seg = build_segre_veronese({1, 1, 1}, {1, 1, 1});
    CHECK(seg.sections.size() == 8);
    CHECK(seg.ambient_dim() == 7);
    CHECK(seg.decoder == "segre");

    Morphism conic = build_segre_veronese({1}, {2});
    CHECK(conic.sections.size() == 3);
    CHECK(conic.decoder.empty());

    Morphism big = build_segre_veronese({2, 2}, {1, 2});
    CHECK(big.sections.size() == 18);
    CHECK(big.ambient_dim() == 17);

    // Segre P1 x P1 embeds into P3
    Morphism s2 = build_segre_veronese({1, 1}, {1, 1});
    CHECK(image_is(s2, {{Rat(1), Rat(2)}, {Rat(3), Rat(5)}}, {3, 5, 6, 10}));
}

TEST_CASE("chow_veronese examples and clashes") {
    Morphism cv = build_chow_veronese(1, {1, 2});
    CHECK(cv.sections.size() == 4);
    CHECK(image_is(cv, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {0, 0, 1, 0}));
    // the decoder splits that image back into its two factor directions
    DecodeResult d = decode(cv, {Rat(0), Rat(0), Rat(1), Rat(0)});
    REQUIRE(d.kind == DecodeResult::Kind::SourcePoint);
    CHECK(equivalent_points(cv.source, d.point, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));

    CHECK_THROWS_AS(build_chow_veronese(1, {1, 1}), SubsetSumClash);
    try {
        build_chow_veronese(1, {1, 2, 3});
        CHECK(false);
    } catch (const SubsetSumClash& e) {
        // 1 + 2 = 3
        bool ok = (e.set_a == std::vector<int>{1, 2} && e.set_b == std::vector<int>{3}) ||
                  (e.set_a == std::vector<int>{3} && e.set_b == std::vector<int>{1, 2});
        CHECK(ok);
    }
}

TEST_CASE("tangential p1p1 printed sections") {
    Morphism t = build_tangential_p1p1();
    CHECK(t.ambient_dim() == 3);
    CHECK(image_is(t, {{Rat(1), Rat(0)}, {Rat(1), Rat(0)}}, {1, 0, 0, 0}));
    CHECK(image_is(t, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, {0, 1, 0, 0}));
    CHECK(image_is(t, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {0, 0, 1, 0}));
}

TEST_CASE("tangential p2p2: sections express the projection of the cubic-coefficient map") {
    Morphism t = build_tangential_p2p2();
    CHECK(t.sections.size() == 9);
    Morphism chow = build_chow_veronese(2, {1, 2});
    CHECK(chow.sections.size() == 10);
    std::vector<Rat> p = tangential_p2p2_projection_point();
    // functional rows mapping the ten cubic coefficients onto the nine sections
    // (monomial order T0^3, T0^2T1, T0^2T2, T0T1^2, T0T1T2, T0T2^2, T1^3, T1^2T2, T1T2^2, T2^3)
    std::vector<std::vector<long>> rows = {
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // T0^3
        {0, 0, 0, 0, 0, 0, 1, 0, 0, 0},  // T1^3
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 1},  // T2^3
        {0, 0, 0, 1, 0, 0, 0, 0, 0, 0},  // T0 T1^2
        {0, 0, 0, 0, 0, 0, 0, 0, 1, 0},  // T1 T2^2
        {0, 0, 1, 0, 0, 0, 0, 0, 0, 0},  // T0^2 T2
        {0, 0, 0, 0, 1, 0, 0, 0, 0, 0},  // T0 T1 T2
        {0, 1, 0, 0, 0, 0, 0, -1, 0, 0}, // T0^2 T1 - T1^2 T2
        {0, 1, 0, 0, 0, -1, 0, 0, 0, 0}, // T0^2 T1 - T0 T2^2
    };
    // every row annihilates the projection point
    for (const auto& row : rows) {
        Rat v = 0;
        for (size_t j = 0; j < 10; ++j) v += Rat(row[j]) * p[j];
        CHECK(v == 0);
    }
    // and the sections agree with the rows composed with the coefficient map
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        PPoint x = sample_point(t.source, 7, nullptr, rng);
        auto full = ev(chow, x);
        auto proj = ev(t, x);
        for (size_t i = 0; i < rows.size(); ++i) {
            Rat v = 0;
            for (size_t j = 0; j < 10; ++j) v += Rat(rows[i][j]) * full[j];
            CHECK(v == proj[i]);
        }
    }
}

TEST_CASE("tangential p2p2: sampled secant avoidance of the projection point") {
    Morphism chow = build_chow_veronese(2, {1, 2});
    std::vector<Rat> p = tangential_p2p2_projection_point();
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        PPoint a = sample_point(chow.source, 10, nullptr, rng);
        PPoint b = sample_point(chow.source, 10, nullptr, rng);
        auto za = ev(chow, a), zb = ev(chow, b);
        MatQ m(3, 10, Q);
        for (int j = 0; j < 10; ++j) {
            m.at(0, j) = za[j];
            m.at(1, j) = zb[j];
            m.at(2, j) = p[j];
        }
        // p never lies on the span of two points of the tangential variety
        MatQ base(2, 10, Q);
        for (int j = 0; j < 10; ++j) {
            base.at(0, j) = za[j];
            base.at(1, j) = zb[j];
        }
        CHECK(rank(Q, m) == rank(Q, base) + 1);
    }
}

TEST_CASE("p1p1_deg_d printed sections") {
    CHECK_THROWS(build_p1p1_deg_d(2));
    Morphism m3 = build_p1p1_deg_d(3);
    CHECK(m3.ambient_dim() == 4);
    CHECK(image_is(m3, {{Rat(1), Rat(0)}, {Rat(1), Rat(0)}}, {1, 0, 0, 0, 0}));
    CHECK(image_is(m3, {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}}, {0, 0, 0, 0, 1}));
    CHECK(image_is(m3, {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}, {1, 4, 6, 4, 1}));
    DecodeResult d = decode(m3, {Rat(1), Rat(4), Rat(6), Rat(4), Rat(1)});
    REQUIRE(d.kind == DecodeResult::Kind::SourcePoint);
    CHECK(equivalent_points(m3.source, d.point, {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}));
    Morphism m5 = build_p1p1_deg_d(5);
    CHECK(m5.sections.size() == 5);
    CHECK(multidegree(m5.sections[2], m5.source).d == std::vector<long>{1, 5});
}

TEST_CASE("wps_phi1 printed sections for (1,6,10,15)") {
    Morphism m = build_wps_phi1({1, 6, 10, 15});
    CHECK(m.ambient_dim() == 4);
    auto sz = m.source.block_sizes();
    // x0^30 : x0^24 x1 : x0^20 x2 + x1^5 : x0^15 x3 + x2^3 : x3^2
    CHECK(m.sections[0].terms == wps_mono(sz, {{0, 30}}).terms);
    CHECK(m.sections[1].terms == wps_mono(sz, {{0, 24}, {1, 1}}).terms);
    PolyQ s2 = poly_add(Q, wps_mono(sz, {{0, 20}, {2, 1}}), wps_mono(sz, {{1, 5}}));
    CHECK(m.sections[2].terms == s2.terms);
    PolyQ s3 = poly_add(Q, wps_mono(sz, {{0, 15}, {3, 1}}), wps_mono(sz, {{2, 3}}));
    CHECK(m.sections[3].terms == s3.terms);
    CHECK(m.sections[4].terms == wps_mono(sz, {{3, 2}}).terms);

    CHECK(image_is(m, {{Rat(1), Rat(0), Rat(0), Rat(0)}}, {1, 0, 0, 0, 0}));
    CHECK(image_is(m, {{Rat(1), Rat(1), Rat(1), Rat(1)}}, {1, 1, 2, 2, 1}));
}

TEST_CASE("wps_phi1 on (1,2,2) and hypothesis violations") {
    Morphism m = build_wps_phi1({1, 2, 2});
    CHECK(m.ambient_dim() == 3);
    for (const PolyQ& s : m.sections) CHECK(multidegree(s, m.source).d == std::vector<long>{2});
    CHECK_THROWS(build_wps_phi1({2, 3}));       // q0 != 1
    CHECK_THROWS(build_wps_phi1({1, 2, 3, 5})); // lcm(1,2,3) = 6 != 30
}

TEST_CASE("wps_phik sections") {
    Morphism m = build_wps_phik({1, 1}, 4);
    REQUIRE(m.sections.size() == 3);
    auto sz = m.source.block_sizes();
    CHECK(m.sections[0].terms == wps_mono(sz, {{0, 4}}).terms);
    CHECK(m.sections[1].terms == wps_mono(sz, {{0, 3}, {1, 1}}).terms);
    CHECK(m.sections[2].terms == wps_mono(sz, {{1, 4}}).terms);

    for (long k : {2L, 3L}) {
        Morphism big = build_wps_phik({1, 6, 10, 15}, k);
        CHECK(big.ambient_dim() == 6);
        // homogeneity of weighted degree k*d is the printed exponent identity
        for (const PolyQ& s : big.sections)
            CHECK(multidegree(s, big.source).d == std::vector<long>{k * 30});
    }
    CHECK_THROWS(build_wps_phik({1, 2, 3}, 1));
}

TEST_CASE("p1pn printed sections") {
    Morphism m = build_p1pn(1, 2);
    CHECK(m.ambient_dim() == 4);
    CHECK(image_is(m, {{Rat(1), Rat(1)}, {Rat(1), Rat(0)}}, {1, 0, 0, 2, 1}));

    Morphism m2 = build_p1pn(2, 1);
    auto z = ev(m2, {{Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(1)}});
    CHECK(z[0] == 0);
    CHECK(z[1] == 0);
    CHECK(z[2] == 0);
    CHECK(z[3] == 1); // x1^d y_n
    for (long n : {1L, 2L, 3L})
        for (long d : {1L, 2L})
            CHECK(build_p1pn(n, d).sections.size() == static_cast<size_t>(2 * n + 3));
}

TEST_CASE("p1p1pm_graph section counts") {
    Morphism m1 = build_p1p1pm_graph(1);
    CHECK(m1.sections.size() == 7);
    CHECK(m1.ambient_dim() == 6);
    for (long m = 1; m <= 10; ++m) {
        Morphism mm = build_p1p1pm_graph(m);
        CHECK(mm.sections.size() == static_cast<size_t>(2 * m + 5));
        CHECK(mm.ambient_dim() == 2 * (m + 2));
        for (const PolyQ& s : mm.sections)
            CHECK(multidegree(s, mm.source).d == std::vector<long>({1, 1, 1}));
    }
}

TEST_CASE("pn_duf sections") {
    Morphism m = build_pn_duf(2, 3);
    REQUIRE(m.sections.size() == 3);
    CHECK(m.ambient_dim() == 2);
    auto sz = m.source.block_sizes();
    CHECK(m.sections[0].terms == wps_mono(sz, {{0, 3}}).terms);
    CHECK(m.sections[1].terms == wps_mono(sz, {{0, 2}, {1, 1}}).terms);
    CHECK(m.sections[2].terms == wps_mono(sz, {{1, 3}}).terms);
    CHECK(image_is(m, {{Rat(1), Rat(0)}}, {1, 0, 0}));
}

TEST_CASE("decoder charts cover every sampling stratum") {
    std::vector<Morphism> ms{build_wps_phi1({1, 6, 10, 15}),
                             build_wps_phi1({1, 2, 3}),
                             build_wps_phik({1, 6, 10, 15}, 2),
                             build_wps_phik({1, 5, 5}, 3),
                             build_p1pn(2, 2),
                             build_p1pn(3, 1),
                             build_p1p1_deg_d(3),
                             build_p1p1_deg_d(4),
                             build_pn_duf(3, 2),
                             build_chow_veronese(1, {1, 2}),
                             build_tangential_p1p1(),
                             build_segre_veronese({1, 2}, {1, 1})};
    for (const Morphism& m : ms) {
        REQUIRE(has_decoder(m));
        auto strata = strata_masks(m.source);
        for (size_t s = 0; s <= strata.size(); ++s) {
            Rng srng = Rng::keyed(7, 0xC0DE, s);
            const Mask* mask = s == 0 ? nullptr : &strata[s - 1];
            PPoint x = sample_point(m.source, 20, mask, srng);
            DecodeResult d = decode(m, evaluate(m, x));
            CHECK(d.kind != DecodeResult::Kind::Unavailable);
        }
        // and the round trips on those strata are correct, not just defined
        VerificationReport rep = roundtrip_check(m, 3 * (strata.size() + 1), 7, 20);
        CHECK(rep.clean());
    }
}

TEST_CASE("family dispatcher and table") {
    CHECK(family_table().size() == 10);
    FamilyParams p;
    p.weights = {1, 6, 10, 15};
    Morphism m = build_family("wps_phi1", p);
    CHECK(m.ambient_dim() == 4);
    CHECK_THROWS(build_family("nope", p));
}
