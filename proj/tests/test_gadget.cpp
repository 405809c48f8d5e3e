#include "doctest.h"

#include "injekt/constructions.hpp"
#include "injekt/gadget.hpp"

using namespace injekt;

namespace {
const RatField Q;
}

TEST_CASE("graph structure worked examples") {
    GadgetGraph g2 = build_graph(2);
    CHECK(g2.e1 == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(g2.e2 == std::vector<std::pair<int, int>>{{0, 2}});

    GadgetGraph g6 = build_graph(6);
    CHECK(g6.e2 == std::vector<std::pair<int, int>>{{0, 6}, {6, 1}, {1, 5}, {5, 2}, {2, 4}});

    GadgetGraph g7 = build_graph(7);
    CHECK(g7.e2.size() == 6);

    for (long m = 1; m <= 12; ++m) {
        GadgetGraph g = build_graph(m);
        CHECK(g.e1.size() == static_cast<size_t>(m));
        CHECK(g.e2.size() == static_cast<size_t>(m - 1));
        // the special vertex ceil(m/2) touches no E2 edge
        int special = static_cast<int>((m + 1) / 2);
        for (auto& [s, t] : g.e2) {
            CHECK(s != special);
            CHECK(t != special);
        }
    }
}

TEST_CASE("subspace dimensions and injectivity of the weighting map") {
    for (long m = 1; m <= 12; ++m) {
        auto [g, s] = build_gadget(m);
        CHECK(s.u.size() == static_cast<size_t>(m));
        CHECK(s.v.size() == static_cast<size_t>(m - 1));
        auto all = s.all();
        MatQ span(all.size(), 4 * (m + 1), Q);
        for (size_t i = 0; i < all.size(); ++i) {
            auto v = all[i].to_vector();
            for (size_t j = 0; j < v.size(); ++j) span.at(i, j) = v[j];
        }
        CHECK(rank(Q, span) == static_cast<size_t>(2 * m - 1));
    }
}

TEST_CASE("psi worked examples") {
    GadgetGraph g = build_graph(2);
    EdgeWeighting zero(3, Rat(0));
    for (int k = 0; k <= 2; ++k) CHECK(psi(g, k, zero) == std::array<Rat, 4>{0, 0, 0, 0});

    EdgeWeighting e01{Rat(1), Rat(0), Rat(0)}; // indicator of (0,1) in E1
    CHECK(psi(g, 0, e01) == std::array<Rat, 4>{0, 1, 0, 0});
    CHECK(psi(g, 1, e01) == std::array<Rat, 4>{1, 0, 0, 0});

    EdgeWeighting e02{Rat(0), Rat(0), Rat(1)}; // indicator of (0,2) in E2
    CHECK(psi(g, 0, e02) == std::array<Rat, 4>{0, 0, 0, 1});
    CHECK(psi(g, 2, e02) == std::array<Rat, 4>{0, 0, 1, 0});
    CHECK(psi(g, 1, e02) == std::array<Rat, 4>{0, 0, 0, 0});
}

TEST_CASE("zw dimension worked examples") {
    GadgetGraph g = build_graph(2);
    CHECK(zw_dimension(g, EdgeWeighting(3, Rat(0))) == 0);
    CHECK(zw_dimension(g, {Rat(1), Rat(0), Rat(0)}) == 2);
    CHECK(zw_dimension(g, {Rat(1), Rat(1), Rat(1)}) == 3); // frozen by row reduction
}

TEST_CASE("weighting tensor worked examples") {
    auto [g, s] = build_gadget(2);
    CHECK(weighting_tensor(g, s, EdgeWeighting(3, Rat(0))).is_zero());
    Tensor222n u01 = weighting_tensor(g, s, {Rat(1), Rat(0), Rat(0)});
    Tensor222n expect_u = Tensor222n::zero(2);
    expect_u.slices[1][0][0] = 1;
    expect_u.slices[0][0][1] = 1;
    expect_u.slices[0][1][0] = 1;
    CHECK(u01 == expect_u);
    Tensor222n v02 = weighting_tensor(g, s, {Rat(0), Rat(0), Rat(1)});
    Tensor222n expect_v = Tensor222n::zero(2);
    expect_v.slices[2][1][0] = 1;
    expect_v.slices[0][1][1] = 1;
    expect_v.slices[0][0][0] = 1;
    CHECK(v02 == expect_v);
}

TEST_CASE("flattening correspondence on random weightings") {
    for (long m : {1L, 2L, 5L, 8L}) {
        auto [g, s] = build_gadget(m);
        size_t edges = s.u.size() + s.v.size();
        CHECK(check_flattening_correspondence(g, s, EdgeWeighting(edges, Rat(0))));
        for (uint64_t trial = 0; trial < 500; ++trial) {
            Rng rng = Rng::keyed(3, m, trial);
            EdgeWeighting w(edges);
            for (auto& c : w) c = rng.rat(6);
            CHECK(check_flattening_correspondence(g, s, w));
        }
        // weightings supported on E1 only stay within rank 2
        Rng rng(4);
        EdgeWeighting w(edges, Rat(0));
        for (size_t i = 0; i < s.u.size(); ++i) w[i] = rng.rat(6);
        CHECK(check_flattening_correspondence(g, s, w));
        CHECK(zw_dimension(g, w) <= 2);
    }
}

TEST_CASE("subspace sample branches are clean and the negative control trips") {
    GadgetReport rep = check_subspace_samples(2, 300, 0);
    CHECK(rep.clean());
    CHECK(rep.checks_a == 300);
    CHECK(rep.checks_c == 300);

    // branch (b) with a single E1 edge indicator
    auto [g, s] = build_gadget(3);
    EdgeWeighting ind(s.u.size() + s.v.size(), Rat(0));
    ind[1] = 1;
    CHECK(rank_decision(weighting_tensor(g, s, ind)).cls == RankClass::Border2Rank3);

    // replacing W by span{e000 - e111} makes branch (c) fail
    Tensor222n diff = Tensor222n::unit(1, 0, 0, 0);
    diff.add_scaled(Tensor222n::unit(1, 1, 1, 1), -1);
    CHECK(secant_span_meets_subspace(Tensor222n::unit(1, 0, 0, 0), Tensor222n::unit(1, 1, 1, 1),
                                     {diff}));
}

TEST_CASE("section annihilation for m = 1..10 and the perturbation control") {
    for (long m = 1; m <= 10; ++m) CHECK(check_section_annihilation(m));

    // worked example: x0 y0 z_{i+1} - x0 y1 z_i pairs to zero with u_{i,i+1}
    auto [g, s] = build_gadget(4);
    for (size_t i = 0; i < s.u.size(); ++i) {
        const Tensor222n& u = s.u[i];
        Rat pairing = u.slices[i + 1][0][0] - u.slices[i][0][1];
        CHECK(pairing == 0);
        // a flipped sign breaks it
        Rat bad = u.slices[i + 1][0][0] + u.slices[i][0][1];
        CHECK(bad == 2);
    }

    // functional count = (4m+4) - (2m-1)
    for (long m : {1L, 4L, 9L})
        CHECK(build_p1p1pm_graph(m).sections.size() == static_cast<size_t>(4 * m + 4 - (2 * m - 1)));
}

TEST_CASE("annihilation check composes with collision search") {
    // composite consistency: clean gadget checks go with collision-free maps
    for (long m : {1L, 3L}) {
        CHECK(check_section_annihilation(m));
        CHECK(check_subspace_samples(m, 120, 5).clean());
        VerificationReport rep = collision_search(build_p1p1pm_graph(m), 1500, 5, 50);
        CHECK(rep.clean());
    }
}
