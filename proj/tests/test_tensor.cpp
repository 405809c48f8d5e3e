#include "doctest.h"

#include "injekt/rng.hpp"
#include "injekt/tensor.hpp"

using namespace injekt;

namespace {

const RatField Q;

Tensor222n w_state() {
    // e0 e0 e1 + e0 e1 e0 + e1 e0 e0
    Tensor222n t = Tensor222n::zero(1);
    t.slices[1][0][0] = 1;
    t.slices[0][0][1] = 1;
    t.slices[0][1][0] = 1;
    return t;
}

Tensor222n reconstruct(const RankDecision& d, int m) {
    Tensor222n acc = Tensor222n::zero(m);
    for (const auto& s : d.summands) acc.add_scaled(Tensor222n::rank1(s.u, s.v, s.w), 1);
    return acc;
}

Tensor222n random_tensor(Rng& rng, int m, long h) {
    Tensor222n t = Tensor222n::zero(m);
    for (auto& sl : t.slices)
        for (auto& row : sl)
            for (auto& c : row) c = rng.rat(h);
    return t;
}

} // namespace

TEST_CASE("flattening_rank worked examples") {
    CHECK(flattening_rank(Tensor222n::zero(3)) == 0);
    Tensor222n diag = Tensor222n::zero(1);
    diag.slices[0][0][0] = 1;
    diag.slices[1][1][1] = 1;
    CHECK(flattening_rank(diag) == 2);
    CHECK(flattening_rank(w_state()) == 2);
}

TEST_CASE("rank_decision worked examples") {
    CHECK(rank_decision(Tensor222n::unit(1, 0, 0, 0)).cls == RankClass::RankOne);
    Tensor222n diag = Tensor222n::zero(1);
    diag.slices[0][0][0] = 1;
    diag.slices[1][1][1] = 1;
    RankDecision d = rank_decision(diag);
    CHECK(d.cls == RankClass::RankTwo);
    CHECK(d.disc != 0);
    CHECK(rank_decision(w_state()).cls == RankClass::Border2Rank3);
    CHECK(rank_decision(Tensor222n::zero(2)).cls == RankClass::Zero);
}

TEST_CASE("decision witnesses reconstruct the tensor") {
    Rng rng(17);
    int reconstructed = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int m = 1 + static_cast<int>(rng.below(3));
        auto rnd2 = [&] { return std::array<Rat, 2>{rng.rat(4), rng.rat(4)}; };
        auto rndw = [&] {
            std::vector<Rat> w(m + 1);
            for (auto& c : w) c = rng.rat(4);
            return w;
        };
        Tensor222n t = Tensor222n::rank1(rnd2(), rnd2(), rndw());
        if (trial % 3) t.add_scaled(Tensor222n::rank1(rnd2(), rnd2(), rndw()), 1);
        RankDecision d = rank_decision(t);
        CHECK(d.cls != RankClass::BorderAtLeast3);
        CHECK(d.cls != RankClass::Border2Rank3); // honest rank <= 2 inputs
        if (!d.summands.empty()) {
            CHECK(reconstruct(d, t.m) == t);
            CHECK(d.summands.size() <= 2);
            ++reconstructed;
        } else if (d.cls == RankClass::RankTwo) {
            CHECK(d.witness_over_extension);
            CHECK(!is_square(Q, d.disc));
        }
    }
    CHECK(reconstructed > 100);
}

TEST_CASE("extension-only witness flag on a rotation pencil") {
    // slices I and the 90-degree rotation: det(xA + yB) = x^2 + y^2
    Tensor222n t = Tensor222n::zero(1);
    t.slices[0][0][0] = 1;
    t.slices[0][1][1] = 1;
    t.slices[1][0][1] = 1;
    t.slices[1][1][0] = -1;
    RankDecision d = rank_decision(t);
    CHECK(d.cls == RankClass::RankTwo);
    CHECK(d.witness_over_extension);
    CHECK(d.disc < 0);
}

TEST_CASE("singular pencils with shared row or column space are rank two") {
    Tensor222n t = Tensor222n::zero(2); // common column space e0
    t.slices[0][0][0] = 1;
    t.slices[1][0][1] = 1;
    t.slices[2][0][0] = 3;
    t.slices[2][0][1] = 5;
    RankDecision d = rank_decision(t);
    CHECK(d.cls == RankClass::RankTwo);
    REQUIRE(d.summands.size() == 2);
    CHECK(reconstruct(d, t.m) == t);

    Tensor222n s = Tensor222n::zero(2); // common row space e0
    s.slices[0][0][0] = 1;
    s.slices[1][1][0] = 1;
    s.slices[2][0][0] = -2;
    s.slices[2][1][0] = 7;
    RankDecision ds = rank_decision(s);
    CHECK(ds.cls == RankClass::RankTwo);
    CHECK(reconstruct(ds, s.m) == s);
}

TEST_CASE("definitional consistency: flattening <= 2 iff not BorderAtLeast3") {
    Rng rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        Tensor222n t = random_tensor(rng, 1 + static_cast<int>(rng.below(3)), 3);
        RankDecision d = rank_decision(t);
        CHECK((flattening_rank(t) <= 2) == (d.cls != RankClass::BorderAtLeast3));
    }
}

TEST_CASE("secant_span_meets_subspace worked examples") {
    Tensor222n e000 = Tensor222n::unit(1, 0, 0, 0);
    CHECK(secant_span_meets_subspace(e000, e000, {e000}));

    Tensor222n e111 = Tensor222n::unit(1, 1, 1, 1);
    Tensor222n e010 = Tensor222n::unit(1, 0, 1, 0);
    CHECK(!secant_span_meets_subspace(e000, e111, {e010}));

    // u_{0,1} = p - q with p = e0 e0 e1, q = -(e0 e1 e0 + e1 e0 e0)
    Tensor222n p = Tensor222n::unit(1, 0, 0, 1);
    Tensor222n q = Tensor222n::zero(1);
    q.slices[0][0][1] = -1;
    q.slices[0][1][0] = -1;
    CHECK(secant_span_meets_subspace(p, q, {w_state()}));
}
