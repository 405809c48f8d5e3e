#include "doctest.h"

#include "injekt/fpfactor.hpp"
#include <numeric>

#include "injekt/spaces.hpp"

using namespace injekt;

namespace {

PPoint canonical_product(const PPoint& x) {
    PPoint c = x;
    for (auto& blk : c) {
        Rat pivot;
        for (const Rat& v : blk)
            if (v != 0) {
                pivot = v;
                break;
            }
        for (Rat& v : blk) v /= pivot;
    }
    return c;
}

// Does some t in F_{p^g} satisfy y_i = t^{q_i} x_i for all i?
bool fp_orbit_oracle(uint64_t p, const std::vector<long>& weights, const std::vector<Rat>& x,
                     const std::vector<Rat>& y) {
    FpField F(p);
    long g = 0;
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) g = g == 0 ? weights[i] : std::gcd(g, weights[i]);
    if (g == 0) return true;
    FqField Fq(p, g == 1 ? fpx::P{F.neg(1), 1} : fpx::find_irreducible(F, static_cast<int>(g), 17));
    std::vector<FqField::Element> xs, ys;
    for (size_t i = 0; i < x.size(); ++i) {
        auto lift = [&](const Rat& v) {
            auto e = Fq.zero();
            e[0] = F.from_rat(v);
            return e;
        };
        xs.push_back(lift(x[i]));
        ys.push_back(lift(y[i]));
    }
    // enumerate all t != 0 in F_{p^g}
    size_t d = Fq.deg();
    std::vector<uint64_t> digits(d, 0);
    for (;;) {
        // advance odometer
        size_t k = 0;
        while (k < d && ++digits[k] == p) digits[k++] = 0;
        if (k == d) break;
        FqField::Element t(digits.begin(), digits.end());
        bool ok = true;
        for (size_t i = 0; ok && i < x.size(); ++i) {
            FqField::Element tq = Fq.one();
            for (long e = 0; e < weights[i]; ++e) tq = Fq.mul(tq, t);
            ok = Fq.eq(ys[i], Fq.mul(tq, xs[i]));
        }
        if (ok) return true;
    }
    return false;
}

} // namespace

TEST_CASE("equivalent_points worked examples") {
    auto w = SpaceDescriptor::weighted({1, 6, 10, 15});
    PPoint ones{{Rat(1), Rat(1), Rat(1), Rat(1)}};
    CHECK(equivalent_points(w, ones, ones));

    auto w23 = SpaceDescriptor::weighted({2, 3});
    CHECK(equivalent_points(w23, {{Rat(1), Rat(1)}}, {{Rat(4), Rat(8)}}));
    CHECK(!equivalent_points(w23, {{Rat(1), Rat(1)}}, {{Rat(4), Rat(9)}}));

    auto p12 = SpaceDescriptor::product({1, 2});
    PPoint a{{Rat(1), Rat(2)}, {Rat(0), Rat(1), Rat(3)}};
    PPoint b{{Rat(-2), Rat(-4)}, {Rat(0), Rat(5), Rat(15)}};
    CHECK(equivalent_points(p12, a, b));
    PPoint c{{Rat(1), Rat(2)}, {Rat(1), Rat(1), Rat(3)}};
    CHECK(!equivalent_points(p12, a, c));
    CHECK_THROWS_AS(equivalent_points(p12, a, ones), ShapeMismatch);
}

TEST_CASE("equivalence is reflexive, symmetric, rescale-invariant") {
    Rng rng(7);
    auto prod = SpaceDescriptor::product({2, 1});
    auto wps = SpaceDescriptor::weighted({1, 2, 3});
    for (int t = 0; t < 300; ++t) {
        PPoint x = sample_point(prod, 5, nullptr, rng);
        CHECK(equivalent_points(prod, x, x));
        Rat s = rng.rat_nonzero(5);
        PPoint y = rescale(prod, x, s, rng.below(2));
        CHECK(equivalent_points(prod, x, y));
        CHECK(equivalent_points(prod, y, x));

        PPoint u = sample_point(wps, 5, nullptr, rng);
        CHECK(equivalent_points(wps, u, u));
        PPoint v = rescale(wps, u, s, 0);
        CHECK(equivalent_points(wps, u, v));
        CHECK(equivalent_points(wps, v, u));
    }
}

TEST_CASE("product equivalence matches canonical forms on random pairs") {
    Rng rng(21);
    auto space = SpaceDescriptor::product({1, 2});
    for (int t = 0; t < 1000; ++t) {
        PPoint x = sample_point(space, 4, nullptr, rng);
        PPoint y;
        if (t % 2) {
            y = rescale(space, x, rng.rat_nonzero(4), 0);
            y = rescale(space, y, rng.rat_nonzero(4), 1);
        } else {
            y = sample_point(space, 4, nullptr, rng);
        }
        CHECK(equivalent_points(space, x, y) == (canonical_product(x) == canonical_product(y)));
    }
}

TEST_CASE("weighted criterion agrees with modular orbit search") {
    Rng rng(31);
    std::vector<std::vector<long>> weight_systems{{2, 3}, {2, 2}, {1, 2, 4}, {2, 4, 3}, {4, 4, 2, 3}};
    for (const auto& weights : weight_systems) {
        auto space = SpaceDescriptor::weighted(weights);
        long l = 1;
        for (long q : weights) l = std::lcm(l, q);
        std::vector<uint64_t> primes;
        uint64_t p = 12;
        for (int i = 0; i < 3; ++i) {
            p = next_prime_congruent(p, static_cast<uint64_t>(l), 1);
            primes.push_back(p);
        }
        for (int t = 0; t < 40; ++t) {
            PPoint x = sample_point(space, 2, nullptr, rng);
            PPoint y;
            if (t % 3 == 0) {
                y = rescale(space, x, rng.rat_nonzero(2), 0);
            } else if (t % 3 == 1) {
                // same support, powered ratios that may or may not be consistent
                y = x;
                for (auto& cval : y[0])
                    if (cval != 0) cval *= Rat(1 + static_cast<long>(rng.below(3)));
            } else {
                y = sample_point(space, 2, nullptr, rng);
            }
            bool supports_match = true;
            for (size_t i = 0; i < x[0].size(); ++i)
                supports_match = supports_match && ((x[0][i] == 0) == (y[0][i] == 0));
            if (!supports_match) continue;
            bool claimed = equivalent_points(space, x, y);
            bool oracle_all = true;
            for (uint64_t pr : primes)
                oracle_all = oracle_all && fp_orbit_oracle(pr, weights, x[0], y[0]);
            CHECK(claimed == oracle_all);
        }
    }
}

TEST_CASE("sample_point contract") {
    Rng rng(1);
    auto p1 = SpaceDescriptor::product({1});
    for (int t = 0; t < 100; ++t) {
        PPoint x = sample_point(p1, 100, nullptr, rng);
        CHECK((x[0][0] != 0 || x[0][1] != 0));
        for (const Rat& c : x[0]) {
            CHECK(abs(c.get_num()) <= 100);
            CHECK(c.get_den() <= 100);
        }
    }
    auto p12 = SpaceDescriptor::product({1, 2});
    Mask m{{true, false}, {false, false, false}};
    PPoint y = sample_point(p12, 100, &m, rng);
    CHECK(y[0][0] == 0);
    CHECK(y[0][1] != 0);

    auto w = SpaceDescriptor::weighted({1, 6, 10, 15});
    Mask mw{{true, false, false, false}};
    PPoint z = sample_point(w, 100, &mw, rng);
    CHECK(z[0][0] == 0);

    Mask bad{{true, true}, {false, false, false}};
    CHECK_THROWS(sample_point(p12, 100, &bad, rng));
}

TEST_CASE("strata masks include proof patterns") {
    auto w = SpaceDescriptor::weighted({1, 6, 10, 15});
    auto masks = strata_masks(w);
    bool has_v0 = false, has_prefix2 = false;
    for (const auto& m : masks) {
        if (m[0] == std::vector<bool>{true, false, false, false}) has_v0 = true;
        if (m[0] == std::vector<bool>{true, true, false, false}) has_prefix2 = true;
    }
    CHECK(has_v0);
    CHECK(has_prefix2);

    auto p = SpaceDescriptor::product({1, 3});
    auto pm = strata_masks(p);
    bool block2_prefix = false;
    for (const auto& m : pm)
        if (m[1] == std::vector<bool>{true, true, true, false} && m[0] == std::vector<bool>{false, false})
            block2_prefix = true;
    CHECK(block2_prefix);
}

TEST_CASE("sampling is deterministic under seed and counter") {
    auto space = SpaceDescriptor::product({2, 2});
    Rng a = Rng::keyed(0, 4, 99);
    Rng b = Rng::keyed(0, 4, 99);
    CHECK(sample_point(space, 50, nullptr, a) == sample_point(space, 50, nullptr, b));
    Rng c = Rng::keyed(1, 4, 99);
    CHECK(sample_point(space, 50, nullptr, a) != sample_point(space, 50, nullptr, c));
}
