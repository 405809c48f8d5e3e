#include "injekt/suite.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "injekt/constructions.hpp"
#include "injekt/fpfactor.hpp"
#include "injekt/gadget.hpp"
#include "injekt/secant.hpp"
#include "injekt/sepinv.hpp"
#include "injekt/waring.hpp"

namespace injekt {

namespace {

const RatField Q;

struct TableEntry {
    std::function<Morphism()> build;
    long ambient;
};

// The construction table with its contracted ambient dimensions.
std::vector<TableEntry> construction_table() {
    std::vector<TableEntry> t;
    t.push_back({[] { return build_wps_phi1({1, 6, 10, 15}); }, 4});
    for (std::vector<long> w : {std::vector<long>{1, 6, 10, 15}, {1, 2, 3}, {1, 5, 5}}) {
        long n = static_cast<long>(w.size()) - 1;
        for (long k : {2L, 3L}) t.push_back({[w, k] { return build_wps_phik(w, k); }, 2 * n});
    }
    for (auto [n, k] : {std::pair<long, long>{2, 3}, {3, 2}, {4, 3}})
        t.push_back({[n, k] { return build_pn_duf(n, k); }, 2 * (n - 1)});
    for (long n : {1L, 2L, 3L})
        for (long d : {1L, 2L, 3L}) t.push_back({[n, d] { return build_p1pn(n, d); }, 2 * (n + 1)});
    for (long m = 1; m <= 10; ++m) t.push_back({[m] { return build_p1p1pm_graph(m); }, 2 * (m + 2)});
    t.push_back({[] { return build_tangential_p1p1(); }, 3});
    t.push_back({[] { return build_tangential_p2p2(); }, 8});
    for (long d : {3L, 4L, 5L}) t.push_back({[d] { return build_p1p1_deg_d(d); }, 4});
    return t;
}

// ---- criterion 5 oracle: brute-force rank-1-pair enumeration over F_p ----

// rank <= 1 test via all 2x2 minors of the two flattenings
template <class F>
bool rank_le1(const F& fld, const Slices<F>& t) {
    size_t n = t.size();
    std::vector<std::array<typename F::Element, 4>> vecs;
    for (size_t c = 0; c < n; ++c)
        vecs.push_back({t[c][0][0], t[c][0][1], t[c][1][0], t[c][1][1]});
    // all slice pairs proportional and each slice rank <= 1
    for (size_t c = 0; c < n; ++c) {
        auto det = fld.sub(fld.mul(t[c][0][0], t[c][1][1]), fld.mul(t[c][0][1], t[c][1][0]));
        if (!fld.is_zero(det)) return false;
    }
    for (size_t c1 = 0; c1 < n; ++c1)
        for (size_t c2 = c1 + 1; c2 < n; ++c2)
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    auto d = fld.sub(fld.mul(vecs[c1][i], vecs[c2][j]),
                                     fld.mul(vecs[c1][j], vecs[c2][i]));
                    if (!fld.is_zero(d)) return false;
                }
    return true;
}

// all rank-1 tensors u (x) v (x) w with u, v projective and w any nonzero
template <class F>
std::vector<Slices<F>> all_rank1(const F& fld, int m, const std::vector<typename F::Element>& elems) {
    using El = typename F::Element;
    std::vector<std::array<El, 2>> dirs;
    dirs.push_back({fld.one(), fld.zero()});
    for (const El& e : elems) dirs.push_back({e, fld.one()});
    std::vector<std::vector<El>> ws;
    std::vector<El> cur(m + 1, fld.zero());
    std::function<void(int)> gen = [&](int pos) {
        if (pos == m + 1) {
            bool nz = false;
            for (const El& c : cur) nz = nz || !fld.is_zero(c);
            if (nz) ws.push_back(cur);
            return;
        }
        for (const El& e : elems) {
            cur[pos] = e;
            gen(pos + 1);
        }
        cur[pos] = fld.zero();
    };
    gen(0);
    std::vector<Slices<F>> out;
    for (auto& u : dirs)
        for (auto& v : dirs)
            for (auto& w : ws) {
                Slices<F> t(m + 1);
                for (int c = 0; c <= m; ++c)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            t[c][a][b] = fld.mul(fld.mul(u[a], v[b]), w[c]);
                out.push_back(std::move(t));
            }
    return out;
}

template <class F>
Slices<F> slices_sub(const F& fld, const Slices<F>& a, const Slices<F>& b) {
    Slices<F> r = a;
    for (size_t c = 0; c < a.size(); ++c)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[c][i][j] = fld.sub(a[c][i][j], b[c][i][j]);
    return r;
}

template <class F>
bool oracle_rank_le2(const F& fld, const Slices<F>& t, const std::vector<Slices<F>>& rank1s) {
    bool zero = true;
    for (const auto& sl : t)
        for (const auto& row : sl)
            for (const auto& x : row) zero = zero && fld.is_zero(x);
    if (zero) return true;
    if (rank_le1(fld, t)) return true;
    for (const auto& a : rank1s)
        if (rank_le1(fld, slices_sub(fld, t, a))) return true;
    return false;
}

// Extension re-check: scan the slice pencil for singular directions over
// F_{p^2} and verify an explicit rank-1 + rank-1 reconstruction. This finds
// the two pencil generators by brute force rather than via the discriminant.
bool oracle_rank_le2_ext(const FqField& ext, const Slices<FpField>& t_p) {
    using El = FqField::Element;
    size_t n = t_p.size();
    Slices<FqField> t(n);
    for (size_t c = 0; c < n; ++c)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) t[c][i][j] = El{t_p[c][i][j], 0};
    // two independent slices span the pencil (caller guarantees flattening rank 2)
    size_t ia = n, ib = n;
    for (size_t c = 0; c < n && ib == n; ++c) {
        bool nz = false;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) nz = nz || !ext.is_zero(t[c][i][j]);
        if (!nz) continue;
        if (ia == n) {
            ia = c;
            continue;
        }
        Mat<FqField> two(2, 4, ext);
        for (int k = 0; k < 4; ++k) {
            two.at(0, k) = t[ia][k / 2][k % 2];
            two.at(1, k) = t[c][k / 2][k % 2];
        }
        if (rank(ext, two) == 2) ib = c;
    }
    if (ib == n) return true; // pencil is a line: handled by the base-field oracle
    auto member = [&](const El& x, const El& y) {
        std::array<std::array<El, 2>, 2> g;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                g[i][j] = ext.add(ext.mul(x, t[ia][i][j]), ext.mul(y, t[ib][i][j]));
        return g;
    };
    auto det = [&](const std::array<std::array<El, 2>, 2>& g) {
        return ext.sub(ext.mul(g[0][0], g[1][1]), ext.mul(g[0][1], g[1][0]));
    };
    // all directions of P^1(F_{p^2})
    std::vector<std::pair<El, El>> dirs;
    dirs.emplace_back(ext.one(), ext.zero());
    for (uint64_t a = 0; a < ext.base.p; ++a)
        for (uint64_t b = 0; b < ext.base.p; ++b) dirs.emplace_back(El{a, b}, ext.one());
    std::vector<std::pair<El, El>> singular;
    for (auto& [x, y] : dirs)
        if (ext.is_zero(det(member(x, y)))) singular.push_back({x, y});
    if (singular.size() < 2) return false;
    auto g1 = member(singular[0].first, singular[0].second);
    auto g2 = member(singular[1].first, singular[1].second);
    // write every slice in the (g1, g2) coordinates and verify
    Mat<FqField> sys(4, 2, ext);
    for (int k = 0; k < 4; ++k) {
        sys.at(k, 0) = g1[k / 2][k % 2];
        sys.at(k, 1) = g2[k / 2][k % 2];
    }
    for (size_t c = 0; c < n; ++c) {
        std::vector<El> rhs{t[c][0][0], t[c][0][1], t[c][1][0], t[c][1][1]};
        if (!solve(ext, sys, rhs)) return false;
    }
    return true;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double stop() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// ---- criteria ----

CriterionResult crit1_table(uint64_t) {
    Timer timer;
    CriterionResult r{1, "construction table ambient dimensions", true, "", 0};
    std::ostringstream os;
    for (auto& e : construction_table()) {
        Morphism m = e.build(); // builders hard-assert their ambient contract
        if (m.ambient_dim() != e.ambient) {
            r.pass = false;
            os << m.label << " -> P^" << m.ambient_dim() << " expected P^" << e.ambient << "; ";
        }
    }
    long count = static_cast<long>(construction_table().size());
    r.details = r.pass ? std::to_string(count) + " constructions at their contracted targets"
                       : os.str();
    r.seconds = timer.stop();
    return r;
}

CriterionResult crit2_collisions(uint64_t seed) {
    Timer timer;
    CriterionResult r{2, "collision-freeness on 10^4 sampled pairs", true, "", 0};
    std::ostringstream os;
    uint64_t pairs = 10000;
    for (auto& e : construction_table()) {
        Morphism m = e.build();
        VerificationReport rep = collision_search(m, pairs, seed, 100);
        if (!rep.collisions.empty() || !rep.base_locus_hits.empty()) {
            r.pass = false;
            os << m.label << ": " << rep.collisions.size() << " collisions, "
               << rep.base_locus_hits.size() << " base-locus hits; ";
        }
        if (rep.elapsed_seconds > 60) {
            r.pass = false;
            os << m.label << " exceeded 60 s (" << rep.elapsed_seconds << "); ";
        }
    }
    r.details = r.pass ? "zero collisions and base-locus hits across the table" : os.str();
    r.seconds = timer.stop();
    return r;
}

CriterionResult crit3_roundtrips(uint64_t seed) {
    Timer timer;
    CriterionResult r{3, "decoder round-trips (10^3 samples each)", true, "", 0};
    std::ostringstream os;
    std::vector<Morphism> ms;
    for (std::vector<long> w : {std::vector<long>{1, 6, 10, 15}, {1, 2, 3}, {1, 5, 5}}) {
        ms.push_back(build_wps_phi1(w));
        ms.push_back(build_wps_phik(w, 2));
        ms.push_back(build_wps_phik(w, 3));
    }
    for (long n : {1L, 2L, 3L})
        for (long d : {1L, 2L, 3L}) ms.push_back(build_p1pn(n, d));
    for (long d : {3L, 4L, 5L}) ms.push_back(build_p1p1_deg_d(d));
    ms.push_back(build_chow_veronese(1, {1, 2}));
    ms.push_back(build_chow_veronese(1, {1, 2, 4}));
    for (const Morphism& m : ms) {
        VerificationReport rep = roundtrip_check(m, 1000, seed, 100);
        if (!rep.roundtrip_failures.empty()) {
            r.pass = false;
            os << m.label << ": " << rep.roundtrip_failures.size() << " failures (first: "
               << rep.roundtrip_failures[0].reason << "); ";
        }
    }
    r.details = r.pass ? std::to_string(ms.size()) + " morphisms decoder-certified" : os.str();
    r.seconds = timer.stop();
    return r;
}

CriterionResult crit4_gadget(uint64_t seed) {
    Timer timer;
    CriterionResult r{4, "graph gadget checks for m = 1..10", true, "", 0};
    std::ostringstream os;
    for (long m = 1; m <= 10; ++m) {
        auto [g, s] = build_gadget(m);
        auto all = s.all();
        MatQ span(all.size(), 4 * (m + 1), Q);
        for (size_t i = 0; i < all.size(); ++i) {
            auto v = all[i].to_vector();
            for (size_t j = 0; j < v.size(); ++j) span.at(i, j) = v[j];
        }
        if (static_cast<long>(rank(Q, span)) != 2 * m - 1) {
            r.pass = false;
            os << "m=" << m << ": dim W != 2m-1; ";
        }
        // W1 and W2 intersect trivially iff the dimensions add up
        if (static_cast<long>(s.u.size()) != m || static_cast<long>(s.v.size()) != m - 1) {
            r.pass = false;
            os << "m=" << m << ": wrong basis sizes; ";
        }
        uint64_t bad_flat = 0;
        for (uint64_t trial = 0; trial < 10000; ++trial) {
            Rng rng = Rng::keyed(seed, 0xF1A7 + m, trial);
            EdgeWeighting w(all.size());
            for (auto& c : w) c = rng.rat(5);
            if (!check_flattening_correspondence(g, s, w)) ++bad_flat;
        }
        if (bad_flat) {
            r.pass = false;
            os << "m=" << m << ": " << bad_flat << " flattening mismatches; ";
        }
        GadgetReport rep = check_subspace_samples(m, 1000, seed);
        if (!rep.clean()) {
            r.pass = false;
            os << "m=" << m << ": " << rep.violations.size() << " sampled violations (first: "
               << rep.violations[0] << "); ";
        }
        if (!check_section_annihilation(m)) {
            r.pass = false;
            os << "m=" << m << ": annihilation check failed; ";
        }
    }
    r.details = r.pass ? "dim W, flattening correspondence, sampled branches, annihilation all clean"
                       : os.str();
    r.seconds = timer.stop();
    return r;
}

CriterionResult crit5_rank_oracle(uint64_t seed) {
    Timer timer;
    CriterionResult r{5, "rank decision vs brute-force oracle (F3 exhaustive, F5 sampled)", true, "", 0};
    std::ostringstream os;
    uint64_t mismatches = 0, extension_rechecks = 0;

    auto agree = [&](const FpField& F, const FqField& ext,
                     const std::vector<Slices<FpField>>& rank1s_p, const Slices<FpField>& t) {
        bool split = true;
        RankClass cls = rank_class_core(F, t, static_cast<uint64_t*>(nullptr), &split);
        bool decided_le2 = cls == RankClass::Zero || cls == RankClass::RankOne ||
                           cls == RankClass::RankTwo;
        bool oracle_le2 = oracle_rank_le2(F, t, rank1s_p);
        if (decided_le2 == oracle_le2) return true;
        if (decided_le2 && !oracle_le2 && !split) {
            // documented branch: the two directions live in F_{p^2}
            ++extension_rechecks;
            return oracle_rank_le2_ext(ext, t);
        }
        return false;
    };

    {
        FpField F3(3);
        FqField F9(3, fpx::find_irreducible(F3, 2, 21));
        auto rank1s_p = all_rank1(F3, 1, std::vector<uint64_t>{0, 1, 2});
        for (uint64_t code = 0; code < 6561; ++code) {
            Slices<FpField> t(2);
            uint64_t c = code;
            for (int sl = 0; sl < 2; ++sl)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        t[sl][i][j] = c % 3;
                        c /= 3;
                    }
            if (!agree(F3, F9, rank1s_p, t)) ++mismatches;
        }
        if (mismatches) os << "F3 exhaustive: " << mismatches << " mismatches; ";
    }
    {
        FpField F5(5);
        FqField F25(5, fpx::find_irreducible(F5, 2, 22));
        auto rank1s_p = all_rank1(F5, 2, std::vector<uint64_t>{0, 1, 2, 3, 4});
        uint64_t bad = 0;
        for (uint64_t trial = 0; trial < 10000; ++trial) {
            Rng rng = Rng::keyed(seed, 0x0515, trial);
            Slices<FpField> t(3);
            for (int sl = 0; sl < 3; ++sl)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) t[sl][i][j] = rng.below(5);
            if (!agree(F5, F25, rank1s_p, t)) ++bad;
        }
        if (bad) os << "F5 sampled: " << bad << " mismatches; ";
        mismatches += bad;
    }
    r.pass = mismatches == 0;
    r.details = r.pass ? "100% agreement (" + std::to_string(extension_rechecks) +
                             " extension-field re-checks)"
                       : os.str();
    r.seconds = timer.stop();
    return r;
}

CriterionResult crit6_secant(uint64_t seed) {
    Timer timer;
    CriterionResult r{6, "secant facts for the quintic and twisted cubic", true, "", 0};
    std::ostringstream os;
    RationalCurveP3 quintic = RationalCurveP3::quintic();
    int on_secant = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng = Rng::keyed(seed, 0x6A, i);
        std::array<Rat, 4> p{rng.rat(20), rng.rat(20), rng.rat(20), rng.rat(20)};
        bool nz = false;
        for (const Rat& c : p) nz = nz || c != 0;
        if (!nz) p[0] = 1;
        SecantResult res = point_on_secant(quintic, p, SecantMode::RationalCertificate);
        if (res.verdict != SecantVerdict::OnHonestSecant && res.verdict != SecantVerdict::OnCurve)
            res = point_on_secant(quintic, p, SecantMode::ModularEvidence);
        if (res.verdict == SecantVerdict::OnHonestSecant || res.verdict == SecantVerdict::OnCurve)
            ++on_secant;
        else
            os << "quintic point " << i << ": " << secant_verdict_name(res.verdict) << "; ";
    }
    if (on_secant != 100) r.pass = false;

    RationalCurveP3 cubic = RationalCurveP3::twisted_cubic();
    SecantResult res = point_on_secant(cubic, {Rat(0), Rat(1), Rat(0), Rat(0)},
                                       SecantMode::ModularEvidence);
    if (res.verdict != SecantVerdict::NotOnSecant) {
        r.pass = false;
        os << "twisted cubic [0:1:0:0]: " << secant_verdict_name(res.verdict) << "; ";
    }
    BF<RatField> s02s1{Rat(0), Rat(1), Rat(0), Rat(0)};
    if (waring_rank(Q, s02s1) != 3) {
        r.pass = false;
        os << "waring rank of s0^2 s1 != 3; ";
    }
    if (!wps2233_point_outside_secant()) {
        r.pass = false;
        os << "P(2,2,3,3) certificate failed; ";
    }
    r.details = r.pass ? "quintic: 100/100 on honest secants; cubic apex excluded; certificate holds"
                       : os.str();
    r.seconds = timer.stop();
    return r;
}

CriterionResult crit7_sepinv(uint64_t seed) {
    Timer timer;
    CriterionResult r{7, "separating invariants over three primes", true, "", 0};
    std::ostringstream os;
    // Z_6 acting with weights (2,2,3,3) on 4 variables
    auto monoq = [&](int vars, std::initializer_list<std::pair<int, int>> exps) {
        std::vector<int> sizes{vars};
        PolyQ p(sizes);
        std::vector<std::pair<std::pair<int, int>, int>> entries;
        for (auto [var, e] : exps) entries.push_back({{0, var}, e});
        p.add_term(Q, exp_of(sizes, entries), 1);
        return p;
    };
    std::vector<PolyQ> big; // f_i = x0^i x1^{3-i}, g_j = x2^j x3^{2-j}
    for (int i = 0; i <= 3; ++i) big.push_back(monoq(4, {{0, i}, {1, 3 - i}}));
    for (int j = 0; j <= 2; ++j) big.push_back(monoq(4, {{2, j}, {3, 2 - j}}));
    std::vector<PolyQ> small{big[0], big[1], poly_add(Q, big[2], big[3]), big[4], big[5], big[6]};

    for (uint64_t p : default_sepinv_primes(6)) {
        CyclicAction a(6, {2, 2, 3, 3}, p);
        SepReport rf = separates(a, InvariantSet::reduce(big, a), 100000, seed);
        SepReport re = separates(a, InvariantSet::reduce(small, a), 100000, seed);
        if (!rf.clean()) {
            r.pass = false;
            os << "full set violated at p=" << p << "; ";
        }
        if (!re.clean()) {
            r.pass = false;
            os << "six-element set violated at p=" << p << "; ";
        }
    }
    // negative control: {x0^3} for Z_3 acting with weights (1,2)
    {
        uint64_t p = default_sepinv_primes(3, 1)[0];
        CyclicAction a(3, {1, 2}, p);
        PolyQ cube(std::vector<int>{2});
        cube.add_term(Q, exp_of({2}, {{{0, 0}, 3}}), 1);
        SepReport rn = separates(a, InvariantSet::reduce({cube}, a), 2000, seed);
        bool found_sep = false;
        for (const auto& v : rn.violations) found_sep = found_sep || v.kind == "separation";
        if (!found_sep) {
            r.pass = false;
            os << "negative control found no violation; ";
        }
    }
    // affine-cone vs projective consistency on shared samples
    {
        std::vector<PolyQ> ver{monoq(2, {{0, 2}}), monoq(2, {{0, 1}, {1, 1}}), monoq(2, {{1, 2}})};
        // degree-2 sections on weights (1,1): smallest usable prime > 10^6
        uint64_t p2 = default_sepinv_primes(2, 1)[0];
        ConeProjReport c1 = cone_projective_consistency({1, 1}, 2, ver, p2, 20000, seed);
        Morphism phi1 = build_wps_phi1({1, 6, 10, 15});
        uint64_t p30 = default_sepinv_primes(30, 1)[0];
        ConeProjReport c2 =
            cone_projective_consistency({1, 6, 10, 15}, 30, phi1.sections, p30, 20000, seed);
        if (!c1.consistent() || c1.affine_violations || c1.projective_collisions) {
            r.pass = false;
            os << "Veronese cone consistency failed; ";
        }
        if (!c2.consistent() || c2.affine_violations || c2.projective_collisions) {
            r.pass = false;
            os << "phi1 cone consistency failed; ";
        }
    }
    r.details = r.pass ? "both sets separate at 3 primes; control refuted; cone checks consistent"
                       : os.str();
    r.seconds = timer.stop();
    return r;
}

CriterionResult crit8_substitution(uint64_t seed) {
    Timer timer;
    CriterionResult r{8, "equality claims replaced by upper bounds plus decoder certificates", true,
                      "", 0};
    // The lower-bound theory is out of scope; what stands in for the
    // equality claims is: the constructions hit their contracted ambient
    // dimensions and their decoders certify injectivity on samples.
    std::ostringstream os;
    for (std::vector<long> w : {std::vector<long>{1, 6, 10, 15}, {1, 2, 3}, {1, 5, 5}}) {
        long n = static_cast<long>(w.size()) - 1;
        Morphism m1 = build_wps_phi1(w);
        Morphism mk = build_wps_phik(w, 2);
        if (m1.ambient_dim() != n + 1 || mk.ambient_dim() != 2 * n) {
            r.pass = false;
            os << "stated bound missed for weights (" << m1.label << "); ";
        }
        VerificationReport r1 = roundtrip_check(m1, 200, seed, 50);
        VerificationReport rk = roundtrip_check(mk, 200, seed, 50);
        if (!r1.clean() || !rk.clean()) {
            r.pass = false;
            os << "decoder certificate failed for " << m1.label << " / " << mk.label << "; ";
        }
    }
    r.details = r.pass ? "upper-bound constructions and decoder certificates in place (substitution "
                         "for out-of-scope lower bounds)"
                       : os.str();
    r.seconds = timer.stop();
    return r;
}

} // namespace

std::vector<CriterionResult> run_suite(uint64_t seed, const std::vector<std::string>& only) {
    std::vector<std::pair<std::string, std::function<CriterionResult(uint64_t)>>> criteria = {
        {"constructions", crit1_table},   {"collisions", crit2_collisions},
        {"decoders", crit3_roundtrips},   {"graphgadget", crit4_gadget},
        {"rankoracle", crit5_rank_oracle}, {"secant", crit6_secant},
        {"sepinv", crit7_sepinv},         {"substitution", crit8_substitution},
    };
    std::vector<CriterionResult> out;
    int id = 0;
    for (auto& [name, fn] : criteria) {
        ++id;
        if (!only.empty()) {
            bool match = false;
            for (const std::string& o : only)
                match = match || o == std::to_string(id) || name.find(o) != std::string::npos;
            if (!match) continue;
        }
        CriterionResult r = fn(seed);
        r.name = name + ": " + r.name;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace injekt
