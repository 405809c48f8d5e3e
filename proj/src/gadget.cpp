#include "injekt/gadget.hpp"

#include <sstream>

#include "injekt/constructions.hpp"
#include "injekt/rng.hpp"

namespace injekt {

namespace {
const RatField Q;
}

GadgetGraph build_graph(long m) {
    if (m < 1) throw Error("gadget graph needs m >= 1");
    GadgetGraph g;
    g.m = m;
    for (long i = 0; i < m; ++i) g.e1.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    // zig-zag path (0,m),(m,1),(1,m-1),... with floor(m/2)+floor((m-1)/2) = m-1 edges
    for (long t = 0;; ++t) {
        if (t % 2 == 0) {
            long i = t / 2;
            if (i >= m / 2) break;
            g.e2.emplace_back(static_cast<int>(i), static_cast<int>(m - i));
        } else {
            long i = (t - 1) / 2;
            if (i >= (m - 1) / 2) break;
            g.e2.emplace_back(static_cast<int>(m - i), static_cast<int>(i + 1));
        }
    }
    if (static_cast<long>(g.e2.size()) != m - 1) throw Error("E2 edge count mismatch");
    for (size_t t = 0; t + 1 < g.e2.size(); ++t)
        if (g.e2[t].second != g.e2[t + 1].first) throw Error("E2 is not a directed path");
    return g;
}

GadgetSubspace build_subspace(const GadgetGraph& g) {
    GadgetSubspace s;
    int m = static_cast<int>(g.m);
    for (auto& [i, j] : g.e1) {
        Tensor222n t = Tensor222n::zero(m);
        t.slices[j][0][0] = 1; // e0 (x) e0 (x) e_j
        t.slices[i][0][1] = 1; // e0 (x) e1 (x) e_i
        t.slices[i][1][0] = 1; // e1 (x) e0 (x) e_i
        s.u.push_back(std::move(t));
    }
    for (auto& [i, j] : g.e2) {
        Tensor222n t = Tensor222n::zero(m);
        t.slices[j][1][0] = 1; // e1 (x) e0 (x) e_j
        t.slices[i][1][1] = 1; // e1 (x) e1 (x) e_i
        t.slices[i][0][0] = 1; // e0 (x) e0 (x) e_i
        s.v.push_back(std::move(t));
    }
    return s;
}

std::pair<GadgetGraph, GadgetSubspace> build_gadget(long m) {
    GadgetGraph g = build_graph(m);
    GadgetSubspace s = build_subspace(g);
    return {std::move(g), std::move(s)};
}

std::array<Rat, 4> psi(const GadgetGraph& g, int vertex, const EdgeWeighting& w) {
    if (vertex < 0 || vertex > g.m) throw Error("vertex out of range");
    if (w.size() != g.e1.size() + g.e2.size()) throw ShapeMismatch("weighting size mismatch");
    std::array<Rat, 4> out{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (size_t e = 0; e < g.e1.size(); ++e) {
        if (g.e1[e].second == vertex) out[0] += w[e];
        if (g.e1[e].first == vertex) out[1] += w[e];
    }
    for (size_t e = 0; e < g.e2.size(); ++e) {
        if (g.e2[e].second == vertex) out[2] += w[g.e1.size() + e];
        if (g.e2[e].first == vertex) out[3] += w[g.e1.size() + e];
    }
    return out;
}

int zw_dimension(const GadgetGraph& g, const EdgeWeighting& w) {
    MatQ mat(g.m + 1, 4, Q);
    for (int k = 0; k <= g.m; ++k) {
        auto row = psi(g, k, w);
        for (int j = 0; j < 4; ++j) mat.at(k, j) = row[j];
    }
    return static_cast<int>(rank(Q, mat));
}

Tensor222n weighting_tensor(const GadgetGraph& g, const GadgetSubspace& s, const EdgeWeighting& w) {
    if (w.size() != s.u.size() + s.v.size()) throw ShapeMismatch("weighting size mismatch");
    Tensor222n t = Tensor222n::zero(static_cast<int>(g.m));
    for (size_t e = 0; e < s.u.size(); ++e) t.add_scaled(s.u[e], w[e]);
    for (size_t e = 0; e < s.v.size(); ++e) t.add_scaled(s.v[e], w[s.u.size() + e]);
    return t;
}

bool check_flattening_correspondence(const GadgetGraph& g, const GadgetSubspace& s,
                                     const EdgeWeighting& w) {
    return zw_dimension(g, w) == flattening_rank(weighting_tensor(g, s, w));
}

namespace {

std::string point_str(const std::vector<Rat>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

EdgeWeighting random_weighting(Rng& rng, size_t count, long height) {
    EdgeWeighting w(count);
    for (auto& c : w) c = rng.rat(height);
    return w;
}

bool all_zero(const EdgeWeighting& w, size_t from, size_t to) {
    for (size_t i = from; i < to; ++i)
        if (w[i] != 0) return false;
    return true;
}

} // namespace

GadgetReport check_subspace_samples(long m, uint64_t trials, uint64_t seed) {
    auto [g, s] = build_gadget(m);
    std::vector<Tensor222n> wspan = s.all();
    GadgetReport rep;
    rep.m = m;
    rep.trials = trials;
    rep.seed = seed;
    size_t ne1 = s.u.size(), ne2 = s.v.size();

    for (uint64_t trial = 0; trial < trials; ++trial) {
        // (a) both components nonzero -> flattening rank >= 3
        if (ne2 > 0) {
            Rng rng = Rng::keyed(seed, 0xA, trial);
            EdgeWeighting w = random_weighting(rng, ne1 + ne2, 5);
            if (all_zero(w, 0, ne1)) w[rng.below(ne1)] = 1;
            if (all_zero(w, ne1, ne1 + ne2)) w[ne1 + rng.below(ne2)] = 1;
            ++rep.checks_a;
            if (flattening_rank(weighting_tensor(g, s, w)) < 3)
                rep.violations.push_back("(a) m=" + std::to_string(m) +
                                         " mixed weighting with flattening rank < 3");
        }
        // (b) single-component weightings are border-rank-2 tangent vectors
        {
            Rng rng = Rng::keyed(seed, 0xB, trial);
            EdgeWeighting w(ne1 + ne2, Rat(0));
            bool use_v = ne2 > 0 && trial % 2 == 1;
            size_t lo = use_v ? ne1 : 0, hi = use_v ? ne1 + ne2 : ne1;
            for (size_t i = lo; i < hi; ++i) w[i] = rng.rat(5);
            if (all_zero(w, lo, hi)) w[lo + rng.below(hi - lo)] = 1;
            ++rep.checks_b;
            if (rank_decision(weighting_tensor(g, s, w)).cls != RankClass::Border2Rank3)
                rep.violations.push_back("(b) m=" + std::to_string(m) +
                                         " single-component weighting not Border2Rank3");
        }
        // (c) spans of two independent rank-1 tensors avoid W
        {
            Rng rng = Rng::keyed(seed, 0xC, trial);
            auto rand_vec2 = [&] {
                std::array<Rat, 2> v{rng.rat(3), rng.rat(3)};
                if (v[0] == 0 && v[1] == 0) v[0] = 1;
                return v;
            };
            auto rand_w = [&] {
                std::vector<Rat> v(m + 1);
                bool nz = false;
                for (auto& c : v) {
                    c = rng.rat(3);
                    nz = nz || c != 0;
                }
                if (!nz) v[rng.below(v.size())] = 1;
                return v;
            };
            auto ua = rand_vec2();
            auto va = rand_vec2();
            auto wa = rand_w();
            auto ub = rand_vec2();
            auto vb = rand_vec2();
            auto wb = rand_w();
            // structured strata: share one or two Segre factors
            switch (trial % 4) {
                case 1: ub = ua; break;
                case 2: ub = ua; vb = va; break;
                case 3: wb = wa; break;
                default: break;
            }
            Tensor222n tp = Tensor222n::rank1(ua, va, wa);
            Tensor222n tq = Tensor222n::rank1(ub, vb, wb);
            ++rep.checks_c;
            if (secant_span_meets_subspace(tp, tq, wspan))
                rep.violations.push_back("(c) m=" + std::to_string(m) + " secant span meets W at " +
                                         point_str(tp.to_vector()) + " / " + point_str(tq.to_vector()));
        }
        // (d) rank-1 tensors avoid W itself
        {
            Rng rng = Rng::keyed(seed, 0xD, trial);
            auto rnd2 = [&] {
                std::array<Rat, 2> v{rng.rat(3), rng.rat(3)};
                if (v[0] == 0 && v[1] == 0) v[0] = 1;
                return v;
            };
            std::vector<Rat> wv(m + 1);
            bool nz = false;
            for (auto& c : wv) {
                c = rng.rat(3);
                nz = nz || c != 0;
            }
            if (!nz) wv[0] = 1;
            Tensor222n t = Tensor222n::rank1(rnd2(), rnd2(), wv);
            ++rep.checks_d;
            MatQ base(wspan.size(), 4 * (m + 1), Q), ext(wspan.size() + 1, 4 * (m + 1), Q);
            for (size_t i = 0; i < wspan.size(); ++i) {
                auto v = wspan[i].to_vector();
                for (size_t j = 0; j < v.size(); ++j) {
                    base.at(i, j) = v[j];
                    ext.at(i, j) = v[j];
                }
            }
            auto tv = t.to_vector();
            for (size_t j = 0; j < tv.size(); ++j) ext.at(wspan.size(), j) = tv[j];
            if (rank(Q, ext) == rank(Q, base))
                rep.violations.push_back("(d) m=" + std::to_string(m) + " rank-1 tensor inside W");
        }
    }
    return rep;
}

bool check_section_annihilation(long m) {
    Morphism mor = build_p1p1pm_graph(m);
    auto [g, s] = build_gadget(m);
    auto basis = s.all();
    // pair each section, read as a functional, with every basis tensor
    for (const PolyQ& sec : mor.sections) {
        for (const Tensor222n& t : basis) {
            Rat pairing = 0;
            for (const auto& [e, c] : sec.terms) {
                int a = e.blocks[0][0] == 1 ? 0 : 1;
                int b = e.blocks[1][0] == 1 ? 0 : 1;
                int cc = 0;
                for (size_t j = 0; j < e.blocks[2].size(); ++j)
                    if (e.blocks[2][j] == 1) cc = static_cast<int>(j);
                pairing += c * t.slices[cc][a][b];
            }
            if (pairing != 0) return false;
        }
    }
    // linear independence: the sections span the full annihilator
    size_t dim = 4 * static_cast<size_t>(m + 1);
    MatQ coeffs(mor.sections.size(), dim, Q);
    for (size_t i = 0; i < mor.sections.size(); ++i) {
        for (const auto& [e, c] : mor.sections[i].terms) {
            int a = e.blocks[0][0] == 1 ? 0 : 1;
            int b = e.blocks[1][0] == 1 ? 0 : 1;
            int cc = 0;
            for (size_t j = 0; j < e.blocks[2].size(); ++j)
                if (e.blocks[2][j] == 1) cc = static_cast<int>(j);
            coeffs.at(i, (static_cast<size_t>(a) * 2 + b) * (m + 1) + cc) = c;
        }
    }
    if (rank(Q, coeffs) != mor.sections.size()) return false;
    return mor.sections.size() == dim - basis.size();
}

} // namespace injekt
