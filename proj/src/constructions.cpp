#include "injekt/constructions.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "injekt/gadget.hpp"
#include "injekt/rootsq.hpp"

namespace injekt {

namespace {

const RatField Q;

Rat binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(b);
}

PolyQ mono(const std::vector<int>& sizes,
           const std::vector<std::pair<std::pair<int, int>, int>>& entries, const Rat& coeff = 1) {
    PolyQ p(sizes);
    p.add_term(Q, exp_of(sizes, entries), coeff);
    return p;
}

std::string join(const std::vector<long>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

// all exponent vectors of total degree d in `vars` variables, descending lex
void compositions_desc(long d, int vars, std::vector<int32_t>& cur,
                       std::vector<std::vector<int32_t>>& out) {
    if (vars == 1) {
        cur.push_back(static_cast<int32_t>(d));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long e = d; e >= 0; --e) {
        cur.push_back(static_cast<int32_t>(e));
        compositions_desc(d - e, vars - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int32_t>> compositions(long d, int vars) {
    std::vector<std::vector<int32_t>> out;
    std::vector<int32_t> cur;
    compositions_desc(d, vars, cur, out);
    return out;
}

// The small_target flag asserts the ambient bound 2*dim+1 that the optimal
// families satisfy; the auxiliary embeddings (Segre-Veronese, Chow-Veronese)
// target their natural, larger ambient space.
void finish(Morphism& m, long expected_ambient, bool small_target = true) {
    validate_morphism(m);
    if (m.ambient_dim() != expected_ambient)
        throw Error(m.label + ": ambient dimension " + std::to_string(m.ambient_dim()) +
                    " differs from expected " + std::to_string(expected_ambient));
    if (small_target && m.ambient_dim() > 2 * m.source.dim() + 1)
        throw Error(m.label + ": target exceeds twice the source dimension plus one");
}

long lcm_of(const std::vector<long>& v, size_t from) {
    long l = 1;
    for (size_t i = from; i < v.size(); ++i) l = std::lcm(l, v[i]);
    return l;
}

void check_wps_hypotheses(const std::vector<long>& weights, long d) {
    if (weights.size() < 2 || weights[0] != 1) throw Error("weights must start with q0 = 1");
    size_t n1 = weights.size();
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = i + 1; j < n1; ++j)
            for (size_t l = j + 1; l < n1; ++l) {
                long t = std::lcm(std::lcm(weights[i], weights[j]), weights[l]);
                if (t != d)
                    throw Error("weight triple (" + std::to_string(weights[i]) + "," +
                                std::to_string(weights[j]) + "," + std::to_string(weights[l]) +
                                ") has lcm " + std::to_string(t) + " != " + std::to_string(d));
            }
}

} // namespace

bool distinct_subset_sums(const std::vector<long>& dvec) {
    size_t r = dvec.size();
    if (r > 20) throw Error("subset-sum check supports at most 20 entries");
    for (long e : dvec)
        if (e < 1) throw Error("dvec entries must be positive");
    // signed combinations: +1 for I, -1 for J
    std::vector<int> sign(r, 0);
    for (;;) {
        size_t k = 0;
        while (k < r && sign[k] == 1) sign[k++] = -1;
        if (k == r) break;
        ++sign[k];
        long sum = 0;
        bool nonzero_pattern = false;
        for (size_t i = 0; i < r; ++i) {
            sum += sign[i] * dvec[i];
            nonzero_pattern = nonzero_pattern || sign[i] != 0;
        }
        if (nonzero_pattern && sum == 0) return false;
    }
    return true;
}

namespace {

// the offending pair for error reporting
std::pair<std::vector<int>, std::vector<int>> find_clash(const std::vector<long>& dvec) {
    size_t r = dvec.size();
    std::vector<int> sign(r, 0);
    for (;;) {
        size_t k = 0;
        while (k < r && sign[k] == 1) sign[k++] = -1;
        if (k == r) break;
        ++sign[k];
        long sum = 0;
        bool nz = false;
        for (size_t i = 0; i < r; ++i) {
            sum += sign[i] * dvec[i];
            nz = nz || sign[i] != 0;
        }
        if (nz && sum == 0) {
            std::vector<int> a, b;
            for (size_t i = 0; i < r; ++i) {
                if (sign[i] == 1) a.push_back(static_cast<int>(i) + 1);
                if (sign[i] == -1) b.push_back(static_cast<int>(i) + 1);
            }
            return {a, b};
        }
    }
    return {};
}

} // namespace

Morphism build_segre_veronese(const std::vector<long>& dims, const std::vector<long>& degrees) {
    if (dims.size() != degrees.size() || dims.empty())
        throw Error("dims and degrees must be nonempty of equal length");
    for (long d : degrees)
        if (d < 1) throw Error("degrees must be positive");
    Morphism m;
    m.source = SpaceDescriptor::product(dims);
    m.mdeg = {false, degrees};
    auto sizes = m.source.block_sizes();
    // per-block exponent lists, descending lex; sections in block-major order
    std::vector<std::vector<std::vector<int32_t>>> per_block;
    long count = 1;
    for (size_t b = 0; b < dims.size(); ++b) {
        per_block.push_back(compositions(degrees[b], sizes[b]));
        count *= static_cast<long>(per_block.back().size());
    }
    std::vector<size_t> idx(dims.size(), 0);
    for (long c = 0; c < count; ++c) {
        ExpVec e;
        for (size_t b = 0; b < dims.size(); ++b) e.blocks.push_back(per_block[b][idx[b]]);
        PolyQ s(sizes);
        s.add_term(Q, e, 1);
        m.sections.push_back(std::move(s));
        for (size_t b = dims.size(); b-- > 0;) {
            if (++idx[b] < per_block[b].size()) break;
            idx[b] = 0;
        }
    }
    bool all_linear = true;
    for (long d : degrees) all_linear = all_linear && d == 1;
    m.decoder = all_linear ? "segre" : "";
    m.label = "segre_veronese(" + join(dims) + ";" + join(degrees) + ")";
    Rat expected = 1;
    for (size_t b = 0; b < dims.size(); ++b) expected *= binom(dims[b] + degrees[b], degrees[b]);
    finish(m, expected.get_num().get_si() - 1, false);
    return m;
}

Morphism build_chow_veronese(long mdim, const std::vector<long>& dvec) {
    if (mdim < 1) throw Error("m must be >= 1");
    if (!distinct_subset_sums(dvec)) {
        auto [a, b] = find_clash(dvec);
        std::ostringstream os;
        os << "subset sums clash: {";
        for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
        os << "} vs {";
        for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
        os << "}";
        throw SubsetSumClash(os.str(), a, b);
    }
    size_t r = dvec.size();
    long D = std::accumulate(dvec.begin(), dvec.end(), 0L);
    std::vector<long> dims(r, mdim);
    Morphism m;
    m.source = SpaceDescriptor::product(dims);
    m.mdeg = {false, dvec};
    auto sizes = m.source.block_sizes();
    int tvars = static_cast<int>(mdim) + 1;

    // expand prod_i (sum_j x_{ij} T_j)^{d_i} as T-monomial -> coefficient poly
    using TExp = std::vector<int32_t>;
    std::map<TExp, PolyQ> expansion;
    expansion.emplace(TExp(tvars, 0), mono(sizes, {}, 1));
    for (size_t i = 0; i < r; ++i) {
        std::map<TExp, PolyQ> next;
        for (const auto& alpha : compositions(dvec[i], tvars)) {
            // multinomial d_i! / prod alpha_j!
            Rat coeff = 1;
            long rem = dvec[i];
            for (int j = 0; j < tvars; ++j) {
                coeff *= binom(rem, alpha[j]);
                rem -= alpha[j];
            }
            ExpVec e;
            for (size_t b = 0; b < r; ++b) e.blocks.emplace_back(sizes[b], 0);
            for (int j = 0; j < tvars; ++j) e.blocks[i][j] = alpha[j];
            PolyQ factor(sizes);
            factor.add_term(Q, e, coeff);
            for (const auto& [texp, poly] : expansion) {
                TExp sum = texp;
                for (int j = 0; j < tvars; ++j) sum[j] += alpha[j];
                PolyQ prod = poly_mul(Q, poly, factor);
                auto it = next.find(sum);
                if (it == next.end())
                    next.emplace(std::move(sum), std::move(prod));
                else
                    it->second = poly_add(Q, it->second, prod);
            }
        }
        expansion = std::move(next);
    }
    // sections ordered by descending lex on the T-exponent
    for (const auto& alpha : compositions(D, tvars)) {
        auto it = expansion.find(alpha);
        if (it == expansion.end() || it->second.is_zero())
            throw Error("vanishing coefficient in the power expansion");
        m.sections.push_back(it->second);
    }
    m.decoder = mdim == 1 ? "chow_veronese_m1" : "";
    m.label = "chow_veronese(m=" + std::to_string(mdim) + ";d=" + join(dvec) + ")";
    finish(m, binom(D + mdim, mdim).get_num().get_si() - 1, false);
    return m;
}

Morphism build_tangential_p1p1() {
    Morphism m;
    m.source = SpaceDescriptor::product({1, 1});
    m.mdeg = {false, {1, 2}};
    auto sz = m.source.block_sizes();
    auto sec = [&](std::initializer_list<std::pair<std::vector<std::pair<std::pair<int, int>, int>>, long>>
                       terms) {
        PolyQ p(sz);
        for (auto& [mon, c] : terms) p.add_term(Q, exp_of(sz, mon), c);
        return p;
    };
    m.sections.push_back(sec({{{{{0, 0}, 1}, {{1, 0}, 2}}, 1}}));                             // x0 y0^2
    m.sections.push_back(sec({{{{{0, 1}, 1}, {{1, 0}, 2}}, 1}, {{{{0, 0}, 1}, {{1, 0}, 1}, {{1, 1}, 1}}, 2}}));
    m.sections.push_back(sec({{{{{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}}, 2}, {{{{0, 0}, 1}, {{1, 1}, 2}}, 1}}));
    m.sections.push_back(sec({{{{{0, 1}, 1}, {{1, 1}, 2}}, 1}}));                             // x1 y1^2
    m.decoder = "tangential_p1p1";
    m.label = "tangential_p1p1";
    finish(m, 3);
    return m;
}

Morphism build_tangential_p2p2() {
    Morphism m;
    m.source = SpaceDescriptor::product({2, 2});
    m.mdeg = {false, {1, 2}};
    auto sz = m.source.block_sizes();
    auto add = [&](PolyQ& p, int xi, int ya, int yb, long c) {
        ExpVec e = exp_of(sz, {{{0, xi}, 1}});
        e.blocks[1][ya] += 1;
        e.blocks[1][yb] += 1;
        p.add_term(Q, e, c);
    };
    auto sec = [&](std::initializer_list<std::array<int, 4>> terms) {
        PolyQ p(sz);
        for (auto& t : terms) add(p, t[0], t[1], t[2], t[3]);
        return p;
    };
    m.sections.push_back(sec({{0, 0, 0, 1}}));                              // x0 y0^2
    m.sections.push_back(sec({{1, 1, 1, 1}}));                              // x1 y1^2
    m.sections.push_back(sec({{2, 2, 2, 1}}));                              // x2 y2^2
    m.sections.push_back(sec({{0, 1, 1, 1}, {1, 0, 1, 2}}));                // x0 y1^2 + 2 x1 y0 y1
    m.sections.push_back(sec({{1, 2, 2, 1}, {2, 1, 2, 2}}));                // x1 y2^2 + 2 x2 y1 y2
    m.sections.push_back(sec({{2, 0, 0, 1}, {0, 0, 2, 2}}));                // x2 y0^2 + 2 x0 y0 y2
    m.sections.push_back(sec({{0, 1, 2, 2}, {1, 0, 2, 2}, {2, 0, 1, 2}}));  // 2(x0y1y2+x1y0y2+x2y0y1)
    m.sections.push_back(sec({{1, 0, 0, 1}, {2, 1, 1, -1}, {0, 0, 1, 2}, {1, 1, 2, -2}}));
    m.sections.push_back(sec({{1, 0, 0, 1}, {0, 2, 2, -1}, {0, 0, 1, 2}, {2, 0, 2, -2}}));
    m.decoder = "";
    m.label = "tangential_p2p2";
    finish(m, 8);
    return m;
}

std::vector<Rat> tangential_p2p2_projection_point() {
    // T0^2 T1 + T1^2 T2 + T2^2 T0 in descending-lex degree-3 monomial order
    auto monos = compositions(3, 3);
    std::vector<Rat> p(monos.size(), Rat(0));
    for (size_t i = 0; i < monos.size(); ++i) {
        const auto& a = monos[i];
        if ((a[0] == 2 && a[1] == 1) || (a[1] == 2 && a[2] == 1) || (a[2] == 2 && a[0] == 1)) p[i] = 1;
    }
    return p;
}

Morphism build_p1p1_deg_d(long d) {
    if (d < 3) throw Error("p1p1_deg_d needs d >= 3");
    Morphism m;
    m.source = SpaceDescriptor::product({1, 1});
    m.mdeg = {false, {1, d}};
    auto sz = m.source.block_sizes();
    // coefficient of T0^{d+1-l} T1^l in (x.T)(y.T)^d
    auto coeff_section = [&](long l) {
        PolyQ p(sz);
        if (l <= d) {
            ExpVec e = exp_of(sz, {{{0, 0}, 1}});
            e.blocks[1][0] = static_cast<int32_t>(d - l);
            e.blocks[1][1] = static_cast<int32_t>(l);
            p.add_term(Q, e, binom(d, l));
        }
        if (l >= 1) {
            ExpVec e = exp_of(sz, {{{0, 1}, 1}});
            e.blocks[1][0] = static_cast<int32_t>(d - l + 1);
            e.blocks[1][1] = static_cast<int32_t>(l - 1);
            p.add_term(Q, e, binom(d, l - 1));
        }
        return p;
    };
    for (long l : {0L, 1L, 2L, d, d + 1}) m.sections.push_back(coeff_section(l));
    m.decoder = "p1p1_deg_d";
    m.label = "p1p1_deg_d(d=" + std::to_string(d) + ")";
    finish(m, 4);
    return m;
}

Morphism build_wps_phi1(const std::vector<long>& weights) {
    long d = lcm_of(weights, 1);
    check_wps_hypotheses(weights, d);
    long n = static_cast<long>(weights.size()) - 1;
    Morphism m;
    m.source = SpaceDescriptor::weighted(weights);
    m.mdeg = {true, {d}};
    auto sz = m.source.block_sizes();
    std::vector<long> a(n + 1);
    for (long i = 1; i <= n; ++i) a[i] = d / weights[i];
    m.sections.push_back(mono(sz, {{{0, 0}, static_cast<int>(d)}}));
    m.sections.push_back(
        mono(sz, {{{0, 0}, static_cast<int>(d - weights[1])}, {{0, 1}, 1}}));
    for (long i = 2; i <= n; ++i) {
        PolyQ p(sz);
        p.add_term(Q, exp_of(sz, {{{0, static_cast<int>(i - 1)}, static_cast<int>(a[i - 1])}}), 1);
        p.add_term(Q,
                   exp_of(sz, {{{0, 0}, static_cast<int>(d - weights[i])}, {{0, static_cast<int>(i)}, 1}}),
                   1);
        m.sections.push_back(std::move(p));
    }
    m.sections.push_back(mono(sz, {{{0, static_cast<int>(n)}, static_cast<int>(a[n])}}));
    m.decoder = "wps_phi1";
    m.label = "wps_phi1(" + join(weights) + ")";
    finish(m, n + 1);
    return m;
}

Morphism build_wps_phik(const std::vector<long>& weights, long k) {
    if (k < 2) throw Error("wps_phik needs k >= 2");
    long d = lcm_of(weights, 1);
    check_wps_hypotheses(weights, d);
    long n = static_cast<long>(weights.size()) - 1;
    Morphism m;
    m.source = SpaceDescriptor::weighted(weights);
    m.mdeg = {true, {k * d}};
    auto sz = m.source.block_sizes();
    std::vector<long> a(n + 1);
    for (long i = 0; i <= n; ++i) a[i] = d / weights[i];
    auto b = [&](long i, long j) { return std::lcm(weights[i], weights[j]) / weights[i]; };
    for (long l = 0; l <= 2 * n; ++l) {
        PolyQ p(sz);
        for (long i = std::max(0L, l - n); 2 * i <= l; ++i) {
            long j = l - i;
            ExpVec e = exp_of(sz, {});
            e.blocks[0][i] += static_cast<int32_t>(k * a[i] - b(i, j));
            e.blocks[0][j] += static_cast<int32_t>(b(j, i));
            p.add_term(Q, e, 1);
        }
        m.sections.push_back(std::move(p));
    }
    m.decoder = "wps_phik";
    m.label = "wps_phik(" + join(weights) + ";k=" + std::to_string(k) + ")";
    finish(m, 2 * n);
    return m;
}

Morphism build_p1pn(long n, long d) {
    if (n < 1 || d < 1) throw Error("p1pn needs n, d >= 1");
    Morphism m;
    m.source = SpaceDescriptor::product({1, n});
    m.mdeg = {false, {d, 1}};
    auto sz = m.source.block_sizes();
    auto xs = [&](int e0, int e1, int yi) {
        return mono(sz, {{{0, 0}, e0}, {{0, 1}, e1}, {{1, yi}, 1}});
    };
    for (long i = 0; i <= n; ++i) m.sections.push_back(xs(static_cast<int>(d), 0, static_cast<int>(i)));
    m.sections.push_back(xs(0, static_cast<int>(d), static_cast<int>(n))); // x1^d y_n
    {
        PolyQ p(sz); // d x0 x1^{d-1} y0
        p.add_term(Q, exp_of(sz, {{{0, 0}, 1}, {{0, 1}, static_cast<int>(d - 1)}, {{1, 0}, 1}}), d);
        m.sections.push_back(std::move(p));
    }
    for (long i = 1; i <= n; ++i) {
        PolyQ p(sz); // x1^d y_{i-1} + d x0 x1^{d-1} y_i
        p.add_term(Q, exp_of(sz, {{{0, 1}, static_cast<int>(d)}, {{1, static_cast<int>(i - 1)}, 1}}), 1);
        p.add_term(
            Q,
            exp_of(sz, {{{0, 0}, 1}, {{0, 1}, static_cast<int>(d - 1)}, {{1, static_cast<int>(i)}, 1}}),
            d);
        m.sections.push_back(std::move(p));
    }
    m.decoder = "p1pn";
    m.label = "p1pn(n=" + std::to_string(n) + ";d=" + std::to_string(d) + ")";
    finish(m, 2 * (n + 1));
    return m;
}

Morphism build_p1p1pm_graph(long mm) {
    if (mm < 1) throw Error("p1p1pm_graph needs m >= 1");
    GadgetGraph g = build_graph(mm);
    Morphism m;
    m.source = SpaceDescriptor::product({1, 1, mm});
    m.mdeg = {false, {1, 1, 1}};
    auto sz = m.source.block_sizes();
    auto tri = [&](int a, int b, int c) {
        return std::vector<std::pair<std::pair<int, int>, int>>{{{0, a}, 1}, {{1, b}, 1}, {{2, c}, 1}};
    };
    long kmid = (mm + 1) / 2; // ceil(m/2)
    long klast = kmid + (mm % 2 == 0 ? 1 : -1);
    m.sections.push_back(mono(sz, tri(0, 1, static_cast<int>(mm))));
    m.sections.push_back(mono(sz, tri(1, 1, static_cast<int>(kmid))));
    m.sections.push_back(mono(sz, tri(1, 1, static_cast<int>(klast))));
    for (long c = 0; c <= mm; ++c) {
        PolyQ p(sz);
        p.add_term(Q, exp_of(sz, tri(0, 0, static_cast<int>(c))), 1);
        if (c >= 1) p.add_term(Q, exp_of(sz, tri(0, 1, static_cast<int>(c - 1))), -1);
        if (g.e2_target(static_cast<int>(c)) >= 0)
            p.add_term(Q, exp_of(sz, tri(1, 1, static_cast<int>(c))), -1);
        m.sections.push_back(std::move(p));
    }
    for (long c = 0; c <= mm; ++c) {
        PolyQ p(sz);
        p.add_term(Q, exp_of(sz, tri(1, 0, static_cast<int>(c))), 1);
        if (c <= mm - 1) p.add_term(Q, exp_of(sz, tri(0, 1, static_cast<int>(c))), -1);
        int src = g.e2_source(static_cast<int>(c));
        if (src >= 0) p.add_term(Q, exp_of(sz, tri(1, 1, src)), -1);
        m.sections.push_back(std::move(p));
    }
    m.decoder = "";
    m.label = "p1p1pm_graph(m=" + std::to_string(mm) + ")";
    finish(m, 2 * (mm + 2));
    return m;
}

Morphism build_pn_duf(long n, long k) {
    if (n < 2) throw Error("pn_duf needs n >= 2");
    if (k < 2) throw Error("pn_duf needs k >= 2");
    Morphism m;
    m.source = SpaceDescriptor::product({n - 1});
    m.mdeg = {false, {k}};
    auto sz = m.source.block_sizes();
    for (long l = 2; l <= 2 * n; ++l) {
        PolyQ p(sz);
        for (long i = std::max(1L, l - n); 2 * i <= l; ++i) {
            long j = l - i;
            ExpVec e = exp_of(sz, {});
            e.blocks[0][i - 1] += static_cast<int32_t>(k - 1);
            e.blocks[0][j - 1] += 1;
            p.add_term(Q, e, 1);
        }
        m.sections.push_back(std::move(p));
    }
    m.decoder = "pn_duf";
    m.label = "pn_duf(n=" + std::to_string(n) + ";k=" + std::to_string(k) + ")";
    finish(m, 2 * (n - 1));
    return m;
}

std::vector<Rat> duf_decode(long n, long k, const std::vector<Rat>& coords) {
    if (static_cast<long>(coords.size()) != 2 * n - 1) throw ShapeMismatch("duf_decode coordinate count");
    if (n == 1) return {Rat(1)};
    if (coords[0] != 0) {
        std::vector<Rat> zeta(coords.size());
        for (size_t i = 0; i < coords.size(); ++i) zeta[i] = coords[i] / coords[0];
        std::vector<Rat> x(n + 1); // 1-based
        x[1] = 1;
        for (long j = 2; j <= n; ++j) {
            Rat v = zeta[j + 1 - 2];
            for (long i = 2; 2 * i <= j + 1; ++i) {
                long jj = j + 1 - i;
                v -= rat_pow(x[i], k - 1) * x[jj];
            }
            x[j] = v;
        }
        return std::vector<Rat>(x.begin() + 1, x.end());
    }
    std::vector<Rat> sub(coords.begin() + 2, coords.end());
    std::vector<Rat> inner = duf_decode(n - 1, k, sub);
    std::vector<Rat> out{Rat(0)};
    out.insert(out.end(), inner.begin(), inner.end());
    return out;
}

// ---- decoders ----

namespace {

DecodeResult source_point(PPoint p) {
    DecodeResult r;
    r.kind = DecodeResult::Kind::SourcePoint;
    r.point = std::move(p);
    return r;
}

DecodeResult unavailable(std::string note) {
    DecodeResult r;
    r.kind = DecodeResult::Kind::Unavailable;
    r.note = std::move(note);
    return r;
}

DecodeResult reweighted(std::vector<Rat> w, std::vector<long> powers, std::string note) {
    DecodeResult r;
    r.kind = DecodeResult::Kind::ReweightedPoint;
    r.reweighted = std::move(w);
    r.powers = std::move(powers);
    r.note = std::move(note);
    return r;
}

DecodeResult decode_segre(const Morphism& m, const std::vector<Rat>& z) {
    auto sizes = m.source.block_sizes();
    size_t r = sizes.size();
    std::vector<long> radix(r);
    long total = 1;
    for (size_t b = r; b-- > 0;) {
        radix[b] = total;
        total *= sizes[b];
    }
    long pivot = -1;
    for (long i = 0; i < total; ++i)
        if (z[i] != 0) {
            pivot = i;
            break;
        }
    if (pivot < 0) return unavailable("zero image");
    PPoint x;
    for (size_t b = 0; b < r; ++b) {
        long base = pivot - ((pivot / radix[b]) % sizes[b]) * radix[b];
        std::vector<Rat> blk;
        for (int j = 0; j < sizes[b]; ++j) blk.push_back(z[base + j * radix[b]]);
        x.push_back(std::move(blk));
    }
    return source_point(std::move(x));
}

// For fibers of products of powers of linear forms, distinct subset sums
// force every squarefree factor to be linear, so Yun's gcd chain splits the
// image with no integer factoring.
DecodeResult decode_chow_m1(const Morphism& m, const std::vector<Rat>& z) {
    const std::vector<long>& dvec = m.mdeg.d;
    size_t r = dvec.size();
    BF<RatField> f(z.begin(), z.end());
    if (bf_is_zero(Q, f)) return unavailable("zero image");
    std::map<long, std::vector<size_t>> by_sum;
    for (size_t mask = 1; mask < (size_t(1) << r); ++mask) {
        long s = 0;
        std::vector<size_t> subset;
        for (size_t i = 0; i < r; ++i)
            if (mask & (size_t(1) << i)) {
                s += dvec[i];
                subset.push_back(i);
            }
        by_sum[s] = subset;
    }
    std::vector<std::vector<Rat>> blocks(r);
    std::vector<bool> assigned(r, false);
    for (const auto& [factor, mult] : bf_squarefree_split(f)) {
        if (bf_deg<RatField>(factor) != 1) return unavailable("fiber not rationally split");
        auto it = by_sum.find(mult);
        if (it == by_sum.end()) return unavailable("multiplicity matches no subset sum");
        for (size_t i : it->second) {
            if (assigned[i]) return unavailable("factor subsets overlap");
            assigned[i] = true;
            blocks[i] = {factor[0], factor[1]};
        }
    }
    for (bool a : assigned)
        if (!a) return unavailable("factor subsets do not cover all blocks");
    return source_point(PPoint(blocks.begin(), blocks.end()));
}

DecodeResult decode_tangential_p1p1(const std::vector<Rat>& z) {
    BF<RatField> f(z.begin(), z.end());
    if (bf_is_zero(Q, f)) return unavailable("zero image");
    std::vector<Rat> x, y;
    for (const auto& [factor, mult] : bf_squarefree_split(f)) {
        if (bf_deg<RatField>(factor) != 1) return unavailable("fiber not rationally split");
        std::vector<Rat> dir{factor[0], factor[1]};
        if (mult == 3) {
            x = dir;
            y = dir;
        } else if (mult == 2) {
            y = dir;
        } else if (mult == 1) {
            x = dir;
        }
    }
    if (x.empty() || y.empty()) return unavailable("unexpected multiplicity pattern");
    return source_point({x, y});
}

DecodeResult decode_p1p1_deg_d(const Morphism& m, const std::vector<Rat>& z) {
    long d = m.mdeg.d[1];
    if (z[0] == 0 && z[1] == 0 && z[2] == 0) return source_point({{z[3], z[4]}, {Rat(0), Rat(1)}});
    if (z[2] == 0 && z[3] == 0 && z[4] == 0) return source_point({{z[0], z[1]}, {Rat(1), Rat(0)}});
    if (z[0] == 0) return source_point({{Rat(0), Rat(1)}, {Rat(d) * z[1], z[2]}});
    if (z[4] == 0) return source_point({{Rat(1), Rat(0)}, {Rat(d) * z[0], z[1]}});
    Rat A = z[1] / z[0], B = z[2] / z[0], C = z[3] / z[0], D = z[4] / z[0];
    Rat a = C / D, b = A, cc = A * A - 2 * B;
    Rat beta, alpha;
    if (a * b != Rat((d + 1) * (d + 1))) {
        // two independent linear relations in (beta, alpha)
        MatQ sys(2, 2, Q);
        sys.at(0, 0) = 1;
        sys.at(0, 1) = d;
        sys.at(1, 0) = Rat(d) * Rat(d + 1) - a * b;
        sys.at(1, 1) = Rat(d + 1) - a * b;
        auto sol = solve(Q, sys, {b, -a * cc});
        if (!sol) return unavailable("degenerate linear system");
        beta = (*sol)[0];
        alpha = (*sol)[1];
    } else {
        if (a == 0) return unavailable("inconsistent image");
        alpha = beta = Rat(d + 1) / a;
    }
    return source_point({{Rat(1), beta}, {Rat(1), alpha}});
}

DecodeResult decode_wps_phi1(const Morphism& m, const std::vector<Rat>& z) {
    const std::vector<long>& w = m.source.data;
    long n = static_cast<long>(w.size()) - 1;
    long d = m.mdeg.d[0];
    std::vector<long> a(n + 1);
    for (long i = 1; i <= n; ++i) a[i] = d / w[i];
    if (z[0] != 0) {
        std::vector<Rat> x(n + 1);
        x[0] = 1;
        x[1] = z[1] / z[0];
        for (long i = 2; i <= n; ++i) x[i] = z[i] / z[0] - rat_pow(x[i - 1], a[i - 1]);
        return source_point({x});
    }
    // x0 = 0: z_{i+1} = x_i^{a_i} + [q_{i+1} = d] x_{i+1}; the surviving cross
    // terms have a_{i+1} = 1, so back-substitution recovers the powers w_i.
    std::vector<Rat> coords(n + 1); // 1-based
    coords[n] = z[n + 1];
    for (long i = n - 1; i >= 1; --i)
        coords[i] = z[i + 1] - (w[i + 1] == d ? coords[i + 1] : Rat(0));
    return reweighted(std::vector<Rat>(coords.begin() + 1, coords.end()),
                      std::vector<long>(a.begin() + 1, a.end()),
                      "x0 = 0 stratum, power-map presentation");
}

DecodeResult decode_wps_phik(const Morphism& m, const std::vector<Rat>& z) {
    const std::vector<long>& w = m.source.data;
    long n = static_cast<long>(w.size()) - 1;
    long d = 1;
    for (size_t i = 1; i < w.size(); ++i) d = std::lcm(d, w[i]);
    long k = m.mdeg.d[0] / d;
    std::vector<long> a(n + 1);
    for (long i = 0; i <= n; ++i) a[i] = d / w[i];
    auto b = [&](long i, long j) { return std::lcm(w[i], w[j]) / w[i]; };
    if (z[0] != 0) {
        std::vector<Rat> zeta(z.size());
        for (size_t i = 0; i < z.size(); ++i) zeta[i] = z[i] / z[0];
        std::vector<Rat> x(n + 1);
        x[0] = 1;
        for (long l = 1; l <= n; ++l) {
            Rat v = zeta[l];
            for (long i = 1; 2 * i <= l; ++i) {
                long j = l - i;
                v -= rat_pow(x[i], k * a[i] - b(i, j)) * rat_pow(x[j], b(j, i));
            }
            x[l] = v;
        }
        return source_point({x});
    }
    std::vector<Rat> coords(z.begin() + 2, z.end());
    std::vector<Rat> wpt = duf_decode(n, k, coords);
    return reweighted(std::move(wpt), std::vector<long>(a.begin() + 1, a.end()),
                      "x0 = 0 stratum, power-map presentation");
}

DecodeResult decode_p1pn(const Morphism& m, const std::vector<Rat>& z) {
    long n = m.source.data[1];
    long d = m.mdeg.d[0];
    bool x0_zero = true;
    for (long i = 0; i <= n; ++i) x0_zero = x0_zero && z[i] == 0;
    if (x0_zero) {
        std::vector<Rat> y;
        for (long j = 0; j < n; ++j) y.push_back(z[n + 3 + j]);
        y.push_back(z[n + 1]);
        return source_point({{Rat(0), Rat(1)}, y});
    }
    std::vector<Rat> y(z.begin(), z.begin() + n + 1);
    long kk = 0;
    while (y[kk] == 0) ++kk;
    long mm = n;
    while (y[mm] == 0) --mm;
    Rat den = z[n + 2 + kk];
    if (den == 0) return source_point({{Rat(1), Rat(0)}, y});
    Rat num = mm < n ? z[n + 3 + mm] : z[n + 1];
    Rat x1 = Rat(d) * z[kk] * num / (z[mm] * den);
    return source_point({{Rat(1), x1}, y});
}

DecodeResult decode_pn_duf(const Morphism& m, const std::vector<Rat>& z) {
    long n = m.source.data[0] + 1;
    long k = m.mdeg.d[0];
    return source_point({duf_decode(n, k, z)});
}

} // namespace

DecodeResult decode(const Morphism& m, const std::vector<Rat>& image) {
    if (image.size() != m.sections.size()) throw ShapeMismatch("image coordinate count mismatch");
    bool nz = false;
    for (const Rat& c : image) nz = nz || c != 0;
    if (!nz) throw Error("zero image vector");
    if (m.decoder.empty()) return unavailable("no decoder");
    if (m.decoder == "identity") return source_point({image});
    if (m.decoder == "segre") return decode_segre(m, image);
    if (m.decoder == "chow_veronese_m1") return decode_chow_m1(m, image);
    if (m.decoder == "tangential_p1p1") return decode_tangential_p1p1(image);
    if (m.decoder == "p1p1_deg_d") return decode_p1p1_deg_d(m, image);
    if (m.decoder == "wps_phi1") return decode_wps_phi1(m, image);
    if (m.decoder == "wps_phik") return decode_wps_phik(m, image);
    if (m.decoder == "p1pn") return decode_p1pn(m, image);
    if (m.decoder == "pn_duf") return decode_pn_duf(m, image);
    throw Error("unknown decoder: " + m.decoder);
}

std::vector<FamilyInfo> family_table() {
    return {
        {"segre_veronese", "--dims n1,..,nr --degrees d1,..,dr", "prod C(ni+di,di) - 1"},
        {"chow_veronese", "--m m --dvec d1,..,dr", "C(sum d + m, m) - 1"},
        {"tangential_p1p1", "", "3"},
        {"tangential_p2p2", "", "8"},
        {"p1p1_deg_d", "--d d (d >= 3)", "4"},
        {"wps_phi1", "--weights 1,q1,..,qn", "n + 1"},
        {"wps_phik", "--weights 1,q1,..,qn --k k (k >= 2)", "2n"},
        {"p1pn", "--n n --d d", "2(n + 1)"},
        {"p1p1pm_graph", "--m m", "2(m + 2)"},
        {"pn_duf", "--n n --k k (n, k >= 2)", "2(n - 1)"},
    };
}

Morphism build_family(const std::string& id, const FamilyParams& p) {
    auto need = [&](const std::optional<long>& v, const char* name) {
        if (!v) throw Error(std::string("family ") + id + " needs --" + name);
        return *v;
    };
    if (id == "segre_veronese") {
        if (p.dims.empty() || p.degrees.empty()) throw Error("segre_veronese needs --dims and --degrees");
        return build_segre_veronese(p.dims, p.degrees);
    }
    if (id == "chow_veronese") {
        if (p.dvec.empty()) throw Error("chow_veronese needs --dvec");
        return build_chow_veronese(need(p.m, "m"), p.dvec);
    }
    if (id == "tangential_p1p1") return build_tangential_p1p1();
    if (id == "tangential_p2p2") return build_tangential_p2p2();
    if (id == "p1p1_deg_d") return build_p1p1_deg_d(need(p.d, "d"));
    if (id == "wps_phi1") {
        if (p.weights.empty()) throw Error("wps_phi1 needs --weights");
        return build_wps_phi1(p.weights);
    }
    if (id == "wps_phik") {
        if (p.weights.empty()) throw Error("wps_phik needs --weights");
        return build_wps_phik(p.weights, need(p.k, "k"));
    }
    if (id == "p1pn") return build_p1pn(need(p.n, "n"), need(p.d, "d"));
    if (id == "p1p1pm_graph") return build_p1p1pm_graph(need(p.m, "m"));
    if (id == "pn_duf") return build_pn_duf(need(p.n, "n"), need(p.k, "k"));
    throw Error("unknown family: " + id);
}

} // namespace injekt
