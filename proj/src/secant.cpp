#include "injekt/secant.hpp"

#include "injekt/fpfactor.hpp"
#include "injekt/waring.hpp"

namespace injekt {

namespace {

const RatField Q;

std::vector<Rat> curve_at(const RationalCurveP3& c, const Rat& s0, const Rat& s1) {
    std::vector<Rat> v;
    for (const auto& f : c.coords) v.push_back(bf_eval(Q, f, s0, s1));
    return v;
}

// integral primitive copy of a rational binary form
std::vector<Int> integral_model(const BF<RatField>& f) {
    Int den = 1;
    for (const Rat& c : f) den = lcm(den, c.get_den());
    std::vector<Int> z;
    Int content = 0;
    for (const Rat& c : f) {
        Rat scaled = c * Rat(den);
        scaled.canonicalize();
        z.push_back(scaled.get_num());
        content = gcd(content, z.back());
    }
    if (content > 1)
        for (Int& x : z) x /= content;
    return z;
}

BF<RatField> squarefree_part(const BF<RatField>& f) {
    if (bf_deg<RatField>(f) <= 1) return f;
    BF<RatField> g = bf_gcd(Q, bf_d_s0(Q, f), bf_d_s1(Q, f));
    BF<RatField> rep = bf_gcd(Q, f, g);
    if (bf_deg<RatField>(rep) == 0) return f;
    return bf_divexact(Q, f, rep);
}

} // namespace

RationalCurveP3 RationalCurveP3::twisted_cubic() {
    RationalCurveP3 c;
    c.coords = {BF<RatField>{1, 0, 0, 0}, BF<RatField>{0, 1, 0, 0}, BF<RatField>{0, 0, 1, 0},
                BF<RatField>{0, 0, 0, 1}};
    return c;
}

RationalCurveP3 RationalCurveP3::quintic() {
    RationalCurveP3 c;
    c.coords = {BF<RatField>{1, 0, 0, 0, 0, 0}, BF<RatField>{0, 1, 1, 0, 0, 0},
                BF<RatField>{0, 0, 0, 1, 1, 0}, BF<RatField>{0, 0, 0, 0, 0, 1}};
    return c;
}

void validate_curve(const RationalCurveP3& c) {
    size_t len = c.coords[0].size();
    if (len < 2) throw Error("curve parameterization must have positive degree");
    std::optional<BF<RatField>> g;
    for (const auto& f : c.coords) {
        if (f.size() != len) throw ShapeMismatch("curve coordinate degrees differ");
        if (bf_is_zero(Q, f)) continue;
        g = g ? bf_gcd(Q, *g, f) : f;
    }
    if (!g) throw Error("curve parameterization is zero");
    if (bf_deg<RatField>(*g) > 0) throw Error("curve parameterization has a base point");
}

std::string secant_verdict_name(SecantVerdict v) {
    switch (v) {
        case SecantVerdict::OnCurve: return "OnCurve";
        case SecantVerdict::OnHonestSecant: return "OnHonestSecant";
        case SecantVerdict::NoSecantFound: return "NoSecantFound";
        case SecantVerdict::NotOnSecant: return "NotOnSecant";
    }
    return "?";
}

bool point_on_curve(const RationalCurveP3& c, const std::array<Rat, 4>& p) {
    validate_curve(c);
    std::optional<BF<RatField>> g;
    bool all_zero = true;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            BF<RatField> minor =
                bf_sub(Q, bf_scale(Q, c.coords[i], p[j]), bf_scale(Q, c.coords[j], p[i]));
            if (bf_is_zero(Q, minor)) continue;
            all_zero = false;
            g = g ? bf_gcd(Q, *g, minor) : minor;
            if (bf_deg<RatField>(*g) == 0) return false;
        }
    if (all_zero) return true; // c(s) proportional to p identically
    return bf_deg<RatField>(*g) > 0;
}

std::vector<BiF<RatField>> secant_system(const RationalCurveP3& c, const std::array<Rat, 4>& p,
                                         std::vector<BiF<RatField>>* undivided) {
    validate_curve(c);
    int d = c.degree();
    // basis of the functionals vanishing at p
    MatQ prow(1, 4, Q);
    for (int j = 0; j < 4; ++j) prow.at(0, j) = p[j];
    auto ls = nullspace(Q, prow);
    if (ls.size() != 3) throw Error("point of P^3 must be nonzero");
    std::array<BF<RatField>, 3> a;
    for (int i = 0; i < 3; ++i) {
        a[i] = bf_zero(Q, d);
        for (int j = 0; j < 4; ++j)
            a[i] = bf_add(Q, a[i], bf_scale(Q, c.coords[j], ls[i][j]));
    }
    // curve inside a plane through p <=> the a_i are linearly dependent
    MatQ am(3, d + 1, Q);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k <= d; ++k) am.at(i, k) = a[i][k];
    if (rank(Q, am) < 3) throw CurveDegenerate("curve lies in a plane through the point");

    std::vector<BiF<RatField>> gs;
    static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto& pr : pairs) {
        BiF<RatField> f =
            bif_sub(Q, bif_outer(Q, a[pr[0]], a[pr[1]]), bif_outer(Q, a[pr[1]], a[pr[0]]));
        if (undivided) undivided->push_back(f);
        BiF<RatField> g;
        if (!bif_divide_diagonal(Q, f, g))
            throw Error("antisymmetric form not divisible by the diagonal");
        gs.push_back(std::move(g));
    }
    return gs;
}

namespace {

// linear form in t vanishing at t = s*, over any field
template <class F>
BF<F> diagonal_at(const F& fld, const typename F::Element& s0, const typename F::Element& s1) {
    return BF<F>{fld.neg(s1), s0};
}

// gcd in t of the specializations at s*; true result flags "whole fiber
// vanishes" (every form zero at s*).
template <class F>
bool specialized_gcd(const F& fld, const std::vector<BF<F>>& specs, BF<F>& g) {
    bool any = false;
    for (const auto& s : specs) {
        if (bf_is_zero(fld, s)) continue;
        g = any ? bf_gcd(fld, g, s) : s;
        any = true;
    }
    return !any;
}

} // namespace

SecantResult point_on_secant(const RationalCurveP3& c, const std::array<Rat, 4>& p, SecantMode mode,
                             std::vector<uint64_t> primes_override) {
    SecantResult out;
    if (point_on_curve(c, p)) {
        out.verdict = SecantVerdict::OnCurve;
        return out;
    }
    auto gs = secant_system(c, p, nullptr); // may throw CurveDegenerate

    // pairwise resultants over Q
    std::vector<BF<RatField>> res_q;
    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l) res_q.push_back(bif_resultant_t(Q, gs[k], gs[l]));

    if (mode == SecantMode::RationalCertificate) {
        BF<RatField> h;
        bool have = false;
        for (const auto& r : res_q) {
            if (bf_is_zero(Q, r)) continue;
            h = have ? bf_gcd(Q, h, r) : r;
            have = true;
        }
        std::vector<std::array<Rat, 2>> candidates;
        if (have && bf_deg<RatField>(h) > 0) {
            for (const BinRoot& root : rational_roots(h).roots)
                candidates.push_back({Rat(root.p), Rat(root.q)});
        } else if (!have) {
            // shared components: probe a small rational grid
            candidates.push_back({Rat(1), Rat(0)});
            for (long k = -8; k <= 8; ++k) candidates.push_back({Rat(k), Rat(1)});
        }
        for (const auto& s : candidates) {
            std::vector<BF<RatField>> specs;
            for (const auto& g : gs) specs.push_back(bif_spec_s(Q, g, s[0], s[1]));
            BF<RatField> g;
            std::vector<std::array<Rat, 2>> tcands;
            if (specialized_gcd(Q, specs, g)) {
                tcands.push_back(s[1] != 0 ? std::array<Rat, 2>{Rat(1), Rat(0)}
                                           : std::array<Rat, 2>{Rat(0), Rat(1)});
            } else {
                if (bf_deg<RatField>(g) == 0) continue;
                BF<RatField> diag = diagonal_at(Q, s[0], s[1]);
                while (bf_deg<RatField>(g) > 0 && bf_divides(Q, diag, g))
                    g = bf_divexact(Q, g, diag);
                if (bf_deg<RatField>(g) == 0) continue;
                for (const BinRoot& root : rational_roots(g).roots)
                    tcands.push_back({Rat(root.p), Rat(root.q)});
            }
            for (const auto& t : tcands) {
                // verify: two distinct curve points whose span contains p
                MatQ line(2, 4, Q), full(3, 4, Q);
                auto cs = curve_at(c, s[0], s[1]);
                auto ct = curve_at(c, t[0], t[1]);
                for (int j = 0; j < 4; ++j) {
                    line.at(0, j) = cs[j];
                    line.at(1, j) = ct[j];
                    full.at(0, j) = cs[j];
                    full.at(1, j) = ct[j];
                    full.at(2, j) = p[j];
                }
                if (rank(Q, line) == 2 && rank(Q, full) == 2) {
                    out.verdict = SecantVerdict::OnHonestSecant;
                    out.witness = {{s[0], s[1]}, {t[0], t[1]}};
                    out.note = "rational witness";
                    return out;
                }
            }
        }
        out.verdict = SecantVerdict::NoSecantFound;
        out.note = "no rational certificate found";
        return out;
    }

    // ---- modular evidence mode ----
    // bad-reduction constants: extreme coefficients and squarefree
    // discriminant certificates of the nonzero resultants
    std::vector<Int> avoid;
    for (const auto& r : res_q) {
        if (bf_is_zero(Q, r)) continue;
        std::vector<Int> z = integral_model(r);
        size_t lo = 0, hi = z.size();
        while (lo < hi && z[lo] == 0) ++lo;
        while (hi > lo && z[hi - 1] == 0) --hi;
        avoid.push_back(z[lo]);
        avoid.push_back(z[hi - 1]);
        BF<RatField> sf = squarefree_part(r);
        if (bf_deg<RatField>(sf) >= 1) {
            Rat dc = bf_resultant(Q, bf_d_s0(Q, sf), bf_d_s1(Q, sf));
            if (dc != 0) avoid.push_back(dc.get_num());
        }
    }
    // integral models of the system (one common denominator per form)
    std::vector<std::vector<std::vector<Int>>> gz; // [form][j][i]
    for (const auto& g : gs) {
        Int den = 1;
        for (const auto& cj : g.c)
            for (const Rat& x : cj) den = lcm(den, x.get_den());
        avoid.push_back(den);
        std::vector<std::vector<Int>> rows;
        for (const auto& cj : g.c) {
            std::vector<Int> row;
            for (const Rat& x : cj) {
                Rat scaled = x * Rat(den);
                scaled.canonicalize();
                row.push_back(scaled.get_num());
            }
            rows.push_back(std::move(row));
        }
        gz.push_back(std::move(rows));
    }

    std::vector<uint64_t> primes = std::move(primes_override);
    if (primes.empty()) {
        uint64_t p0 = 10000;
        while (primes.size() < 3) {
            p0 = next_prime_congruent(p0, 0, 0);
            bool good = true;
            for (const Int& a : avoid)
                if (a != 0 && mpz_divisible_ui_p(a.get_mpz_t(), p0)) good = false;
            if (good) primes.push_back(p0);
        }
    }

    bool all_pos = true, all_neg = true, inconclusive = false;
    for (uint64_t pr : primes) {
        FpField F(pr);
        std::vector<BiF<FpField>> gf;
        bool prime_ok = true;
        for (const auto& rows : gz) {
            BiF<FpField> g = BiF<FpField>::zero(F, static_cast<int>(rows[0].size()) - 1,
                                                static_cast<int>(rows.size()) - 1);
            for (size_t j = 0; j < rows.size(); ++j)
                for (size_t i = 0; i < rows[j].size(); ++i) g.c[j][i] = F.from_mpz(rows[j][i]);
            if (bif_is_zero(F, g)) prime_ok = false;
            gf.push_back(std::move(g));
        }
        if (!prime_ok) {
            inconclusive = true;
            out.primes.push_back(pr);
            out.prime_has_solution.push_back(false);
            continue;
        }
        bool exists = false;
        // rational fibers
        auto check_fiber = [&](uint64_t s0, uint64_t s1) {
            std::vector<BF<FpField>> specs;
            for (const auto& g : gf) specs.push_back(bif_spec_s(F, g, s0, s1));
            BF<FpField> g;
            if (specialized_gcd(F, specs, g)) return true;
            if (bf_deg<FpField>(g) == 0) return false;
            BF<FpField> diag = diagonal_at(F, s0, s1);
            while (bf_deg<FpField>(g) > 0 && bf_divides(F, diag, g)) g = bf_divexact(F, g, diag);
            return bf_deg<FpField>(g) > 0;
        };
        if (check_fiber(1, 0)) exists = true;
        for (uint64_t x = 0; x < pr && !exists; ++x)
            if (check_fiber(x, 1)) exists = true;
        if (!exists) {
            // irrational fibers: roots of the resultant gcd in extensions
            std::vector<BF<FpField>> resf;
            for (int k = 0; k < 3; ++k)
                for (int l = k + 1; l < 3; ++l) {
                    BF<FpField> r = bif_resultant_t(F, gf[k], gf[l]);
                    if (!bf_is_zero(F, r)) resf.push_back(std::move(r));
                }
            if (resf.empty()) {
                inconclusive = true;
                out.primes.push_back(pr);
                out.prime_has_solution.push_back(false);
                continue;
            }
            BF<FpField> h = resf[0];
            for (size_t i = 1; i < resf.size(); ++i) h = bf_gcd(F, h, resf[i]);
            int sa, sb;
            BF<FpField> core;
            bf_strip(F, h, sa, sb, core);
            fpx::P u(core.begin(), core.end());
            fpx::trim(u);
            if (fpx::deg(u) >= 2) {
                // the dehomogenization reads index i as the s1-power, so a
                // root alpha of a factor is the projective parameter [1:alpha]
                for (auto& [hpoly, mult] : fpx::factor(F, u, 1234 + pr)) {
                    if (fpx::deg(hpoly) < 2 || exists) continue;
                    FqField ext(pr, hpoly);
                    auto alpha = ext.gen();
                    std::vector<BF<FqField>> specs;
                    for (const auto& g : gf) specs.push_back(bif_spec_s_ext(ext, g, ext.one(), alpha));
                    BF<FqField> g;
                    if (specialized_gcd(ext, specs, g)) {
                        exists = true;
                        break;
                    }
                    if (bf_deg<FqField>(g) == 0) continue;
                    BF<FqField> diag = diagonal_at(ext, ext.one(), alpha);
                    while (bf_deg<FqField>(g) > 0 && bf_divides(ext, diag, g))
                        g = bf_divexact(ext, g, diag);
                    if (bf_deg<FqField>(g) > 0) exists = true;
                }
            }
        }
        out.primes.push_back(pr);
        out.prime_has_solution.push_back(exists);
        all_pos = all_pos && exists;
        all_neg = all_neg && !exists;
    }
    if (inconclusive) {
        out.verdict = SecantVerdict::NoSecantFound;
        out.note = "bad reduction at an evidence prime";
    } else if (all_pos) {
        out.verdict = SecantVerdict::OnHonestSecant;
        out.note = "off-diagonal solutions exist modulo every evidence prime";
    } else if (all_neg) {
        out.verdict = SecantVerdict::NotOnSecant;
        out.note = "no off-diagonal solution modulo any evidence prime";
    } else {
        out.verdict = SecantVerdict::NoSecantFound;
        out.note = "mixed modular evidence";
    }
    return out;
}

bool wps2233_certificate(const BF<RatField>& cubic, const BF<RatField>& quadric) {
    if (cubic.size() != 4 || quadric.size() != 3)
        throw ShapeMismatch("expected a binary cubic and a binary quadric");
    bool cubic_zero = bf_is_zero(Q, cubic), quad_zero = bf_is_zero(Q, quadric);
    if (cubic_zero && quad_zero) throw Error("zero vector is not a point");
    bool cubic_in = cubic_zero || binary_form_rank(Q, cubic) <= 2;
    bool quad_in = quad_zero || binary_form_rank(Q, quadric) <= 2;
    return !(cubic_in && quad_in);
}

bool wps2233_point_outside_secant() {
    BF<RatField> v{Rat(0), Rat(0), Rat(1), Rat(0)}; // s0 s1^2
    BF<RatField> w{Rat(0), Rat(0), Rat(0)};
    return wps2233_certificate(v, w);
}

} // namespace injekt
