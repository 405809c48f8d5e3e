#pragma once

#include <map>

#include "injekt/binform.hpp"
#include "injekt/rng.hpp"

namespace injekt {

// Integer factorization: trial division plus Pollard-Brent rho. `complete`
// is false when a composite cofactor resisted the budget; callers then see
// only the divisors of the factored part.
struct IntFactorization {
    std::map<Int, int> primes;
    Int unfactored = 1; // 1 when complete
    bool complete = true;
};

namespace detail {

inline Int pollard_brent(const Int& n, unsigned salt) {
    // deterministic parameters, cycling through salts on failure; bounded
    // iteration count so hard composites fall through to "unfactored"
    Int x = mix64(0x9e3779b9 + salt) % n, c = mix64(salt * 2654435761u + 1) % n + 1, y = x, d = 1;
    Int q;
    for (long iter = 0; d == 1; ++iter) {
        if (iter > (1L << 18)) return 0;
        x = (x * x + c) % n;
        y = (y * y + c) % n;
        y = (y * y + c) % n;
        if (x == y) return 0; // cycle without factor
        q = abs(x - y);
        d = gcd(q, n);
    }
    return d == n ? Int(0) : d;
}

inline void factor_rec(Int n, IntFactorization& out, int depth) {
    if (n == 1) return;
    if (n.fits_ulong_p() ? is_prime_u64(n.get_ui()) : mpz_probab_prime_p(n.get_mpz_t(), 32) > 0) {
        out.primes[n] += 1;
        return;
    }
    if (depth > 64 || mpz_sizeinbase(n.get_mpz_t(), 2) > 96) {
        out.unfactored *= n;
        out.complete = false;
        return;
    }
    for (unsigned salt = 0; salt < 24; ++salt) {
        Int d = pollard_brent(n, salt);
        if (d > 1 && d < n) {
            factor_rec(d, out, depth + 1);
            factor_rec(n / d, out, depth + 1);
            return;
        }
    }
    out.unfactored *= n;
    out.complete = false;
}

} // namespace detail

inline IntFactorization factor_int(Int n) {
    IntFactorization out;
    n = abs(n);
    if (n == 0) throw Error("factor_int(0)");
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.primes[Int(p)] += 1;
            n /= p;
        }
    }
    for (long p = 17; p < 100000 && n > 1; p += 2) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                out.primes[Int(p)] += 1;
                n /= p;
            }
        }
        Int psq = Int(p) * p;
        if (psq > n) break;
    }
    detail::factor_rec(n, out, 0);
    return out;
}

// Positive divisors of the factored part, capped.
inline std::vector<Int> divisors(const IntFactorization& f, size_t cap, bool& hit_cap) {
    std::vector<Int> divs{1};
    hit_cap = false;
    for (const auto& [p, e] : f.primes) {
        size_t base = divs.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > cap) {
                    hit_cap = true;
                    return divs;
                }
            }
        }
    }
    return divs;
}

// Squarefree decomposition f = prod factor_i^{mult_i} (monomial roots
// included as linear factors) over Q, by Yun's gcd chain; no integer
// factoring involved.
inline std::vector<std::pair<BF<RatField>, int>> bf_squarefree_split(const BF<RatField>& f) {
    RatField Q;
    if (bf_is_zero(Q, f)) throw Error("squarefree split of the zero form");
    std::vector<std::pair<BF<RatField>, int>> out;
    int a, b;
    BF<RatField> core;
    bf_strip(Q, f, a, b, core);
    if (a > 0) out.push_back({BF<RatField>{Rat(1), Rat(0)}, a}); // s0, root [0:1]
    if (b > 0) out.push_back({BF<RatField>{Rat(0), Rat(1)}, b}); // s1, root [1:0]
    BF<RatField> u = core; // nonzero constant and leading coefficient in x
    up_trim(Q, u);
    if (u.size() <= 1) return out;
    auto deriv = [&](const BF<RatField>& g) {
        BF<RatField> r;
        for (size_t i = 1; i < g.size(); ++i) r.push_back(g[i] * Rat(static_cast<long>(i)));
        up_trim(Q, r);
        return r;
    };
    BF<RatField> d0 = deriv(u);
    BF<RatField> g0 = up_gcd_monic(Q, u, d0);
    BF<RatField> bpoly = up_divmod(Q, u, g0).first;
    BF<RatField> cpoly = up_divmod(Q, d0, g0).first;
    BF<RatField> dpoly = bpoly;
    {
        BF<RatField> bd = deriv(bpoly);
        dpoly = cpoly;
        dpoly.resize(std::max(dpoly.size(), bd.size()), Rat(0));
        for (size_t i = 0; i < bd.size(); ++i) dpoly[i] -= bd[i];
        up_trim(Q, dpoly);
    }
    int mult = 1;
    while (bpoly.size() > 1) {
        BF<RatField> ai = up_gcd_monic(Q, bpoly, dpoly);
        if (ai.size() > 1) out.push_back({ai, mult});
        bpoly = up_divmod(Q, bpoly, ai).first;
        BF<RatField> ci = up_divmod(Q, dpoly, ai).first;
        BF<RatField> bd = deriv(bpoly);
        dpoly = ci;
        dpoly.resize(std::max(dpoly.size(), bd.size()), Rat(0));
        for (size_t i = 0; i < bd.size(); ++i) dpoly[i] -= bd[i];
        up_trim(Q, dpoly);
        ++mult;
    }
    return out;
}

// A projective root [p:q] of a binary form, in lowest terms with q > 0, or
// [1:0]. The linear form q*s0 - p*s1 vanishes exactly there.
struct BinRoot {
    Int p, q;
    int mult;
    bool operator==(const BinRoot&) const = default;
};

struct RootResult {
    std::vector<BinRoot> roots;
    BF<RatField> residual; // f == residual * prod (q_i s0 - p_i s1)^{mult_i}
    bool complete = true;  // false if the divisor search may have missed roots
};

// All Q-rational projective roots of a nonzero binary form, with
// multiplicities, plus the exactly-divided residual factor.
inline RootResult rational_roots(const BF<RatField>& f) {
    RatField Q;
    if (bf_is_zero(Q, f)) throw Error("rational_roots of the zero form");
    RootResult out;
    int a, b;
    BF<RatField> core;
    bf_strip(Q, f, a, b, core);
    if (a > 0) out.roots.push_back({Int(0), Int(1), a}); // s0^a
    if (b > 0) out.roots.push_back({Int(1), Int(0), b}); // s1^b
    if (core.size() <= 1) {
        BF<RatField> prod{Rat(1)};
        for (const BinRoot& r : out.roots) {
            BF<RatField> lin{Rat(r.q), Rat(-r.p)};
            for (int i = 0; i < r.mult; ++i) prod = bf_mul(Q, prod, lin);
        }
        out.residual = bf_divexact(Q, f, prod);
        return out;
    }
    // primitive integer model of the dehomogenization in x = s1/s0
    Int den_lcm = 1;
    for (const Rat& c : core) den_lcm = lcm(den_lcm, c.get_den());
    std::vector<Int> z(core.size());
    for (size_t i = 0; i < core.size(); ++i) {
        Rat scaled = core[i] * Rat(den_lcm);
        scaled.canonicalize();
        z[i] = scaled.get_num();
    }
    IntFactorization f0 = factor_int(z.front());
    IntFactorization fl = factor_int(z.back());
    bool cap0 = false, capl = false;
    std::vector<Int> num_divs = divisors(f0, 4096, cap0);
    std::vector<Int> den_divs = divisors(fl, 4096, capl);
    out.complete = f0.complete && fl.complete && !cap0 && !capl;

    BF<RatField> rem = core;
    size_t budget = 300000;
    for (const Int& v : den_divs) {
        for (const Int& u_abs : num_divs) {
            if (budget-- == 0) {
                out.complete = false;
                goto done;
            }
            for (int sign = 0; sign < 2; ++sign) {
                Int u = sign ? Int(-u_abs) : u_abs;
                if (gcd(u, v) != 1) continue;
                // candidate root x = u/v of the dehomogenization, projectively [v:u]
                BF<RatField> lin{Rat(-u), Rat(v)};
                int mult = 0;
                while (rem.size() > 1) {
                    auto [quo, r] = up_divmod(Q, rem, lin);
                    if (!r.empty()) break;
                    rem = quo;
                    ++mult;
                }
                if (mult > 0) {
                    Int rp = v, rq = u;
                    if (rq < 0) rp = -rp, rq = -rq;
                    out.roots.push_back({rp, rq, mult});
                }
            }
        }
    }
done:;
    // Residual: divide f by the certified linear factors exactly.
    BF<RatField> prod{Rat(1)};
    for (const BinRoot& r : out.roots) {
        BF<RatField> lin{Rat(r.q), Rat(-r.p)}; // q*s0 - p*s1
        for (int i = 0; i < r.mult; ++i) prod = bf_mul(Q, prod, lin);
    }
    out.residual = bf_divexact(Q, f, prod);
    return out;
}

} // namespace injekt
