#include "injekt/sepinv.hpp"

#include <numeric>
#include <sstream>

namespace injekt {

namespace {

std::string vec_str(const FpVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

FpVec sample_vec(const FpField& F, size_t n, Rng& rng, bool force_nonzero) {
    FpVec v(n);
    for (;;) {
        bool nz = false;
        for (auto& c : v) {
            c = rng.below(F.p);
            nz = nz || c != 0;
        }
        if (nz || !force_nonzero) return v;
    }
}

std::vector<uint64_t> values_at(const FpField& F, const std::vector<Poly<FpField>>& polys,
                                const FpVec& v) {
    std::vector<uint64_t> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.push_back(poly_eval(F, p, {v}));
    return out;
}

// Does t^g = s have a solution in F_p*? (F_p* is cyclic of order p-1.)
bool has_root(const FpField& F, uint64_t s, long g) {
    long d = std::gcd<long>(g, static_cast<long>(F.p - 1));
    return F.pow(s, (F.p - 1) / static_cast<uint64_t>(d)) == 1;
}

// Is w in the weighted F_p*-scaling orbit of v (i.e. w_i = t^{q_i} v_i)?
bool scaled_orbit(const FpField& F, const std::vector<long>& weights, const FpVec& v,
                  const FpVec& w) {
    long g = 0;
    std::vector<size_t> supp;
    for (size_t i = 0; i < v.size(); ++i) {
        if ((v[i] == 0) != (w[i] == 0)) return false;
        if (v[i] != 0) {
            supp.push_back(i);
            g = g == 0 ? weights[i] : std::gcd(g, weights[i]);
        }
    }
    if (supp.empty()) return true;
    // Bezout coefficients over the support
    std::vector<long> a(supp.size(), 0);
    long acc = weights[supp[0]];
    a[0] = 1;
    for (size_t k = 1; k < supp.size(); ++k) {
        long x = acc, y = weights[supp[k]];
        long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (y != 0) {
            long q = x / y, tmp = x - q * y;
            x = y;
            y = tmp;
            tmp = s0 - q * s1;
            s0 = s1;
            s1 = tmp;
            tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
        }
        for (size_t j = 0; j < k; ++j) a[j] *= s0;
        a[k] = t0;
        acc = x;
    }
    auto pow_signed = [&](uint64_t base, long e) {
        if (e >= 0) return F.pow(base, static_cast<uint64_t>(e));
        return F.pow(F.inv(base), static_cast<uint64_t>(-e));
    };
    uint64_t s = 1;
    for (size_t k = 0; k < supp.size(); ++k)
        s = F.mul(s, pow_signed(F.div(w[supp[k]], v[supp[k]]), a[k]));
    for (size_t k = 0; k < supp.size(); ++k) {
        uint64_t r = F.div(w[supp[k]], v[supp[k]]);
        if (r != F.pow(s, static_cast<uint64_t>(weights[supp[k]] / g))) return false;
    }
    return has_root(F, s, g);
}

} // namespace

CyclicAction::CyclicAction(long order, std::vector<long> q, uint64_t prime)
    : k(order), weights(std::move(q)), field(prime), zeta(0) {
    if (k < 1) throw Error("group order must be positive");
    if (weights.empty()) throw Error("action needs at least one weight");
    if (!is_prime_u64(prime)) throw Error("modulus is not prime");
    if ((prime - 1) % static_cast<uint64_t>(k) != 0) throw FieldMismatch("p is not 1 mod k");
    zeta = primitive_root_of_unity(prime, static_cast<uint64_t>(k));
}

bool same_orbit(const CyclicAction& a, const FpVec& v, const FpVec& w) {
    if (v.size() != a.weights.size() || w.size() != a.weights.size())
        throw ShapeMismatch("point size does not match the action");
    const FpField& F = a.field;
    for (long j = 0; j < a.k; ++j) {
        bool ok = true;
        for (size_t i = 0; ok && i < v.size(); ++i) {
            uint64_t scale = F.pow(a.zeta, static_cast<uint64_t>((j * a.weights[i]) % a.k));
            ok = w[i] == F.mul(scale, v[i]);
        }
        if (ok) return true;
    }
    return false;
}

void validate_invariance(const CyclicAction& a, const PolyQ& f) {
    if (f.block_sizes != std::vector<int>{static_cast<int>(a.weights.size())})
        throw ShapeMismatch("invariant has wrong variable count");
    for (const auto& [e, c] : f.terms) {
        long s = 0;
        for (size_t i = 0; i < a.weights.size(); ++i) s += a.weights[i] * e.blocks[0][i];
        if (s % a.k != 0)
            throw Error("polynomial is not invariant: term " + exp_to_string(e) +
                        " has weighted degree " + std::to_string(s) + " mod " + std::to_string(a.k));
    }
}

InvariantSet InvariantSet::reduce(const std::vector<PolyQ>& rational, const CyclicAction& a) {
    InvariantSet s;
    s.prime = a.field.p;
    for (const PolyQ& f : rational) {
        validate_invariance(a, f);
        s.polys.push_back(reduce_mod(f, a.field));
    }
    return s;
}

SepReport separates(const CyclicAction& a, const InvariantSet& f, uint64_t trials, uint64_t seed) {
    if (f.prime != a.field.p) throw FieldMismatch("invariant set reduced modulo a different prime");
    const FpField& F = a.field;
    size_t n = a.weights.size();
    SepReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.prime = F.p;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::keyed(seed, 0x5E9 + F.p, trial);
        FpVec v = sample_vec(F, n, rng, false);
        FpVec w;
        bool in_orbit_pair = false;
        switch (trial % 5) {
            case 0: w = sample_vec(F, n, rng, false); break;
            case 1: { // in-orbit pair
                in_orbit_pair = true;
                long j = static_cast<long>(rng.below(static_cast<uint64_t>(a.k)));
                w = v;
                for (size_t i = 0; i < n; ++i)
                    w[i] = F.mul(w[i], F.pow(a.zeta, static_cast<uint64_t>((j * a.weights[i]) % a.k)));
                break;
            }
            case 2: { // per-coordinate root-of-unity twists
                w = v;
                for (size_t i = 0; i < n; ++i)
                    w[i] = F.mul(w[i], F.pow(a.zeta, rng.below(static_cast<uint64_t>(a.k))));
                break;
            }
            case 3: { // coordinate surgery
                w = v;
                w[rng.below(n)] = rng.below(F.p);
                break;
            }
            default: { // twisted orbit member plus surgery
                long j = static_cast<long>(rng.below(static_cast<uint64_t>(a.k)));
                w = v;
                for (size_t i = 0; i < n; ++i)
                    w[i] = F.mul(w[i], F.pow(a.zeta, static_cast<uint64_t>((j * a.weights[i]) % a.k)));
                w[rng.below(n)] = rng.below(F.p);
                break;
            }
        }
        bool equal = values_at(F, f.polys, v) == values_at(F, f.polys, w);
        if (in_orbit_pair && !equal) {
            rep.violations.push_back({v, w, "invariance"});
            continue;
        }
        if (equal && !same_orbit(a, v, w)) rep.violations.push_back({v, w, "separation"});
    }
    return rep;
}

ConeProjReport cone_projective_consistency(const std::vector<long>& weights, long degree,
                                           const std::vector<PolyQ>& sections, uint64_t prime,
                                           uint64_t trials, uint64_t seed) {
    if ((prime - 1) % static_cast<uint64_t>(degree) != 0)
        throw FieldMismatch("prime must be 1 mod the section degree");
    FpField F(prime);
    uint64_t zeta_d = primitive_root_of_unity(prime, static_cast<uint64_t>(degree));
    std::vector<Poly<FpField>> polys;
    for (const PolyQ& s : sections) polys.push_back(reduce_mod(s, F));
    size_t n = weights.size();
    ConeProjReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.prime = prime;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::keyed(seed, 0xC09E + prime, trial);
        FpVec v = sample_vec(F, n, rng, true);
        FpVec w;
        switch (trial % 4) {
            case 0: w = sample_vec(F, n, rng, true); break;
            case 1: { // genuine weighted scaling
                uint64_t t = 1 + rng.below(F.p - 1);
                w = v;
                for (size_t i = 0; i < n; ++i)
                    w[i] = F.mul(w[i], F.pow(t, static_cast<uint64_t>(weights[i])));
                break;
            }
            case 2: { // degree-th roots of unity twists
                w = v;
                for (size_t i = 0; i < n; ++i)
                    w[i] = F.mul(w[i], F.pow(zeta_d, rng.below(static_cast<uint64_t>(degree))));
                break;
            }
            default: { // surgery
                w = v;
                w[rng.below(n)] = rng.below(F.p);
                bool nz = false;
                for (auto c : w) nz = nz || c != 0;
                if (!nz) w[0] = 1;
                break;
            }
        }
        auto fv = values_at(F, polys, v);
        auto fw = values_at(F, polys, w);
        bool equal = fv == fw;
        bool orbit = scaled_orbit(F, weights, v, w);
        // projective comparison of images
        size_t piv = fv.size();
        bool prop = true, fv_zero = true, fw_zero = true;
        for (size_t i = 0; i < fv.size(); ++i) {
            fv_zero = fv_zero && fv[i] == 0;
            fw_zero = fw_zero && fw[i] == 0;
        }
        if (fv_zero || fw_zero) {
            rep.discrepancies.push_back("zero image at " + vec_str(fv_zero ? v : w));
            continue;
        }
        for (size_t i = 0; i < fv.size(); ++i)
            if (fv[i] != 0) {
                piv = i;
                break;
            }
        uint64_t lambda = 0;
        if (fw[piv] == 0) {
            prop = false;
        } else {
            lambda = F.div(fw[piv], fv[piv]);
            for (size_t i = 0; i < fv.size(); ++i)
                prop = prop && fw[i] == F.mul(lambda, fv[i]);
        }
        bool affine_violation = equal && !orbit;
        bool proj_collision = prop && !orbit;
        if (affine_violation) ++rep.affine_violations;
        if (proj_collision) ++rep.projective_collisions;
        if (affine_violation && !proj_collision)
            rep.discrepancies.push_back("affine violation invisible projectively at " + vec_str(v) +
                                        " / " + vec_str(w));
        if (proj_collision && equal != affine_violation)
            rep.discrepancies.push_back("verdict bookkeeping mismatch at " + vec_str(v));
        // a projective collision whose factor is a degree-th power is an
        // affine violation after rescaling; a non-residue factor is only
        // visible over an extension and is not a discrepancy
        if (proj_collision && !equal && has_root(F, lambda, degree)) {
            // rescaled pair has equal values by homogeneity; orbit is
            // scaling-invariant, so the affine side must also reject it
            if (orbit) rep.discrepancies.push_back("orbit flag inconsistent at " + vec_str(v));
        }
    }
    return rep;
}

FiveSearchReport search_five_subsets(const CyclicAction& a, const std::vector<PolyQ>& big_set,
                                     uint64_t candidates, uint64_t pair_trials, uint64_t seed) {
    FiveSearchReport rep;
    const RatField Q;
    for (uint64_t c = 0; c < candidates; ++c) {
        Rng rng = Rng::keyed(seed, 0xF17E, c);
        // five random small-integer combinations of the provided invariants
        std::vector<PolyQ> combo;
        for (int i = 0; i < 5; ++i) {
            PolyQ acc(big_set[0].block_sizes);
            bool nz = false;
            for (const PolyQ& f : big_set) {
                long coeff = rng.int_pm(2);
                if (coeff == 0) continue;
                nz = true;
                for (const auto& [e, cf] : f.terms) acc.add_term(Q, e, cf * coeff);
            }
            if (!nz || acc.is_zero()) acc = big_set[i % big_set.size()];
            combo.push_back(std::move(acc));
        }
        ++rep.candidates;
        InvariantSet s = InvariantSet::reduce(combo, a);
        SepReport r = separates(a, s, pair_trials, seed ^ (c + 1));
        if (!r.clean()) {
            ++rep.refuted;
        } else {
            rep.unrefuted.push_back("candidate " + std::to_string(c) +
                                    " not refuted within " + std::to_string(pair_trials) + " pairs");
        }
    }
    return rep;
}

std::vector<uint64_t> default_sepinv_primes(long k, int count) {
    std::vector<uint64_t> out;
    uint64_t p = 1000000;
    while (static_cast<int>(out.size()) < count) {
        p = next_prime_congruent(p, static_cast<uint64_t>(k), 1);
        out.push_back(p);
    }
    return out;
}

} // namespace injekt
