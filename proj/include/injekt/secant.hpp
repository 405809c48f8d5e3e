#pragma once

#include <array>
#include <optional>

#include "injekt/biform.hpp"
#include "injekt/rootsq.hpp"

namespace injekt {

// Rational curve in P^3 given by four binary forms of a common degree.
struct RationalCurveP3 {
    std::array<BF<RatField>, 4> coords;

    int degree() const { return bf_deg<RatField>(coords[0]); }
    static RationalCurveP3 twisted_cubic();
    static RationalCurveP3 quintic(); // (s^5, s^4 t + s^3 t^2, s^2 t^3 + s t^4, t^5)
};

void validate_curve(const RationalCurveP3& c);

// true iff p is in the image of the parameterization: the six 2x2 minors of
// [c(s) | p] have a common projective root (gcd nonconstant).
bool point_on_curve(const RationalCurveP3& c, const std::array<Rat, 4>& p);

struct CurveDegenerate : Error {
    using Error::Error;
};

enum class SecantVerdict { OnCurve, OnHonestSecant, NoSecantFound, NotOnSecant };
enum class SecantMode { RationalCertificate, ModularEvidence };

std::string secant_verdict_name(SecantVerdict v);

struct SecantResult {
    SecantVerdict verdict = SecantVerdict::NoSecantFound;
    // rational witness parameters (s*, t*), present for certificate hits
    std::optional<std::pair<std::array<Rat, 2>, std::array<Rat, 2>>> witness;
    std::vector<uint64_t> primes;        // evidence primes (modular mode)
    std::vector<bool> prime_has_solution; // per prime: off-diagonal solution in the closure
    std::string note;
};

// Decides whether p lies on a line through two distinct points of the curve.
// Rational mode looks for a rational parameter pair through resultant
// elimination; modular mode decides existence of an off-diagonal solution of
// the reduced system over the closure of F_p for three good primes.
SecantResult point_on_secant(const RationalCurveP3& c, const std::array<Rat, 4>& p, SecantMode mode,
                             std::vector<uint64_t> primes_override = {});

// The three bidegree-(d,d) forms cutting out "p lies on the span of
// c(s), c(t)", already divided by the diagonal; exposed for the symbolic
// antisymmetry assertions.
std::vector<BiF<RatField>> secant_system(const RationalCurveP3& c, const std::array<Rat, 4>& p,
                                         std::vector<BiF<RatField>>* undivided = nullptr);

// Certificate that v (+) w in Sym^3 (+) Sym^2 avoids the rank-<=2 locus of
// the split Veronese image: true iff the pair fails the componentwise
// membership test (v = 0 or rank(v) <= 2) and (w = 0 or rank(w) <= 2).
bool wps2233_certificate(const BF<RatField>& cubic, const BF<RatField>& quadric);

// The default certificate point: s0 s1^2 (+) 0.
bool wps2233_point_outside_secant();

} // namespace injekt
