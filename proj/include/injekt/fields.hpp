#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <gmpxx.h>

namespace injekt {

using Rat = mpq_class;
using Int = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct FieldMismatch : Error {
    using Error::Error;
};

// Field objects. All templated algebra takes the field as an explicit
// argument (Givaro style), so prime moduli never live in global state.

struct RatField {
    using Element = Rat;
    Element zero() const { return Rat(0); }
    Element one() const { return Rat(1); }
    Element from_long(long n) const { return Rat(n); }
    bool is_zero(const Element& a) const { return a == 0; }
    bool eq(const Element& a, const Element& b) const { return a == b; }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const {
        if (a == 0) throw Error("division by zero");
        return 1 / a;
    }
    Element div(const Element& a, const Element& b) const { return a * inv(b); }
    std::string to_string(const Element& a) const { return a.get_str(); }
};

// Prime field with word-sized modulus. Elements are reduced to [0, p).
struct FpField {
    uint64_t p;
    using Element = uint64_t;

    explicit FpField(uint64_t prime) : p(prime) { assert(p >= 2); }

    Element zero() const { return 0; }
    Element one() const { return 1 % p; }
    Element from_long(long n) const {
        long r = n % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return static_cast<uint64_t>(r);
    }
    Element from_mpz(const Int& n) const {
        Int r = n % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        return r.get_ui();
    }
    Element from_rat(const Rat& q) const {
        Element den = from_mpz(q.get_den());
        if (den == 0) throw Error("rational has no reduction mod p");
        return mul(from_mpz(q.get_num()), inv(den));
    }
    bool is_zero(const Element& a) const { return a == 0; }
    bool eq(const Element& a, const Element& b) const { return a == b; }
    Element add(const Element& a, const Element& b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    Element sub(const Element& a, const Element& b) const { return a >= b ? a - b : a + p - b; }
    Element neg(const Element& a) const { return a == 0 ? 0 : p - a; }
    Element mul(const Element& a, const Element& b) const {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Element pow(Element a, uint64_t e) const {
        Element r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Element inv(const Element& a) const {
        if (a == 0) throw Error("division by zero mod p");
        return pow(a, p - 2);
    }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
    std::string to_string(const Element& a) const { return std::to_string(a); }
};

// Extension field F_p[x]/(h) for a monic irreducible h. Elements are
// little-endian coefficient vectors of fixed length deg(h).
struct FqField {
    FpField base;
    std::vector<uint64_t> modulus; // monic, little-endian, size = deg+1
    using Element = std::vector<uint64_t>;

    FqField(uint64_t p, std::vector<uint64_t> monic_mod) : base(p), modulus(std::move(monic_mod)) {
        assert(modulus.size() >= 2 && modulus.back() == 1);
    }
    size_t deg() const { return modulus.size() - 1; }

    Element zero() const { return Element(deg(), 0); }
    Element one() const {
        Element e(deg(), 0);
        e[0] = base.one();
        return e;
    }
    Element from_long(long n) const {
        Element e(deg(), 0);
        e[0] = base.from_long(n);
        return e;
    }
    // The class of x, i.e. the distinguished root of the modulus.
    Element gen() const {
        Element e(deg(), 0);
        if (deg() >= 2)
            e[1] = 1;
        else
            e[0] = base.neg(modulus[0]); // deg 1: x = -h0
        return e;
    }
    bool is_zero(const Element& a) const {
        for (auto c : a)
            if (c) return false;
        return true;
    }
    bool eq(const Element& a, const Element& b) const { return a == b; }
    Element add(const Element& a, const Element& b) const {
        Element r(deg());
        for (size_t i = 0; i < deg(); ++i) r[i] = base.add(a[i], b[i]);
        return r;
    }
    Element sub(const Element& a, const Element& b) const {
        Element r(deg());
        for (size_t i = 0; i < deg(); ++i) r[i] = base.sub(a[i], b[i]);
        return r;
    }
    Element neg(const Element& a) const {
        Element r(deg());
        for (size_t i = 0; i < deg(); ++i) r[i] = base.neg(a[i]);
        return r;
    }
    Element mul(const Element& a, const Element& b) const {
        std::vector<uint64_t> prod(2 * deg() - 1, 0);
        for (size_t i = 0; i < deg(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < deg(); ++j)
                if (b[j]) prod[i + j] = base.add(prod[i + j], base.mul(a[i], b[j]));
        }
        // reduce by the monic modulus
        for (size_t i = prod.size(); i-- > deg();) {
            uint64_t c = prod[i];
            if (!c) continue;
            prod[i] = 0;
            for (size_t j = 0; j < deg(); ++j)
                prod[i - deg() + j] = base.sub(prod[i - deg() + j], base.mul(c, modulus[j]));
        }
        prod.resize(deg());
        return prod;
    }
    Element inv(const Element& a) const;
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
    std::string to_string(const Element& a) const {
        std::string s = "[";
        for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
        return s + "]";
    }
};

// Extended Euclid on F_p[x] representatives.
inline FqField::Element FqField::inv(const Element& a) const {
    if (is_zero(a)) throw Error("division by zero in extension field");
    using P = std::vector<uint64_t>;
    const FpField& K = base;
    auto trim = [](P& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    // rem <- rem mod div, returns quotient; div nonzero
    auto divmod = [&](P rem, const P& div, P& quot) {
        quot.assign(rem.size() >= div.size() ? rem.size() - div.size() + 1 : 0, 0);
        uint64_t li = K.inv(div.back());
        while (rem.size() >= div.size()) {
            size_t sh = rem.size() - div.size();
            uint64_t c = K.mul(rem.back(), li);
            quot[sh] = c;
            for (size_t j = 0; j < div.size(); ++j)
                rem[sh + j] = K.sub(rem[sh + j], K.mul(c, div[j]));
            trim(rem);
        }
        return rem;
    };
    auto mulp = [&](const P& f, const P& g) {
        if (f.empty() || g.empty()) return P{};
        P r(f.size() + g.size() - 1, 0);
        for (size_t i = 0; i < f.size(); ++i)
            if (f[i])
                for (size_t j = 0; j < g.size(); ++j)
                    if (g[j]) r[i + j] = K.add(r[i + j], K.mul(f[i], g[j]));
        return r;
    };
    P r0 = modulus, r1(a);
    trim(r1);
    P t0{}, t1{K.one()};
    while (!r1.empty()) {
        P q;
        P rem = divmod(r0, r1, q);
        P qt = mulp(q, t1);
        P nt = t0;
        nt.resize(std::max(nt.size(), qt.size()), 0);
        for (size_t i = 0; i < qt.size(); ++i) nt[i] = K.sub(nt[i], qt[i]);
        trim(nt);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (r0.size() != 1) throw Error("extension modulus is not irreducible");
    uint64_t c = K.inv(r0[0]);
    Element out(deg(), 0);
    for (size_t i = 0; i < t0.size() && i < deg(); ++i) out[i] = K.mul(t0[i], c);
    return out;
}

// ---- prime utilities ----

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) {
        uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

// Smallest prime > floor with p ≡ r (mod m).
inline uint64_t next_prime_congruent(uint64_t floor, uint64_t m, uint64_t r) {
    uint64_t p = floor + 1;
    if (m) p += (m + r - p % m) % m;
    for (;; p += (m ? m : 1))
        if (is_prime_u64(p)) return p;
}

// A fixed primitive k-th root of unity in F_p (requires p ≡ 1 mod k).
inline uint64_t primitive_root_of_unity(uint64_t p, uint64_t k) {
    if ((p - 1) % k != 0) throw Error("p is not 1 mod k");
    FpField F(p);
    std::vector<uint64_t> prime_divs;
    uint64_t kk = k;
    for (uint64_t q = 2; q * q <= kk; ++q)
        if (kk % q == 0) {
            prime_divs.push_back(q);
            while (kk % q == 0) kk /= q;
        }
    if (kk > 1) prime_divs.push_back(kk);
    for (uint64_t g = 2; g < p; ++g) {
        uint64_t z = F.pow(g, (p - 1) / k);
        bool exact = z != 1 || k == 1;
        for (uint64_t q : prime_divs)
            if (F.pow(z, k / q) == 1) {
                exact = false;
                break;
            }
        if (exact) return z;
    }
    throw Error("no primitive root found");
}

} // namespace injekt
