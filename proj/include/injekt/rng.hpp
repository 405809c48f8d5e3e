#pragma once

#include <cstdint>
#include <gmpxx.h>

namespace injekt {

// Counter-based deterministic generator (splitmix64 finalizer). Every random
// draw is derived from (seed, stream, counter), so trial ranges can be split
// across workers without changing the sampled values.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(mix64(seed ^ 0x853c49e6748fea9bULL)) {}

    // Independent generator for trial `counter` of stream `stream` under `seed`.
    static Rng keyed(uint64_t seed, uint64_t stream, uint64_t counter) {
        return Rng(mix64(seed + 0x632be59bd9b4e019ULL * stream) + 0xd6e8feb86659fd93ULL * counter);
    }

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, n), n >= 1.
    uint64_t below(uint64_t n) { return next() % n; }

    // Uniform integer in [-h, h].
    long int_pm(long h) { return static_cast<long>(below(2 * static_cast<uint64_t>(h) + 1)) - h; }

    // Rational with |numerator| <= h and denominator in [1, h].
    mpq_class rat(long h) {
        mpq_class q(int_pm(h), static_cast<long>(below(static_cast<uint64_t>(h))) + 1);
        q.canonicalize();
        return q;
    }

    // Nonzero rational of the same height bound.
    mpq_class rat_nonzero(long h) {
        for (;;) {
            mpq_class q = rat(h);
            if (q != 0) return q;
        }
    }

  private:
    uint64_t state_;
};

} // namespace injekt
