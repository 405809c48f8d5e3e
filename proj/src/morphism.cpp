#include "injekt/morphism.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <set>
#include <thread>

namespace injekt {

namespace {
const RatField Q;

std::string mask_label(const Mask* m) {
    if (!m) return "open";
    std::string s;
    for (size_t b = 0; b < m->size(); ++b) {
        if (b) s += "|";
        for (bool bit : (*m)[b]) s += bit ? '1' : '0';
    }
    return s;
}

// Deterministic parallel map over trial indices: results land in per-trial
// slots, so the outcome is independent of the worker count.
template <class T, class Fn>
std::vector<std::optional<T>> run_trials(uint64_t trials, Fn&& fn) {
    std::vector<std::optional<T>> slots(trials);
    unsigned workers = worker_count();
    if (workers <= 1 || trials < 64) {
        for (uint64_t i = 0; i < trials; ++i) slots[i] = fn(i);
        return slots;
    }
    std::vector<std::thread> pool;
    std::atomic<uint64_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                uint64_t chunk = next.fetch_add(64);
                if (chunk >= trials) return;
                uint64_t hi = std::min(trials, chunk + 64);
                for (uint64_t i = chunk; i < hi; ++i) slots[i] = fn(i);
            }
        });
    for (auto& t : pool) t.join();
    return slots;
}

} // namespace

unsigned worker_count() {
    const char* env = std::getenv("INJEKT_THREADS");
    if (!env) return 1;
    long n = std::atol(env);
    if (n < 1) return 1;
    return static_cast<unsigned>(std::min(n, 16L));
}

void validate_morphism(const Morphism& m) {
    if (m.sections.empty()) throw Error("morphism needs at least one section");
    auto sizes = m.source.block_sizes();
    for (const PolyQ& s : m.sections) {
        if (s.is_zero()) throw Error("zero section");
        if (s.block_sizes != sizes) throw ShapeMismatch("section shape does not match source");
        if (multidegree(s, m.source) != m.mdeg)
            throw NotHomogeneous("section multidegree differs from the stated one");
    }
}

std::vector<Rat> evaluate(const Morphism& m, const PPoint& x) {
    check_point_shape(m.source, x);
    std::vector<Rat> z;
    bool nonzero = false;
    for (const PolyQ& s : m.sections) {
        z.push_back(poly_eval(Q, s, x));
        nonzero = nonzero || z.back() != 0;
    }
    if (!nonzero) throw BaseLocusHit("all sections vanish at the sample point");
    return z;
}

bool has_decoder(const Morphism& m) { return !m.decoder.empty(); }

VerificationReport collision_search(const Morphism& m, uint64_t trials, uint64_t seed, long height) {
    if (trials < 1) throw Error("trials must be >= 1");
    validate_morphism(m);
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.label = m.label;
    rep.check = "collision_search";
    rep.trials = trials;
    rep.seed = seed;
    rep.height = height;
    rep.evidence = "sampled";
    const auto strata = strata_masks(m.source);

    struct Finding {
        std::optional<CollisionWitness> collision;
        std::vector<PPoint> base_hits;
        std::string label1, label2;
    };
    auto slots = run_trials<Finding>(trials, [&](uint64_t trial) -> std::optional<Finding> {
        Rng rng = Rng::keyed(seed, 0xC011, trial);
        const Mask *m1 = nullptr, *m2 = nullptr;
        bool twisted = false;
        switch (trial % 5) {
            case 1:
                if (!strata.empty()) m1 = m2 = &strata[rng.below(strata.size())];
                break;
            case 2:
                if (strata.size() >= 2) {
                    size_t i = rng.below(strata.size());
                    size_t j = rng.below(strata.size() - 1);
                    if (j >= i) ++j;
                    m1 = &strata[i];
                    m2 = &strata[j];
                }
                break;
            case 3:
                if (!strata.empty()) m1 = &strata[rng.below(strata.size())];
                break;
            case 4:
                twisted = true; // y = x with per-coordinate sign flips
                break;
            default: break;
        }
        Finding f;
        f.label1 = mask_label(m1);
        f.label2 = twisted ? "twist" : mask_label(m2);
        PPoint x = sample_point(m.source, height, m1, rng);
        PPoint y;
        if (twisted) {
            y = x;
            for (auto& blk : y)
                for (Rat& c : blk)
                    if (rng.below(2)) c = -c;
        } else {
            y = sample_point(m.source, height, m2, rng);
        }
        std::optional<std::vector<Rat>> zx, zy;
        try {
            zx = evaluate(m, x);
        } catch (const BaseLocusHit&) {
            f.base_hits.push_back(x);
        }
        try {
            zy = evaluate(m, y);
        } catch (const BaseLocusHit&) {
            f.base_hits.push_back(y);
        }
        if (zx && zy && proportional(*zx, *zy) && !equivalent_points(m.source, x, y))
            f.collision = CollisionWitness{x, y, *zx, *zy};
        return f;
    });

    std::set<std::string> labels;
    for (auto& s : slots) {
        if (!s) continue;
        labels.insert(s->label1);
        labels.insert(s->label2);
        if (s->collision) rep.collisions.push_back(std::move(*s->collision));
        for (auto& b : s->base_hits) rep.base_locus_hits.push_back(std::move(b));
    }
    rep.strata_covered.assign(labels.begin(), labels.end());
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerificationReport roundtrip_check(const Morphism& m, uint64_t trials, uint64_t seed, long height) {
    if (!has_decoder(m)) throw Error("morphism has no decoder");
    validate_morphism(m);
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.label = m.label;
    rep.check = "roundtrip_check";
    rep.trials = trials;
    rep.seed = seed;
    rep.height = height;
    const auto strata = strata_masks(m.source);

    struct Finding {
        std::optional<RoundtripWitness> failure;
        std::string label;
    };
    auto slots = run_trials<Finding>(trials, [&](uint64_t trial) -> std::optional<Finding> {
        Rng rng = Rng::keyed(seed, 0xDEC0DE, trial);
        const Mask* mask = nullptr;
        size_t cycle = trial % (strata.size() + 1);
        if (cycle > 0) mask = &strata[cycle - 1];
        Finding f;
        f.label = mask_label(mask);
        PPoint x = sample_point(m.source, height, mask, rng);
        try {
            std::vector<Rat> z = evaluate(m, x);
            DecodeResult d = decode(m, z);
            switch (d.kind) {
                case DecodeResult::Kind::SourcePoint:
                    if (!equivalent_points(m.source, d.point, x))
                        f.failure = RoundtripWitness{x, "decoded point not equivalent to source"};
                    break;
                case DecodeResult::Kind::ReweightedPoint: {
                    // compare against x_i^{powers[i-1]} in the re-weighted chart
                    const auto& coords = x[0];
                    std::vector<Rat> powered;
                    for (size_t i = 0; i < d.powers.size(); ++i)
                        powered.push_back(rat_pow(coords[i + 1], d.powers[i]));
                    if (!proportional(powered, d.reweighted))
                        f.failure =
                            RoundtripWitness{x, "re-weighted decode mismatch: " + d.note};
                    break;
                }
                case DecodeResult::Kind::Unavailable:
                    f.failure = RoundtripWitness{x, "decoder unavailable: " + d.note};
                    break;
            }
        } catch (const BaseLocusHit&) {
            f.failure = RoundtripWitness{x, "base locus hit"};
        } catch (const Error& e) {
            f.failure = RoundtripWitness{x, std::string("decoder error: ") + e.what()};
        }
        return f;
    });

    std::set<std::string> labels;
    for (auto& s : slots) {
        if (!s) continue;
        labels.insert(s->label);
        if (s->failure) rep.roundtrip_failures.push_back(std::move(*s->failure));
    }
    rep.strata_covered.assign(labels.begin(), labels.end());
    rep.evidence = rep.roundtrip_failures.empty() ? "decoder-certified" : "sampled";
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace injekt
