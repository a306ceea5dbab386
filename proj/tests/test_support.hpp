#pragma once

// Shared helpers for the test suite: a seedable RNG and generators for
// random spaces, measures, positions, partitions, filtrations, and risk
// measures.  The seed defaults to a fixed value so every run is
// reproducible; set TCRISK_SEED in the environment to explore other seeds.

#include <tcrisk/measure.hpp>
#include <tcrisk/rational.hpp>
#include <tcrisk/risk_measure.hpp>
#include <tcrisk/space.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace tcrisk::test {

using Rng = std::mt19937_64;

inline std::uint64_t seed_from_env() {
    if (const char* s = std::getenv("TCRISK_SEED")) {
        return std::strtoull(s, nullptr, 10);
    }
    return 20260825u;
}

inline Rng make_rng() { return Rng(seed_from_env()); }

inline long rand_int(Rng& rng, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

// A small rational with numerator in [lo, hi] and denominator in [1, max_den].
inline Rational random_rational(Rng& rng, long lo = -6, long hi = 6,
                                long max_den = 6) {
    return Rational(rand_int(rng, lo, hi), rand_int(rng, 1, max_den));
}

// Uniform reference space on n outcomes, labelled w1..wn.
inline SpacePtr random_space(Rng& rng, std::size_t min_n = 2,
                             std::size_t max_n = 5) {
    return make_uniform_space(
        static_cast<std::size_t>(rand_int(rng, static_cast<long>(min_n),
                                          static_cast<long>(max_n))));
}

// A probability measure supported inside the reference support.  With
// allow_zeros the measure may vanish on some outcomes (so generated risk
// measures can have polar outcomes); at least one weight is positive.
inline Measure random_measure(Rng& rng, const SpacePtr& space,
                              bool allow_zeros = true) {
    const std::size_t n = space->size();
    std::vector<Rational> v(n, Rational(0));
    Rational total(0);
    while (total == 0) {
        total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (space->reference()[i] == 0) {
                v[i] = 0;
                continue;
            }
            long w = allow_zeros ? rand_int(rng, 0, 4) : rand_int(rng, 1, 4);
            v[i] = Rational(w);
            total += v[i];
        }
    }
    for (auto& x : v) x /= total;
    return Measure(space, v);
}

inline Position random_position(Rng& rng, const SpacePtr& space,
                                long lo = -6, long hi = 6, long max_den = 4) {
    std::vector<Rational> v(space->size());
    for (auto& x : v) x = random_rational(rng, lo, hi, max_den);
    return Position(space, v);
}

inline RiskMeasure random_risk(Rng& rng, const SpacePtr& space,
                               std::size_t max_generators = 4,
                               bool allow_zeros = true) {
    const auto count =
        static_cast<std::size_t>(rand_int(rng, 1, static_cast<long>(max_generators)));
    std::vector<Measure> gens;
    gens.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        gens.push_back(random_measure(rng, space, allow_zeros));
    }
    return RiskMeasure(space, gens);
}

// A partition obtained by throwing outcomes into 1..n random buckets.
inline Partition random_partition(Rng& rng, const SpacePtr& space) {
    const std::size_t n = space->size();
    const long buckets = rand_int(rng, 1, static_cast<long>(n));
    std::vector<std::vector<std::size_t>> blocks(
        static_cast<std::size_t>(buckets));
    for (std::size_t i = 0; i < n; ++i) {
        blocks[static_cast<std::size_t>(rand_int(rng, 0, buckets - 1))]
            .push_back(i);
    }
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const auto& b) { return b.empty(); }),
                 blocks.end());
    return Partition(blocks, n);
}

// A filtration built by merging blocks from the discrete partition up to the
// trivial one and reversing; intermediate stages are kept with probability
// about one half, so level counts vary between 2 and n.
inline Filtration random_filtration(Rng& rng, const SpacePtr& space) {
    const std::size_t n = space->size();
    std::vector<std::vector<std::vector<std::size_t>>> stages;
    std::vector<std::vector<std::size_t>> current;
    for (std::size_t i = 0; i < n; ++i) current.push_back({i});
    stages.push_back(current);
    while (current.size() > 1) {
        const auto i = static_cast<std::size_t>(
            rand_int(rng, 0, static_cast<long>(current.size()) - 1));
        auto j = static_cast<std::size_t>(
            rand_int(rng, 0, static_cast<long>(current.size()) - 2));
        if (j >= i) ++j;
        auto merged = current[i];
        merged.insert(merged.end(), current[j].begin(), current[j].end());
        std::sort(merged.begin(), merged.end());
        std::vector<std::vector<std::size_t>> next;
        for (std::size_t k = 0; k < current.size(); ++k) {
            if (k != i && k != j) next.push_back(current[k]);
        }
        next.push_back(merged);
        current = next;
        stages.push_back(current);
    }
    std::vector<Partition> levels;
    levels.push_back(Partition::trivial(n));
    for (std::size_t s = stages.size(); s-- > 0;) {
        if (stages[s].size() == 1) continue;          // trivial already added
        const bool keep = stages[s].size() == n       // always keep discrete
                          || rand_int(rng, 0, 1) == 1;
        if (keep) levels.emplace_back(stages[s], n);
    }
    return Filtration(levels);
}

}  // namespace tcrisk::test
