#pragma once

#include "gpm/convolution.hpp"
#include "gpm/core_model.hpp"

#include <cstdint>
#include <vector>

namespace gpm {

[[nodiscard]] bool is_prime(std::uint64_t x);
/// Smallest prime in [lo, hi]; InputError when there is none or lo < 2.
[[nodiscard]] std::uint64_t find_prime(std::uint64_t lo, std::uint64_t hi);

/// splitmix64 finaliser; the basis of every seeded draw.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x);
/// Independent sub-seed for round `round` of a run seeded with `seed`.
[[nodiscard]] std::uint64_t round_seed(std::uint64_t seed, std::uint64_t round);

struct MonteCarloConfig {
    std::uint64_t c = 2;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    TransformBackend backend = TransformBackend::Auto;

    /// ceil(c * log2 n), at least 1.
    [[nodiscard]] std::uint64_t rounds(std::size_t n) const;
};

/// h(x) = ((a x + b) mod p) mod buckets + 1.
struct HashFamily {
    std::uint64_t p = 2;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t buckets = 1;

    /// Draws a, b uniformly from [0, p) using the given seed.
    static HashFamily draw(std::uint64_t p, std::uint64_t buckets, std::uint64_t seed);

    [[nodiscard]] std::uint64_t operator()(std::uint64_t x) const
    {
        const auto v = (static_cast<unsigned __int128>(a) * x + b) % p;
        return static_cast<std::uint64_t>(v) % buckets + 1;
    }
};

/// Field prime for a text of length n over alphabet sigma_t: smallest prime >= max(n, sigma_t, 2).
[[nodiscard]] std::uint64_t hash_prime(std::size_t n, std::uint64_t sigma_t);

/// Monte Carlo occurrence reporting, parameter D. 1-based alignments, ascending.
/// Never misses an occurrence.
[[nodiscard]] std::vector<std::uint64_t> report_d(const Text& text, const Pattern& pattern,
                                                  const MatchRelation& rel, const MonteCarloConfig& cfg);

/// Monte Carlo occurrence reporting, parameter S.
[[nodiscard]] std::vector<std::uint64_t> report_s(const Text& text, const Pattern& pattern,
                                                  const MatchRelation& rel, const MonteCarloConfig& cfg);

/// Alignments surviving one hashing round of report_d drawn from `seed` (no brute fallback).
[[nodiscard]] std::vector<std::uint64_t> report_d_single_round(const Text& text, const Pattern& pattern,
                                                               const MatchRelation& rel,
                                                               std::uint64_t seed);

enum class CountStrategy { ByD, ByS, Auto };

/// (1-eps)-approximate counting. values[i] <= h[i] always; >= (1-eps) h[i] w.h.p.
[[nodiscard]] MismatchTable count_approx(const Text& text, const Pattern& pattern,
                                         const MatchRelation& rel, double epsilon,
                                         const MonteCarloConfig& cfg,
                                         CountStrategy strategy = CountStrategy::Auto);

/// Strategy Auto resolves to.
[[nodiscard]] CountStrategy choose_count_strategy(std::size_t n, const RelationParams& params,
                                                  double epsilon);

} // namespace gpm
