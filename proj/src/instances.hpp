#pragma once

// Building blocks shared by the matching algorithms.

#include "gpm/convolution.hpp"
#include "gpm/core_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gpm::detail {

/// out[i] += #{ j : P[j] = b and T[i+j] does not match b }, computed by one correlation.
void exact_char_accumulate(const Text& text, const Pattern& pattern, const MatchRelation& rel, Symbol b,
                           std::span<std::uint64_t> out, TransformBackend backend);

/// Brute counts restricted to pattern positions with active[j] set.
[[nodiscard]] std::vector<std::uint64_t> brute_active(const Text& text, const Pattern& pattern,
                                                      const MatchRelation& rel,
                                                      std::span<const std::uint8_t> active);

/// Pattern characters of degree >= threshold are heavy; the rest of the positions are light.
struct HeavySplit {
    std::vector<Symbol> heavy;       // distinct heavy characters present in P
    std::vector<std::uint8_t> light; // per pattern position
    bool any_light = false;
};

[[nodiscard]] HeavySplit split_heavy(const Pattern& pattern, const MatchRelation& rel, std::uint64_t threshold);

} // namespace gpm::detail
