#pragma once

#include "gpm/convolution.hpp"
#include "gpm/core_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gpm {

/// Half-open index range [begin, end) into a value sequence.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    [[nodiscard]] std::size_t size() const { return end - begin; }
    bool operator==(const IndexRange&) const = default;
};

/// Left-to-right greedy: a value > b becomes a singleton, otherwise take the longest
/// prefix with sum <= b. Requires b > 1.
[[nodiscard]] std::vector<IndexRange> greedy_partition(std::span<const std::uint64_t> values, std::uint64_t b);

struct IntervalOptions {
    TransformBackend backend = TransformBackend::Auto;
    std::optional<std::uint64_t> block; // overrides b
    bool allow_brute = true;            // I > m^2 falls back to the naive scan
};

struct IntervalStats {
    bool brute_fallback = false;
    std::uint64_t I = 0;
    std::uint64_t b = 0;
    std::uint64_t distinct_chars = 0;
    std::uint64_t ranges = 0;
    std::uint64_t phase1_instances = 0;
    std::uint64_t phase2_occurrences = 0; // alignment increments in phase 2
    std::uint64_t phase2_chars = 0;       // (j, character) pairs walked
};

/// Per-(alignment, position) record of which phase counted a mismatch; entry i*m + j.
struct IntervalTrace {
    std::size_t m = 0;
    std::vector<std::uint8_t> phase1;
    std::vector<std::uint8_t> phase2;
};

/// Exact mismatch counts for interval relations.
[[nodiscard]] MismatchTable count_exact_i(const Text& text, const Pattern& pattern, const IntervalRelation& ir,
                                          const IntervalOptions& options = {}, IntervalStats* stats = nullptr,
                                          IntervalTrace* trace = nullptr);

/// a matches b iff |a - b| < delta.
[[nodiscard]] MismatchTable threshold_count(const Text& text, const Pattern& pattern, std::uint64_t delta,
                                            const IntervalOptions& options = {}, IntervalStats* stats = nullptr);

} // namespace gpm
