#pragma once

#include "gpm/convolution.hpp"
#include "gpm/core_model.hpp"
#include "gpm/superimposed.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gpm {

struct DeterministicOptions {
    TransformBackend backend = TransformBackend::Auto;
    /// Forwarded to the code construction (partition stopping bound).
    std::optional<double> partition_target;
};

/// What a deterministic run did, for reporting and tests.
struct DeterministicInfo {
    bool brute_fallback = false;
    std::uint64_t universe = 0;      // |U| before adding $
    std::uint64_t code_length = 0;   // ell
    std::uint64_t code_weight = 0;   // w
    int code_degree = 0;             // d, 0 when degenerate
    std::uint64_t heavy_threshold = 0;
    std::uint64_t heavy_chars = 0;
    std::uint64_t correlations = 0;  // code elements correlated
};

/// Scaled-band counting, parameter D: (1-eps) w h[i] <= values[i] <= w h[i].
/// Exact table (weight 1) when D > m or eps < 1/m.
[[nodiscard]] MismatchTable count_det_d(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                        double epsilon, const DeterministicOptions& options = {},
                                        DeterministicInfo* info = nullptr);

/// Parameter S: heavy characters counted exactly into exact_part, light ones scaled.
[[nodiscard]] MismatchTable count_det_s(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                        double epsilon, const DeterministicOptions& options = {},
                                        DeterministicInfo* info = nullptr);

/// Light-character threshold eps sqrt(S) / log2^{5/2} n, clamped to [1, m].
[[nodiscard]] std::uint64_t det_s_threshold(std::size_t n, std::size_t m, std::uint64_t S, double epsilon);

enum class DetStrategy { ByD, ByS };

/// Smaller of eps^-2 D log^6 n and eps^-1 sqrt(S) log^3.5 n.
[[nodiscard]] DetStrategy choose_det_strategy(std::size_t n, const RelationParams& params, double epsilon);

/// Exact occurrence reporting through eps = 1/2 counting.
[[nodiscard]] std::vector<std::uint64_t> report_det(const Text& text, const Pattern& pattern,
                                                    const MatchRelation& rel,
                                                    const DeterministicOptions& options = {});

} // namespace gpm
