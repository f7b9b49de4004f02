#pragma once

#include "gpm/discrepancy.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gpm {

/// Data-dependent superimposed code over U ∪ {$}.
///
/// codes[u] for u < |U| are the universe elements; codes[sentinel] is the code of $,
/// used for every character outside the universe.
struct CodeFamily {
    std::vector<std::vector<std::uint64_t>> codes; // each sorted, size weight
    std::uint64_t length = 0;                      // ell; all elements < length
    std::uint64_t weight = 0;                      // w
    double epsilon = 0;
    int degree = 0;          // d; 0 for the degenerate unary code
    int max_degree = 0;      // t = floor(log2 |U ∪ {$}|)
    bool degenerate = false; // C_{u_q} = {q}
    std::uint32_t sentinel = 0;
    PartitionFn partition;

    [[nodiscard]] const std::vector<std::uint64_t>& code_of(std::uint32_t u) const
    {
        return codes[u < sentinel ? u : sentinel];
    }
};

struct CodeBuildOptions {
    /// Overrides the partition stopping bound (see build_partition).
    std::optional<double> partition_target;
};

/// Builds an ({S_i}, (1-eps) w)-superimposed code for the system's sets.
[[nodiscard]] CodeFamily build_code(const SetSystem& sys, double epsilon,
                                    const CodeBuildOptions& options = {});

struct CodeReport {
    bool ok = true;
    std::uint64_t min_surviving = 0; // over all (S_i, u not in S_i), including $
    double threshold = 0;            // tau
    std::uint64_t worst_set = 0;
    std::uint64_t worst_element = 0;
    std::uint64_t pairs_checked = 0;
};

/// Exhaustive check of |C_u - ∪_{v in S_i} C_v| >= tau for every S_i and u not in S_i.
/// tau defaults to (1 - eps) w.
[[nodiscard]] CodeReport verify_code(const CodeFamily& code, const SetSystem& sys,
                                     std::optional<double> tau = std::nullopt);

} // namespace gpm
