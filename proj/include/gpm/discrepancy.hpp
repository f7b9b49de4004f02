#pragma once

#include "gpm/core_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gpm {

/// z sets over the universe {0, ..., |U|-1}, each of size at most k.
class SetSystem {
public:
    SetSystem() = default;
    /// k defaults to the largest set size; a declared k smaller than that is an error.
    SetSystem(std::uint64_t universe_size, std::vector<std::vector<std::uint32_t>> sets,
              std::optional<std::uint64_t> declared_k = std::nullopt);

    [[nodiscard]] std::uint64_t universe_size() const { return universe_size_; }
    [[nodiscard]] std::uint64_t set_count() const { return sets_.size(); }
    [[nodiscard]] std::uint64_t max_set_size() const { return k_; }
    [[nodiscard]] std::span<const std::uint32_t> set(std::size_t i) const { return sets_[i]; }
    [[nodiscard]] const std::vector<std::vector<std::uint32_t>>& sets() const { return sets_; }
    /// Ids of the sets containing element u, ascending.
    [[nodiscard]] std::span<const std::uint32_t> sets_containing(std::uint32_t u) const;
    [[nodiscard]] std::uint64_t incidence_count() const { return incidence_.size(); }

private:
    std::uint64_t universe_size_ = 0;
    std::uint64_t k_ = 0;
    std::vector<std::vector<std::uint32_t>> sets_;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> incidence_;
};

/// Step parameter of the multiplicative-weights colouring.
///
/// epsilon is held exactly as the dyadic rational numerator / 2^kFractionBits; every
/// quantity derived from it (fixed-point factors, the exact audit, alpha) uses that value.
struct EpsilonChoice {
    static constexpr unsigned kFractionBits = 52;

    std::uint64_t numerator = 0;
    double epsilon = 0;
    double one_minus_epsilon = 0;
    /// log2((1+eps)/(1-eps)) / sqrt(log2(3z)/k), always > 2.
    double alpha = 0;
    std::uint64_t ceil_log_3z = 0; // t1
    int halving_exponent = 0;      // t2
};

/// Requires k > log2(3z).
[[nodiscard]] EpsilonChoice compute_epsilon(std::uint64_t z, std::uint64_t k);

struct Colouring {
    std::vector<std::int8_t> colour; // +1 / -1 per universe element
    std::vector<std::uint64_t> plus_count;  // p_i
    std::vector<std::uint64_t> minus_count; // n_i
    std::optional<EpsilonChoice> step; // absent when k <= log2(3z)
    double alpha = 1.0;
    double bound = 0.0; // alpha * sqrt(k * log2(3z))
    std::uint64_t max_discrepancy = 0;
    unsigned precision_bits = 0; // Delta = 2^-precision_bits
    unsigned attempts = 0;
    double objective = 0.0;                  // G as tracked by the fixed-point tree
    std::vector<double> set_objective;       // G_i from the fixed-point leaves
    std::vector<std::uint32_t> pending_underflow; // r per leaf (2 per set)
    bool audit_passed = false;               // exact recomputation gave G_i <= 3z

    [[nodiscard]] std::int64_t set_discrepancy(std::size_t i) const
    {
        return static_cast<std::int64_t>(plus_count[i]) - static_cast<std::int64_t>(minus_count[i]);
    }
};

/// Deterministic greedy colouring with max_i |chi(S_i)| <= alpha * sqrt(k log2(3z)).
/// Throws InvariantViolation if the post-hoc bound check fails.
[[nodiscard]] Colouring colour(const SetSystem& sys);

/// Exact rational check that G_i <= 3z for every set under the colouring's epsilon.
[[nodiscard]] bool exact_objective_audit(const SetSystem& sys, const Colouring& col);

struct PartitionFn {
    std::vector<std::uint32_t> label; // per universe element, in [0, label_count)
    std::uint64_t label_count = 1;
    std::uint64_t achieved_bound = 0; // max_{c,i} |X_c ∩ S_i|
    double target = 0.0;              // 4 alpha^2 log2(3z) unless overridden
    double alpha = 1.0;
    unsigned levels = 0;
};

/// Recursive halving by colouring each part until every |X_c ∩ S_i| <= target.
/// `target_override` replaces 4 alpha^2 log2(3z); halving also stops when a level
/// fails to shrink the largest intersection.
[[nodiscard]] PartitionFn build_partition(const SetSystem& sys,
                                          std::optional<double> target_override = std::nullopt);

/// max_{c,i} |X_c ∩ S_i| for an arbitrary labelling.
[[nodiscard]] std::uint64_t max_part_intersection(const SetSystem& sys,
                                                  std::span<const std::uint32_t> label,
                                                  std::uint64_t label_count);

/// x_{i+1} = floor(x_i (1/2 + 1/sqrt(x_i))) while x_i > 4; returns x_0, x_1, ...
[[nodiscard]] std::vector<std::uint64_t> halving_process(std::uint64_t x);

} // namespace gpm
