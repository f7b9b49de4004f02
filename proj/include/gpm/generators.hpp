#pragma once

#include "gpm/core_model.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace gpm {

/// A generated problem: strings, relation, and the interval form when it was built from intervals.
struct Instance {
    Text text;
    Pattern pattern;
    MatchRelation rel;
    std::optional<IntervalRelation> intervals;
};

/// Each pair (a, b) is an edge independently with this probability; 1 gives the complete relation.
struct Density {
    double p = 0.1;
};
/// Union of `cap` random matchings between the alphabets, so every degree is at most cap.
struct DegreeCap {
    std::uint64_t cap = 1;
};
/// Up to `per_char` random intervals of text characters per pattern character.
struct IntervalsPerChar {
    std::uint64_t per_char = 1;
};
using Regime = std::variant<Density, DegreeCap, IntervalsPerChar>;

struct RandomSpec {
    std::size_t n = 100;
    std::size_t m = 10;
    std::uint64_t sigma_t = 8;
    std::uint64_t sigma_p = 8;
    Regime regime = Density{};
    std::uint64_t seed = 1;
    std::uint64_t planted = 0; // alignments forced to be occurrences where possible
};

[[nodiscard]] Instance gen_random(const RandomSpec& spec);

/// D, S of the relation and I of the interval form (I is computed from the relation's
/// interval cover when no interval form was generated).
struct AchievedParams {
    std::uint64_t D = 0;
    std::uint64_t S = 0;
    std::uint64_t I = 0;
};
[[nodiscard]] AchievedParams achieved_params(const Instance& inst);

struct DiagonalInfo {
    std::uint64_t granted_diagonal = 0; // 1-based alignment of the occurrence, 0 when withheld
    std::uint64_t edges_full = 0;       // S over [n] x [2m]
    std::uint64_t edges_used = 0;       // edges between characters of T and of P
};

/// T = 1..n/2 1..n/2, P = 1..m (as codes 0..), relation over [n] x [2m] built from related
/// quadruples, each holding exactly two ones. With `grant` exactly one diagonal is all ones.
[[nodiscard]] Instance gen_adversarial_diagonal(std::size_t n, std::size_t m, bool grant,
                                                DiagonalInfo* info = nullptr);

using BoolMatrix = std::vector<std::vector<std::uint8_t>>;

struct ReductionInstance {
    Instance instance;
    /// designated[i][j]: 1-based alignment where row i of A meets column j of B.
    std::vector<std::vector<std::uint64_t>> designated;
};

/// Boolean matrix product reduction: A is x by y, B is y by z. Code 0 is the don't care.
[[nodiscard]] ReductionInstance gen_matrix_reduction(const BoolMatrix& a, const BoolMatrix& b);

[[nodiscard]] BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b);

[[nodiscard]] BoolMatrix random_bool_matrix(std::size_t rows, std::size_t cols, double density,
                                            std::uint64_t seed);

} // namespace gpm
