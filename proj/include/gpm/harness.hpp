#pragma once

#include "gpm/core_model.hpp"
#include "gpm/generators.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gpm {

enum class Algo { Brute, RandD, RandS, RandCount, DetD, DetS, Interval, Threshold };

[[nodiscard]] Algo parse_algo(const std::string& name);
[[nodiscard]] std::string algo_name(Algo algo);
[[nodiscard]] const std::vector<std::string>& algo_names();

struct RunOptions {
    Algo algo = Algo::Brute;
    double epsilon = 0.25;
    std::uint64_t c = 2;
    std::uint64_t seed = 1;
    std::uint64_t delta = 1;
    unsigned threads = 1;
};

/// Rejects flag combinations an algorithm cannot use (e.g. interval without an interval form).
void validate(const RunOptions& opt, const Instance& inst);

/// Occurrences, 1-based ascending. Counting algorithms report the zeros of their table.
[[nodiscard]] std::vector<std::uint64_t> run_match(const Instance& inst, const RunOptions& opt);
[[nodiscard]] MismatchTable run_count(const Instance& inst, const RunOptions& opt);

/// The exact table the algorithm is judged against.
[[nodiscard]] MismatchTable oracle_count(const Instance& inst, const RunOptions& opt);

struct ContractResult {
    bool hard_ok = true;            // the guarantee that must hold on every run
    std::uint64_t violations = 0;   // alignments breaking the hard guarantee
    std::uint64_t first_violation = 0; // 1-based, 0 if none
    bool soft_ok = true;            // the probabilistic guarantee for this run
    std::uint64_t soft_misses = 0;
};

/// Counting contracts: equality (exact), band containment (scaled band),
/// underestimate plus (1-eps) coverage (lower estimate).
[[nodiscard]] ContractResult check_count(const MismatchTable& got, const MismatchTable& truth);
/// Reporting: exact algorithms must agree; randomized ones must return a superset.
[[nodiscard]] ContractResult check_match(Algo algo, const std::vector<std::uint64_t>& got,
                                         const std::vector<std::uint64_t>& truth);

[[nodiscard]] bool reporting_is_exact(Algo algo);

struct VerifySummary {
    bool pass = true;
    std::uint64_t instances = 0;
    std::uint64_t hard_failures = 0;
    std::uint64_t soft_failures = 0; // runs with a false positive / coverage miss
    std::uint64_t alignments_checked = 0;
    std::optional<std::uint64_t> failing_instance;
    std::optional<std::uint64_t> failing_seed;
};

/// Minimum fraction of runs meeting the probabilistic guarantee.
inline constexpr double kSoftPassRate = 0.99;

/// Serialises an instance in the CLI file formats, for counterexample dumps.
void dump_instance(std::ostream& out, const Instance& inst, std::uint64_t seed);

/// Prints the counting table in text or JSON-lines form.
void print_table(std::ostream& out, const MismatchTable& table, bool json, bool zero_index);
void print_matches(std::ostream& out, const std::vector<std::uint64_t>& matches, bool json, bool zero_index);

} // namespace gpm
