#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gpm {

using Symbol = std::uint32_t;

/// Malformed user input: out-of-range symbols, bad files, invalid parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller broke an internal precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An algorithm produced a result that violates its own certified guarantee.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class Side { Text, Pattern };

namespace detail {
struct TextTag {};
struct PatternTag {};
} // namespace detail

/// A string over the dense integer alphabet [0, alphabet_size).
template <class Tag>
class SymbolString {
public:
    SymbolString() = default;
    SymbolString(std::vector<Symbol> symbols, std::uint64_t alphabet_size)
        : symbols_(std::move(symbols)), alphabet_size_(alphabet_size)
    {
        if (alphabet_size_ == 0 || alphabet_size_ > (std::uint64_t{1} << 32))
            throw InputError("alphabet size must be in [1, 2^32]");
        for (Symbol s : symbols_)
            if (s >= alphabet_size_)
                throw InputError("symbol " + std::to_string(s) + " outside alphabet of size " +
                                 std::to_string(alphabet_size_));
    }
    SymbolString(std::initializer_list<Symbol> symbols, std::uint64_t alphabet_size)
        : SymbolString(std::vector<Symbol>(symbols), alphabet_size)
    {
    }

    [[nodiscard]] std::size_t size() const { return symbols_.size(); }
    [[nodiscard]] bool empty() const { return symbols_.empty(); }
    [[nodiscard]] std::uint64_t alphabet_size() const { return alphabet_size_; }
    [[nodiscard]] Symbol operator[](std::size_t i) const { return symbols_[i]; }
    [[nodiscard]] std::span<const Symbol> symbols() const { return symbols_; }

    bool operator==(const SymbolString&) const = default;

private:
    std::vector<Symbol> symbols_;
    std::uint64_t alphabet_size_ = 1;
};

using Text = SymbolString<detail::TextTag>;
using Pattern = SymbolString<detail::PatternTag>;

/// Number of alignments of a length-m pattern in a length-n text (0 when m > n).
[[nodiscard]] inline std::size_t alignment_count(std::size_t n, std::size_t m)
{
    return m == 0 || m > n ? 0 : n - m + 1;
}

struct RelationParams {
    std::uint64_t max_degree = 0; // D
    std::uint64_t edge_count = 0; // S
    bool operator==(const RelationParams&) const = default;
};

/// Bipartite matching graph between text and pattern characters.
///
/// Immutable after construction. Neighbor order is the order of first appearance
/// in the edge list used to build it, so kth_neighbor is stable for the lifetime
/// of the object.
class MatchRelation {
public:
    MatchRelation() = default;
    MatchRelation(std::uint64_t text_alphabet, std::uint64_t pattern_alphabet,
                  std::span<const std::pair<Symbol, Symbol>> edges);

    static MatchRelation identity(std::uint64_t alphabet);
    static MatchRelation complete(std::uint64_t text_alphabet, std::uint64_t pattern_alphabet);
    static MatchRelation empty(std::uint64_t text_alphabet, std::uint64_t pattern_alphabet);
    /// a matches b iff |a - b| < delta.
    static MatchRelation threshold(std::uint64_t alphabet, std::uint64_t delta);

    [[nodiscard]] std::uint64_t text_alphabet() const { return text_alphabet_; }
    [[nodiscard]] std::uint64_t pattern_alphabet() const { return pattern_alphabet_; }

    [[nodiscard]] bool edge(Symbol a, Symbol b) const;
    [[nodiscard]] std::uint64_t degree(Symbol v, Side side) const;
    /// k is 1-based.
    [[nodiscard]] Symbol kth_neighbor(Symbol v, std::uint64_t k, Side side) const;
    [[nodiscard]] std::span<const Symbol> neighbors(Symbol v, Side side) const;
    [[nodiscard]] RelationParams params() const { return params_; }

    /// Edges in (text, pattern) order, grouped by pattern character.
    [[nodiscard]] std::vector<std::pair<Symbol, Symbol>> edges() const;

    /// Unchecked variant for inner loops; a and b must be in range.
    [[nodiscard]] bool matches(Symbol a, Symbol b) const
    {
        if (!dense_.empty()) {
            std::uint64_t bit = std::uint64_t{a} * pattern_alphabet_ + b;
            return (dense_[bit >> 6] >> (bit & 63)) & 1u;
        }
        return sparse_.count(pack(a, b)) != 0;
    }

private:
    static std::uint64_t pack(Symbol a, Symbol b) { return (std::uint64_t{a} << 32) | b; }
    void check(Symbol v, Side side) const;

    std::uint64_t text_alphabet_ = 0;
    std::uint64_t pattern_alphabet_ = 0;
    // CSR adjacency per side.
    std::vector<std::uint64_t> text_offsets_, pattern_offsets_;
    std::vector<Symbol> text_adj_, pattern_adj_;
    std::vector<std::uint64_t> dense_;
    std::unordered_set<std::uint64_t> sparse_;
    RelationParams params_;
};

/// Closed interval [lo, hi] of text characters.
struct Interval {
    Symbol lo = 0;
    Symbol hi = 0;
    bool operator==(const Interval&) const = default;
};

/// Merge, sort and coalesce adjacent or overlapping intervals.
[[nodiscard]] std::vector<Interval> normalize_intervals(std::vector<Interval> intervals);

/// Matching relation given as a minimal sorted list of disjoint, non-adjacent
/// intervals of text characters per pattern character.
class IntervalRelation {
public:
    IntervalRelation() = default;
    /// lists[b] are the (possibly unnormalized) intervals for pattern char b.
    IntervalRelation(std::uint64_t text_alphabet, std::vector<std::vector<Interval>> lists);

    static IntervalRelation from_relation(const MatchRelation& rel);
    /// Single interval [b-delta+1, b+delta-1] clipped to the text alphabet.
    static IntervalRelation threshold(std::uint64_t text_alphabet, std::uint64_t pattern_alphabet,
                                      std::uint64_t delta);

    [[nodiscard]] std::uint64_t text_alphabet() const { return text_alphabet_; }
    [[nodiscard]] std::uint64_t pattern_alphabet() const { return lists_.size(); }
    [[nodiscard]] std::span<const Interval> intervals(Symbol b) const;
    [[nodiscard]] bool matches(Symbol a, Symbol b) const;

    [[nodiscard]] MatchRelation to_relation() const;

private:
    std::uint64_t text_alphabet_ = 0;
    std::vector<std::vector<Interval>> lists_;
};

/// I = sum over pattern positions of the interval count of that position's character.
[[nodiscard]] std::uint64_t param_I(const IntervalRelation& ir, const Pattern& pattern);

enum class TableKind { Exact, LowerEstimate, ScaledBand };

/// Per-alignment mismatch counts. values[i] belongs to alignment i+1.
///
/// For ScaledBand tables the true count h of alignment i satisfies
///   (1-eps) * weight * (h - exact_part[i]) <= values[i] <= weight * (h - exact_part[i]);
/// exact_part is empty when there is no exactly counted component.
struct MismatchTable {
    std::vector<std::uint64_t> values;
    TableKind kind = TableKind::Exact;
    std::uint64_t weight = 1;
    double epsilon = 0.0;
    std::vector<std::uint64_t> exact_part;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    [[nodiscard]] std::uint64_t exact_at(std::size_t i) const
    {
        return exact_part.empty() ? 0 : exact_part[i];
    }
    /// Rounded estimate of the true count.
    [[nodiscard]] std::uint64_t point_estimate(std::size_t i) const;
    /// Integer interval certified to contain the true count.
    [[nodiscard]] std::pair<std::uint64_t, std::uint64_t> certified_band(std::size_t i) const;
    /// Whether `truth` is consistent with this table's guarantee at alignment i.
    [[nodiscard]] bool consistent_with(std::size_t i, std::uint64_t truth) const;
};

[[nodiscard]] MismatchTable brute_count(const Text& text, const Pattern& pattern,
                                        const MatchRelation& rel);
[[nodiscard]] MismatchTable brute_count(const Text& text, const Pattern& pattern,
                                        const IntervalRelation& ir);
/// 1-based alignments with zero mismatches, ascending.
[[nodiscard]] std::vector<std::uint64_t> brute_report(const Text& text, const Pattern& pattern,
                                                      const MatchRelation& rel);
/// 1-based alignments whose table value is zero.
[[nodiscard]] std::vector<std::uint64_t> zero_alignments(std::span<const std::uint64_t> values);

/// Dense renumbering of a sparse set of symbol values, ascending.
struct AlphabetRemap {
    std::vector<std::uint64_t> original; // dense id -> original code

    [[nodiscard]] std::size_t size() const { return original.size(); }
    [[nodiscard]] std::optional<Symbol> dense(std::uint64_t code) const;
};

/// Compacts arbitrary codes to [0, distinct) preserving order.
[[nodiscard]] std::pair<std::vector<Symbol>, AlphabetRemap>
compact_alphabet(std::span<const std::uint64_t> codes);

} // namespace gpm
