#include "gpm/intervals.hpp"

#include <algorithm>
#include <cmath>

namespace gpm {

std::vector<IndexRange> greedy_partition(std::span<const std::uint64_t> values, std::uint64_t b)
{
    if (b <= 1)
        throw InputError("greedy_partition needs b > 1");
    std::vector<IndexRange> out;
    for (std::size_t i = 0; i < values.size();) {
        if (values[i] > b) {
            out.push_back({i, i + 1});
            ++i;
            continue;
        }
        std::uint64_t sum = 0;
        std::size_t j = i;
        while (j < values.size() && sum + values[j] <= b)
            sum += values[j++];
        out.push_back({i, j});
        i = j;
    }
    return out;
}

namespace {

// Packed bitset over range ids.
class Bits {
public:
    explicit Bits(std::size_t size) : words_((size + 63) / 64, 0) {}
    void set_span(std::size_t lo, std::size_t hi) // inclusive
    {
        for (std::size_t k = lo; k <= hi; ++k)
            words_[k >> 6] |= std::uint64_t{1} << (k & 63);
    }
    [[nodiscard]] bool test(std::size_t k) const { return (words_[k >> 6] >> (k & 63)) & 1u; }

private:
    std::vector<std::uint64_t> words_;
};

} // namespace

MismatchTable count_exact_i(const Text& text, const Pattern& pattern, const IntervalRelation& ir,
                            const IntervalOptions& options, IntervalStats* stats, IntervalTrace* trace)
{
    const std::size_t n = text.size(), m = pattern.size();
    const std::size_t outputs = alignment_count(n, m);
    IntervalStats local;
    IntervalStats& st = stats ? *stats : local;
    st = IntervalStats{};
    if (trace) {
        trace->m = m;
        trace->phase1.assign(outputs * m, 0);
        trace->phase2.assign(outputs * m, 0);
    }
    if (outputs == 0)
        return MismatchTable{};

    st.I = param_I(ir, pattern);
    if (options.allow_brute && st.I > static_cast<std::uint64_t>(m) * m && !trace) {
        st.brute_fallback = true;
        return brute_count(text, pattern, ir);
    }

    // Distinct text characters with frequencies.
    std::vector<Symbol> sorted(text.symbols().begin(), text.symbols().end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Symbol> chars;
    std::vector<std::uint64_t> freq;
    for (Symbol a : sorted) {
        if (chars.empty() || chars.back() != a) {
            chars.push_back(a);
            freq.push_back(0);
        }
        ++freq.back();
    }
    st.distinct_chars = chars.size();

    const double I = static_cast<double>(std::max<std::uint64_t>(st.I, 1));
    const double raw_b = static_cast<double>(n) * std::sqrt(std::log2(static_cast<double>(m)) / I);
    st.b = options.block.value_or(std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(raw_b))));
    const auto ranges = greedy_partition(freq, st.b);
    st.ranges = ranges.size();
    std::vector<std::uint32_t> range_of(chars.size());
    for (std::uint32_t c = 0; c < ranges.size(); ++c)
        for (std::size_t k = ranges[c].begin; k < ranges[c].end; ++k)
            range_of[k] = c;

    auto char_index = [&](Symbol a) {
        return static_cast<std::size_t>(std::lower_bound(chars.begin(), chars.end(), a) - chars.begin());
    };
    auto past_index = [&](Symbol a) {
        return static_cast<std::size_t>(std::upper_bound(chars.begin(), chars.end(), a) - chars.begin());
    };
    std::vector<std::uint32_t> reduced(n); // T'
    for (std::size_t i = 0; i < n; ++i)
        reduced[i] = range_of[char_index(text[i])];

    // P' as one bitset per distinct pattern character.
    std::vector<Symbol> pchars(pattern.symbols().begin(), pattern.symbols().end());
    std::sort(pchars.begin(), pchars.end());
    pchars.erase(std::unique(pchars.begin(), pchars.end()), pchars.end());
    std::vector<Bits> allowed(pchars.size(), Bits(ranges.size()));
    for (std::size_t c = 0; c < pchars.size(); ++c)
        for (const Interval& iv : ir.intervals(pchars[c])) {
            const std::size_t first = char_index(iv.lo);
            const std::size_t last_excl = past_index(iv.hi);
            if (first < last_excl)
                allowed[c].set_span(range_of[first], range_of[last_excl - 1]);
        }
    std::vector<std::size_t> pchar_of(m);
    for (std::size_t j = 0; j < m; ++j)
        pchar_of[j] = static_cast<std::size_t>(std::lower_bound(pchars.begin(), pchars.end(), pattern[j]) -
                                               pchars.begin());

    MismatchTable table;
    table.kind = TableKind::Exact;
    table.values.assign(outputs, 0);

    // Phase 1: T'[i+j] not in P'[j].
    std::vector<std::uint8_t> x(n), y(m);
    for (std::uint32_t c = 0; c < ranges.size(); ++c) {
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
            y[j] = !allowed[pchar_of[j]].test(c);
            any |= y[j] != 0;
        }
        if (!any)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            x[i] = reduced[i] == c;
        correlate_accumulate(x, y, table.values, options.backend);
        ++st.phase1_instances;
    }
    if (trace)
        for (std::size_t i = 0; i < outputs; ++i)
            for (std::size_t j = 0; j < m; ++j)
                trace->phase1[i * m + j] = !allowed[pchar_of[j]].test(reduced[i + j]);

    // Occurrence lists per distinct character (counting sort).
    std::vector<std::size_t> occ_start(chars.size() + 1, 0);
    for (std::size_t k = 0; k < chars.size(); ++k)
        occ_start[k + 1] = occ_start[k] + freq[k];
    std::vector<std::uint32_t> occ(n);
    {
        std::vector<std::size_t> fill(occ_start.begin(), occ_start.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            occ[fill[char_index(text[i])]++] = static_cast<std::uint32_t>(i);
    }

    // Phase 2: characters of P'[j]'s ranges that do not match P[j]; they sit next to an
    // interval endpoint inside a non-singleton range.
    std::vector<std::size_t> stamp(chars.size(), 0);
    auto visit = [&](std::size_t j, std::size_t k) {
        if (stamp[k] == j + 1)
            return;
        stamp[k] = j + 1;
        ++st.phase2_chars;
        for (std::size_t o = occ_start[k]; o < occ_start[k + 1]; ++o) {
            const std::size_t pos = occ[o];
            if (pos < j || pos - j >= outputs)
                continue;
            ++table.values[pos - j];
            ++st.phase2_occurrences;
            if (trace)
                trace->phase2[(pos - j) * m + j] = 1;
        }
    };
    for (std::size_t j = 0; j < m; ++j) {
        const Symbol b = pattern[j];
        for (const Interval& iv : ir.intervals(b)) {
            const std::size_t first = char_index(iv.lo);
            const std::size_t last_excl = past_index(iv.hi);
            if (first == last_excl)
                continue; // no text character inside the interval
            const IndexRange lo_range = ranges[range_of[first]];
            for (std::size_t k = first; k-- > lo_range.begin;) {
                if (ir.matches(chars[k], b))
                    break;
                visit(j, k);
            }
            const IndexRange hi_range = ranges[range_of[last_excl - 1]];
            for (std::size_t k = last_excl; k < hi_range.end; ++k) {
                if (ir.matches(chars[k], b))
                    break;
                visit(j, k);
            }
        }
    }
    return table;
}

MismatchTable threshold_count(const Text& text, const Pattern& pattern, std::uint64_t delta,
                              const IntervalOptions& options, IntervalStats* stats)
{
    if (delta < 1)
        throw InputError("threshold delta must be at least 1");
    const IntervalRelation ir =
        IntervalRelation::threshold(text.alphabet_size(), pattern.alphabet_size(), delta);
    return count_exact_i(text, pattern, ir, options, stats);
}

} // namespace gpm
