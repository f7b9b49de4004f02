#include "gpm/core_model.hpp"

#include <algorithm>
#include <cmath>

namespace gpm {

namespace {

// Relations with at most this many (a, b) cells use a bitset instead of a hash set.
constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 26;

void build_csr(std::uint64_t vertices, const std::vector<std::vector<Symbol>>& lists,
               std::vector<std::uint64_t>& offsets, std::vector<Symbol>& adj)
{
    offsets.assign(vertices + 1, 0);
    for (std::uint64_t v = 0; v < vertices; ++v)
        offsets[v + 1] = offsets[v] + lists[v].size();
    adj.clear();
    adj.reserve(offsets.back());
    for (const auto& l : lists)
        adj.insert(adj.end(), l.begin(), l.end());
}

} // namespace

MatchRelation::MatchRelation(std::uint64_t text_alphabet, std::uint64_t pattern_alphabet,
                             std::span<const std::pair<Symbol, Symbol>> edges)
    : text_alphabet_(text_alphabet), pattern_alphabet_(pattern_alphabet)
{
    const std::uint64_t max_alphabet = std::uint64_t{1} << 32;
    if (text_alphabet == 0 || pattern_alphabet == 0 || text_alphabet > max_alphabet ||
        pattern_alphabet > max_alphabet)
        throw InputError("alphabet sizes must be in [1, 2^32]");

    const bool dense = text_alphabet <= kDenseCellLimit / pattern_alphabet;
    if (dense)
        dense_.assign((text_alphabet * pattern_alphabet + 63) / 64, 0);

    std::vector<std::vector<Symbol>> by_text(text_alphabet), by_pattern(pattern_alphabet);
    for (auto [a, b] : edges) {
        if (a >= text_alphabet || b >= pattern_alphabet)
            throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                             ") outside declared alphabets");
        if (dense) {
            std::uint64_t bit = std::uint64_t{a} * pattern_alphabet + b;
            if ((dense_[bit >> 6] >> (bit & 63)) & 1u)
                continue;
            dense_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        } else if (!sparse_.insert(pack(a, b)).second) {
            continue;
        }
        by_text[a].push_back(b);
        by_pattern[b].push_back(a);
    }
    build_csr(text_alphabet, by_text, text_offsets_, text_adj_);
    build_csr(pattern_alphabet, by_pattern, pattern_offsets_, pattern_adj_);

    params_.edge_count = pattern_adj_.size();
    for (const auto& l : by_text)
        params_.max_degree = std::max<std::uint64_t>(params_.max_degree, l.size());
    for (const auto& l : by_pattern)
        params_.max_degree = std::max<std::uint64_t>(params_.max_degree, l.size());
}

MatchRelation MatchRelation::identity(std::uint64_t alphabet)
{
    std::vector<std::pair<Symbol, Symbol>> e;
    e.reserve(alphabet);
    for (std::uint64_t a = 0; a < alphabet; ++a)
        e.emplace_back(static_cast<Symbol>(a), static_cast<Symbol>(a));
    return MatchRelation(alphabet, alphabet, e);
}

MatchRelation MatchRelation::complete(std::uint64_t text_alphabet, std::uint64_t pattern_alphabet)
{
    std::vector<std::pair<Symbol, Symbol>> e;
    e.reserve(text_alphabet * pattern_alphabet);
    for (std::uint64_t b = 0; b < pattern_alphabet; ++b)
        for (std::uint64_t a = 0; a < text_alphabet; ++a)
            e.emplace_back(static_cast<Symbol>(a), static_cast<Symbol>(b));
    return MatchRelation(text_alphabet, pattern_alphabet, e);
}

MatchRelation MatchRelation::empty(std::uint64_t text_alphabet, std::uint64_t pattern_alphabet)
{
    return MatchRelation(text_alphabet, pattern_alphabet, {});
}

MatchRelation MatchRelation::threshold(std::uint64_t alphabet, std::uint64_t delta)
{
    if (delta < 1)
        throw InputError("threshold delta must be >= 1");
    std::vector<std::pair<Symbol, Symbol>> e;
    for (std::uint64_t b = 0; b < alphabet; ++b) {
        std::uint64_t lo = b + 1 >= delta ? b + 1 - delta : 0;
        std::uint64_t hi = std::min(alphabet - 1, b + delta - 1);
        for (std::uint64_t a = lo; a <= hi; ++a)
            e.emplace_back(static_cast<Symbol>(a), static_cast<Symbol>(b));
    }
    return MatchRelation(alphabet, alphabet, e);
}

void MatchRelation::check(Symbol v, Side side) const
{
    std::uint64_t limit = side == Side::Text ? text_alphabet_ : pattern_alphabet_;
    if (v >= limit)
        throw InputError("character " + std::to_string(v) + " outside " +
                         (side == Side::Text ? "text" : "pattern") + " alphabet");
}

bool MatchRelation::edge(Symbol a, Symbol b) const
{
    check(a, Side::Text);
    check(b, Side::Pattern);
    return matches(a, b);
}

std::span<const Symbol> MatchRelation::neighbors(Symbol v, Side side) const
{
    check(v, side);
    const auto& off = side == Side::Text ? text_offsets_ : pattern_offsets_;
    const auto& adj = side == Side::Text ? text_adj_ : pattern_adj_;
    return std::span<const Symbol>(adj).subspan(off[v], off[v + 1] - off[v]);
}

std::uint64_t MatchRelation::degree(Symbol v, Side side) const
{
    return neighbors(v, side).size();
}

Symbol MatchRelation::kth_neighbor(Symbol v, std::uint64_t k, Side side) const
{
    auto nb = neighbors(v, side);
    if (k < 1 || k > nb.size())
        throw InputError("neighbor index " + std::to_string(k) + " out of range (degree " +
                         std::to_string(nb.size()) + ")");
    return nb[k - 1];
}

std::vector<std::pair<Symbol, Symbol>> MatchRelation::edges() const
{
    std::vector<std::pair<Symbol, Symbol>> out;
    out.reserve(params_.edge_count);
    for (std::uint64_t b = 0; b < pattern_alphabet_; ++b)
        for (std::uint64_t k = pattern_offsets_[b]; k < pattern_offsets_[b + 1]; ++k)
            out.emplace_back(pattern_adj_[k], static_cast<Symbol>(b));
    return out;
}

std::vector<Interval> normalize_intervals(std::vector<Interval> intervals)
{
    for (const auto& iv : intervals)
        if (iv.lo > iv.hi)
            throw InputError("interval with lo > hi");
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> out;
    for (const auto& iv : intervals) {
        if (!out.empty() && std::uint64_t{iv.lo} <= std::uint64_t{out.back().hi} + 1)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

IntervalRelation::IntervalRelation(std::uint64_t text_alphabet,
                                   std::vector<std::vector<Interval>> lists)
    : text_alphabet_(text_alphabet), lists_(std::move(lists))
{
    if (text_alphabet == 0 || text_alphabet > (std::uint64_t{1} << 32) || lists_.empty())
        throw InputError("alphabet sizes must be in [1, 2^32]");
    for (auto& l : lists_) {
        l = normalize_intervals(std::move(l));
        if (!l.empty() && l.back().hi >= text_alphabet)
            throw InputError("interval exceeds text alphabet");
    }
}

IntervalRelation IntervalRelation::from_relation(const MatchRelation& rel)
{
    std::vector<std::vector<Interval>> lists(rel.pattern_alphabet());
    for (std::uint64_t b = 0; b < rel.pattern_alphabet(); ++b) {
        auto nb = rel.neighbors(static_cast<Symbol>(b), Side::Pattern);
        std::vector<Interval> ivs;
        ivs.reserve(nb.size());
        for (Symbol a : nb)
            ivs.push_back({a, a});
        lists[b] = std::move(ivs);
    }
    return IntervalRelation(rel.text_alphabet(), std::move(lists));
}

IntervalRelation IntervalRelation::threshold(std::uint64_t text_alphabet,
                                             std::uint64_t pattern_alphabet, std::uint64_t delta)
{
    if (delta < 1)
        throw InputError("threshold delta must be >= 1");
    std::vector<std::vector<Interval>> lists(pattern_alphabet);
    for (std::uint64_t b = 0; b < pattern_alphabet; ++b) {
        std::uint64_t lo = b + 1 >= delta ? b + 1 - delta : 0;
        std::uint64_t hi = std::min(text_alphabet - 1, b + delta - 1);
        if (lo <= hi)
            lists[b].push_back({static_cast<Symbol>(lo), static_cast<Symbol>(hi)});
    }
    return IntervalRelation(text_alphabet, std::move(lists));
}

std::span<const Interval> IntervalRelation::intervals(Symbol b) const
{
    if (b >= lists_.size())
        throw InputError("pattern character " + std::to_string(b) + " has no interval list");
    return lists_[b];
}

bool IntervalRelation::matches(Symbol a, Symbol b) const
{
    const auto& l = lists_[b];
    auto it = std::upper_bound(l.begin(), l.end(), a,
                               [](Symbol x, const Interval& iv) { return x < iv.lo; });
    return it != l.begin() && std::prev(it)->hi >= a;
}

MatchRelation IntervalRelation::to_relation() const
{
    std::vector<std::pair<Symbol, Symbol>> e;
    for (std::size_t b = 0; b < lists_.size(); ++b)
        for (const auto& iv : lists_[b])
            for (std::uint64_t a = iv.lo; a <= iv.hi; ++a)
                e.emplace_back(static_cast<Symbol>(a), static_cast<Symbol>(b));
    return MatchRelation(text_alphabet_, lists_.size(), e);
}

std::uint64_t param_I(const IntervalRelation& ir, const Pattern& pattern)
{
    std::uint64_t total = 0;
    for (Symbol b : pattern.symbols())
        total += ir.intervals(b).size();
    return total;
}

std::uint64_t MismatchTable::point_estimate(std::size_t i) const
{
    if (kind != TableKind::ScaledBand)
        return values[i];
    return exact_at(i) + (values[i] + weight / 2) / weight;
}

std::pair<std::uint64_t, std::uint64_t> MismatchTable::certified_band(std::size_t i) const
{
    const std::uint64_t v = values[i];
    switch (kind) {
    case TableKind::Exact:
        return {v, v};
    case TableKind::LowerEstimate:
        return {v, static_cast<std::uint64_t>(std::floor(v / (1.0 - epsilon) + 1e-9))};
    case TableKind::ScaledBand: {
        const std::uint64_t e = exact_at(i);
        const std::uint64_t lo = (v + weight - 1) / weight;
        const long double hi = static_cast<long double>(v) / ((1.0L - epsilon) * weight);
        return {e + lo, e + static_cast<std::uint64_t>(std::floor(hi + 1e-9L))};
    }
    }
    return {v, v};
}

bool MismatchTable::consistent_with(std::size_t i, std::uint64_t truth) const
{
    const std::uint64_t v = values[i];
    switch (kind) {
    case TableKind::Exact:
        return v == truth;
    case TableKind::LowerEstimate:
        return v <= truth;
    case TableKind::ScaledBand: {
        const std::uint64_t e = exact_at(i);
        if (truth < e)
            return false;
        const long double h = static_cast<long double>(truth - e);
        const long double upper = h * weight;
        const long double lower = (1.0L - epsilon) * weight * h;
        return v <= upper && static_cast<long double>(v) >= lower - 1e-9L * upper;
    }
    }
    return false;
}

MismatchTable brute_count(const Text& text, const Pattern& pattern, const MatchRelation& rel)
{
    if (text.alphabet_size() > rel.text_alphabet() ||
        pattern.alphabet_size() > rel.pattern_alphabet())
        throw InputError("string alphabet larger than relation alphabet");
    const std::size_t n = text.size(), m = pattern.size();
    MismatchTable out;
    out.values.assign(alignment_count(n, m), 0);
    auto t = text.symbols();
    auto p = pattern.symbols();
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        std::uint64_t c = 0;
        for (std::size_t j = 0; j < m; ++j)
            c += !rel.matches(t[i + j], p[j]);
        out.values[i] = c;
    }
    return out;
}

MismatchTable brute_count(const Text& text, const Pattern& pattern, const IntervalRelation& ir)
{
    if (text.alphabet_size() > ir.text_alphabet() ||
        pattern.alphabet_size() > ir.pattern_alphabet())
        throw InputError("string alphabet larger than relation alphabet");
    const std::size_t n = text.size(), m = pattern.size();
    MismatchTable out;
    out.values.assign(alignment_count(n, m), 0);
    auto t = text.symbols();
    auto p = pattern.symbols();
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        std::uint64_t c = 0;
        for (std::size_t j = 0; j < m; ++j)
            c += !ir.matches(t[i + j], p[j]);
        out.values[i] = c;
    }
    return out;
}

std::vector<std::uint64_t> zero_alignments(std::span<const std::uint64_t> values)
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == 0)
            out.push_back(i + 1);
    return out;
}

std::vector<std::uint64_t> brute_report(const Text& text, const Pattern& pattern,
                                        const MatchRelation& rel)
{
    return zero_alignments(brute_count(text, pattern, rel).values);
}

std::optional<Symbol> AlphabetRemap::dense(std::uint64_t code) const
{
    auto it = std::lower_bound(original.begin(), original.end(), code);
    if (it == original.end() || *it != code)
        return std::nullopt;
    return static_cast<Symbol>(it - original.begin());
}

std::pair<std::vector<Symbol>, AlphabetRemap> compact_alphabet(std::span<const std::uint64_t> codes)
{
    AlphabetRemap remap;
    remap.original.assign(codes.begin(), codes.end());
    std::sort(remap.original.begin(), remap.original.end());
    remap.original.erase(std::unique(remap.original.begin(), remap.original.end()),
                         remap.original.end());
    std::vector<Symbol> dense;
    dense.reserve(codes.size());
    for (auto c : codes)
        dense.push_back(*remap.dense(c));
    return {std::move(dense), std::move(remap)};
}

} // namespace gpm
