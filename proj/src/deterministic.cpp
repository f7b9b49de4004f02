#include "gpm/deterministic.hpp"

#include "instances.hpp"

#include <algorithm>
#include <cmath>

namespace gpm {

namespace {

void check_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InputError("epsilon must lie in (0, 1)");
}

double log2n(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(n))); }

template <class T>
void sort_unique(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// h'[i] = sum over active j of |C_{T[i+j]} - PC_{P[j]}|, where PC_b is the union of the codes
// of b's matching characters. Returns the code weight.
std::uint64_t coded_count(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                          std::span<const std::uint8_t> active, double epsilon,
                          const DeterministicOptions& options, std::span<std::uint64_t> out,
                          DeterministicInfo* info)
{
    const std::size_t n = text.size(), m = pattern.size();

    std::vector<Symbol> pchars;
    for (std::size_t j = 0; j < m; ++j)
        if (active[j])
            pchars.push_back(pattern[j]);
    sort_unique(pchars);
    if (pchars.empty())
        return 1;

    std::vector<Symbol> tchars(text.symbols().begin(), text.symbols().end());
    sort_unique(tchars);
    auto tindex = [&](Symbol a) {
        auto it = std::lower_bound(tchars.begin(), tchars.end(), a);
        return it != tchars.end() && *it == a ? static_cast<std::ptrdiff_t>(it - tchars.begin()) : -1;
    };

    // U: text characters that occur in T and match some active pattern character.
    std::vector<Symbol> universe;
    for (Symbol b : pchars)
        for (Symbol a : rel.neighbors(b, Side::Pattern))
            if (tindex(a) >= 0)
                universe.push_back(a);
    sort_unique(universe);
    auto uid = [&](Symbol a) {
        auto it = std::lower_bound(universe.begin(), universe.end(), a);
        return it != universe.end() && *it == a ? static_cast<std::uint32_t>(it - universe.begin())
                                                : static_cast<std::uint32_t>(universe.size());
    };

    std::vector<std::vector<std::uint32_t>> sets(pchars.size());
    for (std::size_t c = 0; c < pchars.size(); ++c)
        for (Symbol a : rel.neighbors(pchars[c], Side::Pattern))
            if (tindex(a) >= 0)
                sets[c].push_back(uid(a));
    const SetSystem sys(universe.size(), sets);
    const CodeFamily code = build_code(sys, epsilon, CodeBuildOptions{options.partition_target});

    // Covered code elements per active pattern character.
    std::vector<std::vector<std::uint64_t>> covered(pchars.size());
    for (std::size_t c = 0; c < pchars.size(); ++c) {
        for (auto u : sys.set(c))
            covered[c].insert(covered[c].end(), code.codes[u].begin(), code.codes[u].end());
        sort_unique(covered[c]);
    }
    std::vector<std::size_t> char_of(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        if (active[j])
            char_of[j] = static_cast<std::size_t>(std::lower_bound(pchars.begin(), pchars.end(), pattern[j]) -
                                                  pchars.begin());

    // (code element, text character index) pairs, grouped by element.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> incidence;
    for (std::uint32_t t = 0; t < tchars.size(); ++t)
        for (auto r : code.code_of(uid(tchars[t])))
            incidence.emplace_back(r, t);
    std::sort(incidence.begin(), incidence.end());

    std::vector<std::uint32_t> text_char(n);
    for (std::size_t i = 0; i < n; ++i)
        text_char[i] = static_cast<std::uint32_t>(tindex(text[i]));

    std::vector<std::uint8_t> holds(tchars.size(), 0), x(n), y(m);
    std::uint64_t correlations = 0;
    for (std::size_t s = 0; s < incidence.size();) {
        const std::uint64_t r = incidence[s].first;
        std::size_t e = s;
        for (; e < incidence.size() && incidence[e].first == r; ++e)
            holds[incidence[e].second] = 1;
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& cov = covered[char_of[j]];
            y[j] = active[j] && !std::binary_search(cov.begin(), cov.end(), r);
            any |= y[j] != 0;
        }
        if (any) {
            for (std::size_t i = 0; i < n; ++i)
                x[i] = holds[text_char[i]];
            correlate_accumulate(x, y, out, options.backend);
            ++correlations;
        }
        for (std::size_t k = s; k < e; ++k)
            holds[incidence[k].second] = 0;
        s = e;
    }

    if (info) {
        info->universe = universe.size();
        info->code_length = code.length;
        info->code_weight = code.weight;
        info->code_degree = code.degree;
        info->correlations += correlations;
    }
    return code.weight;
}

MismatchTable exact_table(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                          DeterministicInfo* info)
{
    if (info)
        info->brute_fallback = true;
    return brute_count(text, pattern, rel);
}

} // namespace

MismatchTable count_det_d(const Text& text, const Pattern& pattern, const MatchRelation& rel, double epsilon,
                          const DeterministicOptions& options, DeterministicInfo* info)
{
    check_epsilon(epsilon);
    const std::size_t n = text.size(), m = pattern.size();
    if (alignment_count(n, m) == 0)
        return MismatchTable{{}, TableKind::ScaledBand, 1, epsilon, {}};
    if (rel.params().max_degree > m || epsilon < 1.0 / static_cast<double>(m))
        return exact_table(text, pattern, rel, info);

    MismatchTable table;
    table.kind = TableKind::ScaledBand;
    table.epsilon = epsilon;
    table.values.assign(n - m + 1, 0);
    const std::vector<std::uint8_t> active(m, 1);
    table.weight = coded_count(text, pattern, rel, active, epsilon, options, table.values, info);
    return table;
}

std::uint64_t det_s_threshold(std::size_t n, std::size_t m, std::uint64_t S, double epsilon)
{
    const double raw = epsilon * std::sqrt(static_cast<double>(S)) / std::pow(log2n(n), 2.5);
    const double clamped = std::clamp(std::ceil(raw), 1.0, static_cast<double>(std::max<std::size_t>(m, 1)));
    return static_cast<std::uint64_t>(clamped);
}

MismatchTable count_det_s(const Text& text, const Pattern& pattern, const MatchRelation& rel, double epsilon,
                          const DeterministicOptions& options, DeterministicInfo* info)
{
    check_epsilon(epsilon);
    const std::size_t n = text.size(), m = pattern.size();
    const std::size_t outputs = alignment_count(n, m);
    if (outputs == 0)
        return MismatchTable{{}, TableKind::ScaledBand, 1, epsilon, {}};

    const std::uint64_t threshold = det_s_threshold(n, m, rel.params().edge_count, epsilon);
    const detail::HeavySplit split = detail::split_heavy(pattern, rel, threshold);
    if (info) {
        info->heavy_threshold = threshold;
        info->heavy_chars = split.heavy.size();
    }

    MismatchTable table;
    table.kind = TableKind::ScaledBand;
    table.epsilon = epsilon;
    table.exact_part.assign(outputs, 0);
    for (Symbol b : split.heavy)
        detail::exact_char_accumulate(text, pattern, rel, b, table.exact_part, options.backend);

    table.values.assign(outputs, 0);
    if (!split.any_light)
        return table;
    if (epsilon < 1.0 / static_cast<double>(m)) {
        // Light part counted exactly; weight 1 with a zero-width band.
        if (info)
            info->brute_fallback = true;
        table.values = detail::brute_active(text, pattern, rel, split.light);
        table.kind = TableKind::Exact;
        for (std::size_t i = 0; i < outputs; ++i)
            table.values[i] += table.exact_part[i];
        table.exact_part.clear();
        return table;
    }
    table.weight = coded_count(text, pattern, rel, split.light, epsilon, options, table.values, info);
    return table;
}

DetStrategy choose_det_strategy(std::size_t n, const RelationParams& params, double epsilon)
{
    const double lg = log2n(n);
    const double by_d = static_cast<double>(params.max_degree) * std::pow(lg, 6.0) / (epsilon * epsilon);
    const double by_s = std::sqrt(static_cast<double>(params.edge_count)) * std::pow(lg, 3.5) / epsilon;
    return by_d <= by_s ? DetStrategy::ByD : DetStrategy::ByS;
}

std::vector<std::uint64_t> report_det(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                      const DeterministicOptions& options)
{
    constexpr double kHalf = 0.5;
    const MismatchTable table = choose_det_strategy(text.size(), rel.params(), kHalf) == DetStrategy::ByD
                                    ? count_det_d(text, pattern, rel, kHalf, options)
                                    : count_det_s(text, pattern, rel, kHalf, options);
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table.values[i] == 0 && table.exact_at(i) == 0)
            out.push_back(i + 1);
    return out;
}

} // namespace gpm
