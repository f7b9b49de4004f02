#include "instances.hpp"

#include <algorithm>

namespace gpm::detail {

void exact_char_accumulate(const Text& text, const Pattern& pattern, const MatchRelation& rel, Symbol b,
                           std::span<std::uint64_t> out, TransformBackend backend)
{
    std::vector<std::uint8_t> x(text.size()), y(pattern.size());
    for (std::size_t i = 0; i < text.size(); ++i)
        x[i] = !rel.matches(text[i], b);
    for (std::size_t j = 0; j < pattern.size(); ++j)
        y[j] = pattern[j] == b;
    correlate_accumulate(x, y, out, backend);
}

std::vector<std::uint64_t> brute_active(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                        std::span<const std::uint8_t> active)
{
    std::vector<std::uint64_t> out(alignment_count(text.size(), pattern.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < pattern.size(); ++j)
            out[i] += active[j] && !rel.matches(text[i + j], pattern[j]);
    return out;
}

HeavySplit split_heavy(const Pattern& pattern, const MatchRelation& rel, std::uint64_t threshold)
{
    HeavySplit s;
    s.light.assign(pattern.size(), 0);
    for (std::size_t j = 0; j < pattern.size(); ++j) {
        if (rel.degree(pattern[j], Side::Pattern) >= threshold) {
            s.heavy.push_back(pattern[j]);
        } else {
            s.light[j] = 1;
            s.any_light = true;
        }
    }
    std::sort(s.heavy.begin(), s.heavy.end());
    s.heavy.erase(std::unique(s.heavy.begin(), s.heavy.end()), s.heavy.end());
    return s;
}

} // namespace gpm::detail
