#pragma once

#include "gpm/core_model.hpp"

#include <random>
#include <vector>

namespace gpm::test {

inline Text text_of(std::vector<Symbol> s, std::uint64_t sigma) { return Text(std::move(s), sigma); }
inline Pattern pattern_of(std::vector<Symbol> s, std::uint64_t sigma) { return Pattern(std::move(s), sigma); }

inline std::vector<Symbol> random_symbols(std::mt19937_64& rng, std::size_t len, std::uint64_t sigma)
{
    std::uniform_int_distribution<std::uint64_t> d(0, sigma - 1);
    std::vector<Symbol> out(len);
    for (auto& x : out)
        x = static_cast<Symbol>(d(rng));
    return out;
}

inline std::vector<std::uint64_t> expected_zeros(const MismatchTable& t)
{
    return zero_alignments(t.values);
}

} // namespace gpm::test
