#include "gpm/randomized.hpp"

#include "gpm/parallel.hpp"
#include "instances.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gpm {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1;
    for (a %= m; e; e >>= 1, a = mulmod(a, a, m))
        if (e & 1)
            r = mulmod(r, a, m);
    return r;
}

} // namespace

// Miller-Rabin with the first twelve prime bases, deterministic for 64-bit inputs.
bool is_prime(std::uint64_t x)
{
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (x < 2)
        return false;
    for (std::uint64_t b : bases)
        if (x % b == 0)
            return x == b;
    std::uint64_t d = x - 1;
    int s = 0;
    for (; d % 2 == 0; d /= 2)
        ++s;
    for (std::uint64_t b : bases) {
        std::uint64_t y = powmod(b, d, x);
        if (y == 1 || y == x - 1)
            continue;
        bool witness = true;
        for (int r = 1; r < s && witness; ++r) {
            y = mulmod(y, y, x);
            witness = y != x - 1;
        }
        if (witness)
            return false;
    }
    return true;
}

std::uint64_t find_prime(std::uint64_t lo, std::uint64_t hi)
{
    if (lo < 2)
        throw InputError("find_prime: lower bound must be at least 2");
    for (std::uint64_t x = lo; x <= hi && x >= lo; ++x)
        if (is_prime(x))
            return x;
    throw InputError("no prime in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t round_seed(std::uint64_t seed, std::uint64_t round)
{
    return mix64(mix64(seed) ^ (round * 0xD1B54A32D192ED03ULL + 1));
}

std::uint64_t MonteCarloConfig::rounds(std::size_t n) const
{
    if (c == 0)
        throw InputError("error exponent c must be positive");
    const double r = std::ceil(static_cast<double>(c) * std::log2(static_cast<double>(std::max<std::size_t>(n, 1))));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(r));
}

HashFamily HashFamily::draw(std::uint64_t p, std::uint64_t buckets, std::uint64_t seed)
{
    if (p < 2 || buckets == 0)
        throw PreconditionError("hash family needs p >= 2 and at least one bucket");
    // Rejection sampling keeps the draws exactly uniform on [0, p).
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % p;
    std::uint64_t state = seed;
    auto uniform = [&] {
        for (;;) {
            state = mix64(state);
            if (state < limit)
                return state % p;
        }
    };
    HashFamily h;
    h.p = p;
    h.buckets = buckets;
    h.a = uniform();
    h.b = uniform();
    return h;
}

std::uint64_t hash_prime(std::size_t n, std::uint64_t sigma_t)
{
    const std::uint64_t lo = std::max<std::uint64_t>({n, sigma_t, 2});
    return find_prime(lo, 2 * lo);
}

namespace {

using detail::brute_active;
using detail::exact_char_accumulate;
using detail::HeavySplit;
using detail::split_heavy;

double log2n(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(n))); }

std::vector<std::uint8_t> all_active(std::size_t m) { return std::vector<std::uint8_t>(m, 1); }

// One hashing round: for every alignment, the number of active pattern positions j whose
// hashed text character falls outside H(P[j]) = { h(a) : a matches P[j] }.
std::vector<std::uint64_t> hashed_round(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                        const std::vector<std::uint8_t>& active, std::uint64_t p,
                                        std::uint64_t buckets, std::uint64_t seed, TransformBackend backend)
{
    const std::size_t n = text.size(), m = pattern.size();
    std::vector<std::uint64_t> out(alignment_count(n, m), 0);
    if (out.empty())
        return out;
    const HashFamily h = HashFamily::draw(p, buckets, seed);

    std::vector<std::uint64_t> text_bucket(n);
    std::vector<std::uint64_t> used;
    for (std::size_t i = 0; i < n; ++i) {
        text_bucket[i] = h(text[i]) - 1;
        used.push_back(text_bucket[i]);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    // H(b) per distinct active pattern character.
    std::vector<Symbol> chars;
    for (std::size_t j = 0; j < m; ++j)
        if (active[j])
            chars.push_back(pattern[j]);
    std::sort(chars.begin(), chars.end());
    chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
    if (chars.empty())
        return out;
    std::vector<std::vector<std::uint64_t>> image(chars.size());
    for (std::size_t c = 0; c < chars.size(); ++c) {
        for (Symbol a : rel.neighbors(chars[c], Side::Pattern))
            image[c].push_back(h(a) - 1);
        std::sort(image[c].begin(), image[c].end());
        image[c].erase(std::unique(image[c].begin(), image[c].end()), image[c].end());
    }
    std::vector<std::size_t> char_of(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        if (active[j])
            char_of[j] = static_cast<std::size_t>(
                std::lower_bound(chars.begin(), chars.end(), pattern[j]) - chars.begin());

    // Buckets with no text character give all-? text instances and are skipped.
    std::vector<std::uint8_t> x(n), y(m);
    for (std::uint64_t a : used) {
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
            y[j] = active[j] && !std::binary_search(image[char_of[j]].begin(), image[char_of[j]].end(), a);
            any |= y[j] != 0;
        }
        if (!any)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            x[i] = text_bucket[i] == a;
        correlate_accumulate(x, y, out, backend);
    }
    return out;
}

// Alignments whose per-round counts are zero in every round.
std::vector<std::uint8_t> survive_rounds(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                         const std::vector<std::uint8_t>& active, std::uint64_t buckets,
                                         const MonteCarloConfig& cfg)
{
    const std::size_t outputs = alignment_count(text.size(), pattern.size());
    const std::uint64_t p = hash_prime(text.size(), rel.text_alphabet());
    const std::uint64_t rounds = cfg.rounds(text.size());
    std::vector<std::vector<std::uint64_t>> per_round(rounds);
    parallel_for(rounds, cfg.threads, [&](std::size_t r) {
        per_round[r] = hashed_round(text, pattern, rel, active, p, buckets, round_seed(cfg.seed, r), cfg.backend);
    });
    std::vector<std::uint8_t> alive(outputs, 1);
    for (const auto& counts : per_round)
        for (std::size_t i = 0; i < outputs; ++i)
            alive[i] &= counts[i] == 0;
    return alive;
}

std::vector<std::uint64_t> alive_to_list(const std::vector<std::uint8_t>& alive)
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i])
            out.push_back(i + 1);
    return out;
}

// Entrywise max over rounds of bucketed counts, by-D scheme with the given degree bound.
std::vector<std::uint64_t> approx_rounds(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                         const std::vector<std::uint8_t>& active, std::uint64_t degree,
                                         double epsilon, const MonteCarloConfig& cfg, bool& exact)
{
    const std::size_t n = text.size();
    const double lo_real = 2.0 * static_cast<double>(degree) / epsilon;
    exact = lo_real > static_cast<double>(n);
    if (exact)
        return brute_active(text, pattern, rel, active);
    const std::uint64_t lo = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(lo_real)));
    const std::uint64_t hi = std::max<std::uint64_t>(
        2 * lo, static_cast<std::uint64_t>(std::floor(4.0 * static_cast<double>(degree) / epsilon)));
    const std::uint64_t q = find_prime(lo, hi);
    const std::uint64_t p = hash_prime(n, rel.text_alphabet());
    const std::uint64_t rounds = cfg.rounds(n);
    std::vector<std::vector<std::uint64_t>> per_round(rounds);
    parallel_for(rounds, cfg.threads, [&](std::size_t r) {
        per_round[r] = hashed_round(text, pattern, rel, active, p, q, round_seed(cfg.seed, r), cfg.backend);
    });
    std::vector<std::uint64_t> best(alignment_count(n, pattern.size()), 0);
    for (const auto& counts : per_round)
        for (std::size_t i = 0; i < best.size(); ++i)
            best[i] = std::max(best[i], counts[i]);
    return best;
}

} // namespace

std::vector<std::uint64_t> report_d(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                    const MonteCarloConfig& cfg)
{
    const std::size_t n = text.size(), m = pattern.size();
    if (alignment_count(n, m) == 0)
        return {};
    const std::uint64_t D = rel.params().max_degree;
    if (D > m)
        return brute_report(text, pattern, rel);
    const std::uint64_t buckets = std::max<std::uint64_t>(1, 2 * D);
    return alive_to_list(survive_rounds(text, pattern, rel, all_active(m), buckets, cfg));
}

std::vector<std::uint64_t> report_d_single_round(const Text& text, const Pattern& pattern,
                                                 const MatchRelation& rel, std::uint64_t seed)
{
    const std::uint64_t buckets = std::max<std::uint64_t>(1, 2 * rel.params().max_degree);
    const auto counts = hashed_round(text, pattern, rel, all_active(pattern.size()),
                                     hash_prime(text.size(), rel.text_alphabet()), buckets, seed,
                                     TransformBackend::Auto);
    return zero_alignments(counts);
}

std::vector<std::uint64_t> report_s(const Text& text, const Pattern& pattern, const MatchRelation& rel,
                                    const MonteCarloConfig& cfg)
{
    const std::size_t n = text.size(), m = pattern.size();
    const std::size_t outputs = alignment_count(n, m);
    if (outputs == 0)
        return {};
    const double S = static_cast<double>(rel.params().edge_count);
    if (std::sqrt(S) > static_cast<double>(m))
        return brute_report(text, pattern, rel);
    const auto threshold = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::sqrt(S / log2n(n)))));
    const HeavySplit split = split_heavy(pattern, rel, threshold);

    std::vector<std::uint64_t> heavy(outputs, 0);
    for (Symbol b : split.heavy)
        exact_char_accumulate(text, pattern, rel, b, heavy, cfg.backend);
    std::vector<std::uint8_t> alive(outputs, 1);
    if (split.any_light)
        alive = survive_rounds(text, pattern, rel, split.light, 2 * threshold, cfg);
    for (std::size_t i = 0; i < outputs; ++i)
        alive[i] &= heavy[i] == 0;
    return alive_to_list(alive);
}

CountStrategy choose_count_strategy(std::size_t n, const RelationParams& params, double epsilon)
{
    const double lg = log2n(n);
    const double by_d = static_cast<double>(params.max_degree) * lg / epsilon;
    const double by_s = std::sqrt(static_cast<double>(params.edge_count) * lg / epsilon);
    return by_d <= by_s ? CountStrategy::ByD : CountStrategy::ByS;
}

MismatchTable count_approx(const Text& text, const Pattern& pattern, const MatchRelation& rel, double epsilon,
                           const MonteCarloConfig& cfg, CountStrategy strategy)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InputError("epsilon must lie in (0, 1)");
    const std::size_t n = text.size(), m = pattern.size();
    MismatchTable table;
    table.kind = TableKind::LowerEstimate;
    table.epsilon = epsilon;
    const std::size_t outputs = alignment_count(n, m);
    if (outputs == 0)
        return table;
    if (strategy == CountStrategy::Auto)
        strategy = choose_count_strategy(n, rel.params(), epsilon);

    bool exact = false;
    if (strategy == CountStrategy::ByD) {
        table.values = approx_rounds(text, pattern, rel, all_active(m), rel.params().max_degree, epsilon, cfg, exact);
        if (exact)
            table.kind = TableKind::Exact;
        return table;
    }

    const double S = static_cast<double>(rel.params().edge_count);
    const auto threshold =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::sqrt(epsilon * S / log2n(n)))));
    const HeavySplit split = split_heavy(pattern, rel, threshold);
    table.values.assign(outputs, 0);
    for (Symbol b : split.heavy)
        exact_char_accumulate(text, pattern, rel, b, table.values, cfg.backend);
    bool light_exact = true;
    if (split.any_light) {
        const auto light = approx_rounds(text, pattern, rel, split.light, threshold, epsilon, cfg, light_exact);
        for (std::size_t i = 0; i < outputs; ++i)
            table.values[i] += light[i];
    }
    if (light_exact)
        table.kind = TableKind::Exact;
    return table;
}

} // namespace gpm
