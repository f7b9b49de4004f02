#include "gpm/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace gpm {

namespace {

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) // inclusive
{
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

MatchRelation density_relation(const RandomSpec& s, double p, std::mt19937_64& rng)
{
    if (!(p > 0.0 && p <= 1.0))
        throw InputError("density must lie in (0, 1]");
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Symbol, Symbol>> edges;
    for (Symbol b = 0; b < s.sigma_p; ++b)
        for (Symbol a = 0; a < s.sigma_t; ++a)
            if (p >= 1.0 || coin(rng))
                edges.emplace_back(a, b);
    return MatchRelation(s.sigma_t, s.sigma_p, edges);
}

MatchRelation capped_relation(const RandomSpec& s, std::uint64_t cap, std::mt19937_64& rng)
{
    if (cap == 0)
        throw InputError("degree cap must be at least 1");
    const std::uint64_t small = std::min(s.sigma_t, s.sigma_p);
    const std::uint64_t large = std::max(s.sigma_t, s.sigma_p);
    std::vector<Symbol> perm(large);
    std::vector<std::pair<Symbol, Symbol>> edges;
    for (std::uint64_t r = 0; r < cap; ++r) {
        std::iota(perm.begin(), perm.end(), Symbol{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (Symbol v = 0; v < small; ++v) {
            if (s.sigma_t >= s.sigma_p)
                edges.emplace_back(perm[v], v);
            else
                edges.emplace_back(v, perm[v]);
        }
    }
    return MatchRelation(s.sigma_t, s.sigma_p, edges);
}

IntervalRelation interval_relation(const RandomSpec& s, std::uint64_t per_char, std::mt19937_64& rng)
{
    if (per_char == 0)
        throw InputError("intervals per character must be at least 1");
    const std::uint64_t max_len = std::max<std::uint64_t>(1, s.sigma_t / (2 * per_char));
    std::vector<std::vector<Interval>> lists(s.sigma_p);
    for (auto& list : lists) {
        const std::uint64_t count = uniform(rng, 1, per_char);
        for (std::uint64_t k = 0; k < count; ++k) {
            const std::uint64_t len = uniform(rng, 1, std::min(max_len, s.sigma_t));
            const std::uint64_t lo = uniform(rng, 0, s.sigma_t - len);
            list.push_back({static_cast<Symbol>(lo), static_cast<Symbol>(lo + len - 1)});
        }
    }
    return IntervalRelation(s.sigma_t, std::move(lists));
}

} // namespace

Instance gen_random(const RandomSpec& spec)
{
    if (spec.n == 0 || spec.m == 0 || spec.sigma_t == 0 || spec.sigma_p == 0)
        throw InputError("sizes must be positive");
    std::mt19937_64 rng(spec.seed);
    Instance inst;
    if (const auto* d = std::get_if<Density>(&spec.regime)) {
        inst.rel = density_relation(spec, d->p, rng);
    } else if (const auto* c = std::get_if<DegreeCap>(&spec.regime)) {
        inst.rel = capped_relation(spec, c->cap, rng);
    } else {
        inst.intervals = interval_relation(spec, std::get<IntervalsPerChar>(spec.regime).per_char, rng);
        inst.rel = inst.intervals->to_relation();
    }

    std::vector<Symbol> t(spec.n), p(spec.m);
    for (auto& x : t)
        x = static_cast<Symbol>(uniform(rng, 0, spec.sigma_t - 1));
    for (auto& x : p)
        x = static_cast<Symbol>(uniform(rng, 0, spec.sigma_p - 1));
    if (spec.m <= spec.n) {
        for (std::uint64_t k = 0; k < spec.planted; ++k) {
            const std::size_t i = uniform(rng, 0, spec.n - spec.m);
            for (std::size_t j = 0; j < spec.m; ++j) {
                const std::uint64_t deg = inst.rel.degree(p[j], Side::Pattern);
                if (deg)
                    t[i + j] = inst.rel.kth_neighbor(p[j], uniform(rng, 1, deg), Side::Pattern);
            }
        }
    }
    inst.text = Text(std::move(t), spec.sigma_t);
    inst.pattern = Pattern(std::move(p), spec.sigma_p);
    return inst;
}

AchievedParams achieved_params(const Instance& inst)
{
    AchievedParams a;
    a.D = inst.rel.params().max_degree;
    a.S = inst.rel.params().edge_count;
    a.I = inst.intervals ? param_I(*inst.intervals, inst.pattern)
                         : param_I(IntervalRelation::from_relation(inst.rel), inst.pattern);
    return a;
}

Instance gen_adversarial_diagonal(std::size_t n, std::size_t m, bool grant, DiagonalInfo* info)
{
    if (m == 0 || n < 2 * m || n % 2 != 0)
        throw InputError("diagonal construction needs n even and n >= 2m >= 2");
    if (grant && m < 2)
        throw InputError("a single granted occurrence needs m >= 2");
    const std::size_t half = n / 2;
    // Alignment a0 = half is the only alignment reading its diagonal, since a0 + half > n - m + 1.
    const std::size_t granted = grant ? half : 0;

    // Diagonal of (a, b) in [half] x [m], 1-based: a0 = 1 + (a - b) mod half.
    auto diagonal = [&](std::size_t a, std::size_t b) { return 1 + (a + half - b % half) % half; };
    std::vector<std::pair<Symbol, Symbol>> edges;
    for (std::size_t b = 1; b <= m; ++b)
        for (std::size_t a = 1; a <= half; ++a) {
            const std::size_t d = diagonal(a, b);
            // Every withheld diagonal gets its zero at the last pattern character.
            const bool one = d == granted || b != m;
            const auto A = static_cast<Symbol>(a - 1), An = static_cast<Symbol>(half + a - 1);
            const auto B = static_cast<Symbol>(b - 1), Bm = static_cast<Symbol>(m + b - 1);
            if (one) {
                edges.emplace_back(A, B);
                edges.emplace_back(An, Bm);
            } else {
                edges.emplace_back(An, B);
                edges.emplace_back(A, Bm);
            }
        }

    std::vector<Symbol> t(n), p(m);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = static_cast<Symbol>(i % half);
    std::iota(p.begin(), p.end(), Symbol{0});

    Instance inst{Text(std::move(t), n), Pattern(std::move(p), 2 * m), MatchRelation(n, 2 * m, edges), {}};
    if (info) {
        info->granted_diagonal = granted;
        info->edges_full = inst.rel.params().edge_count;
        info->edges_used = 0;
        for (Symbol b = 0; b < m; ++b)
            for (Symbol a : inst.rel.neighbors(b, Side::Pattern))
                info->edges_used += a < half;
    }
    return inst;
}

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b)
{
    const std::size_t x = a.size(), y = b.size(), z = y ? b[0].size() : 0;
    BoolMatrix c(x, std::vector<std::uint8_t>(z, 0));
    for (std::size_t i = 0; i < x; ++i) {
        if (a[i].size() != y)
            throw InputError("matrix dimensions do not agree");
        for (std::size_t k = 0; k < y; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < z; ++j)
                    c[i][j] |= b[k][j];
    }
    return c;
}

BoolMatrix random_bool_matrix(std::size_t rows, std::size_t cols, double density, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(density);
    BoolMatrix out(rows, std::vector<std::uint8_t>(cols));
    for (auto& row : out)
        for (auto& v : row)
            v = coin(rng);
    return out;
}

ReductionInstance gen_matrix_reduction(const BoolMatrix& a, const BoolMatrix& b)
{
    const std::size_t x = a.size();
    const std::size_t y = b.size();
    if (x == 0 || y == 0 || b[0].empty())
        throw InputError("matrices must be non-empty");
    for (const auto& row : a)
        if (row.size() != y)
            throw InputError("A must have as many columns as B has rows");
    const std::size_t z_real = b[0].size();
    for (const auto& row : b)
        if (row.size() != z_real)
            throw InputError("B rows differ in length");
    // The spacers need z >= y; extra all-zero columns of B are pure don't cares.
    const std::size_t z = std::max(z_real, y);

    constexpr Symbol kDc = 0;
    std::vector<Symbol> t;
    t.insert(t.end(), z * z, kDc);
    for (std::size_t i = 0; i < x; ++i) {
        if (i)
            t.insert(t.end(), z - y + 1, kDc);
        for (std::size_t k = 0; k < y; ++k)
            t.push_back(a[i][k] ? static_cast<Symbol>(k + 1) : kDc);
    }
    t.insert(t.end(), z * z, kDc);

    std::vector<Symbol> p;
    for (std::size_t j = 0; j < z; ++j) {
        if (j)
            p.insert(p.end(), z - y, kDc);
        for (std::size_t k = 0; k < y; ++k)
            p.push_back(j < z_real && b[k][j] ? static_cast<Symbol>(k + 1) : kDc);
    }

    // Everything matches except a non-? character against itself.
    const std::uint64_t sigma = y + 1;
    std::vector<std::pair<Symbol, Symbol>> edges;
    for (Symbol bb = 0; bb < sigma; ++bb)
        for (Symbol aa = 0; aa < sigma; ++aa)
            if (aa == kDc || bb == kDc || aa != bb)
                edges.emplace_back(aa, bb);

    ReductionInstance out{
        Instance{Text(std::move(t), sigma), Pattern(std::move(p), sigma), MatchRelation(sigma, sigma, edges), {}},
        std::vector<std::vector<std::uint64_t>>(x, std::vector<std::uint64_t>(z_real))};
    for (std::size_t i = 0; i < x; ++i)
        for (std::size_t j = 0; j < z_real; ++j)
            out.designated[i][j] = z * z + i * (z + 1) - j * z + 1;
    return out;
}

} // namespace gpm
