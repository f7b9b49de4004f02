#include "gpm/generators.hpp"
#include "gpm/randomized.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace gpm;
using gpm::test::pattern_of;
using gpm::test::text_of;

namespace {

bool is_superset(const std::vector<std::uint64_t>& got, const std::vector<std::uint64_t>& truth)
{
    return std::includes(got.begin(), got.end(), truth.begin(), truth.end());
}

MonteCarloConfig seeded(std::uint64_t seed)
{
    MonteCarloConfig cfg;
    cfg.seed = seed;
    return cfg;
}

Instance capped_instance(std::size_t n, std::size_t m, std::uint64_t cap, std::uint64_t seed)
{
    RandomSpec spec;
    spec.n = n;
    spec.m = m;
    spec.sigma_t = 40;
    spec.sigma_p = 40;
    spec.regime = DegreeCap{cap};
    spec.seed = seed;
    spec.planted = 3;
    return gen_random(spec);
}

Instance sparse_instance(std::size_t n, std::size_t m, double p, std::uint64_t seed)
{
    RandomSpec spec;
    spec.n = n;
    spec.m = m;
    spec.sigma_t = 32;
    spec.sigma_p = 16;
    spec.regime = Density{p};
    spec.seed = seed;
    spec.planted = 3;
    return gen_random(spec);
}

MatchRelation star(std::uint64_t sigma)
{
    // Pattern character 0 matches every text character; the rest match nothing.
    std::vector<std::pair<Symbol, Symbol>> edges;
    for (Symbol a = 0; a < sigma; ++a)
        edges.emplace_back(a, 0);
    return MatchRelation(sigma, 2, edges);
}

} // namespace

TEST_SUITE("randomized")
{
    TEST_CASE("find_prime")
    {
        CHECK(find_prime(10, 20) == 11);
        CHECK(find_prime(2, 4) == 2);
        CHECK(find_prime(500, 1000) == 503);
        CHECK_THROWS_AS((void)find_prime(24, 28), InputError);
        CHECK_THROWS_AS((void)find_prime(1, 10), InputError);
        // Sieve oracle for the primality test.
        std::vector<bool> composite(5000, false);
        for (std::uint64_t i = 2; i < 5000; ++i) {
            if (!composite[i])
                for (std::uint64_t j = i * i; j < 5000; j += i)
                    composite[j] = true;
            CHECK(is_prime(i) == !composite[i]);
        }
        CHECK(is_prime(18446744069414584321ull));
        CHECK_FALSE(is_prime(18446744069414584321ull - 2));
        // Carmichael number and a strong pseudoprime to bases 2, 3, 5, 7.
        CHECK_FALSE(is_prime(561));
        CHECK_FALSE(is_prime(3215031751ull));
        CHECK(is_prime(18446744073709551557ull));
    }

    TEST_CASE("hash family stays in range and is seed determined")
    {
        const auto p = hash_prime(1000, 50);
        CHECK(is_prime(p));
        CHECK(p >= 1000);
        CHECK(p <= 2000);
        const auto h1 = HashFamily::draw(p, 7, 42), h2 = HashFamily::draw(p, 7, 42);
        CHECK(h1.a == h2.a);
        CHECK(h1.b == h2.b);
        CHECK(h1.a < p);
        CHECK(h1.b < p);
        for (std::uint64_t x = 0; x < 1000; ++x) {
            CHECK(h1(x) >= 1);
            CHECK(h1(x) <= 7);
        }
        CHECK(round_seed(5, 0) != round_seed(5, 1));
        CHECK(round_seed(5, 0) != round_seed(6, 0));
    }

    TEST_CASE("round count")
    {
        MonteCarloConfig cfg;
        cfg.c = 2;
        CHECK(cfg.rounds(1) == 1);
        CHECK(cfg.rounds(2) == 2);
        CHECK(cfg.rounds(500) == static_cast<std::uint64_t>(std::ceil(2 * std::log2(500.0))));
        cfg.c = 3;
        CHECK(cfg.rounds(1024) == 30);
    }

    TEST_CASE("occurrences are never dropped")
    {
        const auto id = MatchRelation::identity(3);
        const auto t = text_of({1, 2, 0}, 3);
        const auto p = pattern_of({1, 2, 0}, 3);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            CHECK(report_d(t, p, id, seeded(seed)) == std::vector<std::uint64_t>{1});
            CHECK(report_s(t, p, id, seeded(seed)) == std::vector<std::uint64_t>{1});
        }
    }

    TEST_CASE("empty relation reports nothing")
    {
        std::mt19937_64 rng(8);
        const auto rel = MatchRelation::empty(4, 4);
        const Text t(gpm::test::random_symbols(rng, 200, 4), 4);
        const Pattern p(gpm::test::random_symbols(rng, 5, 4), 4);
        int exact = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto got = report_d(t, p, rel, seeded(seed));
            exact += got.empty();
        }
        CHECK(exact >= 99);
    }

    TEST_CASE("report_d is a superset and usually exact")
    {
        const auto inst = capped_instance(500, 20, 4, 77);
        REQUIRE(inst.rel.params().max_degree <= 4);
        const auto truth = brute_report(inst.text, inst.pattern, inst.rel);
        REQUIRE_FALSE(truth.empty());
        int exact = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto got = report_d(inst.text, inst.pattern, inst.rel, seeded(seed));
            REQUIRE(is_superset(got, truth));
            exact += got == truth;
        }
        CHECK(exact >= 99);
    }

    TEST_CASE("single round keeps every occurrence")
    {
        const auto inst = capped_instance(300, 6, 2, 5);
        const auto truth = brute_report(inst.text, inst.pattern, inst.rel);
        for (std::uint64_t seed = 0; seed < 30; ++seed)
            CHECK(is_superset(report_d_single_round(inst.text, inst.pattern, inst.rel, seed), truth));
    }

    TEST_CASE("report_s is a superset and usually exact")
    {
        const auto inst = sparse_instance(500, 20, 0.125, 91);
        CAPTURE(inst.rel.params().edge_count);
        const auto truth = brute_report(inst.text, inst.pattern, inst.rel);
        int exact = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto got = report_s(inst.text, inst.pattern, inst.rel, seeded(seed));
            REQUIRE(is_superset(got, truth));
            exact += got == truth;
        }
        CHECK(exact >= 99);
    }

    TEST_CASE("star relation is handled exactly by the heavy path")
    {
        std::mt19937_64 rng(12);
        const auto rel = star(64);
        for (int iter = 0; iter < 10; ++iter) {
            const Text t(gpm::test::random_symbols(rng, 300, 64), 64);
            std::vector<Symbol> ps(8, 0);
            ps[rng() % 8] = rng() % 2;
            const Pattern p(ps, 2);
            const auto truth = brute_report(t, p, rel);
            for (std::uint64_t seed = 0; seed < 5; ++seed)
                CHECK(report_s(t, p, rel, seeded(seed)) == truth);
        }
    }

    TEST_CASE("brute fallbacks are exact")
    {
        // D and sqrt(S) both exceed m = 2.
        const auto rel = MatchRelation::complete(6, 6);
        std::mt19937_64 rng(1);
        const Text t(gpm::test::random_symbols(rng, 50, 6), 6);
        const Pattern p({1, 4}, 6);
        CHECK(report_d(t, p, rel, seeded(3)) == brute_report(t, p, rel));
        CHECK(report_s(t, p, rel, seeded(3)) == brute_report(t, p, rel));
    }

    TEST_CASE("results are reproducible and thread independent")
    {
        const auto inst = capped_instance(400, 12, 3, 19);
        auto cfg = seeded(99);
        const auto a = report_d(inst.text, inst.pattern, inst.rel, cfg);
        const auto ca = count_approx(inst.text, inst.pattern, inst.rel, 0.25, cfg);
        cfg.threads = 4;
        CHECK(report_d(inst.text, inst.pattern, inst.rel, cfg) == a);
        CHECK(count_approx(inst.text, inst.pattern, inst.rel, 0.25, cfg).values == ca.values);
    }

    TEST_CASE("count_approx never overestimates")
    {
        const auto id = MatchRelation::identity(3);
        const auto t = text_of({1, 2, 1, 2}, 3);
        const auto p = pattern_of({1, 1}, 3);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto got = count_approx(t, p, id, 0.5, seeded(seed));
            CHECK(got.kind != TableKind::ScaledBand);
            for (std::size_t i = 0; i < 3; ++i)
                CHECK(got.values[i] <= 1);
        }
        // A zero count stays zero.
        const auto self = count_approx(text_of({0, 1, 2}, 3), pattern_of({0, 1, 2}, 3), id, 0.25, seeded(1));
        CHECK(self.values == std::vector<std::uint64_t>{0});
        CHECK_THROWS_AS((void)count_approx(t, p, id, 0.0, seeded(1)), InputError);
        CHECK_THROWS_AS((void)count_approx(t, p, id, 1.0, seeded(1)), InputError);
    }

    TEST_CASE("count_approx coverage on the empty relation")
    {
        std::mt19937_64 rng(30);
        const auto rel = MatchRelation::empty(8, 8);
        const Text t(gpm::test::random_symbols(rng, 500, 8), 8);
        const Pattern p(gpm::test::random_symbols(rng, 10, 8), 8);
        int covered = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto got = count_approx(t, p, rel, 0.25, seeded(seed), CountStrategy::ByD);
            bool ok = true;
            for (auto v : got.values) {
                REQUIRE(v <= 10);
                ok &= static_cast<double>(v) >= 0.75 * 10;
            }
            covered += ok;
        }
        CHECK(covered >= 99);
    }

    TEST_CASE("count_approx strategies on random instances")
    {
        for (auto strategy : {CountStrategy::ByD, CountStrategy::ByS, CountStrategy::Auto}) {
            CAPTURE(static_cast<int>(strategy));
            const auto inst = sparse_instance(400, 16, 0.2, 3);
            const auto truth = brute_count(inst.text, inst.pattern, inst.rel);
            int covered = 0;
            for (std::uint64_t seed = 0; seed < 30; ++seed) {
                const auto got = count_approx(inst.text, inst.pattern, inst.rel, 0.25, seeded(seed), strategy);
                REQUIRE(got.size() == truth.size());
                bool ok = true;
                for (std::size_t i = 0; i < got.size(); ++i) {
                    REQUIRE(got.consistent_with(i, truth.values[i]));
                    ok &= static_cast<double>(got.point_estimate(i)) >= 0.75 * static_cast<double>(truth.values[i]);
                }
                covered += ok;
            }
            CHECK(covered >= 29);
        }
    }

    TEST_CASE("strategy choice compares the two costs")
    {
        // D = 1 with a huge S favours by-D; D = S favours by-S once S is large.
        CHECK(choose_count_strategy(1024, RelationParams{1, 1000000}, 0.25) == CountStrategy::ByD);
        CHECK(choose_count_strategy(1024, RelationParams{1000, 1000}, 0.25) == CountStrategy::ByS);
    }
}
