#include "gpm/core_model.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace gpm;
using gpm::test::pattern_of;
using gpm::test::text_of;

namespace {

MatchRelation two_edges()
{
    const std::vector<std::pair<Symbol, Symbol>> edges{{0, 1}, {2, 1}};
    return MatchRelation(3, 3, edges);
}

} // namespace

TEST_SUITE("core_model")
{
    TEST_CASE("edge oracle")
    {
        const auto id = MatchRelation::identity(3);
        CHECK(id.edge(1, 1));
        CHECK_FALSE(id.edge(0, 1));
        CHECK(two_edges().edge(2, 1));
        CHECK_THROWS_AS((void)id.edge(3, 0), InputError);
        CHECK_THROWS_AS((void)id.edge(0, 7), InputError);
    }

    TEST_CASE("degree oracle")
    {
        CHECK(MatchRelation::identity(5).degree(3, Side::Text) == 1);
        CHECK(MatchRelation::empty(4, 4).degree(0, Side::Pattern) == 0);
        CHECK(two_edges().degree(1, Side::Pattern) == 2);
        CHECK_THROWS_AS((void)two_edges().degree(9, Side::Pattern), InputError);
    }

    TEST_CASE("kth neighbor follows file order")
    {
        const auto rel = two_edges();
        CHECK(rel.kth_neighbor(1, 1, Side::Pattern) == 0);
        CHECK(rel.kth_neighbor(1, 2, Side::Pattern) == 2);
        CHECK_THROWS_AS((void)rel.kth_neighbor(0, 1, Side::Pattern), InputError);

        const std::vector<std::pair<Symbol, Symbol>> reversed{{2, 1}, {0, 1}};
        const MatchRelation r2(3, 3, reversed);
        CHECK(r2.kth_neighbor(1, 1, Side::Pattern) == 2);
        CHECK(r2.kth_neighbor(1, 2, Side::Pattern) == 0);
    }

    TEST_CASE("params")
    {
        CHECK(MatchRelation::identity(7).params() == RelationParams{1, 7});
        CHECK(MatchRelation::complete(3, 4).params() == RelationParams{4, 12});
        for (std::uint64_t sigma : {1u, 5u, 12u})
            for (std::uint64_t delta : {1u, 2u, 3u, 8u, 20u}) {
                const auto rel = MatchRelation::threshold(sigma, delta);
                std::uint64_t brute_d = 0;
                for (Symbol v = 0; v < sigma; ++v) {
                    std::uint64_t deg = 0;
                    for (Symbol w = 0; w < sigma; ++w)
                        deg += (v > w ? v - w : w - v) < delta;
                    brute_d = std::max(brute_d, deg);
                }
                CHECK(rel.params().max_degree == brute_d);
                CHECK(rel.params().max_degree == std::min<std::uint64_t>(2 * delta - 1, sigma));
            }
    }

    TEST_CASE("degree sums equal S on random relations")
    {
        std::mt19937_64 rng(5);
        for (int iter = 0; iter < 50; ++iter) {
            const std::uint64_t st = 1 + rng() % 20, sp = 1 + rng() % 20;
            std::vector<std::pair<Symbol, Symbol>> edges;
            for (int e = 0; e < 60; ++e)
                edges.emplace_back(static_cast<Symbol>(rng() % st), static_cast<Symbol>(rng() % sp));
            const MatchRelation rel(st, sp, edges);
            std::uint64_t by_text = 0, by_pattern = 0, maxdeg = 0;
            for (Symbol a = 0; a < st; ++a) {
                by_text += rel.degree(a, Side::Text);
                maxdeg = std::max(maxdeg, rel.degree(a, Side::Text));
                for (Symbol b : rel.neighbors(a, Side::Text))
                    CHECK(rel.edge(a, b));
            }
            for (Symbol b = 0; b < sp; ++b) {
                by_pattern += rel.degree(b, Side::Pattern);
                maxdeg = std::max(maxdeg, rel.degree(b, Side::Pattern));
            }
            CHECK(by_text == rel.params().edge_count);
            CHECK(by_pattern == rel.params().edge_count);
            CHECK(maxdeg == rel.params().max_degree);
        }
    }

    TEST_CASE("sparse lookup agrees with dense")
    {
        // 2^14 x 2^13 cells exceed the bitset limit and use the hash set.
        const std::vector<std::pair<Symbol, Symbol>> edges{{5, 7}, {16000, 8000}, {5, 8000}};
        const MatchRelation rel(1 << 14, 1 << 13, edges);
        CHECK(rel.edge(5, 7));
        CHECK(rel.edge(16000, 8000));
        CHECK_FALSE(rel.edge(7, 5));
        CHECK(rel.params() == RelationParams{2, 3});
    }

    TEST_CASE("interval normalization and I")
    {
        const IntervalRelation merged(10, {{{1, 3}, {4, 6}}});
        REQUIRE(merged.intervals(0).size() == 1);
        CHECK(merged.intervals(0)[0] == Interval{1, 6});
        CHECK(param_I(merged, pattern_of({0}, 1)) == 1);

        const IntervalRelation two(20, {{{0, 2}, {5, 7}}, {{10, 11}, {14, 19}}});
        CHECK(param_I(two, pattern_of({0, 1, 1, 0}, 2)) == 8);

        for (std::uint64_t delta : {1u, 3u}) {
            const auto thr = IntervalRelation::threshold(16, 16, delta);
            CHECK(param_I(thr, pattern_of({0, 5, 15, 9, 9}, 16)) == 5);
        }
    }

    TEST_CASE("interval and explicit forms agree")
    {
        std::mt19937_64 rng(11);
        for (int iter = 0; iter < 30; ++iter) {
            const std::uint64_t st = 2 + rng() % 30;
            std::vector<std::vector<Interval>> lists(6);
            for (auto& l : lists)
                for (int k = 0; k < 3; ++k) {
                    const Symbol lo = static_cast<Symbol>(rng() % st);
                    const Symbol hi = static_cast<Symbol>(std::min<std::uint64_t>(st - 1, lo + rng() % 5));
                    l.push_back({lo, hi});
                }
            const IntervalRelation ir(st, lists);
            const MatchRelation rel = ir.to_relation();
            for (Symbol b = 0; b < 6; ++b)
                for (Symbol a = 0; a < st; ++a)
                    CHECK(ir.matches(a, b) == rel.edge(a, b));
            const auto back = IntervalRelation::from_relation(rel);
            for (Symbol b = 0; b < 6; ++b) {
                const auto x = ir.intervals(b), y = back.intervals(b);
                CHECK(std::equal(x.begin(), x.end(), y.begin(), y.end()));
            }
            const Text t(gpm::test::random_symbols(rng, 40, st), st);
            const Pattern p(gpm::test::random_symbols(rng, 6, 6), 6);
            CHECK(brute_count(t, p, rel).values == brute_count(t, p, ir).values);
        }
    }

    TEST_CASE("brute count and report")
    {
        const auto id3 = MatchRelation::identity(3);
        CHECK(brute_count(text_of({1, 2, 0}, 3), pattern_of({1, 2, 0}, 3), id3).values ==
              std::vector<std::uint64_t>{0});
        CHECK(brute_count(text_of({1, 2, 1, 2}, 3), pattern_of({1, 1}, 3), id3).values ==
              std::vector<std::uint64_t>{1, 1, 1});
        const auto none = brute_count(text_of({0, 1, 2, 0, 1}, 3), pattern_of({0, 1}, 3), MatchRelation::empty(3, 3));
        CHECK(none.values == std::vector<std::uint64_t>(4, 2));

        CHECK(brute_report(text_of({1, 2, 0}, 3), pattern_of({1, 2, 0}, 3), id3) == std::vector<std::uint64_t>{1});
        CHECK(brute_report(text_of({1, 2, 1, 2, 1}, 3), pattern_of({1, 2}, 3), id3) ==
              std::vector<std::uint64_t>{1, 3});
        CHECK(brute_report(text_of({1}, 3), pattern_of({1, 2}, 3), id3).empty());
        CHECK(brute_count(text_of({1}, 3), pattern_of({1, 2}, 3), id3).values.empty());
    }

    TEST_CASE("report equals zeros of count")
    {
        std::mt19937_64 rng(3);
        for (int iter = 0; iter < 40; ++iter) {
            const auto rel = MatchRelation::threshold(6, 1 + rng() % 3);
            const Text t(gpm::test::random_symbols(rng, 30, 6), 6);
            const Pattern p(gpm::test::random_symbols(rng, 1 + rng() % 4, 6), 6);
            CHECK(brute_report(t, p, rel) == zero_alignments(brute_count(t, p, rel).values));
            // Identical reruns on the same relation.
            CHECK(brute_count(t, p, rel).values == brute_count(t, p, rel).values);
        }
    }

    TEST_CASE("string validation")
    {
        CHECK_THROWS_AS(Text({0, 3}, 3), InputError);
        CHECK_THROWS_AS(Pattern({0}, 0), InputError);
        CHECK_NOTHROW(Text({0, 2}, 3));
    }

    TEST_CASE("isolated pattern characters never match")
    {
        const std::vector<std::pair<Symbol, Symbol>> edges{{0, 0}};
        const MatchRelation rel(2, 2, edges);
        const auto t = brute_count(text_of({0, 1, 0}, 2), pattern_of({1}, 2), rel);
        CHECK(t.values == std::vector<std::uint64_t>{1, 1, 1});
    }

    TEST_CASE("table bands")
    {
        MismatchTable t;
        t.kind = TableKind::ScaledBand;
        t.weight = 4;
        t.epsilon = 0.25;
        t.values = {0, 9, 12};
        CHECK(t.certified_band(0) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
        CHECK(t.certified_band(1) == std::pair<std::uint64_t, std::uint64_t>{3, 3});
        CHECK(t.certified_band(2) == std::pair<std::uint64_t, std::uint64_t>{3, 4});
        CHECK(t.consistent_with(1, 3));
        CHECK_FALSE(t.consistent_with(1, 2));
        CHECK(t.consistent_with(2, 4));
        CHECK(t.point_estimate(2) == 3);

        t.exact_part = {1, 0, 2};
        CHECK(t.consistent_with(0, 1));
        CHECK_FALSE(t.consistent_with(0, 0));
        CHECK(t.certified_band(2) == std::pair<std::uint64_t, std::uint64_t>{5, 6});
    }

    TEST_CASE("alphabet compaction")
    {
        const std::vector<std::uint64_t> codes{900, 5, 900, 77};
        const auto [dense, remap] = compact_alphabet(codes);
        CHECK(dense == std::vector<Symbol>{2, 0, 2, 1});
        CHECK(remap.original == std::vector<std::uint64_t>{5, 77, 900});
        CHECK(remap.dense(77) == Symbol{1});
        CHECK_FALSE(remap.dense(6).has_value());
    }
}
