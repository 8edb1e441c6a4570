#include <gtest/gtest.h>

#include <irkit/beta.hpp>
#include <irkit/code.hpp>
#include <irkit/hom.hpp>
#include <irkit/independence.hpp>

#include "oracles.hpp"

using namespace irkit;

TEST(Hom, KnownPairs)
{
    EXPECT_EQ(hom_exists(cycle(5), complete(3)).status, SearchStatus::found);
    EXPECT_EQ(hom_exists(complete(4), complete(3)).status, SearchStatus::none);
    EXPECT_EQ(hom_exists(cycle(7), cycle(5)).status, SearchStatus::found);
    EXPECT_EQ(hom_exists(cycle(5), cycle(7)).status, SearchStatus::none);
    EXPECT_EQ(hom_exists(kneser(5, 2), complete(3)).status, SearchStatus::found);
    EXPECT_EQ(hom_exists(mycielski(cycle(5)), complete(3)).status, SearchStatus::none);
    EXPECT_EQ(hom_exists(edgeless(4), complete(1)).status, SearchStatus::found);
}

TEST(Hom, AgreesWithBacktrackingOracle)
{
    std::mt19937 rng(31);
    for (int t = 0; t < 150; ++t) {
        Graph g = oracle::random_sized(rng, 1, 8), h = oracle::random_sized(rng, 1, 5);
        auto r = hom_exists(g, h);
        ASSERT_NE(r.status, SearchStatus::inconclusive);
        EXPECT_EQ(r.status == SearchStatus::found, oracle::hom_exists(g, h)) << to_graph6(g) << " -> " << to_graph6(h);
        if (r.hom) {
            EXPECT_TRUE(r.hom->verify());
        }
    }
}

TEST(Hom, BudgetExhaustionIsInconclusive)
{
    Budget b{50, 0.0};
    auto r = hom_exists(strong_power(cycle(5), 2), complement(strong_power(cycle(5), 2)), b);
    EXPECT_NE(r.status, SearchStatus::found);
    if (r.status == SearchStatus::inconclusive) {
        EXPECT_FALSE(r.hom);
    }
}

TEST(Hom, MapVerificationRejectsTampering)
{
    auto r = hom_exists(cycle(6), complete(2));
    ASSERT_TRUE(r.hom);
    HomMap bad = *r.hom;
    bad.map[1] = bad.map[0];
    EXPECT_FALSE(bad.verify());
    bad.map[1] = 7;
    EXPECT_FALSE(bad.verify());
}

TEST(Cores, NamedGraphs)
{
    auto c6 = core_of(cycle(6));
    EXPECT_EQ(c6.status, SearchStatus::found);
    EXPECT_TRUE(oracle::isomorphic(c6.core, complete(2)));

    Graph k5e = delete_edge(complete(5), 0, 1);
    auto c = core_of(k5e);
    EXPECT_EQ(c.status, SearchStatus::found);
    EXPECT_TRUE(oracle::isomorphic(c.core, complete(4)));

    auto c57 = core_of(disjoint_union(cycle(5), cycle(7)));
    EXPECT_EQ(c57.status, SearchStatus::found);
    EXPECT_TRUE(oracle::isomorphic(c57.core, cycle(5)));

    for (const Graph& g : {complete(4), cycle(7), wheel(5), kneser(5, 2)}) EXPECT_TRUE(is_core(g));
    EXPECT_FALSE(is_core(cycle(8)));
    EXPECT_FALSE(is_core(wheel(6)));
}

TEST(Cores, AgreeWithSubsetOracle)
{
    std::mt19937 rng(37);
    for (int t = 0; t < 60; ++t) {
        Graph g = oracle::random_sized(rng, 1, 8);
        auto c = core_of(g);
        ASSERT_EQ(c.status, SearchStatus::found);
        EXPECT_EQ(c.core.n(), oracle::core_size(g)) << to_graph6(g);
        // The retraction is a homomorphism onto the core, and the core sits inside g.
        HomMap r{g, c.core, c.retraction};
        EXPECT_TRUE(r.verify());
        EXPECT_EQ(induced_subgraph(g, c.vertices), c.core);
        EXPECT_TRUE(oracle::hom_exists(c.core, g));
    }
}

TEST(HomEquivalence, Tri)
{
    EXPECT_EQ(hom_equivalent(cycle(6), complete(2)), Tri::yes);
    EXPECT_EQ(hom_equivalent(cycle(5), complete(3)), Tri::no);
    EXPECT_EQ(hom_equivalent(disjoint_union(cycle(5), cycle(7)), cycle(5)), Tri::yes);
}

TEST(Beta, SmallValues)
{
    EXPECT_EQ(beta(cycle(7), complete(1)).value, 3u);
    EXPECT_EQ(beta(cycle(5), complete(3)).value, 5u);
    EXPECT_EQ(beta(complete(4), complete(3)).value, 3u);
    EXPECT_EQ(beta(cycle(5), complete(2)).value, 4u);
}

TEST(Beta, AgreesWithSubsetOracle)
{
    std::mt19937 rng(41);
    for (int t = 0; t < 60; ++t) {
        Graph g = oracle::random_sized(rng, 1, 8), f = oracle::random_sized(rng, 1, 4);
        auto b = beta(g, f);
        EXPECT_EQ(b.value, oracle::beta(g, f)) << to_graph6(g) << " " << to_graph6(f);
        EXPECT_TRUE(verify_beta_witness(g, f, b));
    }
}

TEST(Beta, WitnessCheckRejectsTampering)
{
    auto b = beta(cycle(5), complete(2));
    ASSERT_EQ(b.value, 4u);
    auto bad = b;
    bad.value = 5;
    EXPECT_FALSE(verify_beta_witness(cycle(5), complete(2), bad));
    bad = b;
    std::swap(bad.hom.map[0], bad.hom.map[1]);
    bad.hom.map[1] = bad.hom.map[0];
    EXPECT_FALSE(verify_beta_witness(cycle(5), complete(2), bad));
}

TEST(Beta, FiniteEstimates)
{
    // β of the complement of g (OR powers) against f, rooted.
    EXPECT_EQ(beta_f_estimate(cycle(5), complete(1), 1, 1), Root::of(2));
    EXPECT_EQ(beta_f_estimate(edgeless(3), complete(1), 1, 2), Root::of(1));
    EXPECT_EQ(beta_f_estimate(cycle(5), complete(2), 1, 1), Root::of(4));
}

// Bounds on β of an OR product, in terms of the factors.
TEST(Beta, OrProductInequalitiesOnRandomTriples)
{
    std::mt19937 rng(43);
    for (int t = 0; t < 30; ++t) {
        Graph g1 = oracle::random_sized(rng, 1, 3), g2 = oracle::random_sized(rng, 1, 3);
        Graph f = oracle::random_sized(rng, 1, 3);
        Graph p = or_product(g1, g2);
        std::size_t bp = oracle::beta(p, f), b1 = oracle::beta(g1, f), b2 = oracle::beta(g2, f);
        std::size_t a1 = oracle::alpha(g1), a2 = oracle::alpha(g2);
        EXPECT_LE(std::max(a1 * b2, a2 * b1), bp);
        EXPECT_LE(bp, b1 * b2);
        EXPECT_EQ(beta(p, f).value, bp);
    }
}

TEST(Beta, OrProductInequalitiesOnRandomQuadruples)
{
    std::mt19937 rng(47);
    for (int t = 0; t < 30; ++t) {
        Graph g1 = oracle::random_sized(rng, 1, 3), g2 = oracle::random_sized(rng, 1, 3);
        Graph f1 = oracle::random_sized(rng, 1, 3), f2 = oracle::random_sized(rng, 1, 3);
        std::size_t bp = oracle::beta(or_product(g1, g2), or_product(f1, f2));
        EXPECT_LE(oracle::beta(g1, f1) * oracle::beta(g2, f2), bp);
        EXPECT_LE(bp, g1.n() * g2.n());
    }
}

TEST(Codes, AgreeWithExhaustiveOracle)
{
    std::mt19937 rng(53);
    int pairs = 0, found = 0, undecided = 0;
    while (pairs < 20) {
        Graph g = oracle::random_sized(rng, 2, 5), h = oracle::random_sized(rng, 2, 5);
        std::uniform_int_distribution<int> kd(1, 3), nd(1, 2);
        int k = kd(rng), n = nd(rng);
        if (oracle::ipow(g.n(), k) > 64 || oracle::ipow(h.n(), n) > 25 || oracle::ipow(g.n(), k) < 8) continue;
        auto want = oracle::code_exists(g, k, h, n);
        if (!want) {
            ++undecided;
            continue;
        }
        ++pairs;
        auto r = find_code(g, h, k, n);
        ASSERT_NE(r.status, SearchStatus::inconclusive);
        EXPECT_EQ(r.status == SearchStatus::found, *want)
            << to_graph6(g) << " k=" << k << " -> " << to_graph6(h) << " n=" << n;
        if (r.code) {
            ++found;
            EXPECT_TRUE(verify_code(*r.code));
        }
    }
    std::printf("code oracle: %d of 20 pairs have a code, %d pairs skipped as undecided\n", found, undecided);
    EXPECT_GT(found, 0);
    EXPECT_LT(found, 20);
}

TEST(Codes, PentagonIntoTwoLetters)
{
    // Non-adjacent letters of C5 need distinct codewords: an odd cycle of constraints, so one bit fails.
    EXPECT_EQ(find_code(cycle(5), edgeless(2), 1, 1).status, SearchStatus::none);
    auto r = find_code(cycle(5), edgeless(2), 1, 2);
    EXPECT_EQ(r.status, SearchStatus::found);
    // C5^2 has five pairwise distinguishable words, more than the four words of length two.
    EXPECT_EQ(find_code(cycle(5), edgeless(2), 2, 2).status, SearchStatus::none);
    EXPECT_EQ(find_code(cycle(5), edgeless(2), 2, 3).status, SearchStatus::found);
}

TEST(Codes, VerificationRejectsTampering)
{
    auto r = find_code(edgeless(3), edgeless(2), 1, 2);
    ASSERT_TRUE(r.code);
    CodeMap bad = *r.code;
    bad.map[1] = bad.map[0];
    EXPECT_FALSE(verify_code(bad));
    bad = *r.code;
    bad.map.pop_back();
    EXPECT_FALSE(verify_code(bad));
}

TEST(Codes, Constructions)
{
    auto r = find_code(cycle(5), edgeless(2), 1, 2);
    ASSERT_TRUE(r.code);
    EXPECT_TRUE(verify_code(pad_code(*r.code, 1)));
    auto two = extend_code(*r.code, 2);
    EXPECT_EQ(two.k, 2);
    EXPECT_EQ(two.n, 4);
    EXPECT_TRUE(verify_code(two));
    EXPECT_TRUE(verify_code(restrict_code(two, 1)));
    auto id = find_code(edgeless(2), edgeless(2), 1, 1);
    ASSERT_TRUE(id.code);
    auto comp = compose_codes(*r.code, extend_code(*id.code, 2));
    EXPECT_TRUE(verify_code(comp));
}

TEST(Codes, Frontier)
{
    auto fr = ratio_frontier(cycle(5), edgeless(2), 2, 3);
    EXPECT_FALSE(fr.cells.empty());
    for (const auto& c : fr.cells)
        if (c.code) {
            EXPECT_TRUE(verify_code(*c.code));
        }
}
