#include <gtest/gtest.h>

#include <irkit/fractional.hpp>
#include <irkit/independence.hpp>
#include <irkit/lp.hpp>
#include <irkit/minrank.hpp>

#include "oracles.hpp"

using namespace irkit;

namespace {

std::uint32_t mask_of(const std::vector<int>& vs)
{
    std::uint32_t m = 0;
    for (int v : vs) m |= 1u << v;
    return m;
}

// Optimality of a fractional clique cover of g, checked with brute-force clique enumeration:
// primal cliques cover every vertex, dual weights pack every clique, and both sum to the value.
void expect_optimal_clique_cover(const Graph& g, const FractionalValue& fv)
{
    ASSERT_EQ(fv.sets.size(), fv.weights.size());
    std::vector<Rational> cover(g.n(), 0);
    Rational total = 0;
    for (std::size_t j = 0; j < fv.sets.size(); ++j) {
        EXPECT_TRUE(oracle::clique_mask(g, mask_of(fv.sets[j])));
        EXPECT_GE(fv.weights[j], 0);
        for (int v : fv.sets[j]) cover[v] += fv.weights[j];
        total += fv.weights[j];
    }
    for (const auto& c : cover) EXPECT_GE(c, 1);
    EXPECT_EQ(total, fv.value);
    ASSERT_EQ(fv.dual.size(), g.n());
    Rational dual_total = 0;
    for (const auto& y : fv.dual) {
        EXPECT_GE(y, 0);
        dual_total += y;
    }
    EXPECT_EQ(dual_total, fv.value);
    for (std::uint32_t m : oracle::cliques(g)) {
        Rational s = 0;
        for (std::size_t v = 0; v < g.n(); ++v)
            if (m >> v & 1) s += fv.dual[v];
        EXPECT_LE(s, 1);
    }
}

} // namespace

TEST(Independence, AgreesWithSubsetOracle)
{
    std::mt19937 rng(61);
    for (int t = 0; t < 120; ++t) {
        Graph g = oracle::random_sized(rng, 1, 13);
        auto a = independence_number(g);
        EXPECT_EQ(a.value, oracle::alpha(g));
        EXPECT_TRUE(is_independent(g, a.vertices));
        EXPECT_EQ(a.vertices.size(), a.value);
        EXPECT_EQ(clique_number(g).value, oracle::omega(g));
    }
}

TEST(Independence, NamedGraphs)
{
    EXPECT_EQ(independence_number(cycle(5)).value, 2u);
    EXPECT_EQ(independence_number(strong_power(cycle(5), 2)).value, 5u);
    EXPECT_EQ(independence_number(schlafli()).value, 3u);
    EXPECT_EQ(independence_number(complement(schlafli())).value, 6u);
    EXPECT_EQ(independence_number(kneser(5, 2)).value, 4u);
    EXPECT_EQ(independence_number(cycle(7)).value, 3u);
}

TEST(Coloring, AgreesWithExhaustiveOracle)
{
    std::mt19937 rng(67);
    for (int t = 0; t < 60; ++t) {
        Graph g = oracle::random_sized(rng, 1, 7);
        auto c = chromatic_number(g);
        EXPECT_EQ(c.colors, oracle::chromatic(g));
        EXPECT_TRUE(is_proper_coloring(g, c));
        auto cc = clique_cover(g);
        EXPECT_EQ(cc.colors, oracle::chromatic(complement(g)));
        EXPECT_TRUE(is_clique_partition(g, cc));
    }
    EXPECT_EQ(chromatic_number(kneser(5, 2)).colors, 3u);
    EXPECT_EQ(chromatic_number(mycielski(cycle(5))).colors, 4u);
}

TEST(Minrank, AgreesWithExhaustiveOracle)
{
    std::mt19937 rng(71);
    for (int t = 0; t < 40; ++t) {
        Graph g = oracle::random_sized(rng, 1, 5);
        auto mr = minrank_gf2(g);
        EXPECT_EQ(mr.value, oracle::minrank_gf2(g)) << to_graph6(g);
        EXPECT_TRUE(verify_minrank_witness(g, mr));
        EXPECT_EQ(oracle::gf2_rank(mr.matrix), mr.value);
    }
    EXPECT_EQ(minrank_gf2(cycle(5)).value, 3u);
}

TEST(Minrank, SandwichedBetweenAlphaAndCliqueCover)
{
    std::mt19937 rng(73);
    for (int t = 0; t < 40; ++t) {
        Graph g = oracle::random_sized(rng, 4, 9);
        auto mr = minrank_gf2(g);
        EXPECT_LE(oracle::alpha(g), mr.value);
        EXPECT_LE(mr.value, oracle::chromatic(complement(g)));
    }
}

TEST(Minrank, WitnessCheckRejectsTampering)
{
    auto mr = minrank_gf2(cycle(5));
    auto bad = mr;
    bad.matrix[0] &= ~1u; // zero diagonal entry
    EXPECT_FALSE(verify_minrank_witness(cycle(5), bad));
    bad = mr;
    bad.value = 2;
    EXPECT_FALSE(verify_minrank_witness(cycle(5), bad));
}

TEST(Gf2, RankAgreesWithElimination)
{
    std::mt19937 rng(79);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint32_t> rows(rng() % 12);
        for (auto& r : rows) r = rng() & 0xFFF;
        EXPECT_EQ(gf2_rank(rows), oracle::gf2_rank(rows));
    }
}

TEST(Lp, Textbook)
{
    LinearProgram lp;
    lp.c = {3, 5};
    lp.add_row({1, 0}, Sense::le, 4);
    lp.add_row({0, 2}, Sense::le, 12);
    lp.add_row({3, 2}, Sense::le, 18);
    auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_EQ(s.value, 36);
    EXPECT_EQ(s.x, (std::vector<Rational>{2, 6}));
    EXPECT_EQ(s.y, (std::vector<Rational>{0, make_rational(3, 2), 1}));
    EXPECT_TRUE(verify_lp_solution(lp, s));
}

TEST(Lp, MinimizationWithEqualities)
{
    LinearProgram lp;
    lp.maximize = false;
    lp.c = {1, 1, 1};
    lp.add_row({1, 1, 0}, Sense::ge, 1);
    lp.add_row({0, 1, 1}, Sense::ge, 1);
    lp.add_row({1, 0, 1}, Sense::ge, 1);
    auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_EQ(s.value, make_rational(3, 2));
    EXPECT_TRUE(verify_lp_solution(lp, s));

    LinearProgram eq;
    eq.c = {1, 2};
    eq.maximize = false;
    eq.add_row({1, 1}, Sense::eq, 3);
    auto e = solve_lp(eq);
    ASSERT_EQ(e.status, LpStatus::optimal);
    EXPECT_EQ(e.value, 3);
}

TEST(Lp, InfeasibleAndUnbounded)
{
    LinearProgram inf;
    inf.c = {1};
    inf.add_row({1}, Sense::le, 1);
    inf.add_row({1}, Sense::ge, 2);
    EXPECT_EQ(solve_lp(inf).status, LpStatus::infeasible);

    LinearProgram unb;
    unb.c = {1, 1};
    unb.add_row({1, -1}, Sense::le, 1);
    EXPECT_EQ(solve_lp(unb).status, LpStatus::unbounded);

    LinearProgram bad;
    bad.c = {1, 1};
    EXPECT_THROW(bad.add_row({1}, Sense::le, 1), InvalidArgument);
}

TEST(Lp, RandomPackingStrongDuality)
{
    std::mt19937 rng(83);
    for (int t = 0; t < 60; ++t) {
        std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
        LinearProgram lp;
        for (std::size_t j = 0; j < n; ++j) lp.c.push_back(Rational(static_cast<long>(rng() % 7)));
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < n; ++j) row.push_back(Rational(static_cast<long>(1 + rng() % 5)));
            lp.add_row(row, Sense::le, Rational(static_cast<long>(1 + rng() % 9)));
        }
        auto s = solve_lp(lp);
        ASSERT_EQ(s.status, LpStatus::optimal);
        // Primal feasibility, dual feasibility and equal objectives, recomputed here.
        Rational cx = 0, by = 0;
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_GE(s.x[j], 0);
            cx += lp.c[j] * s.x[j];
        }
        for (std::size_t i = 0; i < m; ++i) {
            Rational ax = 0;
            for (std::size_t j = 0; j < n; ++j) ax += lp.a[i][j] * s.x[j];
            EXPECT_LE(ax, lp.b[i]);
            EXPECT_GE(s.y[i], 0);
            by += lp.b[i] * s.y[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            Rational aty = 0;
            for (std::size_t i = 0; i < m; ++i) aty += lp.a[i][j] * s.y[i];
            EXPECT_GE(aty, lp.c[j]);
        }
        EXPECT_EQ(cx, by);
        EXPECT_EQ(cx, s.value);
        EXPECT_TRUE(verify_lp_solution(lp, s));
    }
}

TEST(Fractional, NamedValues)
{
    EXPECT_EQ(fractional_chromatic(cycle(5)).value, make_rational(5, 2));
    EXPECT_EQ(fractional_chromatic(kneser(5, 2)).value, make_rational(5, 2));
    EXPECT_EQ(chi_bar_f(cycle(5)).value, make_rational(5, 2));
    EXPECT_EQ(chi_bar_f(cycle(7)).value, make_rational(7, 2));
    EXPECT_EQ(chi_bar_f(schlafli()).value, make_rational(9, 2));
    EXPECT_EQ(chi_bar_f(complement(schlafli())).value, 9);
    EXPECT_EQ(chi_bar_f(edgeless(4)).value, 4);
    EXPECT_EQ(chi_bar_f(complete(4)).value, 1);
}

TEST(Fractional, VertexTransitiveEqualsOrderOverCliqueNumber)
{
    for (const Graph& g : {cycle(5), cycle(7), cycle(9), kneser(5, 2), kneser(6, 2), complement(kneser(6, 2)),
                           complement(cycle(7)), strong_power(cycle(5), 2)}) {
        auto fv = chi_bar_f(g);
        EXPECT_EQ(fv.value, make_rational(static_cast<long long>(g.n()), static_cast<long long>(oracle::omega(g))))
            << to_graph6(g);
        EXPECT_TRUE(verify_fractional(complement(g), fv));
    }
}

TEST(Fractional, CertificatesOptimalOnRandomGraphs)
{
    std::mt19937 rng(89);
    for (int t = 0; t < 60; ++t) {
        Graph g = oracle::random_sized(rng, 1, 11);
        auto fv = chi_bar_f(g);
        expect_optimal_clique_cover(g, fv);
        EXPECT_TRUE(verify_fractional(complement(g), fv));
    }
}

TEST(Fractional, VerificationRejectsTampering)
{
    auto fv = chi_bar_f(cycle(5));
    auto bad = fv;
    bad.value += 1;
    EXPECT_FALSE(verify_fractional(complement(cycle(5)), bad));
    bad = fv;
    bad.dual[0] += make_rational(1, 2);
    EXPECT_FALSE(verify_fractional(complement(cycle(5)), bad));
    bad = fv;
    bad.weights[0] = 0;
    EXPECT_FALSE(verify_fractional(complement(cycle(5)), bad));
}

TEST(Fractional, MaxWeightIndependentSet)
{
    std::mt19937 rng(97);
    for (int t = 0; t < 40; ++t) {
        Graph g = oracle::random_sized(rng, 1, 10);
        std::vector<Rational> w;
        for (std::size_t v = 0; v < g.n(); ++v) w.push_back(make_rational(static_cast<long long>(rng() % 9), 4));
        auto [best, set] = max_weight_independent_set(g, w);
        Rational brute = 0;
        for (std::uint32_t m = 0; m < (1u << g.n()); ++m) {
            if (!oracle::independent_mask(g, m)) continue;
            Rational s = 0;
            for (std::size_t v = 0; v < g.n(); ++v)
                if (m >> v & 1) s += w[v];
            if (s > brute) brute = s;
        }
        EXPECT_EQ(best, brute);
        EXPECT_TRUE(is_independent(g, set));
    }
}
