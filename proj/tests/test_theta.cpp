#include <gtest/gtest.h>

#include <irkit/fractional.hpp>
#include <irkit/independence.hpp>
#include <irkit/theta.hpp>
#include <irkit/theta_exact.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace irkit;

namespace {

double theta(const Graph& g) { return lovasz_theta(g).value; }

} // namespace

TEST(Theta, ComplementsOfOddCycles)
{
    for (int n = 2; n <= 5; ++n) {
        const int m = 2 * n + 1;
        double want = 1 + 1 / std::cos(std::numbers::pi / m);
        EXPECT_NEAR(theta(complement(cycle(m))), want, 1e-5) << "m = " << m;
        double c = std::cos(std::numbers::pi / m);
        EXPECT_NEAR(theta(cycle(m)), m * c / (1 + c), 1e-5) << "m = " << m;
    }
    EXPECT_NEAR(theta(cycle(5)), std::sqrt(5.0), 1e-6);
}

TEST(Theta, KneserGraphs)
{
    EXPECT_NEAR(theta(kneser(5, 2)), 4, 1e-5);
    EXPECT_NEAR(theta(kneser(6, 2)), 5, 1e-5);
    EXPECT_NEAR(theta(complement(kneser(5, 2))), 2.5, 1e-5);
    EXPECT_NEAR(theta(complement(kneser(6, 2))), 3, 1e-5);
}

TEST(Theta, SchlafliPair)
{
    EXPECT_NEAR(theta(schlafli()), 3, 1e-4);
    EXPECT_NEAR(theta(complement(schlafli())), 9, 1e-4);
}

// Reference values from an independent conic solver on the same graphs.
TEST(Theta, MatchesReferenceSolver)
{
    const std::vector<std::pair<const char*, double>> ref = {
        {"GVPrKC", 3.2360680},  {"H?g[cZn", 4.2360680}, {"HqM|xhH", 3.1965576}, {"FwsD_", 3.2360680},
        {"Fq?hg", 3.2360680},   {"GULNbC", 3.1965576},  {"Gji~Uk", 2.2360680},  {"F|W\\g", 2.2360680},
        {"FXRg?", 4.0},         {"H@tTaGd", 4.0},       {"HGE@?b^", 5.0},       {"HemWLIx", 4.0},
    };
    for (const auto& [g6, want] : ref) EXPECT_NEAR(theta(from_graph6(g6)), want, 2e-5) << g6;
}

TEST(Theta, BracketAndWitnessesVerify)
{
    std::mt19937 rng(101);
    for (int t = 0; t < 30; ++t) {
        Graph g = oracle::random_sized(rng, 2, 12);
        auto tv = lovasz_theta(g);
        EXPECT_LE(tv.lo, tv.value);
        EXPECT_LE(tv.value, tv.hi);
        EXPECT_LE(tv.error(), 1e-5);
        std::string why;
        EXPECT_TRUE(verify_theta(g, tv, &why)) << why;
    }
}

TEST(Theta, WitnessCheckRejectsTampering)
{
    auto tv = lovasz_theta(cycle(5));
    auto bad = tv;
    bad.hi = tv.hi - 0.1;
    bad.value = bad.hi;
    EXPECT_FALSE(verify_theta(cycle(5), bad));
    bad = tv;
    bad.lo = tv.lo + 0.1;
    EXPECT_FALSE(verify_theta(cycle(5), bad));
    bad = tv;
    bad.edge_multipliers.pop_back();
    EXPECT_FALSE(verify_theta(cycle(5), bad));
}

TEST(Theta, SandwichOnRandomGraphs)
{
    std::mt19937 rng(103);
    for (int t = 0; t < 40; ++t) {
        Graph g = oracle::random_sized(rng, 2, 10);
        double th = theta(g);
        EXPECT_LE(static_cast<double>(oracle::alpha(g)), th + 1e-6);
        EXPECT_LE(th, to_long_double(chi_bar_f(g).value) + 1e-6);
        // ϑ(g) ϑ(~g) >= n
        EXPECT_GE(th * theta(complement(g)), static_cast<double>(g.n()) - 1e-5);
    }
}

TEST(Theta, VertexTransitiveProduct)
{
    for (const Graph& g : {cycle(7), cycle(9), kneser(5, 2), kneser(6, 2), strong_power(cycle(5), 2)})
        EXPECT_NEAR(theta(g) * theta(complement(g)), static_cast<double>(g.n()), 1e-4);
}

TEST(Theta, SizeGuards)
{
    ThetaOptions o;
    o.max_edges = 10;
    EXPECT_THROW(lovasz_theta(complete(6), o), SizeLimitError);
    o = {};
    o.max_vertices = 4;
    EXPECT_THROW(lovasz_theta(cycle(5), o), SizeLimitError);
}

TEST(ExactPsd, AgreesWithEigenvalues)
{
    std::mt19937 rng(107);
    int agree = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 5);
        Eigen::MatrixXd a(n, n);
        RationalMatrix q(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                long v = static_cast<long>(rng() % 9) - 3;
                if (i == j) v += static_cast<long>(rng() % 6);
                a(i, j) = a(j, i) = static_cast<double>(v);
                q[i][j] = q[j][i] = Rational(v);
            }
        double mn = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff();
        if (std::abs(mn) < 1e-9) continue;
        EXPECT_EQ(rational_psd(q), mn > 0);
        ++agree;
    }
    EXPECT_GT(agree, 150);
}

TEST(ExactPsd, SingularCases)
{
    // v v^T is psd with rank one; subtracting anything from a diagonal entry of a zero row breaks it.
    std::vector<long> v = {1, -2, 3, 0};
    RationalMatrix m(4, std::vector<Rational>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = Rational(v[i] * v[j]);
    EXPECT_TRUE(rational_psd(m));
    m[3][3] = make_rational(-1, 1000);
    EXPECT_FALSE(rational_psd(m));
    m[3][3] = 0;
    m[0][3] = m[3][0] = make_rational(1, 1000);
    EXPECT_FALSE(rational_psd(m));
}

TEST(ExactTheta, RationalCertificates)
{
    for (auto [g, t] : {std::pair<Graph, long>{kneser(5, 2), 4}, {complement(kneser(6, 2)), 3}, {cycle(6), 3}}) {
        auto tv = lovasz_theta(g);
        auto ex = exact_theta(g, tv, Rational(t));
        ASSERT_TRUE(ex.dual) << to_graph6(g);
        EXPECT_TRUE(verify_exact_theta_dual(g, Rational(t), *ex.dual));
        EXPECT_FALSE(verify_exact_theta_dual(g, Rational(t) - make_rational(1, 100), *ex.dual));
        if (ex.primal) {
            EXPECT_TRUE(verify_exact_theta_primal(g, Rational(t), *ex.primal));
            EXPECT_FALSE(verify_exact_theta_primal(g, Rational(t) + 1, *ex.primal));
        }
    }
}

TEST(ExactTheta, PentagonQuadraticDual)
{
    auto tv = lovasz_theta(cycle(5));
    auto y = quadratic_theta_dual(cycle(5), tv, Rational(5));
    ASSERT_TRUE(y);
    EXPECT_TRUE(verify_quadratic_theta_dual(cycle(5), Rational(5), *y));
    // The same multipliers do not certify a smaller square root.
    EXPECT_FALSE(verify_quadratic_theta_dual(cycle(5), make_rational(49, 10), *y));
    // Perfect squares are handled by the rational path.
    EXPECT_FALSE(verify_quadratic_theta_dual(cycle(5), Rational(4), *y));
    EXPECT_FALSE(quadratic_theta_dual(cycle(5), tv, Rational(6)));
}

TEST(ExactTheta, QuadraticPsdMatchesFloatingPoint)
{
    // [[√2, 1], [1, √2]] is positive definite; [[1, √2], [√2, 1]] is not.
    std::vector<std::vector<QuadNumber>> a = {{{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}};
    EXPECT_TRUE(quadratic_psd(Rational(2), a));
    std::vector<std::vector<QuadNumber>> b = {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}};
    EXPECT_FALSE(quadratic_psd(Rational(2), b));
    // [[1 + √3, 2], [2, √3 + 1]] has eigenvalues √3 + 3 and √3 - 1 > 0.
    std::vector<std::vector<QuadNumber>> c = {{{1, 1}, {2, 0}}, {{2, 0}, {1, 1}}};
    EXPECT_TRUE(quadratic_psd(Rational(3), c));
    // [[√3, 2], [2, √3]]: √3 - 2 < 0.
    std::vector<std::vector<QuadNumber>> d = {{{0, 1}, {2, 0}}, {{2, 0}, {0, 1}}};
    EXPECT_FALSE(quadratic_psd(Rational(3), d));
}
