#include <gtest/gtest.h>

#include "property_suites.hpp"

// Different seeds from the acceptance run, so the two harnesses cover different graphs.

TEST(Properties, SandwichOnRandomGraphs)
{
    auto r = props::sandwich(props::random_graphs(5101, 200));
    EXPECT_TRUE(r.ok) << r.describe();
}

TEST(Properties, CliqueCoverLpDuality)
{
    auto r = props::lp_duality(props::random_graphs(5102, 200));
    EXPECT_TRUE(r.ok) << r.describe();
}

TEST(Properties, FractionalCliqueCoverIsMultiplicative)
{
    auto r = props::chibarf_multiplicative(props::random_graphs(5103, 60), 30, 5104);
    EXPECT_TRUE(r.ok) << r.describe();
}

TEST(Properties, BetaOfOrProducts)
{
    auto a = props::beta_triples(30, 5105);
    EXPECT_TRUE(a.ok) << a.describe();
    auto b = props::beta_quadruples(30, 5106);
    EXPECT_TRUE(b.ok) << b.describe();
}

TEST(Properties, CodeSearchAgreesWithExhaustiveSearch)
{
    std::size_t with_code = 0;
    auto r = props::code_oracle(20, 5107, &with_code);
    EXPECT_TRUE(r.ok) << r.describe();
    EXPECT_EQ(r.checked, 20u);
}
