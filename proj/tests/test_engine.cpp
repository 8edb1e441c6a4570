#include <gtest/gtest.h>

#include <irkit/irkit.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "property_suites.hpp"

using namespace irkit;

namespace {

constexpr double kTol = 1e-6;

std::string g6(const Graph& g) { return "g6:" + to_graph6(g); }

double lg(double x) { return std::log2(x); }

void expect_closed(const RatioBounds& rb, double want, double tol = 1e-9)
{
    EXPECT_TRUE(rb.closed()) << rb.source << " -> " << rb.channel << ": [" << rb.lo() << ", " << rb.hi() << "]";
    EXPECT_NEAR(rb.lo(), want, tol) << rb.source << " -> " << rb.channel;
    EXPECT_NEAR(rb.hi(), want, tol) << rb.source << " -> " << rb.channel;
}

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("irkit-test-" + std::to_string(std::random_device{}()) + "-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

} // namespace

TEST(Engine, RejectsBadOptions)
{
    EngineOptions o;
    o.tol = 0;
    EXPECT_THROW(Engine{o}, InvalidArgument);
    o = {};
    o.tol = 0.1;
    EXPECT_THROW(Engine{o}, InvalidArgument);
    o = {};
    o.max_power = 0;
    EXPECT_THROW(Engine{o}, InvalidArgument);
    Engine eng;
    EXPECT_THROW(eng.bounds("C(5", "K(2)"), ParseError);
}

TEST(Engine, PureSourceAndChannelExtremes)
{
    Engine eng;
    // A noiseless binary channel carries log Θ(G) per source letter; the reverse needs 1/log χ̄_f bits.
    expect_closed(eng.bounds("Kbar(2)", "C(5)"), lg(5) / 2);
    expect_closed(eng.bounds("C(5)", "Kbar(2)"), 1 / lg(2.5));
    expect_closed(eng.bounds("Kbar(2)", "Kbar(8)"), 3);
    expect_closed(eng.bounds("Kbar(4)", "Kbar(2)"), 0.5);
    expect_closed(eng.bounds("Kbar(2)", "KG(5,2)"), 2);
}

TEST(Engine, PowersAndUnions)
{
    Engine eng;
    for (int m = 2; m <= 3; ++m) expect_closed(eng.bounds("C(5)", "C(5)^" + std::to_string(m)), m);
    expect_closed(eng.bounds("C(5)^2", "C(5)"), 0.5);
    expect_closed(eng.bounds("C(5)", "C(5)+C(5)"), 1 + 1 / lg(2.5));
    expect_closed(eng.bounds("K(3)+K(1)", "K(2)+K(2)+K(1)+K(3)"), 2);
    expect_closed(eng.bounds("K(3)+K(2)+K(4)", "K(5)+K(5)"), lg(2) / lg(3));
}

TEST(Engine, SelfRatioContainsOne)
{
    Engine eng;
    for (const Graph& g : props::random_graphs(61, 40)) {
        if (g.edge_count() == g.n() * (g.n() - 1) / 2) continue;
        auto rb = eng.bounds(g6(g), g6(g));
        EXPECT_LE(rb.lo(), 1 + kTol) << to_graph6(g);
        EXPECT_GE(rb.hi(), 1 - kTol) << to_graph6(g);
    }
}

TEST(Engine, DegenerateGraphs)
{
    Engine eng;
    // A complete source carries nothing, so every channel serves it; a complete channel carries nothing.
    EXPECT_TRUE(std::isinf(eng.bounds("K(4)", "C(5)").lo()));
    EXPECT_TRUE(std::isinf(eng.bounds("K(4)", "K(3)").lo()));
    auto rb = eng.bounds("C(5)", "K(3)");
    EXPECT_EQ(rb.lo(), 0);
    EXPECT_EQ(rb.hi(), 0);
    EXPECT_FALSE(rb.flags.empty());
}

TEST(Engine, CertificatesReverify)
{
    Engine eng;
    for (auto [s, c] : {std::pair<const char*, const char*>{"C(5)", "Kbar(2)"}, {"~schlafli", "schlafli"},
                        {"C(5)^2", "C(5)^3"}, {"KG(5,2)", "C(7)"}, {"W(5)", "~C(7)"}}) {
        auto rb = eng.bounds(s, c);
        auto rep = verify_bounds(rb);
        EXPECT_TRUE(rep.ok) << s << " -> " << c << ": " << rep.error;
        EXPECT_GT(rep.nodes, 0u);
    }
}

TEST(Engine, VerificationRejectsTampering)
{
    Engine eng;
    auto rb = eng.bounds("C(5)", "Kbar(2)");
    auto lower = certificate_to_json(rb.lower);
    auto upper = certificate_to_json(rb.upper);

    RatioBounds copy = rb;
    copy.lower = certificate_from_json(lower);
    copy.upper = certificate_from_json(upper);
    EXPECT_TRUE(verify_bounds(copy).ok);

    auto edit = [&](nlohmann::json j, auto&& f) {
        f(j);
        RatioBounds t = rb;
        t.lower = certificate_from_json(j);
        return verify_bounds(t);
    };
    auto root_of = [](nlohmann::json& j) -> nlohmann::json& { return j["nodes"][j["root"].get<int>()]; };

    // A larger claimed value at the root.
    EXPECT_FALSE(edit(lower, [&](nlohmann::json& j) {
        auto& v = root_of(j)["value"];
        v["lo"] = 0.9;
        v["hi"] = 0.9;
        v["exact"] = nlohmann::json{{"kind", "rational"}, {"payload", "9/10"}};
    }).ok);
    // An independent set that is not independent.
    EXPECT_FALSE(edit(lower, [](nlohmann::json& j) {
        for (auto& n : j["nodes"])
            if (n["payload"].value("invariant", "") == "caplo") n["payload"]["set"] = {0, 0};
    }).ok);
    // Clique-cover weights that no longer cover.
    EXPECT_FALSE(edit(lower, [](nlohmann::json& j) {
        for (auto& n : j["nodes"])
            if (n["payload"].value("invariant", "") == "chibarf") n["payload"]["weights"][0] = "1/4";
    }).ok);
    // A different graph than the expression names.
    EXPECT_FALSE(edit(lower, [](nlohmann::json& j) {
        for (auto& n : j["nodes"])
            if (n["payload"].value("invariant", "") == "chibarf") n["payload"]["graph"] = "Dh{";
    }).ok);

    // Endpoints in the wrong slots.
    RatioBounds swapped = rb;
    std::swap(swapped.lower, swapped.upper);
    EXPECT_FALSE(verify_bounds(swapped).ok);

    // Endpoints for different pairs.
    RatioBounds mixed = rb;
    mixed.upper = eng.bounds("C(7)", "Kbar(2)").upper;
    EXPECT_FALSE(verify_bounds(mixed).ok);
}

TEST(Engine, BoundsJsonCarriesBothEndpoints)
{
    Engine eng;
    auto j = to_json(eng.bounds("C(5)", "C(5)^2"));
    EXPECT_EQ(j["pair"]["source"], "C(5)");
    EXPECT_TRUE(j["closed"].get<bool>());
    EXPECT_EQ(j["exactness"], "exact");
    EXPECT_TRUE(j["lower"].is_object());
    EXPECT_TRUE(j["upper"].is_object());
    auto round = nlohmann::json::parse(j.dump());
    EXPECT_EQ(round, j);
}

// A verified (k, n) code has rate at most the certified upper bound, and codes within the
// engine's search window raise the certified lower bound to at least k/n.
TEST(Engine, CodesRespectBounds)
{
    Engine eng;
    const auto& o = eng.options();
    std::mt19937 rng(67);
    int with_code = 0;
    for (int t = 0; t < 60; ++t) {
        Graph g = oracle::random_sized(rng, 2, 4), h = oracle::random_sized(rng, 2, 4);
        auto rb = eng.bounds(g6(g), g6(h));
        EXPECT_LE(rb.lo(), rb.hi() + kTol);
        for (int k = 1; k <= 3; ++k)
            for (int n = 1; n <= 2; ++n) {
                if (oracle::ipow(g.n(), k) > 64) continue;
                auto r = find_code(g, h, k, n);
                if (!r.code) continue;
                ASSERT_TRUE(verify_code(*r.code));
                ++with_code;
                const double rate = static_cast<double>(k) / n;
                EXPECT_LE(rate, rb.hi() + kTol) << to_graph6(g) << " -> " << to_graph6(h);
                if (k <= o.code_kmax && n <= o.code_nmax && oracle::ipow(g.n(), k) <= o.code_max_source &&
                    oracle::ipow(h.n(), n) <= o.code_max_target) {
                    EXPECT_GE(rb.lo(), rate - kTol) << to_graph6(g) << " -> " << to_graph6(h) << " k=" << k << " n=" << n;
                }
            }
    }
    EXPECT_GT(with_code, 10);
}

// Ir(F/G) >= Ir(H/G) Ir(F/H): concatenating codes through H.
TEST(Engine, Transitivity)
{
    Engine eng;
    auto gs = props::random_graphs(71, 12, 3, 7);
    for (std::size_t i = 0; i + 2 < gs.size(); ++i) {
        std::string a = g6(gs[i]), b = g6(gs[i + 1]), c = g6(gs[i + 2]);
        double through = eng.bounds(a, b).lo() * eng.bounds(b, c).lo();
        EXPECT_LE(through, eng.bounds(a, c).hi() * (1 + 1e-9) + kTol) << a << " " << b << " " << c;
    }
}

TEST(Engine, ReciprocalProduct)
{
    Engine eng;
    auto r = props::reciprocal_product(eng, props::random_graphs(73, 60), 50, 79);
    EXPECT_TRUE(r.ok) << r.describe();
}

TEST(Engine, PerGraphCertificatesReverify)
{
    Engine eng;
    auto r = props::profile_certificates(eng, props::random_graphs(83, 60));
    EXPECT_TRUE(r.ok) << r.describe();
    EXPECT_GT(r.checked, 100u);
}

// When the complement of F1 maps to the complement of F2, F1 sits below F2 and every
// monotone invariant follows the order.
TEST(Engine, ComplementHomomorphismOrdersMonotoneInvariants)
{
    Engine eng;
    std::mt19937 rng(89);
    int ordered = 0;
    for (int t = 0; t < 80; ++t) {
        Graph f1 = oracle::random_sized(rng, 3, 7), f2 = oracle::random_sized(rng, 3, 7);
        if (!oracle::hom_exists(complement(f1), complement(f2))) continue;
        ++ordered;
        auto rb = eng.bounds(g6(f1), g6(f2));
        EXPECT_GE(rb.lo(), 1 - kTol) << to_graph6(f1) << " " << to_graph6(f2);
        EXPECT_LE(chi_bar_f(f1).value, chi_bar_f(f2).value);
        EXPECT_LE(lovasz_theta(f1).lo, lovasz_theta(f2).hi + kTol);
        EXPECT_LE(independence_number(f1).value, independence_number(f2).value);
    }
    EXPECT_GT(ordered, 10);
}

// Whenever Ir(F2/F1) >= 1 is certified, monotone invariants of F1 do not exceed those of F2.
TEST(Engine, CertifiedOrderImpliesMonotoneOrder)
{
    Engine eng;
    auto gs = props::random_graphs(97, 40, 3, 7);
    int ordered = 0;
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = 0; j < gs.size(); j += 3) {
            if (i == j) continue;
            auto rb = eng.bounds(g6(gs[i]), g6(gs[j]));
            if (rb.lo() < 1) continue;
            ++ordered;
            EXPECT_LE(chi_bar_f(gs[i]).value, chi_bar_f(gs[j]).value);
            EXPECT_LE(lovasz_theta(gs[i]).lo, lovasz_theta(gs[j]).hi + kTol);
            EXPECT_LE(oracle::alpha(gs[i]), oracle::alpha(gs[j]));
        }
    EXPECT_GT(ordered, 10);
}

TEST(Metric, AxiomsOnExactFamily)
{
    Engine eng;
    const std::vector<std::string> fam = {"C(5)", "C(5)^2", "C(5)^3", "Kbar(2)", "K(3)+K(1)", "Kbar(3)",
                                          "K(2)+K(2)+K(1)+K(3)"};
    const std::size_t n = fam.size();
    std::vector<std::vector<Interval>> d(n, std::vector<Interval>(n)), dw(n, std::vector<Interval>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto ab = eng.bounds(fam[i], fam[j]), ba = eng.bounds(fam[j], fam[i]);
            EXPECT_TRUE(ab.closed()) << fam[i] << " -> " << fam[j];
            auto m = metric_eval(ab, ba);
            d[i][j] = m.d;
            dw[i][j] = m.d_w;
        }
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_EQ(d[i][i].lo, 0);
        EXPECT_EQ(d[i][i].hi, 0);
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_GE(d[i][j].lo, 0);
            EXPECT_NEAR(d[i][j].lo, d[j][i].lo, 1e-9);
            EXPECT_LE(dw[i][j].lo, d[i][j].hi * 2 + kTol);
            for (std::size_t k = 0; k < n; ++k) {
                EXPECT_LE(d[i][k].lo, d[i][j].hi + d[j][k].hi + kTol) << fam[i] << " " << fam[j] << " " << fam[k];
                EXPECT_LE(dw[i][k].lo, dw[i][j].hi + dw[j][k].hi + kTol) << fam[i] << " " << fam[j] << " " << fam[k];
            }
        }
    }
    // Powers of one graph are weakly equivalent but at distance |log(a/b)|.
    EXPECT_NEAR(d[0][1].lo, 1, 1e-9);
    EXPECT_NEAR(d[0][2].lo, lg(3), 1e-9);
    EXPECT_NEAR(dw[0][2].hi, 0, 1e-9);
    // Distinct graphs with the same Shannon behaviour sit at distance zero.
    EXPECT_NEAR(d[3][4].hi, 0, 1e-9);
}

TEST(Metric, StrongProductIsContractive)
{
    Engine eng;
    struct Case {
        std::string g, h, f;
    };
    for (const Case& c : {Case{"C(5)", "C(5)^2", "C(5)"}, Case{"C(5)", "C(5)^3", "C(5)^2"},
                          Case{"K(3)+K(1)", "K(2)+K(2)+K(1)+K(3)", "K(2)+K(1)+K(1)"},
                          Case{"K(3)+K(2)+K(4)", "K(5)+K(5)", "Kbar(2)"}}) {
        auto before = metric_eval(eng.bounds(c.g, c.h), eng.bounds(c.h, c.g));
        std::string gf = "(" + c.g + ")*(" + c.f + ")", hf = "(" + c.h + ")*(" + c.f + ")";
        auto ab = eng.bounds(gf, hf), ba = eng.bounds(hf, gf);
        EXPECT_TRUE(ab.closed() && ba.closed()) << gf << " vs " << hf;
        auto after = metric_eval(ab, ba);
        EXPECT_LE(after.d.lo, before.d.hi + kTol) << c.g << " " << c.h << " " << c.f;
        EXPECT_LE(after.d.hi, before.d.lo + kTol) << c.g << " " << c.h << " " << c.f;
    }
}

TEST(Equivalence, Verdicts)
{
    Engine eng;
    auto r = equivalence_check(eng, "~KG(6,2)", "Kbar(3)");
    EXPECT_EQ(r.information, Verdict::certified_equivalent);
    EXPECT_EQ(r.weak, Verdict::certified_equivalent);

    auto inc = equivalence_check(eng, "C(5)*C(5)", "Kbar(6)");
    EXPECT_TRUE(inc.incomparable());
    EXPECT_NEAR(inc.ab.hi(), lg(6) / lg(6.25), 1e-6);
    EXPECT_NEAR(inc.ba.hi(), lg(5) / lg(6), 1e-6);

    auto pw = equivalence_check(eng, "C(5)", "C(5)^2");
    EXPECT_EQ(pw.weak, Verdict::certified_equivalent);
    EXPECT_EQ(pw.information, Verdict::certified_inequivalent);
    ASSERT_TRUE(pw.weak_certificate);
    EXPECT_TRUE(verify_certificate(pw.weak_certificate).ok);
}

TEST(Criticality, WitnessesReverify)
{
    Engine eng;
    for (const char* g : {"~C(5)", "~C(7)", "~KG(5,2)"}) {
        auto r = criticality_check(eng, g);
        ASSERT_TRUE(r.critical) << g;
        std::string why;
        EXPECT_TRUE(verify_criticality(*eng.profile(g).g, r, &why)) << g << ": " << why;
        if (r.method == "edge_witness") {
            auto bad = r;
            bad.set.pop_back();
            EXPECT_FALSE(verify_criticality(*eng.profile(g).g, bad));
        }
    }
    EXPECT_FALSE(criticality_check(eng, "C(4)").critical);
}

TEST(Cache, StoresAndRecovers)
{
    TempDir tmp;
    InvariantCache c(tmp.path);
    EXPECT_FALSE(c.get("a"));
    ASSERT_TRUE(c.put("a", nlohmann::json{{"x", 1}}));
    ASSERT_TRUE(c.put("b", nlohmann::json::array({1, 2})));
    EXPECT_EQ((*c.get("a"))["x"], 1);
    EXPECT_EQ(c.stats().entries, 2u);
    EXPECT_GT(c.stats().bytes, 0u);
    EXPECT_EQ(c.hits(), 1u);

    // Truncated and foreign files read as misses.
    { std::ofstream(c.path_for("a")) << "{\"key\": \"a\", \"val"; }
    EXPECT_FALSE(c.get("a"));
    { std::ofstream(c.path_for("b")) << R"({"key": "other", "value": 3})"; }
    EXPECT_FALSE(c.get("b"));

    EXPECT_EQ(c.clear(), 2u);
    EXPECT_EQ(c.stats().entries, 0u);
}

TEST(Cache, EngineReusesRecords)
{
    TempDir tmp;
    EngineOptions o;
    o.cache_dir = tmp.path.string();
    RatioBounds first;
    {
        Engine eng(o);
        first = eng.bounds("KG(5,2)", "C(7)");
        EXPECT_GT(eng.cache()->stats().entries, 0u);
    }
    Engine again(o);
    auto second = again.bounds("KG(5,2)", "C(7)");
    EXPECT_GT(again.cache()->hits(), 0u);
    EXPECT_EQ(second.lo(), first.lo());
    EXPECT_EQ(second.hi(), first.hi());
    EXPECT_TRUE(verify_bounds(second).ok);
}
