// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <irkit/irkit.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "property_suites.hpp"

using namespace irkit;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> detail;

    void check(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail.push_back(what);
        }
    }
};

// Rows of the reference tables grouped by their section.
Outcome rows_pass(const std::vector<TableRow>& rows, const std::set<std::string>& groups)
{
    Outcome o;
    std::size_t n = 0;
    for (const auto& r : rows) {
        if (!groups.count(r.group)) continue;
        ++n;
        o.check(r.pass, r.group + " / " + r.item + ": expected " + r.expected + ", got " + r.computed);
    }
    o.check(n > 0, "no rows for this criterion");
    o.detail.insert(o.detail.begin(), std::to_string(n) + " rows");
    return o;
}

bool rational_is(const CertPtr& c, const Rational& want)
{
    return c && c->value.is_exact() && c->value.sym->is_rational() && c->value.sym->rational() == want;
}

Outcome schlafli_invariants(Engine& eng)
{
    Outcome o;
    const Profile& g = eng.profile("schlafli");
    const Profile& h = eng.profile("~schlafli");
    auto ag = independence_number(*g.g), ah = independence_number(*h.g);
    o.check(ag.value == 3 && is_independent(*g.g, ag.vertices), "alpha(G) = " + std::to_string(ag.value));
    o.check(ah.value == 6 && is_independent(*h.g, ah.vertices), "alpha(~G) = " + std::to_string(ah.value));
    auto tg = lovasz_theta(*g.g), th = lovasz_theta(*h.g);
    o.check(std::abs(tg.value - 3) <= 1e-4 && verify_theta(*g.g, tg), "theta(G) = " + std::to_string(tg.value));
    o.check(std::abs(th.value - 9) <= 1e-4 && verify_theta(*h.g, th), "theta(~G) = " + std::to_string(th.value));
    o.check(rational_is(g.chibarf, make_rational(9, 2)), "chibarf(G) = " + g.chibarf->value.str());
    o.check(rational_is(h.chibarf, Rational(9)), "chibarf(~G) = " + h.chibarf->value.str());
    for (const CertPtr& c : {g.chibarf, h.chibarf, g.caplo, h.caplo}) {
        auto rep = verify_certificate(c);
        o.check(rep.ok, c->rule + ": " + rep.error);
    }
    return o;
}

Outcome theta_closed_forms()
{
    Outcome o;
    for (int n = 2; n <= 5; ++n) {
        const int m = 2 * n + 1;
        const double want = 1 + 1 / std::cos(std::numbers::pi / m);
        Graph g = complement(cycle(m));
        auto tv = lovasz_theta(g);
        o.check(std::abs(tv.value - want) <= 1e-5 && verify_theta(g, tv),
                "theta(~C" + std::to_string(m) + ") = " + std::to_string(tv.value) + ", want " + std::to_string(want));
    }
    for (auto [n, want] : {std::pair<int, double>{5, 2.5}, {6, 3.0}}) {
        Graph g = complement(kneser(n, 2));
        auto tv = lovasz_theta(g);
        o.check(std::abs(tv.value - want) <= 1e-5 && verify_theta(g, tv),
                "theta(~KG(" + std::to_string(n) + ",2)) = " + std::to_string(tv.value));
    }
    return o;
}

Outcome property_suites(Engine& eng)
{
    Outcome o;
    auto graphs = props::random_graphs(20240, 200);
    auto add = [&](const char* name, const props::SuiteResult& r) {
        o.check(r.ok, std::string(name) + ": " + r.describe());
        if (r.ok) o.detail.push_back(std::string(name) + " " + std::to_string(r.checked));
    };
    add("sandwich", props::sandwich(graphs));
    add("lp-duality", props::lp_duality(graphs));
    add("chibarf-multiplicative", props::chibarf_multiplicative(graphs, 30, 31));
    add("reciprocal-product", props::reciprocal_product(eng, graphs, 50, 37));
    add("profile-certificates", props::profile_certificates(eng, graphs));
    add("beta-or-product", props::beta_triples(30, 41));
    add("beta-supermultiplicative", props::beta_quadruples(30, 43));
    return o;
}

Outcome code_agreement()
{
    Outcome o;
    std::size_t with_code = 0, skipped = 0;
    auto r = props::code_oracle(20, 47, &with_code, &skipped);
    o.check(r.ok, r.describe());
    o.check(r.checked == 20, "pairs checked: " + std::to_string(r.checked));
    o.detail.push_back(std::to_string(r.checked) + " pairs, " + std::to_string(with_code) + " with a code, " +
                       std::to_string(skipped) + " undecided by exhaustive search and replaced");
    return o;
}

} // namespace

int main()
{
    Engine eng;
    const auto rows = reference_tables(eng);

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"schlafli invariants", [&] { return schlafli_invariants(eng); }},
        {"schlafli ratio comparison", [&] { return rows_pass(rows, {"schlafli ratios"}); }},
        {"pentagon", [&] { return rows_pass(rows, {"pentagon", "extremes"}); }},
        {"clique unions and exact identities", [&] { return rows_pass(rows, {"clique unions", "exact"}); }},
        {"theta closed forms", [] { return theta_closed_forms(); }},
        {"cores", [&] { return rows_pass(rows, {"cores"}); }},
        {"criticality", [&] { return rows_pass(rows, {"criticality"}); }},
        {"equivalence and order", [&] { return rows_pass(rows, {"order", "equivalence"}); }},
        {"random property suites", [&] { return property_suites(eng); }},
        {"code search agrees with exhaustive search", [] { return code_agreement(); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string detail;
        for (const auto& d : o.detail) detail += (detail.empty() ? "" : "; ") + d;
        std::printf("%s %2zu %s (%.1fs)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                    detail.empty() ? "" : ": ", detail.c_str());
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
