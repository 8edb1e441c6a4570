#pragma once

// Randomized property suites shared by the unit tests and the acceptance binary.
// Each suite returns a summary instead of asserting, so both harnesses can report it.

#include <irkit/irkit.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace props {

using namespace irkit;

struct SuiteResult {
    bool ok = true;
    std::size_t checked = 0;
    std::vector<std::string> failures;

    void fail(std::string msg)
    {
        ok = false;
        if (failures.size() < 5) failures.push_back(std::move(msg));
    }

    std::string describe() const
    {
        std::ostringstream os;
        os << checked << " cases";
        for (const auto& f : failures) os << "; " << f;
        return os.str();
    }
};

inline constexpr double kTol = 1e-6;

inline std::vector<Graph> random_graphs(unsigned seed, std::size_t count, std::size_t lo = 4, std::size_t hi = 9)
{
    std::mt19937 rng(seed);
    std::vector<Graph> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(oracle::random_sized(rng, lo, hi));
    return out;
}

inline std::string expr_of(const Graph& g) { return "g6:" + to_graph6(g); }

inline Rational sum(const std::vector<Rational>& v)
{
    Rational s = 0;
    for (const auto& x : v) s += x;
    return s;
}

// α <= ϑ <= χ̄_f, with α checked against brute force and every witness re-verified.
inline SuiteResult sandwich(const std::vector<Graph>& graphs)
{
    SuiteResult r;
    for (const Graph& g : graphs) {
        ++r.checked;
        const std::string id = to_graph6(g);
        auto a = independence_number(g);
        if (a.value != oracle::alpha(g)) r.fail(id + ": alpha disagrees with brute force");
        if (!is_independent(g, a.vertices) || a.vertices.size() != a.value) r.fail(id + ": alpha witness");
        auto tv = lovasz_theta(g);
        std::string why;
        if (!verify_theta(g, tv, &why)) r.fail(id + ": theta witness: " + why);
        auto fv = chi_bar_f(g);
        if (!verify_fractional(complement(g), fv, &why)) r.fail(id + ": chibarf witness: " + why);
        const double cf = to_long_double(fv.value);
        if (!(static_cast<double>(a.value) <= tv.hi + kTol && tv.lo <= cf + kTol))
            r.fail(id + ": sandwich broken");
    }
    return r;
}

// The clique-cover LP and its dual reach the same rational value.
inline SuiteResult lp_duality(const std::vector<Graph>& graphs)
{
    SuiteResult r;
    for (const Graph& g : graphs) {
        ++r.checked;
        auto fv = chi_bar_f(g);
        if (sum(fv.weights) != fv.value || sum(fv.dual) != fv.value)
            r.fail(to_graph6(g) + ": primal " + to_string(sum(fv.weights)) + " dual " + to_string(sum(fv.dual)));
    }
    return r;
}

inline SuiteResult chibarf_multiplicative(const std::vector<Graph>& graphs, std::size_t pairs, unsigned seed)
{
    SuiteResult r;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, graphs.size() - 1);
    for (std::size_t i = 0; i < pairs; ++i) {
        const Graph& g = graphs[pick(rng)];
        const Graph& h = graphs[pick(rng)];
        ++r.checked;
        Graph p = strong_product(g, h);
        auto fp = chi_bar_f(p);
        std::string why;
        if (!verify_fractional(complement(p), fp, &why)) r.fail("product witness: " + why);
        if (fp.value != chi_bar_f(g).value * chi_bar_f(h).value)
            r.fail(to_graph6(g) + " * " + to_graph6(h) + ": " + to_string(fp.value));
    }
    return r;
}

// lower Ir(H/G) · lower Ir(G/H) <= 1, and every certificate the engine emits re-verifies.
inline SuiteResult reciprocal_product(Engine& eng, const std::vector<Graph>& graphs, std::size_t pairs, unsigned seed)
{
    SuiteResult r;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, graphs.size() - 1);
    for (std::size_t i = 0; i < pairs; ++i) {
        std::string a = expr_of(graphs[pick(rng)]), b = expr_of(graphs[pick(rng)]);
        ++r.checked;
        auto ab = eng.bounds(a, b), ba = eng.bounds(b, a);
        for (const auto* rb : {&ab, &ba}) {
            auto rep = verify_bounds(*rb);
            if (!rep.ok) r.fail(rb->source + " -> " + rb->channel + ": " + rep.error);
            if (rb->lo() > rb->hi() + kTol) r.fail(rb->source + " -> " + rb->channel + ": lower above upper");
        }
        const double prod = ab.lower->value.iv.lo * ba.lower->value.iv.lo;
        if (prod > 1 + eng.options().tol) r.fail(a + " / " + b + ": product " + std::to_string(prod));
    }
    return r;
}

// Per-graph certificates (capacity lower bound, χ̄_f, ϑ, minrank) re-verify.
inline SuiteResult profile_certificates(Engine& eng, const std::vector<Graph>& graphs)
{
    SuiteResult r;
    for (const Graph& g : graphs) {
        const Profile& p = eng.profile(expr_of(g));
        for (const CertPtr& c : {p.caplo, p.chibarf, p.theta, p.capacity, p.minrank}) {
            if (!c) continue;
            ++r.checked;
            auto rep = verify_certificate(c);
            if (!rep.ok) r.fail(p.label + " " + c->rule + ": " + rep.error);
        }
    }
    return r;
}

// max{α(G1)β(G2,F), α(G2)β(G1,F)} <= β(G1∨G2, F) <= β(G1,F)β(G2,F), with β by subset enumeration.
inline SuiteResult beta_triples(std::size_t count, unsigned seed)
{
    SuiteResult r;
    std::mt19937 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        Graph g1 = oracle::random_sized(rng, 2, 4), g2 = oracle::random_sized(rng, 2, 4), f = oracle::random_sized(rng, 2, 3);
        ++r.checked;
        Graph p = or_product(g1, g2);
        const std::size_t bp = oracle::beta(p, f), b1 = oracle::beta(g1, f), b2 = oracle::beta(g2, f);
        const std::size_t a1 = oracle::alpha(g1), a2 = oracle::alpha(g2);
        const std::string id = to_graph6(g1) + " " + to_graph6(g2) + " " + to_graph6(f);
        if (std::max(a1 * b2, a2 * b1) > bp || bp > b1 * b2) r.fail(id + ": bounds fail");
        if (beta(p, f).value != bp) r.fail(id + ": library beta disagrees with brute force");
    }
    return r;
}

// β(G1,F1)β(G2,F2) <= β(G1∨G2, F1∨F2).
inline SuiteResult beta_quadruples(std::size_t count, unsigned seed)
{
    SuiteResult r;
    std::mt19937 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        // Subset enumeration on the product is exponential in |G1||G2|, so the factors stay tiny.
        Graph g1 = oracle::random_sized(rng, 2, 3), g2 = oracle::random_sized(rng, 2, 3);
        Graph f1 = oracle::random_sized(rng, 2, 3), f2 = oracle::random_sized(rng, 2, 3);
        ++r.checked;
        Graph gp = or_product(g1, g2), fp = or_product(f1, f2);
        const std::size_t bp = oracle::beta(gp, fp);
        const std::string id = to_graph6(g1) + " " + to_graph6(g2) + " " + to_graph6(f1) + " " + to_graph6(f2);
        if (oracle::beta(g1, f1) * oracle::beta(g2, f2) > bp) r.fail(id + ": product of factors exceeds beta");
        if (beta(gp, fp).value != bp) r.fail(id + ": library beta disagrees with brute force");
    }
    return r;
}

// Codes found by the library agree with exhaustive search on pairs with |V(G^k)| <= 64.
inline SuiteResult code_oracle(std::size_t count, unsigned seed, std::size_t* with_code = nullptr,
                               std::size_t* skipped = nullptr)
{
    SuiteResult r;
    std::mt19937 rng(seed);
    std::size_t found = 0, undecided = 0;
    std::uniform_int_distribution<int> kd(1, 3), nd(1, 2);
    while (r.checked < count) {
        Graph g = oracle::random_sized(rng, 2, 5), h = oracle::random_sized(rng, 2, 5);
        const int k = kd(rng), n = nd(rng);
        const std::size_t src = oracle::ipow(g.n(), k), dst = oracle::ipow(h.n(), n);
        if (src > 64 || src < 8 || dst > 25) continue;
        auto want = oracle::code_exists(g, k, h, n);
        if (!want) {
            ++undecided;
            continue;
        }
        ++r.checked;
        auto res = find_code(g, h, k, n);
        const std::string id = to_graph6(g) + "^" + std::to_string(k) + " -> " + to_graph6(h) + "^" + std::to_string(n);
        if (res.status == SearchStatus::inconclusive) r.fail(id + ": inconclusive");
        else if ((res.status == SearchStatus::found) != *want) r.fail(id + ": disagrees with exhaustive search");
        if (res.code) {
            ++found;
            if (!verify_code(*res.code)) r.fail(id + ": code does not verify");
        }
    }
    if (with_code) *with_code = found;
    if (skipped) *skipped = undecided;
    return r;
}

} // namespace props
