#pragma once

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>

#include "irkit/ratio.hpp"

// Independent replay of certificate DAGs. Every node is re-evaluated from its premises,
// leaf witnesses are checked against the graphs they name, and bound rules are checked
// for the graph relations they rely on (labelled equality of products, unions, powers).
namespace irkit {

struct VerifyReport {
    bool ok = true;
    std::string error;
    std::size_t nodes = 0;
    std::size_t witnesses = 0;  // leaf witnesses checked
    std::size_t structural = 0; // graph relations checked
    std::size_t skipped = 0;    // relations not checkable because a graph was too large to record

    nlohmann::json to_json() const
    {
        return {{"ok", ok}, {"error", error}, {"nodes", nodes}, {"witnesses", witnesses},
                {"structural", structural}, {"skipped", skipped}};
    }
};

namespace detail {

enum class NodeClass { caplo, chibarf, theta, theta_lower, theta_upper, capacity, minrank, lower, upper, weak };

inline const char* class_name(NodeClass c)
{
    switch (c) {
    case NodeClass::caplo: return "capacity lower bound";
    case NodeClass::chibarf: return "fractional clique cover";
    case NodeClass::theta: return "theta";
    case NodeClass::theta_lower: return "theta lower witness";
    case NodeClass::theta_upper: return "theta upper witness";
    case NodeClass::capacity: return "capacity";
    case NodeClass::minrank: return "minrank";
    case NodeClass::lower: return "lower bound";
    case NodeClass::upper: return "upper bound";
    case NodeClass::weak: return "weak equivalence";
    }
    return "?";
}

struct VerifyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Verifier {
public:
    explicit Verifier(VerifyReport& rep) : rep_(rep) {}

    NodeClass check(const CertPtr& c)
    {
        if (!c) fail("null certificate node");
        if (auto it = done_.find(c.get()); it != done_.end()) return it->second;
        if (active_.count(c.get())) fail("certificate contains a cycle");
        active_.insert(c.get());
        std::vector<NodeClass> pc;
        for (const auto& p : c->premises) pc.push_back(check(p));
        ++rep_.nodes;
        NodeClass cls = classify(*c);
        Quantity v;
        try {
            v = eval_rule(c->rule, c->premises, c->payload);
        } catch (const std::exception& e) {
            fail(c->rule + ": " + e.what());
        }
        if (!same_quantity(v, c->value))
            fail(c->rule + ": stored value " + c->value.str() + " does not match replayed value " + v.str());
        try {
            check_rule(*c, cls, pc);
        } catch (const VerifyFailure&) {
            throw;
        } catch (const std::exception& e) {
            fail(c->rule + ": " + e.what());
        }
        active_.erase(c.get());
        done_.emplace(c.get(), cls);
        return cls;
    }

    [[noreturn]] static void fail(const std::string& m) { throw VerifyFailure(m); }

private:
    using json = nlohmann::json;

    VerifyReport& rep_;
    std::map<const Certificate*, NodeClass> done_;
    std::set<const Certificate*> active_;
    std::map<std::string, Graph> graphs_;

    const Graph& graph(const std::string& g6)
    {
        auto it = graphs_.find(g6);
        if (it == graphs_.end()) it = graphs_.emplace(g6, from_graph6(g6)).first;
        return it->second;
    }

    std::optional<Graph> opt_graph(const json& p, const char* field)
    {
        if (!p.contains(field) || p.at(field).is_null()) return std::nullopt;
        return graph(p.at(field).get<std::string>());
    }

    const Graph& need_graph(const Certificate& c, const char* field)
    {
        if (!c.payload.contains(field) || c.payload.at(field).is_null())
            fail(c.rule + ": witness check needs the " + std::string(field) + " graph");
        return graph(c.payload.at(field).get<std::string>());
    }

    static NodeClass classify(const Certificate& c)
    {
        const std::string& r = c.rule;
        if (r == "alpha_power" || r.rfind("caplo_", 0) == 0) return NodeClass::caplo;
        if (r.rfind("chibarf_", 0) == 0) return NodeClass::chibarf;
        if (r == "theta_exact_dual" || r == "theta_quadratic_dual") return NodeClass::theta_upper;
        if (r == "theta_exact_primal") return NodeClass::theta_lower;
        if (r == "theta" || r == "theta_sdp" || r.rfind("theta_", 0) == 0) return NodeClass::theta;
        if (r == "capacity") return NodeClass::capacity;
        if (r == "minrank_power") return NodeClass::minrank;
        if (r == "weak_equivalence") return NodeClass::weak;
        if (!is_bound_rule(r)) fail("unknown rule '" + r + "'");
        std::string side = c.payload.value("side", std::string());
        if (side == "lower") return NodeClass::lower;
        if (side == "upper") return NodeClass::upper;
        fail(r + ": bound node without a side");
    }

    static void expect(const Certificate& c, const std::vector<NodeClass>& pc, std::size_t i,
                       std::initializer_list<NodeClass> allowed)
    {
        if (i >= pc.size()) fail(c.rule + ": missing premise " + std::to_string(i));
        for (auto a : allowed)
            if (pc[i] == a) return;
        fail(c.rule + ": premise " + std::to_string(i) + " is a " + class_name(pc[i]) + " node");
    }

    static void count(const Certificate& c, const std::vector<NodeClass>& pc, std::size_t n)
    {
        if (pc.size() != n)
            fail(c.rule + ": expected " + std::to_string(n) + " premises, found " + std::to_string(pc.size()));
    }

    // Compares graphs when both are recorded; otherwise counts the relation as skipped.
    void same(const Certificate& c, const std::optional<Graph>& a, const std::optional<Graph>& b, const char* what)
    {
        if (!a || !b) {
            ++rep_.skipped;
            return;
        }
        ++rep_.structural;
        if (!(*a == *b)) fail(c.rule + ": " + what + " does not match");
    }

    std::optional<Graph> g_of(const CertPtr& p, const char* field) { return opt_graph(p->payload, field); }

    template <class F>
    std::optional<Graph> build(F f, std::initializer_list<std::optional<Graph>> parts)
    {
        for (const auto& x : parts)
            if (!x) return std::nullopt;
        return f();
    }

    void check_rule(const Certificate& c, NodeClass cls, const std::vector<NodeClass>& pc)
    {
        using NC = NodeClass;
        const std::string& r = c.rule;
        const json& p = c.payload;
        auto node_g = [&] { return opt_graph(p, "graph"); };
        auto src = [&] { return opt_graph(p, "source"); };
        auto chn = [&] { return opt_graph(p, "channel"); };
        auto side_of = [&](const CertPtr& x) { return x->payload.value("side", std::string()); };
        const std::string side = p.value("side", std::string());

        // Invariant leaves.
        if (r == "alpha_power") {
            count(c, pc, 0);
            const Graph& g = need_graph(c, "graph");
            int m = p.at("power").get<int>();
            if (m < 1) fail("alpha_power: bad power");
            Graph gp = m == 1 ? g : strong_power(g, m);
            auto set = p.at("set").get<std::vector<int>>();
            std::set<int> uniq(set.begin(), set.end());
            if (uniq.size() != set.size()) fail("alpha_power: repeated vertex");
            for (int v : set)
                if (v < 0 || static_cast<std::size_t>(v) >= gp.n()) fail("alpha_power: vertex out of range");
            if (!is_independent(gp, set)) fail("alpha_power: set is not independent");
            ++rep_.witnesses;
            return;
        }
        if (r == "chibarf_lp") {
            count(c, pc, 0);
            const Graph& g = need_graph(c, "graph");
            FractionalValue fv;
            for (const auto& s : p.at("sets")) fv.sets.push_back(s.get<std::vector<int>>());
            fv.weights = rationals_from_json(p.at("weights"));
            fv.dual = rationals_from_json(p.at("dual"));
            for (const auto& w : fv.weights) fv.value += w;
            for (const auto& s : fv.sets)
                for (int v : s)
                    if (v < 0 || static_cast<std::size_t>(v) >= g.n()) fail("chibarf_lp: vertex out of range");
            std::string why;
            if (!verify_fractional(complement(g), fv, &why)) fail("chibarf_lp: " + why);
            ++rep_.witnesses;
            return;
        }
        if (r == "theta_sdp") {
            count(c, pc, 0);
            const Graph& g = need_graph(c, "graph");
            ThetaValue tv = theta_from_json(p);
            if (!(tv.lo <= tv.hi)) fail("theta_sdp: empty bracket");
            if (tv.primal.rows() == 0) {
                ++rep_.skipped;
                return;
            }
            std::string why;
            if (!verify_theta(g, tv, &why)) fail("theta_sdp: " + why);
            ++rep_.witnesses;
            return;
        }
        if (r == "theta_exact_dual") {
            count(c, pc, 0);
            const Graph& g = need_graph(c, "graph");
            if (!verify_exact_theta_dual(g, parse_rational(p.at("t").get<std::string>()), rationals_from_json(p.at("y"))))
                fail("theta_exact_dual: matrix is not positive semidefinite");
            ++rep_.witnesses;
            return;
        }
        if (r == "theta_quadratic_dual") {
            count(c, pc, 0);
            const Graph& g = need_graph(c, "graph");
            if (!verify_quadratic_theta_dual(g, parse_rational(p.at("d").get<std::string>()), quad_from_json(p.at("y"))))
                fail("theta_quadratic_dual: matrix is not positive semidefinite");
            ++rep_.witnesses;
            return;
        }
        if (r == "theta_exact_primal") {
            count(c, pc, 0);
            const Graph& g = need_graph(c, "graph");
            RationalMatrix b;
            for (const auto& row : p.at("b")) b.push_back(rationals_from_json(row));
            if (!verify_exact_theta_primal(g, parse_rational(p.at("t").get<std::string>()), b))
                fail("theta_exact_primal: witness rejected");
            ++rep_.witnesses;
            return;
        }
        if (r == "minrank_power") {
            count(c, pc, 0);
            const Graph& g = need_graph(c, "graph");
            int m = p.at("power").get<int>();
            Graph gp = m == 1 ? g : strong_power(g, m);
            MinrankValue mv;
            mv.value = p.at("rank").get<std::size_t>();
            mv.matrix = p.at("matrix").get<std::vector<std::uint32_t>>();
            if (!verify_minrank_witness(gp, mv)) fail("minrank_power: fitting matrix rejected");
            ++rep_.witnesses;
            return;
        }

        // Structural invariant rules.
        auto family = [&](const char* prefix, NC want) {
            if (r == std::string(prefix) + "_product") {
                count(c, pc, 2);
                expect(c, pc, 0, {want});
                expect(c, pc, 1, {want});
                auto a = g_of(c.premises[0], "graph"), b = g_of(c.premises[1], "graph");
                same(c, node_g(), build([&] { return strong_product(*a, *b); }, {a, b}), "product graph");
                return true;
            }
            if (r == std::string(prefix) + "_union") {
                count(c, pc, 2);
                expect(c, pc, 0, {want});
                expect(c, pc, 1, {want});
                auto a = g_of(c.premises[0], "graph"), b = g_of(c.premises[1], "graph");
                same(c, node_g(), build([&] { return disjoint_union(*a, *b); }, {a, b}), "union graph");
                return true;
            }
            if (r == std::string(prefix) + "_power") {
                count(c, pc, 1);
                expect(c, pc, 0, {want});
                auto a = g_of(c.premises[0], "graph");
                int m = p.at("power").get<int>();
                same(c, node_g(), build([&] { return strong_power(*a, m); }, {a}), "power graph");
                return true;
            }
            return false;
        };
        if (family("chibarf", NC::chibarf) || family("caplo", NC::caplo) || family("theta", NC::theta)) return;
        if (r == "caplo_max") {
            for (std::size_t i = 0; i < pc.size(); ++i) {
                expect(c, pc, i, {NC::caplo});
                same(c, node_g(), g_of(c.premises[i], "graph"), "graph of a combined bound");
            }
            return;
        }
        if (r == "theta" || r == "capacity") {
            const auto& roles = p.at("roles");
            for (std::size_t i = 0; i < pc.size(); ++i) {
                std::string role = roles.at(i).get<std::string>();
                if (role == "bracket" || role == "theta") expect(c, pc, i, {NC::theta});
                else if (role == "lower") expect(c, pc, i, {NC::caplo});
                else if (role == "primal") expect(c, pc, i, {NC::theta_lower});
                else if (role == "dual") expect(c, pc, i, {NC::theta_upper});
                else if (role == "chibarf") expect(c, pc, i, {NC::chibarf});
                else fail(r + ": unknown role " + role);
                if (r == "capacity" && (role == "primal" || role == "dual" || role == "bracket"))
                    fail("capacity: role " + role + " not allowed");
                same(c, node_g(), g_of(c.premises[i], "graph"), "graph of a combined bound");
            }
            return;
        }

        // Bound rules.
        if (cls == NC::weak) {
            count(c, pc, 2);
            expect(c, pc, 0, {NC::lower});
            expect(c, pc, 1, {NC::lower});
            auto a = opt_graph(p, "first"), b = opt_graph(p, "second");
            same(c, a, g_of(c.premises[0], "source"), "first graph");
            same(c, b, g_of(c.premises[0], "channel"), "second graph");
            same(c, b, g_of(c.premises[1], "source"), "second graph");
            same(c, a, g_of(c.premises[1], "channel"), "first graph");
            if (!certified_at_least_one(c.value)) fail("weak_equivalence: product of lower bounds is not at least 1");
            return;
        }
        const NC mine = cls;
        auto same_side = [&](std::size_t i) { expect(c, pc, i, {mine}); };
        auto lower_only = [&] {
            if (mine != NC::lower) fail(r + ": only valid as a lower bound");
        };
        auto upper_only = [&] {
            if (mine != NC::upper) fail(r + ": only valid as an upper bound");
        };
        auto prem_src = [&](std::size_t i) { return g_of(c.premises[i], "source"); };
        auto prem_chn = [&](std::size_t i) { return g_of(c.premises[i], "channel"); };
        auto inv_graph = [&](std::size_t i) { return g_of(c.premises[i], "graph"); };
        (void)side_of;
        (void)side;

        if (r == "trivial_lower") return count(c, pc, 0), lower_only();
        if (r == "trivial_upper") return count(c, pc, 0), upper_only();
        if (r == "source_complete") {
            count(c, pc, 0);
            lower_only();
            auto s = src();
            if (!s) fail("source_complete: source graph not recorded");
            if (!s->is_complete()) fail("source_complete: source is not complete");
            ++rep_.structural;
            return;
        }
        if (r == "channel_complete") {
            count(c, pc, 0);
            upper_only();
            auto s = src(), h = chn();
            if (!s || !h) fail("channel_complete: graphs not recorded");
            if (!h->is_complete() || s->is_complete()) fail("channel_complete: wrong completeness pattern");
            ++rep_.structural;
            return;
        }
        if (r == "code") {
            count(c, pc, 0);
            lower_only();
            auto s = src(), h = chn();
            if (!s || !h) fail("code: graphs not recorded");
            const auto& cj = p.at("code");
            CodeMap cm{*s, cj.at("k").get<int>(), *h, cj.at("n").get<int>(), cj.at("map").get<std::vector<std::size_t>>()};
            std::string why;
            if (!verify_code(cm, &why)) fail("code: " + why);
            ++rep_.witnesses;
            return;
        }
        if (r == "clique_union") {
            count(c, pc, 0);
            auto s = src(), h = chn();
            if (!s || !h) fail("clique_union: graphs not recorded");
            std::size_t sc = 0, tc = 0;
            if (!all_components_cliques(*s, sc) || !all_components_cliques(*h, tc))
                fail("clique_union: not a disjoint union of cliques");
            if (sc != p.at("s").get<std::size_t>() || tc != p.at("t").get<std::size_t>())
                fail("clique_union: component counts differ");
            ++rep_.structural;
            return;
        }
        if (r == "power_ratio") {
            count(c, pc, 0);
            auto b = opt_graph(p, "base");
            int m1 = p.at("m1").get<int>(), m2 = p.at("m2").get<int>();
            same(c, chn(), build([&] { return strong_power(*b, m1); }, {b}), "channel power");
            same(c, src(), build([&] { return strong_power(*b, m2); }, {b}), "source power");
            if (b && b->is_complete()) fail("power_ratio: base graph is complete");
            return;
        }
        if (r == "source_factor") {
            // channel = source x B, premise bounds Ir(B/source).
            count(c, pc, 1);
            same_side(0);
            same(c, src(), prem_src(0), "source");
            auto s = src(), b = prem_chn(0);
            auto h = chn();
            if (!s || !b || !h) {
                ++rep_.skipped;
                return;
            }
            ++rep_.structural;
            if (!(*h == strong_product(*s, *b)) && !(*h == strong_product(*b, *s)))
                fail("source_factor: channel is not the source times the premise channel");
            return;
        }
        if (r == "channel_factor") {
            // source = channel x B, premise bounds Ir(channel/B).
            count(c, pc, 1);
            same_side(0);
            same(c, chn(), prem_chn(0), "channel");
            auto h = chn(), b = prem_src(0), s = src();
            if (!s || !b || !h) {
                ++rep_.skipped;
                return;
            }
            ++rep_.structural;
            if (!(*s == strong_product(*h, *b)) && !(*s == strong_product(*b, *h)))
                fail("channel_factor: source is not the channel times the premise source");
            return;
        }
        if (r == "product_lower") {
            count(c, pc, 2);
            lower_only();
            same_side(0);
            same_side(1);
            same(c, src(), prem_src(0), "source");
            same(c, src(), prem_src(1), "source");
            auto a = prem_chn(0), b = prem_chn(1);
            same(c, chn(), build([&] { return strong_product(*a, *b); }, {a, b}), "channel product");
            return;
        }
        if (r == "channel_power") {
            count(c, pc, 1);
            same_side(0);
            same(c, src(), prem_src(0), "source");
            auto a = prem_chn(0);
            int m = p.at("power").get<int>();
            same(c, chn(), build([&] { return strong_power(*a, m); }, {a}), "channel power");
            return;
        }
        if (r == "reverse_product_lower") {
            count(c, pc, 2);
            lower_only();
            same_side(0);
            same_side(1);
            same(c, chn(), prem_chn(0), "channel");
            same(c, chn(), prem_chn(1), "channel");
            auto a = prem_src(0), b = prem_src(1);
            same(c, src(), build([&] { return strong_product(*a, *b); }, {a, b}), "source product");
            return;
        }
        if (r == "source_power") {
            count(c, pc, 1);
            same_side(0);
            same(c, chn(), prem_chn(0), "channel");
            auto a = prem_src(0);
            int m = p.at("power").get<int>();
            same(c, src(), build([&] { return strong_power(*a, m); }, {a}), "source power");
            return;
        }
        if (r == "power_union_lower") {
            count(c, pc, 3);
            lower_only();
            same_side(0);
            same_side(1);
            expect(c, pc, 2, {NC::chibarf});
            same(c, src(), prem_src(0), "source");
            same(c, src(), prem_src(1), "source");
            same(c, src(), inv_graph(2), "graph of the fractional clique cover");
            auto a = prem_chn(0), b = prem_chn(1);
            same(c, chn(), build([&] { return disjoint_union(*a, *b); }, {a, b}), "channel union");
            return;
        }
        if (r == "ff_channel") {
            count(c, pc, 1);
            expect(c, pc, 0, {NC::chibarf});
            same(c, src(), inv_graph(0), "source");
            auto s = src();
            same(c, chn(), build([&] { return disjoint_union(*s, *s); }, {s}), "channel union");
            return;
        }
        if (r == "ff_source") {
            count(c, pc, 1);
            if (mine == NC::lower) expect(c, pc, 0, {NC::caplo, NC::capacity});
            else expect(c, pc, 0, {NC::capacity, NC::theta, NC::chibarf});
            same(c, chn(), inv_graph(0), "channel");
            auto h = chn();
            same(c, src(), build([&] { return disjoint_union(*h, *h); }, {h}), "source union");
            return;
        }
        if (r == "separation") {
            count(c, pc, 2);
            lower_only();
            expect(c, pc, 0, {NC::caplo, NC::capacity});
            expect(c, pc, 1, {NC::chibarf});
            same(c, chn(), inv_graph(0), "channel");
            same(c, src(), inv_graph(1), "source");
            return;
        }
        auto hom_upper = [&](NC a, std::initializer_list<NC> b) {
            count(c, pc, 2);
            upper_only();
            expect(c, pc, 0, {a});
            expect(c, pc, 1, b);
            same(c, chn(), inv_graph(0), "channel");
            same(c, src(), inv_graph(1), "source");
        };
        if (r == "upper_chibarf") return hom_upper(NC::chibarf, {NC::chibarf});
        if (r == "upper_theta") return hom_upper(NC::theta, {NC::theta});
        if (r == "upper_capacity") {
            hom_upper(NC::capacity, {NC::capacity});
            if (c.premises[0]->value.kind == Exactness::numeric || c.premises[1]->value.kind == Exactness::numeric)
                fail("upper_capacity: needs identified capacities");
            return;
        }
        if (r == "upper_minrank") return hom_upper(NC::minrank, {NC::caplo});
        if (r == "concatenation") {
            count(c, pc, 2);
            lower_only();
            same_side(0);
            same_side(1);
            same(c, src(), prem_src(0), "source");
            same(c, prem_chn(0), prem_src(1), "pivot");
            same(c, chn(), prem_chn(1), "channel");
            return;
        }
        if (r == "reciprocal") {
            count(c, pc, 1);
            upper_only();
            expect(c, pc, 0, {NC::lower});
            same(c, src(), prem_chn(0), "source");
            same(c, chn(), prem_src(0), "channel");
            return;
        }
        if (r == "core_reduction") {
            count(c, pc, 1);
            same_side(0);
            check_reduction(c, src(), prem_src(0), "source");
            check_reduction(c, chn(), prem_chn(0), "channel");
            return;
        }
        if (r == "weak_sum_upper" || r == "weak_harmonic_upper") {
            count(c, pc, 3);
            upper_only();
            same_side(0);
            same_side(1);
            expect(c, pc, 2, {NC::weak});
            const bool sum = r == "weak_sum_upper";
            // sum: source F, channel G x H; harmonic: channel F, source G x H.
            auto f = sum ? src() : chn();
            auto prod = sum ? chn() : src();
            auto f0 = sum ? prem_src(0) : prem_chn(0), f1 = sum ? prem_src(1) : prem_chn(1);
            auto g = sum ? prem_chn(0) : prem_src(0), h = sum ? prem_chn(1) : prem_src(1);
            same(c, f, f0, "shared graph");
            same(c, f, f1, "shared graph");
            same(c, prod, build([&] { return strong_product(*g, *h); }, {g, h}), "product");
            auto w1 = opt_graph(c.premises[2]->payload, "first"), w2 = opt_graph(c.premises[2]->payload, "second");
            if (!w1 || !w2 || !f || !g || !h) {
                ++rep_.skipped;
                return;
            }
            auto is_pair = [&](const Graph& x, const Graph& y) {
                return (*w1 == x && *w2 == y) || (*w1 == y && *w2 == x);
            };
            ++rep_.structural;
            if (!is_pair(*g, *h) && !is_pair(*f, *g) && !is_pair(*f, *h))
                fail(r + ": weak equivalence certificate is about another pair");
            return;
        }
        fail("no checks defined for rule '" + r + "'");
    }

    // The reduced graph's complement must be hom-equivalent to the original's complement.
    void check_reduction(const Certificate& c, const std::optional<Graph>& orig, const std::optional<Graph>& red,
                         const std::string& which)
    {
        if (!orig || !red) {
            ++rep_.skipped;
            return;
        }
        const json& p = c.payload;
        HomMap to{complement(*orig), complement(*red), p.at(which + "_to").get<std::vector<int>>()};
        HomMap from{complement(*red), complement(*orig), p.at(which + "_from").get<std::vector<int>>()};
        if (!to.verify() || !from.verify()) fail("core_reduction: " + which + " homomorphisms rejected");
        rep_.witnesses += 2;
    }
};

} // namespace detail

inline VerifyReport verify_certificate(const CertPtr& root)
{
    VerifyReport rep;
    try {
        detail::Verifier v(rep);
        v.check(root);
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error = e.what();
    }
    return rep;
}

// Both endpoints of a bounds report, with their side checked.
inline VerifyReport verify_bounds(const RatioBounds& rb)
{
    VerifyReport rep;
    try {
        detail::Verifier v(rep);
        if (v.check(rb.lower) != detail::NodeClass::lower) detail::Verifier::fail("lower certificate is not a lower bound");
        if (v.check(rb.upper) != detail::NodeClass::upper) detail::Verifier::fail("upper certificate is not an upper bound");
        auto pair_of = [](const CertPtr& c) {
            return std::make_pair(c->payload.value("source_expr", std::string()), c->payload.value("channel_expr", std::string()));
        };
        if (pair_of(rb.lower) != pair_of(rb.upper)) detail::Verifier::fail("endpoints certify different pairs");
        if (rb.lower->value.iv.lo > rb.upper->value.iv.hi + 1e-9 * std::max(1.0, rb.upper->value.iv.hi))
            detail::Verifier::fail("lower bound exceeds upper bound");
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error = e.what();
    }
    return rep;
}

} // namespace irkit
