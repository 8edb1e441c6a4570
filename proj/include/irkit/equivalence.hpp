#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "irkit/ratio.hpp"
#include "irkit/verify.hpp"

// Information equivalence, the information order, the two metrics, criticality and core spectra.
namespace irkit {

enum class Verdict { certified_equivalent, certified_inequivalent, unknown };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::certified_equivalent: return "certified_equivalent";
    case Verdict::certified_inequivalent: return "certified_inequivalent";
    case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

// Truth value of one direction of the order.
enum class Certainty { yes, no, unknown };

inline const char* to_string(Certainty c)
{
    switch (c) {
    case Certainty::yes: return "certified";
    case Certainty::no: return "refuted";
    case Certainty::unknown: return "unknown";
    }
    return "unknown";
}

struct EquivalenceReport {
    std::string a, b;
    RatioBounds ab; // Ir(b/a): source a, channel b
    RatioBounds ba; // Ir(a/b)
    Verdict information = Verdict::unknown;
    Verdict weak = Verdict::unknown;
    Certainty a_below_b = Certainty::unknown; // L(a) ≼ L(b), i.e. Ir(b/a) >= 1
    Certainty b_below_a = Certainty::unknown;
    CertPtr weak_certificate;        // product of the two lower bounds, when >= 1
    Quantity weak_upper;             // product of the two upper bounds

    bool incomparable() const { return a_below_b == Certainty::no && b_below_a == Certainty::no; }
};

namespace detail {

inline Certainty order_of(const RatioBounds& rb)
{
    if (certified_at_least_one(rb.lower->value)) return Certainty::yes;
    if (certified_below_one(rb.upper->value)) return Certainty::no;
    return Certainty::unknown;
}

} // namespace detail

inline EquivalenceReport equivalence_check(Engine& eng, const std::string& a, const std::string& b)
{
    EquivalenceReport r;
    auto ea = parse_expr(a), eb = parse_expr(b);
    r.ab = eng.bounds(ea, eb);
    r.ba = eng.bounds(eb, ea);
    r.a = r.ab.source;
    r.b = r.ab.channel;
    r.a_below_b = detail::order_of(r.ab);
    r.b_below_a = detail::order_of(r.ba);

    if (r.a_below_b == Certainty::yes && r.b_below_a == Certainty::yes) r.information = Verdict::certified_equivalent;
    else if (r.a_below_b == Certainty::no || r.b_below_a == Certainty::no) r.information = Verdict::certified_inequivalent;

    const Profile& pa = eng.profile(ea);
    const Profile& pb = eng.profile(eb);
    json pl{{"side", "weak"}, {"first", pa.graph}, {"second", pb.graph}, {"first_expr", pa.label}, {"second_expr", pb.label}};
    auto w = derive("weak_equivalence", {r.ab.lower, r.ba.lower}, pl);
    r.weak_upper = q::mul(r.ab.upper->value, r.ba.upper->value);
    if (detail::certified_at_least_one(w->value)) {
        r.weak = Verdict::certified_equivalent;
        r.weak_certificate = w;
    } else if (detail::certified_below_one(r.weak_upper)) {
        r.weak = Verdict::certified_inequivalent;
    }
    return r;
}

// Interval image of x -> -log2(x), rounded outward. Exact at x = 1.
inline Interval neg_log2(const Interval& x)
{
    auto f = [](double v, bool up) {
        if (v <= 0) return kInf;
        if (std::isinf(v)) return -kInf;
        if (v == 1) return 0.0;
        double r = -std::log2(v);
        return up ? std::nextafter(r, kInf) : std::nextafter(r, -kInf);
    };
    return {f(x.hi, false), f(x.lo, true)};
}

struct MetricReport {
    Interval d;   // -log2 min(Ir(a/b), Ir(b/a))
    Interval d_w; // -log2 (Ir(a/b) Ir(b/a))
    bool d_exact = false, d_w_exact = false;
};

inline MetricReport metric_eval(const RatioBounds& ab, const RatioBounds& ba)
{
    MetricReport m;
    // Ratios are certified as [lower.lo, upper.hi].
    Interval x{ab.lower->value.iv.lo, ab.upper->value.iv.hi};
    Interval y{ba.lower->value.iv.lo, ba.upper->value.iv.hi};
    Interval mn{std::min(x.lo, y.lo), std::min(x.hi, y.hi)};
    auto mul_lo = [](double a, double b) { return a == 0 || b == 0 ? 0.0 : std::nextafter(a * b, -kInf); };
    auto mul_hi = [](double a, double b) { return a == 0 || b == 0 ? 0.0 : std::nextafter(a * b, kInf); };
    Interval prod{mul_lo(x.lo, y.lo), mul_hi(x.hi, y.hi)};

    // Closed exact directions give exact points.
    auto exact_value = [](const RatioBounds& rb) -> std::optional<Real> {
        if (rb.closed() && rb.exactness() == Exactness::exact) return rb.lower->value.sym;
        return std::nullopt;
    };
    auto ex = exact_value(ab), ey = exact_value(ba);
    if (ex && ey) {
        auto c = compare(*ex, *ey);
        if (c) {
            const Real& lo = *c <= 0 ? *ex : *ey;
            if (lo.is_rational() && lo.rational() == 1) {
                mn = {1, 1};
                m.d_exact = true;
            }
        }
        auto p = q::mul(Quantity::of(*ex), Quantity::of(*ey));
        if (p.is_exact() && p.sym && p.sym->is_rational() && p.sym->rational() == 1) {
            prod = {1, 1};
            m.d_w_exact = true;
        }
    }
    m.d = neg_log2(mn);
    m.d_w = neg_log2(prod);
    if (m.d.lo < 0) m.d.lo = 0;
    if (m.d_w.lo < 0 && prod.hi <= 1) m.d_w.lo = 0;
    return m;
}

// ---- criticality ------------------------------------------------------------

struct CriticalityReport {
    std::string graph;
    bool critical = false;
    std::string method; // "edge_witness", "triangle_free_complement" or empty
    std::optional<std::pair<int, int>> edge;
    int power = 0;                      // j with |set|^(1/j) > χ̄_f
    std::vector<int> set;               // independent in (F∖e)^j
    CertPtr chibarf;
    std::vector<std::string> notes;
};

struct CriticalityOptions {
    int max_power = 2;
    std::size_t power_vertex_cap = 400;
    Budget budget{2'000'000, 0.0};
};

namespace detail {

inline bool triangle_free(const Graph& g)
{
    for (auto [u, v] : g.edges())
        for (std::size_t w = 0; w < g.n(); ++w)
            if (g.adjacent(u, w) && g.adjacent(v, w)) return false;
    return true;
}

// One representative per edge orbit of the automorphism group.
inline std::vector<std::pair<int, int>> edge_orbit_representatives(const Graph& g)
{
    const auto edges = g.edges();
    const std::size_t n = g.n();
    std::vector<std::vector<int>> eid(n, std::vector<int>(n, -1));
    for (std::size_t e = 0; e < edges.size(); ++e)
        eid[edges[e].first][edges[e].second] = eid[edges[e].second][edges[e].first] = static_cast<int>(e);
    std::vector<int> par(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) par[e] = static_cast<int>(e);
    for (const auto& p : canonical_form(g).generators)
        for (std::size_t e = 0; e < edges.size(); ++e)
            par[uf_find(par, static_cast<int>(e))] = uf_find(par, eid[p[edges[e].first]][p[edges[e].second]]);
    std::vector<std::pair<int, int>> reps;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (uf_find(par, static_cast<int>(e)) == static_cast<int>(e))
            reps.emplace_back(static_cast<int>(edges[e].first), static_cast<int>(edges[e].second));
    return reps;
}

} // namespace detail

// Certified when some edge e has α((F∖e)^j)^(1/j) > χ̄_f(F), a lower bound on Θ(F∖e)
// above χ̄_f(F). Also certified, without a
// witness, when the complement is connected, triangle-free, has at least 3 vertices and
// χ̄_f(F) < 3.
inline CriticalityReport criticality_check(Engine& eng, const std::string& text, const CriticalityOptions& opts = {})
{
    CriticalityReport r;
    auto e = parse_expr(text);
    const Profile& p = eng.profile(e);
    r.graph = p.label;
    if (!p.g) {
        r.notes.push_back("graph too large to materialize");
        return r;
    }
    const Graph& f = *p.g;
    r.chibarf = p.chibarf;
    if (!r.chibarf || !r.chibarf->value.is_exact() || !r.chibarf->value.sym || !r.chibarf->value.sym->is_rational()) {
        r.notes.push_back("no exact fractional clique cover number");
        return r;
    }
    const Rational chi = r.chibarf->value.sym->rational();

    Graph co = complement(f);
    if (f.n() >= 3 && connected_components(co).size() == 1 && detail::triangle_free(co) && chi < 3) {
        r.critical = true;
        r.method = "triangle_free_complement";
    }

    for (auto [u, v] : detail::edge_orbit_representatives(f)) {
        Graph fe = delete_edge(f, u, v);
        for (int j = 1; j <= opts.max_power; ++j) {
            if (j > 1 && detail::power_size(fe.n(), j, opts.power_vertex_cap) > opts.power_vertex_cap) break;
            Graph gp = j == 1 ? fe : strong_power(fe, j);
            auto w = independent_set_within(gp, opts.budget);
            // |S|^(1/j) > χ̄_f  iff  |S| > χ̄_f^j
            if (Rational(static_cast<long>(w.value)) > rpow(chi, static_cast<unsigned long>(j))) {
                r.critical = true;
                if (r.method.empty()) r.method = "edge_witness";
                r.edge = std::make_pair(u, v);
                r.power = j;
                r.set = w.vertices;
                break;
            }
        }
        if (r.edge) break;
    }
    if (!r.critical) r.notes.push_back("no edge witness found within the power and budget limits");
    return r;
}

// Re-checks the witness from scratch: the set, the edge and the fractional cover.
inline bool verify_criticality(const Graph& f, const CriticalityReport& r, std::string* why = nullptr)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (!r.critical) return fail("not claimed critical");
    if (!r.chibarf) return fail("missing fractional clique cover certificate");
    auto vr = verify_certificate(r.chibarf);
    if (!vr.ok) return fail("fractional clique cover certificate: " + vr.error);
    if (r.chibarf->payload.contains("graph") && !r.chibarf->payload.at("graph").is_null() &&
        !(from_graph6(r.chibarf->payload.at("graph").get<std::string>()) == f))
        return fail("fractional clique cover certificate is about another graph");
    const Rational chi = r.chibarf->value.sym->rational();
    if (r.method == "triangle_free_complement" && !r.edge) {
        Graph co = complement(f);
        if (f.n() < 3 || connected_components(co).size() != 1 || !detail::triangle_free(co) || !(chi < 3))
            return fail("triangle-free complement conditions do not hold");
        return true;
    }
    if (!r.edge) return fail("missing edge");
    auto [u, v] = *r.edge;
    if (u < 0 || v < 0 || static_cast<std::size_t>(std::max(u, v)) >= f.n() || !f.adjacent(u, v))
        return fail("witness edge is not an edge");
    Graph fe = delete_edge(f, u, v);
    Graph gp = r.power == 1 ? fe : strong_power(fe, r.power);
    std::set<int> uniq(r.set.begin(), r.set.end());
    if (uniq.size() != r.set.size()) return fail("repeated vertex in witness set");
    for (int x : r.set)
        if (x < 0 || static_cast<std::size_t>(x) >= gp.n()) return fail("witness vertex out of range");
    if (!is_independent(gp, r.set)) return fail("witness set is not independent");
    if (!(Rational(static_cast<long>(r.set.size())) > rpow(chi, static_cast<unsigned long>(r.power))))
        return fail("witness set is too small");
    return true;
}

// ---- spectra ----------------------------------------------------------------

inline std::vector<std::string> default_reference_cores()
{
    return {"K(1)", "K(2)", "K(3)", "K(4)", "K(5)", "C(5)", "C(7)", "KG(5,2)"};
}

struct SpectrumEntry {
    std::string core;
    RatioBounds source; // Ir(~core / g)
    RatioBounds channel; // Ir(g / ~core)
};

// Source and channel spectra against the complements of the reference cores.
inline std::vector<SpectrumEntry> spectra(Engine& eng, const std::string& text,
                                          const std::vector<std::string>& cores = default_reference_cores())
{
    auto g = parse_expr(text);
    std::vector<SpectrumEntry> out;
    for (const auto& c : cores) {
        auto h = Expr::unary(Expr::Kind::complement, parse_expr(c));
        out.push_back({c, eng.bounds(g, h), eng.bounds(h, g)});
    }
    return out;
}

inline Interval certified_interval(const RatioBounds& rb) { return {rb.lower->value.iv.lo, rb.upper->value.iv.hi}; }

// Equivalent graphs have equal spectra, so disjoint entries separate them. Diagnostic only.
inline std::vector<std::string> spectra_separations(const std::vector<SpectrumEntry>& a,
                                                    const std::vector<SpectrumEntry>& b)
{
    std::vector<std::string> out;
    auto disjoint = [](const Interval& x, const Interval& y) { return x.hi < y.lo || y.hi < x.lo; };
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].core != b[i].core) continue;
        if (disjoint(certified_interval(a[i].source), certified_interval(b[i].source)))
            out.push_back("source spectrum differs at ~" + a[i].core);
        if (disjoint(certified_interval(a[i].channel), certified_interval(b[i].channel)))
            out.push_back("channel spectrum differs at ~" + a[i].core);
    }
    return out;
}

inline nlohmann::json to_json(const EquivalenceReport& r, bool with_certificates = false)
{
    nlohmann::json j{{"a", r.a},
                     {"b", r.b},
                     {"information", to_string(r.information)},
                     {"weak", to_string(r.weak)},
                     {"order", {{"a_below_b", to_string(r.a_below_b)}, {"b_below_a", to_string(r.b_below_a)}}},
                     {"incomparable", r.incomparable()},
                     {"ir_b_over_a", to_json(r.ab, with_certificates)},
                     {"ir_a_over_b", to_json(r.ba, with_certificates)}};
    auto m = metric_eval(r.ab, r.ba);
    auto num = [](double x) -> nlohmann::json {
        if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
        return x;
    };
    j["metric"] = {{"d", {num(m.d.lo), num(m.d.hi)}}, {"d_w", {num(m.d_w.lo), num(m.d_w.hi)}}};
    if (r.weak_certificate && with_certificates) j["weak_certificate"] = certificate_to_json(r.weak_certificate);
    return j;
}

inline nlohmann::json to_json(const CriticalityReport& r)
{
    nlohmann::json j{{"graph", r.graph}, {"critical", r.critical}, {"verdict", r.critical ? "certified_critical" : "unknown"},
                     {"method", r.method}, {"notes", r.notes}};
    if (r.chibarf) j["chibarf"] = r.chibarf->value.str();
    if (r.edge) {
        j["edge"] = {r.edge->first, r.edge->second};
        j["power"] = r.power;
        j["set"] = r.set;
    }
    return j;
}

} // namespace irkit
