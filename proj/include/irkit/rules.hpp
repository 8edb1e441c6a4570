#pragma once

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irkit/certificate.hpp"
#include "irkit/code.hpp"
#include "irkit/fractional.hpp"
#include "irkit/minrank.hpp"
#include "irkit/theta_exact.hpp"

// Value semantics of every certificate rule. The engine builds each node's value
// with eval_rule and the verifier replays the same rule on the stored premises.
namespace irkit {

using nlohmann::json;

namespace detail {

inline std::vector<Rational> rationals_from_json(const json& j)
{
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
    return out;
}

inline json rationals_to_json(const std::vector<Rational>& v)
{
    json j = json::array();
    for (const auto& x : v) j.push_back(x.get_str());
    return j;
}

inline json quad_to_json(const std::vector<QuadNumber>& v)
{
    json j = json::array();
    for (const auto& x : v) j.push_back({x.a.get_str(), x.b.get_str()});
    return j;
}

inline std::vector<QuadNumber> quad_from_json(const json& j)
{
    std::vector<QuadNumber> out;
    for (const auto& x : j) {
        if (!x.is_array() || x.size() != 2) throw ParseError("quadratic entry must be a pair");
        out.push_back({parse_rational(x[0].get<std::string>()), parse_rational(x[1].get<std::string>())});
    }
    return out;
}

inline const CertPtr& premise(const std::vector<CertPtr>& p, std::size_t i, const std::string& rule)
{
    if (i >= p.size()) throw ParseError(rule + ": missing premise " + std::to_string(i));
    return p[i];
}

inline Real root_of_size(const json& payload, const char* count_field, const char* power_field)
{
    auto m = payload.at(power_field).get<unsigned>();
    if (m == 0) throw ParseError("power must be positive");
    return Real::root(Root::of(Rational(static_cast<long>(payload.at(count_field).get<std::size_t>())), m));
}

} // namespace detail

// Value of a node from its premises and payload.
inline Quantity eval_rule(const std::string& rule, const std::vector<CertPtr>& p, const json& payload)
{
    using detail::premise;
    auto val = [&](std::size_t i) -> const Quantity& { return premise(p, i, rule)->value; };

    // Invariant leaves.
    if (rule == "alpha_power") {
        json c = payload;
        c["size"] = payload.at("set").size();
        return Quantity::of(detail::root_of_size(c, "size", "power"));
    }
    if (rule == "chibarf_lp") {
        Rational s = 0;
        for (const auto& w : detail::rationals_from_json(payload.at("weights"))) s += w;
        return Quantity::of(Real(s));
    }
    if (rule == "theta_sdp") return Quantity::numeric(payload.at("lo").get<double>(), payload.at("hi").get<double>());
    if (rule == "theta_exact_dual" || rule == "theta_exact_primal")
        return Quantity::of(Real(parse_rational(payload.at("t").get<std::string>())));
    if (rule == "theta_quadratic_dual") {
        Rational d = parse_rational(payload.at("d").get<std::string>());
        if (is_rational_square(d)) throw ParseError("theta_quadratic_dual: d must not be a square");
        return Quantity::of(Real::root(Root::of(d, 2)));
    }
    if (rule == "minrank_power") return Quantity::of(detail::root_of_size(payload, "rank", "power"));

    // Structural invariant rules.
    if (rule == "chibarf_product" || rule == "caplo_product" || rule == "theta_product") return q::mul(val(0), val(1));
    if (rule == "chibarf_union" || rule == "caplo_union" || rule == "theta_union") return q::add(val(0), val(1));
    if (rule == "chibarf_power" || rule == "caplo_power" || rule == "theta_power")
        return q::pow(val(0), payload.at("power").get<unsigned>());
    if (rule == "caplo_max") {
        // Larger of several lower bounds on the same capacity.
        if (p.empty()) throw ParseError("caplo_max: no premises");
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.size(); ++i) {
            const Quantity &x = val(i), &y = val(best);
            if (x.sym && y.sym && x.kind == Exactness::exact && y.kind == Exactness::exact) {
                auto c = compare(*x.sym, *y.sym);
                if (c && *c > 0) best = i;
            } else if (x.iv.lo > y.iv.lo) {
                best = i;
            }
        }
        return val(best);
    }

    if (rule == "theta") {
        const double tol = payload.at("tol").get<double>();
        const auto& roles = payload.at("roles");
        if (roles.size() != p.size()) throw ParseError("theta: roles and premises differ in length");
        double lo = 0, hi = kInf;
        std::vector<Real> lows, highs, guesses;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::string r = roles[i].get<std::string>();
            const Quantity& v = val(i);
            if (r == "bracket") {
                if (v.is_exact()) return v;
                lo = std::max(lo, v.iv.lo);
                hi = std::min(hi, v.iv.hi);
                if (v.sym) guesses.push_back(*v.sym);
            } else if (r == "lower" || r == "primal") {
                lo = std::max(lo, v.iv.lo);
                if (v.sym && v.is_exact()) lows.push_back(*v.sym);
            } else if (r == "chibarf" || r == "dual") {
                hi = std::min(hi, v.iv.hi);
                if (v.sym && v.is_exact()) highs.push_back(*v.sym);
            } else {
                throw ParseError("theta: unknown role '" + r + "'");
            }
        }
        for (const auto& l : lows)
            for (const auto& h : highs)
                if (auto e = formally_equal(l, h); e && *e) return Quantity::of(l);
        std::optional<Real> cand;
        for (const auto& l : lows)
            if (hi - l.approx() <= 2 * tol && (!cand || l.approx() > cand->approx())) cand = l;
        if (!cand)
            for (const auto& h : highs)
                if (h.approx() - lo <= 2 * tol && (!cand || h.approx() < cand->approx())) cand = h;
        if (!cand)
            for (const auto& g : guesses)
                if (g.approx() >= lo - 2 * tol && g.approx() <= hi + 2 * tol) cand = g;
        Quantity out = Quantity::numeric(lo, hi);
        if (cand) {
            out.sym = cand;
            out.kind = Exactness::pinned;
        }
        return out;
    }

    if (rule == "capacity") {
        const double tol = payload.at("tol").get<double>();
        const auto& roles = payload.at("roles");
        if (roles.size() != p.size()) throw ParseError("capacity: roles and premises differ in length");
        std::optional<Quantity> lower, theta, chi;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::string r = roles[i].get<std::string>();
            if (r == "lower") lower = val(i);
            else if (r == "theta") theta = val(i);
            else if (r == "chibarf") chi = val(i);
            else throw ParseError("capacity: unknown role '" + r + "'");
        }
        if (!lower) throw ParseError("capacity: missing lower bound");
        double hi = kInf;
        if (theta) hi = std::min(hi, theta->iv.hi);
        if (chi) hi = std::min(hi, chi->iv.hi);
        if (!lower->sym || !lower->is_exact()) return Quantity::numeric(lower->iv.lo, hi);
        const Real& l = *lower->sym;
        auto equals = [&](const std::optional<Quantity>& x) {
            if (!x || !x->sym) return false;
            auto e = formally_equal(l, *x->sym);
            return e && *e;
        };
        if ((chi && equals(chi)) || (theta && theta->kind == Exactness::exact && equals(theta))) return Quantity::of(l);
        Quantity out = Quantity::numeric(lower->iv.lo, hi);
        if ((theta && equals(theta)) || hi - l.approx() <= 2 * tol) {
            out.sym = l;
            out.kind = Exactness::pinned;
        }
        return out;
    }

    // Bound rules.
    if (rule == "trivial_lower" || rule == "channel_complete") return Quantity::of(Real(0));
    if (rule == "trivial_upper" || rule == "source_complete") return Quantity::of(Real::infinity());
    if (rule == "code") {
        const auto& c = payload.at("code");
        int k = c.at("k").get<int>(), n = c.at("n").get<int>();
        if (k < 1 || n < 1) throw ParseError("code: k and n must be positive");
        return Quantity::of(Real(make_rational(k, n)));
    }
    if (rule == "clique_union") {
        auto s = payload.at("s").get<long>(), t = payload.at("t").get<long>();
        if (s < 2 || t < 1) throw ParseError("clique_union: bad component counts");
        return Quantity::of(Real::log_ratio(Root::of(Rational(t)), Root::of(Rational(s))));
    }
    if (rule == "power_ratio") {
        int m1 = payload.at("m1").get<int>(), m2 = payload.at("m2").get<int>();
        if (m1 < 1 || m2 < 1) throw ParseError("power_ratio: exponents must be positive");
        return Quantity::of(Real(make_rational(m1, m2)));
    }
    if (rule == "source_factor") return q::one_plus(val(0));
    if (rule == "channel_factor") return q::over_one_plus(val(0));
    if (rule == "product_lower" || rule == "weak_sum_upper") return q::add(val(0), val(1));
    if (rule == "channel_power") return q::scale(val(0), Rational(payload.at("power").get<long>()));
    if (rule == "reverse_product_lower" || rule == "weak_harmonic_upper") return q::harmonic(val(0), val(1));
    if (rule == "source_power") return q::scale(val(0), make_rational(1, payload.at("power").get<long>()));
    if (rule == "power_union_lower") return q::power_union(val(0), val(1), val(2));
    if (rule == "ff_channel") return q::one_plus_inv_log(val(0));
    if (rule == "ff_source") return q::log_over_one_plus_log(val(0));
    if (rule == "separation" || rule == "upper_chibarf" || rule == "upper_theta" || rule == "upper_capacity" ||
        rule == "upper_minrank")
        return q::log_ratio(val(0), val(1));
    if (rule == "concatenation" || rule == "weak_equivalence") return q::mul(val(0), val(1));
    if (rule == "reciprocal") return q::recip(val(0));
    if (rule == "core_reduction") return val(0);
    throw ParseError("unknown certificate rule '" + rule + "'");
}

inline CertPtr derive(const std::string& rule, std::vector<CertPtr> premises, json payload)
{
    Quantity v = eval_rule(rule, premises, payload);
    return make_cert(rule, std::move(v), std::move(payload), std::move(premises));
}

// Which rules state lower bounds, upper bounds, or values of invariants.
inline bool is_bound_rule(const std::string& r)
{
    static const char* const names[] = {
        "trivial_lower", "trivial_upper", "source_complete", "channel_complete", "code", "clique_union", "power_ratio",
        "source_factor", "channel_factor", "product_lower", "channel_power", "reverse_product_lower",
        "source_power", "power_union_lower", "ff_channel", "ff_source", "separation", "concatenation",
        "upper_chibarf", "upper_theta", "upper_capacity", "upper_minrank", "reciprocal", "core_reduction",
        "weak_sum_upper", "weak_harmonic_upper"};
    for (const char* n : names)
        if (r == n) return true;
    return false;
}

} // namespace irkit
