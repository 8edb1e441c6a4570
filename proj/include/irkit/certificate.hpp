#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "irkit/exact.hpp"

namespace irkit {

// exact: the symbolic value is proven. pinned: the symbolic value is the solver's value
// identified within tolerance, only the interval is proven. numeric: interval only.
enum class Exactness { exact, pinned, numeric };

inline const char* to_string(Exactness e)
{
    return e == Exactness::exact ? "exact" : e == Exactness::pinned ? "pinned" : "numeric";
}

inline Exactness parse_exactness(const std::string& s)
{
    if (s == "exact") return Exactness::exact;
    if (s == "pinned") return Exactness::pinned;
    if (s == "numeric") return Exactness::numeric;
    throw ParseError("unknown exactness '" + s + "'");
}

inline Exactness worst(Exactness a, Exactness b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

// A real number known to lie in iv, optionally with a symbolic value.
struct Quantity {
    Interval iv;
    std::optional<Real> sym;
    Exactness kind = Exactness::numeric;

    static Quantity of(const Real& r) { return {r.interval(), r, Exactness::exact}; }
    static Quantity numeric(double lo, double hi) { return {Interval{lo, hi}, std::nullopt, Exactness::numeric}; }

    bool is_exact() const { return kind == Exactness::exact; }
    double approx() const { return sym ? sym->approx() : iv.mid(); }

    std::string str() const
    {
        if (sym && kind != Exactness::numeric)
            return sym->str() + (kind == Exactness::pinned ? " (pinned)" : "");
        char buf[96];
        std::snprintf(buf, sizeof buf, "[%.9g, %.9g]", iv.lo, iv.hi);
        return buf;
    }

    nlohmann::json to_json() const
    {
        auto num = [](double x) -> nlohmann::json {
            if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
            return x;
        };
        nlohmann::json j = {{"lo", num(iv.lo)}, {"hi", num(iv.hi)}, {"exactness", to_string(kind)}};
        if (sym) j["exact"] = sym->to_json();
        return j;
    }

    static Quantity from_json(const nlohmann::json& j)
    {
        auto num = [](const nlohmann::json& x) {
            if (x.is_string()) {
                auto s = x.get<std::string>();
                if (s == "inf") return kInf;
                if (s == "-inf") return -kInf;
                throw ParseError("bad number '" + s + "'");
            }
            return x.get<double>();
        };
        Quantity q;
        q.iv = {num(j.at("lo")), num(j.at("hi"))};
        q.kind = parse_exactness(j.at("exactness").get<std::string>());
        if (j.contains("exact")) q.sym = Real::from_json(j.at("exact"));
        return q;
    }
};

// Interval and symbolic agreement between a stored and a recomputed quantity.
inline bool same_quantity(const Quantity& a, const Quantity& b)
{
    auto close = [](double x, double y) {
        if (std::isinf(x) || std::isinf(y)) return x == y;
        return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x));
    };
    if (!close(a.iv.lo, b.iv.lo) || !close(a.iv.hi, b.iv.hi) || a.kind != b.kind) return false;
    if (a.sym.has_value() != b.sym.has_value()) return false;
    if (a.sym) {
        auto eq = formally_equal(*a.sym, *b.sym);
        if (!eq || !*eq) return false;
    }
    return true;
}

namespace q {

inline long double ld_log2(double x) { return x <= 0 ? -INFINITY : std::log2(static_cast<long double>(x)); }

inline std::optional<LogLinear> log_of(const Real& r)
{
    if (r.is_rational()) {
        if (sgn(r.rational()) <= 0) return std::nullopt;
        return LogLinear::log2_of(r.rational());
    }
    if (r.kind() == Real::Kind::root) return LogLinear::log2_of(r.root_value());
    return std::nullopt;
}

inline Quantity finish(Interval iv, std::optional<Real> sym, Exactness kind)
{
    Quantity out;
    out.iv = widen(iv.lo, iv.hi);
    if (out.iv.lo < 0 && iv.lo >= 0) out.iv.lo = 0;
    if (sym && kind != Exactness::numeric) {
        out.sym = std::move(sym);
        out.kind = kind;
        if (kind == Exactness::exact) {
            // Exact results get the tight outward enclosure of their symbolic value.
            Interval e = out.sym->interval();
            out.iv = e;
        }
    }
    return out;
}

// log a / log b with a >= 1, b > 1.
inline Quantity log_ratio(const Quantity& a, const Quantity& b)
{
    long double la_lo = std::max(0.0L, ld_log2(a.iv.lo)), la_hi = ld_log2(a.iv.hi);
    long double lb_lo = ld_log2(b.iv.lo), lb_hi = ld_log2(b.iv.hi);
    double lo = lb_hi <= 0 ? 0.0 : static_cast<double>(la_lo / lb_hi);
    double hi = lb_lo <= 0 ? kInf : static_cast<double>(la_hi / lb_lo);
    if (std::isinf(lb_hi)) lo = 0;
    std::optional<Real> sym;
    if (a.sym && b.sym) {
        auto na = log_of(*a.sym), nb = log_of(*b.sym);
        if (na && nb && !nb->is_zero()) sym = Real::log_ratio(*na, *nb);
    }
    return finish({lo, hi}, sym, worst(a.kind, b.kind));
}

inline Quantity add(const Quantity& a, const Quantity& b)
{
    std::optional<Real> sym;
    if (a.sym && b.sym) sym = irkit::add(*a.sym, *b.sym);
    return finish({a.iv.lo + b.iv.lo, a.iv.hi + b.iv.hi}, sym, worst(a.kind, b.kind));
}

inline double safe_mul(double x, double y) { return (x == 0 || y == 0) ? 0.0 : x * y; }

inline Quantity mul(const Quantity& a, const Quantity& b)
{
    std::optional<Real> sym;
    if (a.sym && b.sym) sym = irkit::multiply(*a.sym, *b.sym);
    return finish({safe_mul(a.iv.lo, b.iv.lo), safe_mul(a.iv.hi, b.iv.hi)}, sym, worst(a.kind, b.kind));
}

inline Quantity scale(const Quantity& a, const Rational& s)
{
    return mul(a, Quantity::of(Real(s)));
}

inline Quantity pow(const Quantity& a, unsigned m)
{
    std::optional<Real> sym;
    if (a.sym) {
        if (a.sym->is_rational()) sym = Real(rpow(a.sym->rational(), m));
        else if (a.sym->kind() == Real::Kind::root) sym = Real::root(root_pow(a.sym->root_value(), m));
    }
    return finish({std::pow(a.iv.lo, static_cast<double>(m)), std::pow(a.iv.hi, static_cast<double>(m))}, sym, a.kind);
}

// 1/a; decreasing, so the interval flips.
inline Quantity recip(const Quantity& a)
{
    std::optional<Real> sym;
    if (a.sym) sym = irkit::reciprocal(*a.sym);
    double lo = std::isinf(a.iv.hi) ? 0.0 : 1.0 / a.iv.hi;
    double hi = a.iv.lo <= 0 ? kInf : 1.0 / a.iv.lo;
    return finish({lo, hi}, sym, a.kind);
}

// 1 + a
inline Quantity one_plus(const Quantity& a) { return add(Quantity::of(Real(1)), a); }

// a / (1 + a), increasing in a.
inline Quantity over_one_plus(const Quantity& a)
{
    auto f = [](double x) { return std::isinf(x) ? 1.0 : x / (1 + x); };
    std::optional<Real> sym;
    if (a.sym) {
        if (a.sym->is_rational()) sym = Real(a.sym->rational() / (1 + a.sym->rational()));
        else if (a.sym->kind() == Real::Kind::log_ratio) sym = Real::log_ratio(a.sym->num(), a.sym->num() + a.sym->den());
        else if (a.sym->is_infinite()) sym = Real(1);
    }
    return finish({f(a.iv.lo), f(a.iv.hi)}, sym, a.kind);
}

// ab / (a + b), increasing in both.
inline Quantity harmonic(const Quantity& a, const Quantity& b)
{
    auto f = [](double x, double y) {
        if (x == 0 || y == 0) return 0.0;
        if (std::isinf(x)) return y;
        if (std::isinf(y)) return x;
        return x * y / (x + y);
    };
    std::optional<Real> sym;
    if (a.sym && b.sym) {
        auto ra = irkit::reciprocal(*a.sym), rb = irkit::reciprocal(*b.sym);
        if (ra && rb)
            if (auto s = irkit::add(*ra, *rb)) sym = irkit::reciprocal(*s);
    }
    return finish({f(a.iv.lo, b.iv.lo), f(a.iv.hi, b.iv.hi)}, sym, worst(a.kind, b.kind));
}

// log x / (1 + log x) for x >= 1, increasing.
inline Quantity log_over_one_plus_log(const Quantity& x)
{
    auto f = [](double v) {
        if (std::isinf(v)) return 1.0;
        long double l = std::max(0.0L, ld_log2(v));
        return static_cast<double>(l / (1 + l));
    };
    std::optional<Real> sym;
    if (x.sym)
        if (auto l = log_of(*x.sym)) sym = Real::log_ratio(*l, *l + LogLinear::log2_of(Rational(2)));
    return finish({f(x.iv.lo), f(x.iv.hi)}, sym, x.kind);
}

// 1 + 1/log c for c > 1, decreasing in c.
inline Quantity one_plus_inv_log(const Quantity& c)
{
    auto f = [](double v) {
        long double l = ld_log2(v);
        return l <= 0 ? kInf : static_cast<double>(1 + 1 / l);
    };
    std::optional<Real> sym;
    if (c.sym)
        if (auto l = log_of(*c.sym); l && !l->is_zero()) sym = Real::log_ratio(*l + LogLinear::log2_of(Rational(2)), *l);
    return finish({f(c.iv.hi), f(c.iv.lo)}, sym, c.kind);
}

// log_c(c^a + c^b) for c > 1, increasing in a and b, decreasing in c when a, b >= 0.
inline Quantity power_union(const Quantity& a, const Quantity& b, const Quantity& c)
{
    auto f = [](double x, double y, double cc) {
        if (std::isinf(x) || std::isinf(y)) return kInf;
        long double l = ld_log2(cc);
        if (l <= 0) return std::max(x, y);
        long double m = std::max(x, y), d = std::min(x, y);
        return static_cast<double>(m + std::log2(1 + std::exp2((d - m) * l)) / l);
    };
    std::optional<Real> sym;
    if (a.sym && b.sym && c.sym) {
        auto eq = formally_equal(*a.sym, *b.sym);
        if (eq && *eq)
            if (auto l = log_of(*c.sym); l && !l->is_zero())
                sym = irkit::add(*a.sym, Real::log_ratio(LogLinear::log2_of(Rational(2)), *l));
    }
    return finish({f(a.iv.lo, b.iv.lo, c.iv.hi), f(a.iv.hi, b.iv.hi, c.iv.lo)}, sym,
                  worst(worst(a.kind, b.kind), c.kind));
}

} // namespace q

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

// One derivation step: a named rule, its premises and rule-specific data.
struct Certificate {
    std::string rule;
    Quantity value;
    nlohmann::json payload = nlohmann::json::object();
    std::vector<CertPtr> premises;
};

inline CertPtr make_cert(std::string rule, Quantity value, nlohmann::json payload = nlohmann::json::object(),
                         std::vector<CertPtr> premises = {})
{
    auto c = std::make_shared<Certificate>();
    c->rule = std::move(rule);
    c->value = std::move(value);
    c->payload = std::move(payload);
    c->premises = std::move(premises);
    return c;
}

// Shared premises are written once: {"root": id, "nodes": [...]}.
inline nlohmann::json certificate_to_json(const CertPtr& root)
{
    std::map<const Certificate*, int> ids;
    nlohmann::json nodes = nlohmann::json::array();
    auto visit = [&](auto&& self, const CertPtr& c) -> int {
        if (auto it = ids.find(c.get()); it != ids.end()) return it->second;
        std::vector<int> kids;
        for (const auto& p : c->premises) kids.push_back(self(self, p));
        int id = static_cast<int>(nodes.size());
        ids[c.get()] = id;
        nodes.push_back({{"id", id}, {"rule", c->rule}, {"value", c->value.to_json()}, {"payload", c->payload}, {"premises", kids}});
        return id;
    };
    int r = visit(visit, root);
    return {{"root", r}, {"nodes", nodes}};
}

inline CertPtr certificate_from_json(const nlohmann::json& j)
{
    const auto& nodes = j.at("nodes");
    std::vector<CertPtr> built(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.at("id").get<std::size_t>() != i) throw ParseError("certificate node ids must be sequential");
        std::vector<CertPtr> prem;
        for (const auto& k : n.at("premises")) {
            auto id = k.get<std::size_t>();
            if (id >= i) throw ParseError("certificate premise refers forward");
            prem.push_back(built[id]);
        }
        built[i] = make_cert(n.at("rule").get<std::string>(), Quantity::from_json(n.at("value")), n.at("payload"),
                             std::move(prem));
    }
    auto r = j.at("root").get<std::size_t>();
    if (r >= built.size()) throw ParseError("certificate root out of range");
    return built[r];
}

inline std::size_t certificate_size(const CertPtr& c)
{
    std::size_t s = 1;
    for (const auto& p : c->premises) s += certificate_size(p);
    return s;
}

} // namespace irkit
