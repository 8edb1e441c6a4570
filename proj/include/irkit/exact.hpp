#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "irkit/rational.hpp"

namespace irkit {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline BigFloat to_big(const Rational& q)
{
    return BigFloat(q.get_num().get_str()) / BigFloat(q.get_den().get_str());
}

// Closed real interval with double endpoints.
struct Interval {
    double lo = 0;
    double hi = 0;

    bool contains(double x) const { return lo <= x && x <= hi; }
    double mid() const { return std::isinf(hi) ? hi : (lo + hi) / 2; }
    double width() const { return hi - lo; }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rounds outward by a relative margin that dominates double arithmetic error on short formulas.
inline Interval widen(double lo, double hi, double rel = 1e-12)
{
    auto down = [&](double x) { return std::isinf(x) ? x : x - rel * std::max(1.0, std::abs(x)); };
    auto up = [&](double x) { return std::isinf(x) ? x : x + rel * std::max(1.0, std::abs(x)); };
    return {down(lo), up(hi)};
}

inline Interval outward(const BigFloat& v)
{
    double d = static_cast<double>(v);
    return {std::nextafter(std::nextafter(d, -kInf), -kInf), std::nextafter(std::nextafter(d, kInf), kInf)};
}

// Σ c_a log2(a) over integer atoms a > 1. Atoms are primes up to the trial-division
// bound, so formal equality is real equality; a zero form is exactly zero.
class LogLinear {
public:
    std::map<Integer, Rational> terms;

    static LogLinear log2_of(const Rational& x)
    {
        if (sgn(x) <= 0) throw std::domain_error("log of a non-positive number");
        LogLinear out;
        out.add_factors(x.get_num(), Rational(1));
        out.add_factors(x.get_den(), Rational(-1));
        return out;
    }

    static LogLinear log2_of(const Root& r)
    {
        LogLinear out = log2_of(r.base);
        out *= Rational(1, r.m);
        return out;
    }

    LogLinear& operator+=(const LogLinear& o)
    {
        for (const auto& [a, c] : o.terms) bump(a, c);
        return *this;
    }
    LogLinear& operator-=(const LogLinear& o)
    {
        for (const auto& [a, c] : o.terms) bump(a, -c);
        return *this;
    }
    LogLinear& operator*=(const Rational& s)
    {
        if (sgn(s) == 0) terms.clear();
        for (auto& [a, c] : terms) c *= s;
        return *this;
    }
    friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
    friend LogLinear operator-(LogLinear a, const LogLinear& b) { return a -= b; }
    friend LogLinear operator*(LogLinear a, const Rational& s) { return a *= s; }
    friend bool operator==(const LogLinear& a, const LogLinear& b) { return a.terms == b.terms; }

    bool is_zero() const { return terms.empty(); }

    BigFloat value() const
    {
        BigFloat s = 0;
        for (const auto& [a, c] : terms) s += to_big(c) * boost::multiprecision::log2(BigFloat(a.get_str()));
        return s;
    }

    // q with *this == q * d, when one exists.
    std::optional<Rational> multiple_of(const LogLinear& d) const
    {
        if (d.is_zero()) return std::nullopt;
        if (is_zero()) return Rational(0);
        if (terms.size() != d.terms.size()) return std::nullopt;
        std::optional<Rational> q;
        for (const auto& [a, c] : terms) {
            auto it = d.terms.find(a);
            if (it == d.terms.end()) return std::nullopt;
            Rational r = c / it->second;
            if (q && *q != r) return std::nullopt;
            q = r;
        }
        return q;
    }

    std::string str() const
    {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [a, c] : terms) {
            Rational m = abs(c);
            std::string t = "log(" + a.get_str() + ")";
            if (m != 1) t = m.get_den() == 1 ? m.get_num().get_str() + "*" + t
                                             : (m.get_num() == 1 ? "" : m.get_num().get_str() + "*") + t + "/" +
                                                   m.get_den().get_str();
            if (first)
                s = (sgn(c) < 0 ? "-" : "") + t;
            else
                s += (sgn(c) < 0 ? " - " : " + ") + t;
            first = false;
        }
        return s;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [a, c] : terms) j[a.get_str()] = c.get_str();
        return j;
    }

    static LogLinear from_json(const nlohmann::json& j)
    {
        LogLinear out;
        for (auto it = j.begin(); it != j.end(); ++it) {
            Integer a;
            if (a.set_str(it.key(), 10) != 0 || a < 2) throw ParseError("bad log atom '" + it.key() + "'");
            out.bump(a, parse_rational(it.value().get<std::string>()));
        }
        return out;
    }

private:
    void bump(const Integer& a, const Rational& c)
    {
        if (sgn(c) == 0) return;
        auto [it, fresh] = terms.emplace(a, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }

    void add_factors(Integer x, const Rational& c)
    {
        for (unsigned long p = 2; p <= 1'000'000 && x > 1; ++p) {
            if (static_cast<unsigned long>(p) * p > x) break;
            while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
                bump(Integer(p), c);
                x /= p;
            }
        }
        if (x > 1) bump(x, c);
    }
};

// Exact non-negative extended real: a rational, an m-th root of a rational, a ratio of
// log-linear forms, or +infinity.
class Real {
public:
    enum class Kind { rational, root, log_ratio, infinity };

    Real() = default;
    Real(const Rational& q) : kind_(Kind::rational), q_(q) {}
    Real(long v) : Real(Rational(v)) {}

    static Real infinity()
    {
        Real r;
        r.kind_ = Kind::infinity;
        return r;
    }

    static Real root(const Root& x)
    {
        Root s = Root::of(x.base, x.m);
        if (s.is_rational()) return Real(s.base);
        Real r;
        r.kind_ = Kind::root;
        r.root_ = s;
        return r;
    }

    static Real log_ratio(LogLinear num, LogLinear den)
    {
        if (den.is_zero()) throw std::domain_error("log ratio with zero denominator");
        if (auto q = num.multiple_of(den)) return Real(*q);
        Real r;
        r.kind_ = Kind::log_ratio;
        // Normalize the sign into the numerator.
        if (den.value() < 0) {
            num *= Rational(-1);
            den *= Rational(-1);
        }
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    // log2(a) / log2(b) for positive a, b with b != 1.
    static Real log_ratio(const Root& a, const Root& b) { return log_ratio(LogLinear::log2_of(a), LogLinear::log2_of(b)); }

    Kind kind() const { return kind_; }
    bool is_infinite() const { return kind_ == Kind::infinity; }
    bool is_rational() const { return kind_ == Kind::rational; }
    const Rational& rational() const { return q_; }
    const Root& root_value() const { return root_; }
    const LogLinear& num() const { return num_; }
    const LogLinear& den() const { return den_; }

    BigFloat value() const
    {
        switch (kind_) {
        case Kind::rational: return to_big(q_);
        case Kind::root: return boost::multiprecision::pow(to_big(root_.base), BigFloat(1) / root_.m);
        case Kind::log_ratio: return num_.value() / den_.value();
        case Kind::infinity: break;
        }
        return std::numeric_limits<BigFloat>::infinity();
    }

    Interval interval() const
    {
        if (kind_ == Kind::infinity) return {kInf, kInf};
        if (kind_ == Kind::rational && q_.get_den() == 1 && abs(q_.get_num()) < Integer(1) << 50) {
            double d = q_.get_d();
            return {d, d};
        }
        return outward(value());
    }

    double approx() const { return kind_ == Kind::infinity ? kInf : static_cast<double>(value()); }

    // Numerator and denominator as log-linear forms, when the value is a log ratio or rational.
    std::optional<std::pair<LogLinear, LogLinear>> as_log_ratio() const
    {
        if (kind_ == Kind::log_ratio) return std::make_pair(num_, den_);
        if (kind_ == Kind::rational) {
            LogLinear one = LogLinear::log2_of(Rational(2));
            return std::make_pair(one * q_, one);
        }
        return std::nullopt;
    }

    std::string str() const
    {
        switch (kind_) {
        case Kind::rational: return q_.get_str();
        case Kind::root: return root_.str();
        case Kind::log_ratio: return "(" + num_.str() + ")/(" + den_.str() + ")";
        case Kind::infinity: break;
        }
        return "inf";
    }

    nlohmann::json to_json() const
    {
        switch (kind_) {
        case Kind::rational: return {{"kind", "rational"}, {"payload", q_.get_str()}};
        case Kind::root: return {{"kind", "root"}, {"payload", {{"base", root_.base.get_str()}, {"m", root_.m}}}};
        case Kind::log_ratio:
            return {{"kind", "log_ratio"}, {"payload", {{"num", num_.to_json()}, {"den", den_.to_json()}}}};
        case Kind::infinity: break;
        }
        return {{"kind", "infinity"}};
    }

    static Real from_json(const nlohmann::json& j)
    {
        const std::string k = j.at("kind").get<std::string>();
        if (k == "rational") return Real(parse_rational(j.at("payload").get<std::string>()));
        if (k == "root") {
            const auto& p = j.at("payload");
            unsigned m = p.at("m").get<unsigned>();
            if (m == 0) throw ParseError("root index must be positive");
            return root(Root::of(parse_rational(p.at("base").get<std::string>()), m));
        }
        if (k == "log_ratio") {
            const auto& p = j.at("payload");
            LogLinear den = LogLinear::from_json(p.at("den"));
            if (den.is_zero()) throw ParseError("log ratio with zero denominator");
            return log_ratio(LogLinear::from_json(p.at("num")), den);
        }
        if (k == "infinity") return infinity();
        throw ParseError("unknown exact real kind '" + k + "'");
    }

private:
    Kind kind_ = Kind::rational;
    Rational q_ = 0;
    Root root_;
    LogLinear num_, den_;
};

namespace detail {

using LogQuadratic = std::map<std::pair<Integer, Integer>, Rational>;

inline LogQuadratic multiply(const LogLinear& a, const LogLinear& b)
{
    LogQuadratic out;
    for (const auto& [x, c] : a.terms)
        for (const auto& [y, d] : b.terms) {
            auto key = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
            auto& slot = out[key];
            slot += c * d;
            if (sgn(slot) == 0) out.erase(key);
        }
    return out;
}

} // namespace detail

// Exact equality where it can be decided formally; nullopt when it cannot.
inline std::optional<bool> formally_equal(const Real& a, const Real& b)
{
    using K = Real::Kind;
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    auto as_root = [](const Real& x) { return x.is_rational() ? Root{x.rational(), 1} : x.root_value(); };
    if (a.kind() != K::log_ratio && b.kind() != K::log_ratio) return as_root(a) == as_root(b);
    // A log ratio that is not rational is transcendental, so it never equals an irrational root.
    if (a.kind() == K::root || b.kind() == K::root) return false;
    auto la = a.as_log_ratio(), lb = b.as_log_ratio();
    if (detail::multiply(la->first, lb->second) == detail::multiply(lb->first, la->second)) return true;
    if (a.is_rational() || b.is_rational()) return false; // a non-rational log ratio is irrational
    return std::nullopt;
}

// Sign of a - b: exact when decidable, otherwise from 50-digit evaluation, nullopt if too close to call.
inline std::optional<int> compare(const Real& a, const Real& b)
{
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite() ? 0 : (a.is_infinite() ? 1 : -1);
    auto eq = formally_equal(a, b);
    if (eq && *eq) return 0;
    if (a.kind() != Real::Kind::log_ratio && b.kind() != Real::Kind::log_ratio) {
        auto r = [](const Real& x) { return x.is_rational() ? Root{x.rational(), 1} : x.root_value(); };
        return irkit::compare(r(a), r(b));
    }
    BigFloat d = a.value() - b.value();
    BigFloat scale = std::max<BigFloat>(1, abs(a.value()));
    if (abs(d) > scale * BigFloat("1e-40")) return d > 0 ? 1 : -1;
    return std::nullopt;
}

// Symbolic arithmetic; nullopt when the result leaves the representable class.
inline std::optional<Real> add(const Real& a, const Real& b)
{
    if (a.is_infinite() || b.is_infinite()) return Real::infinity();
    if (a.is_rational() && b.is_rational()) return Real(a.rational() + b.rational());
    if (a.kind() != Real::Kind::log_ratio && b.kind() != Real::Kind::log_ratio) {
        // Like radicals: a = r b with r rational gives (1 + r) b.
        auto as_root = [](const Real& x) { return x.is_rational() ? Root{x.rational(), 1} : x.root_value(); };
        Root ra = as_root(a), rb = as_root(b);
        if (sgn(rb.base) == 0) return a;
        unsigned m = std::lcm(ra.m, rb.m);
        Root r = Root::of(rpow(ra.base, m / ra.m) / rpow(rb.base, m / rb.m), m);
        if (r.is_rational()) return Real::root((1 + r.base) * rb);
        return std::nullopt;
    }
    auto la = a.as_log_ratio(), lb = b.as_log_ratio();
    if (!la || !lb) return std::nullopt;
    if (la->second == lb->second) return Real::log_ratio(la->first + lb->first, la->second);
    if (a.is_rational()) return Real::log_ratio(lb->second * a.rational() + lb->first, lb->second);
    if (b.is_rational()) return Real::log_ratio(la->second * b.rational() + la->first, la->second);
    return std::nullopt;
}

inline std::optional<Real> multiply(const Real& a, const Real& b)
{
    if (a.is_infinite() || b.is_infinite()) {
        if ((a.is_rational() && sgn(a.rational()) == 0) || (b.is_rational() && sgn(b.rational()) == 0))
            return std::nullopt;
        return Real::infinity();
    }
    if (a.is_rational() && b.is_rational()) return Real(a.rational() * b.rational());
    if (a.kind() == Real::Kind::root && b.kind() == Real::Kind::root) return Real::root(a.root_value() * b.root_value());
    const Real* q = a.is_rational() ? &a : (b.is_rational() ? &b : nullptr);
    const Real* o = q == &a ? &b : &a;
    if (q && o->kind() == Real::Kind::log_ratio) return Real::log_ratio(o->num() * q->rational(), o->den());
    if (q && o->kind() == Real::Kind::root) return sgn(q->rational()) == 0 ? Real(0) : Real::root(q->rational() * o->root_value());
    // (a/b)(c/d) with b = c or a = d collapses.
    if (a.kind() == Real::Kind::log_ratio && b.kind() == Real::Kind::log_ratio) {
        if (a.den() == b.num()) return Real::log_ratio(a.num(), b.den());
        if (a.num() == b.den()) return Real::log_ratio(b.num(), a.den());
    }
    return std::nullopt;
}

inline std::optional<Real> reciprocal(const Real& a)
{
    if (a.is_infinite()) return Real(0);
    if (a.is_rational()) {
        if (sgn(a.rational()) == 0) return Real::infinity();
        return Real(1 / a.rational());
    }
    if (a.kind() == Real::Kind::log_ratio) return Real::log_ratio(a.den(), a.num());
    return std::nullopt;
}

} // namespace irkit
