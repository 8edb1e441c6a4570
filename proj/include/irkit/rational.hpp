#pragma once

#include <gmpxx.h>

#include <cmath>
#include <numeric>
#include <string>

#include "irkit/errors.hpp"

namespace irkit {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long long num, long long den = 1)
{
    Rational r(Integer(std::to_string(num)), Integer(std::to_string(den)));
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s)
{
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError("bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

inline Integer ipow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational rpow(const Rational& b, unsigned long e)
{
    Rational r(ipow(b.get_num(), e), ipow(b.get_den(), e));
    r.canonicalize();
    return r;
}

inline long double to_long_double(const Rational& r)
{
    // Split to keep precision for large numerators and denominators.
    long num_exp = 0, den_exp = 0;
    double nm = mpz_get_d_2exp(&num_exp, r.get_num_mpz_t());
    double dm = mpz_get_d_2exp(&den_exp, r.get_den_mpz_t());
    return std::ldexp(static_cast<long double>(nm) / dm, static_cast<int>(num_exp - den_exp));
}

// log2 of a positive rational.
inline long double log2_of(const Rational& r)
{
    if (sgn(r) <= 0) throw std::domain_error("log of a non-positive rational");
    long ne = 0, de = 0;
    double nm = mpz_get_d_2exp(&ne, r.get_num_mpz_t());
    double dm = mpz_get_d_2exp(&de, r.get_den_mpz_t());
    return std::log2(static_cast<long double>(nm)) - std::log2(static_cast<long double>(dm)) + (ne - de);
}

// Exact m-th root base^(1/m) of a positive rational, the form Θ lower bounds take.
struct Root {
    Rational base = 1;
    unsigned m = 1;

    static Root of(const Rational& b, unsigned m = 1)
    {
        if (m == 0) throw InvalidArgument("root index must be positive");
        Root r{b, m};
        r.simplify();
        return r;
    }

    void simplify()
    {
        base.canonicalize();
        for (unsigned d = m; d >= 2; --d) {
            if (m % d) continue;
            Integer rn, rd;
            if (mpz_root(rn.get_mpz_t(), base.get_num_mpz_t(), d) && mpz_root(rd.get_mpz_t(), base.get_den_mpz_t(), d)) {
                base = Rational(rn, rd);
                m /= d;
                d = m + 1;
            }
        }
    }

    long double value() const { return std::pow(to_long_double(base), 1.0L / m); }
    long double log2() const { return log2_of(base) / m; }
    bool is_rational() const { return m == 1; }
    std::string str() const { return m == 1 ? base.get_str() : "(" + base.get_str() + ")^(1/" + std::to_string(m) + ")"; }
};

// Compares a^(1/p) with b^(1/q) exactly.
inline int compare(const Root& a, const Root& b)
{
    Rational l = rpow(a.base, b.m), r = rpow(b.base, a.m);
    return l < r ? -1 : (l > r ? 1 : 0);
}

inline int compare(const Root& a, const Rational& b) { return compare(a, Root{b, 1}); }

inline Root operator*(const Root& a, const Root& b)
{
    unsigned m = std::lcm(a.m, b.m);
    return Root::of(rpow(a.base, m / a.m) * rpow(b.base, m / b.m), m);
}

inline Root root_pow(const Root& a, unsigned k) { return Root::of(rpow(a.base, k), a.m); }

inline Root operator*(const Rational& s, const Root& a) { return Root::of(rpow(s, a.m) * a.base, a.m); }

inline bool operator==(const Root& a, const Root& b) { return compare(a, b) == 0; }

} // namespace irkit
