#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "irkit/canonical.hpp"
#include "irkit/rational.hpp"
#include "irkit/theta.hpp"

namespace irkit {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Exact positive semidefiniteness by symmetric elimination. A zero pivot
// forces its whole remaining row to vanish.
inline bool rational_psd(RationalMatrix m)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m[i][j] != m[j][i]) return false;
    for (std::size_t k = 0; k < n; ++k) {
        int s = sgn(m[k][k]);
        if (s < 0) return false;
        if (s == 0) {
            for (std::size_t j = k + 1; j < n; ++j)
                if (sgn(m[k][j]) != 0) return false;
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(m[i][k]) == 0) continue;
            Rational f = m[i][k] / m[k][k];
            for (std::size_t j = k + 1; j < n; ++j)
                if (sgn(m[k][j]) != 0) m[i][j] -= f * m[k][j];
        }
    }
    return true;
}

// Continued-fraction approximation p/q of x with q <= max_den and |x - p/q| <= tol.
inline std::optional<Rational> rationalize(double x, double tol, long max_den)
{
    if (!std::isfinite(x)) return std::nullopt;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e12) return std::nullopt;
        long ai = static_cast<long>(a);
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) return std::nullopt;
        if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <= tol) return make_rational(p2, q2);
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        double frac = r - a;
        if (frac == 0) return std::nullopt;
        r = 1 / frac;
    }
    return std::nullopt;
}

// Exact witnesses pinning ϑ(g) to a rational t from one or both sides.
struct ExactTheta {
    Rational value;
    std::optional<std::vector<Rational>> dual; // per edge of g: tI + sum y_e(E_ij+E_ji) - J psd, so ϑ <= t
    std::optional<RationalMatrix> primal;      // psd, trace 1, zero on edges, entry sum t, so ϑ >= t
};

inline bool verify_exact_theta_dual(const Graph& g, const Rational& t, const std::vector<Rational>& y)
{
    auto edges = g.edges();
    if (y.size() != edges.size()) return false;
    const std::size_t n = g.n();
    RationalMatrix z(n, std::vector<Rational>(n, -1));
    for (std::size_t i = 0; i < n; ++i) z[i][i] = t - 1;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        z[edges[e].first][edges[e].second] += y[e];
        z[edges[e].second][edges[e].first] += y[e];
    }
    return rational_psd(std::move(z));
}

inline bool verify_exact_theta_primal(const Graph& g, const Rational& t, const RationalMatrix& b)
{
    const std::size_t n = g.n();
    if (b.size() != n) return false;
    Rational trace = 0, sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (b[i].size() != n) return false;
        trace += b[i][i];
        for (std::size_t j = 0; j < n; ++j) {
            sum += b[i][j];
            if (i != j && g.adjacent(i, j) && sgn(b[i][j]) != 0) return false;
        }
    }
    return trace == 1 && sum == t && rational_psd(b);
}

namespace detail {

inline int uf_find(std::vector<int>& p, int x)
{
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

// Per-edge values replaced by their average over the edge orbit of the automorphism group.
inline std::vector<double> edge_orbit_average(const Graph& g, const std::vector<std::vector<int>>& gens,
                                              const std::vector<double>& v)
{
    const auto edges = g.edges();
    const std::size_t n = g.n();
    std::vector<std::vector<int>> eid(n, std::vector<int>(n, -1));
    for (std::size_t e = 0; e < edges.size(); ++e)
        eid[edges[e].first][edges[e].second] = eid[edges[e].second][edges[e].first] = static_cast<int>(e);
    std::vector<int> par(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) par[e] = static_cast<int>(e);
    for (const auto& p : gens)
        for (std::size_t e = 0; e < edges.size(); ++e) {
            int f = eid[p[edges[e].first]][p[edges[e].second]];
            par[uf_find(par, static_cast<int>(e))] = uf_find(par, f);
        }
    std::vector<double> total(edges.size(), 0.0);
    std::vector<int> count(edges.size(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        int r = uf_find(par, static_cast<int>(e));
        total[r] += v[e];
        ++count[r];
    }
    std::vector<double> out(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        int r = uf_find(par, static_cast<int>(e));
        out[e] = total[r] / count[r];
    }
    return out;
}

} // namespace detail

struct ExactThetaOptions {
    std::size_t max_vertices = 64;
};

// Symmetrizes the numerical witnesses over the automorphism group and rounds them to
// nearby rationals; keeps whichever side then verifies exactly at value t.
inline ExactTheta exact_theta(const Graph& g, const ThetaValue& tv, const Rational& t, const ExactThetaOptions& opts = {})
{
    ExactTheta out;
    out.value = t;
    const std::size_t n = g.n();
    if (n == 0 || n > opts.max_vertices) return out;
    const auto gens = canonical_form(g).generators;
    const auto edges = g.edges();

    // Dual side: one multiplier per edge orbit.
    if (tv.edge_multipliers.size() == edges.size()) {
        auto avg = detail::edge_orbit_average(g, gens, tv.edge_multipliers);
        for (long den : {12L, 120L, 2520L, 100000L}) {
            std::vector<Rational> y(edges.size());
            bool ok = true;
            for (std::size_t e = 0; e < edges.size() && ok; ++e) {
                auto q = rationalize(avg[e], 1e-4 * std::max(1.0, std::abs(avg[e])), den);
                if (!q) ok = false;
                else y[e] = *q;
            }
            if (ok && verify_exact_theta_dual(g, t, y)) {
                out.dual = std::move(y);
                break;
            }
        }
    }

    // Primal side: one entry per orbit of vertex pairs.
    if (tv.primal.rows() == static_cast<Eigen::Index>(n)) {
        std::vector<int> par(n * n);
        for (std::size_t k = 0; k < n * n; ++k) par[k] = static_cast<int>(k);
        auto idx = [&](std::size_t i, std::size_t j) { return static_cast<int>(std::min(i, j) * n + std::max(i, j)); };
        for (const auto& p : gens)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    par[detail::uf_find(par, idx(i, j))] = detail::uf_find(par, idx(p[i], p[j]));
        std::vector<double> total(n * n, 0.0);
        std::vector<int> count(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                int r = detail::uf_find(par, idx(i, j));
                total[r] += tv.primal(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                ++count[r];
            }
        for (long den : {12L, 120L, 2520L, 100000L}) {
            // Entries are O(1/n); rescale by n before rounding.
            RationalMatrix b(n, std::vector<Rational>(n, 0));
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                for (std::size_t j = i; j < n && ok; ++j) {
                    if (i != j && g.adjacent(i, j)) continue;
                    int r = detail::uf_find(par, idx(i, j));
                    double v = total[r] / count[r] * static_cast<double>(n);
                    auto q = rationalize(v, 1e-4 * std::max(1.0, std::abs(v)), den);
                    if (!q) ok = false;
                    else b[i][j] = b[j][i] = *q;
                }
            if (!ok) continue;
            Rational tr = 0;
            for (std::size_t i = 0; i < n; ++i) tr += b[i][i];
            if (sgn(tr) <= 0) continue;
            for (auto& row : b)
                for (auto& x : row) x /= tr;
            if (verify_exact_theta_primal(g, t, b)) {
                out.primal = std::move(b);
                break;
            }
        }
    }
    return out;
}

// Elements a + b√d of a real quadratic field; d is a positive non-square rational.
struct QuadNumber {
    Rational a = 0, b = 0;
};

namespace detail {

struct QuadField {
    Rational d;

    QuadNumber add(const QuadNumber& x, const QuadNumber& y) const { return {x.a + y.a, x.b + y.b}; }
    QuadNumber sub(const QuadNumber& x, const QuadNumber& y) const { return {x.a - y.a, x.b - y.b}; }
    QuadNumber mul(const QuadNumber& x, const QuadNumber& y) const
    {
        return {x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    QuadNumber div(const QuadNumber& x, const QuadNumber& y) const
    {
        Rational nrm = y.a * y.a - d * y.b * y.b; // nonzero for y != 0 since d is not a square
        QuadNumber conj{y.a / nrm, -y.b / nrm};
        return mul(x, conj);
    }
    int sign(const QuadNumber& x) const
    {
        int sa = sgn(x.a), sb = sgn(x.b);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // Opposite signs: compare a^2 with d b^2.
        int c = cmp(x.a * x.a, d * x.b * x.b);
        return c > 0 ? sa : (c < 0 ? sb : 0);
    }
};

} // namespace detail

inline bool quadratic_psd(const Rational& d, std::vector<std::vector<QuadNumber>> m)
{
    detail::QuadField f{d};
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m[i][j].a != m[j][i].a || m[i][j].b != m[j][i].b) return false;
    for (std::size_t k = 0; k < n; ++k) {
        int s = f.sign(m[k][k]);
        if (s < 0) return false;
        if (s == 0) {
            for (std::size_t j = k + 1; j < n; ++j)
                if (f.sign(m[k][j]) != 0) return false;
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (f.sign(m[i][k]) == 0) continue;
            QuadNumber r = f.div(m[i][k], m[k][k]);
            for (std::size_t j = k + 1; j < n; ++j)
                if (f.sign(m[k][j]) != 0) m[i][j] = f.sub(m[i][j], f.mul(r, m[k][j]));
        }
    }
    return true;
}

inline bool is_rational_square(const Rational& d)
{
    if (sgn(d) <= 0) return true;
    return mpz_perfect_square_p(d.get_num_mpz_t()) && mpz_perfect_square_p(d.get_den_mpz_t());
}

// ϑ(g) <= √d witnessed by edge multipliers in Q(√d): √d I + sum y_e(E_ij+E_ji) - J psd.
inline bool verify_quadratic_theta_dual(const Graph& g, const Rational& d, const std::vector<QuadNumber>& y)
{
    if (is_rational_square(d)) return false;
    auto edges = g.edges();
    if (y.size() != edges.size()) return false;
    const std::size_t n = g.n();
    std::vector<std::vector<QuadNumber>> z(n, std::vector<QuadNumber>(n, QuadNumber{-1, 0}));
    for (std::size_t i = 0; i < n; ++i) z[i][i] = QuadNumber{-1, 1};
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        z[u][v].a += y[e].a;
        z[u][v].b += y[e].b;
        z[v][u] = z[u][v];
    }
    return quadratic_psd(d, std::move(z));
}

// Rounds orbit-averaged multipliers to simple elements (p + r√d)/q and keeps the
// first combination that verifies. Aimed at vertex- and edge-transitive graphs, where
// ϑ is typically a quadratic irrational and the dual has few orbits.
inline std::optional<std::vector<QuadNumber>> quadratic_theta_dual(const Graph& g, const ThetaValue& tv,
                                                                   const Rational& d,
                                                                   const ExactThetaOptions& opts = {})
{
    if (is_rational_square(d) || g.n() == 0 || g.n() > opts.max_vertices) return std::nullopt;
    const auto edges = g.edges();
    if (tv.edge_multipliers.size() != edges.size()) return std::nullopt;
    const double sd = std::sqrt(to_long_double(d));
    if (std::abs(sd - tv.value) > 1e-4 * std::max(1.0, sd)) return std::nullopt;
    auto avg = detail::edge_orbit_average(g, canonical_form(g).generators, tv.edge_multipliers);

    // Candidates per distinct orbit value, simplest first.
    std::vector<double> values;
    std::vector<std::size_t> slot(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        std::size_t k = 0;
        while (k < values.size() && std::abs(values[k] - avg[e]) > 1e-9) ++k;
        if (k == values.size()) values.push_back(avg[e]);
        slot[e] = k;
    }
    if (values.size() > 4) return std::nullopt;
    std::vector<std::vector<QuadNumber>> cands(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = values[k], tol = 1e-5 * std::max(1.0, std::abs(v));
        for (long q = 1; q <= 12 && cands[k].size() < 6; ++q)
            for (long r = 0; r <= 24 * q && cands[k].size() < 6; ++r)
                for (long sr : {r, -r}) {
                    if (r == 0 && sr != r) continue;
                    double p = v * q - sr * sd;
                    double pr = std::round(p);
                    if (std::abs(p - pr) > tol * q) continue;
                    QuadNumber c{make_rational(static_cast<long long>(pr), q), make_rational(sr, q)};
                    bool dup = false;
                    for (const auto& x : cands[k]) dup = dup || (x.a == c.a && x.b == c.b);
                    if (!dup) cands[k].push_back(c);
                }
        if (cands[k].empty()) return std::nullopt;
    }
    std::vector<std::size_t> pick(values.size(), 0);
    while (true) {
        std::vector<QuadNumber> y(edges.size());
        for (std::size_t e = 0; e < edges.size(); ++e) y[e] = cands[slot[e]][pick[slot[e]]];
        if (verify_quadratic_theta_dual(g, d, y)) return y;
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == cands[k].size()) pick[k++] = 0;
        if (k == pick.size()) return std::nullopt;
    }
}

} // namespace irkit
