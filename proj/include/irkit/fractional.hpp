#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "irkit/graph.hpp"
#include "irkit/lp.hpp"

namespace irkit {

// Optimal fractional colouring of a graph: weights on independent sets covering
// every vertex, and dual vertex weights with every independent set weighing at most 1.
struct FractionalValue {
    Rational value;
    std::vector<std::vector<int>> sets;
    std::vector<Rational> weights;
    std::vector<Rational> dual;
    std::string method; // "enumeration" or "column-generation"
};

struct FractionalOptions {
    std::size_t max_sets = 1'000'000;
    std::size_t max_vertices = 400;
};

namespace detail {

// Bron-Kerbosch with pivoting over maximal cliques of the complement.
inline bool enumerate_mis(const std::vector<Bitset>& co, Bitset r, Bitset p, Bitset x, std::vector<Bitset>& out,
                          std::size_t cap)
{
    if (p.none() && x.none()) {
        if (out.size() >= cap) return false;
        out.push_back(r);
        return true;
    }
    Bitset px = p | x;
    std::size_t pivot = px.first(), best = 0;
    px.for_each([&](std::size_t u) {
        std::size_t c = p.count_and(co[u]);
        if (c > best) best = c, pivot = u;
    });
    Bitset cand = p - co[pivot];
    for (std::size_t v = cand.first(); v != Bitset::npos; v = cand.next(v)) {
        Bitset r2 = r;
        r2.set(v);
        if (!enumerate_mis(co, r2, p & co[v], x & co[v], out, cap)) return false;
        p.reset(v);
        x.set(v);
    }
    return true;
}

inline std::vector<Bitset> complement_rows(const Graph& g)
{
    std::vector<Bitset> co(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) {
        co[v] = ~g.neighbors(v);
        co[v].reset(v);
    }
    return co;
}

class WeightedIS {
public:
    WeightedIS(const Graph& g, std::vector<Integer> w) : g_(g), w_(std::move(w)) {}

    std::pair<Integer, std::vector<int>> run()
    {
        Bitset p(g_.n());
        for (std::size_t v = 0; v < g_.n(); ++v)
            if (sgn(w_[v]) > 0) p.set(v);
        std::vector<int> cur;
        rec(p, 0, cur);
        return {best_, best_set_};
    }

private:
    // Greedy partition of p into cliques; an independent set meets each clique once.
    Integer bound(Bitset p) const
    {
        Integer b = 0;
        while (p.any()) {
            std::size_t top = p.first();
            p.for_each([&](std::size_t v) {
                if (w_[v] > w_[top]) top = v;
            });
            b += w_[top];
            Bitset c = p & g_.neighbors(top);
            p.reset(top);
            while (c.any()) {
                std::size_t v = c.first();
                c.for_each([&](std::size_t u) {
                    if (w_[u] > w_[v]) v = u;
                });
                p.reset(v);
                c &= g_.neighbors(v);
            }
        }
        return b;
    }

    void rec(Bitset p, const Integer& cur_w, std::vector<int>& cur)
    {
        if (p.none()) {
            if (cur_w > best_) best_ = cur_w, best_set_ = cur;
            return;
        }
        if (cur_w + bound(p) <= best_) return;
        std::size_t v = p.first();
        p.for_each([&](std::size_t u) {
            if (w_[u] > w_[v]) v = u;
        });
        Bitset inc = p - g_.neighbors(v);
        inc.reset(v);
        cur.push_back(static_cast<int>(v));
        rec(inc, cur_w + w_[v], cur);
        cur.pop_back();
        p.reset(v);
        rec(p, cur_w, cur);
    }

    const Graph& g_;
    std::vector<Integer> w_;
    Integer best_ = 0;
    std::vector<int> best_set_;
};

inline std::vector<int> extend_to_maximal(const Graph& g, std::vector<int> s)
{
    Bitset blocked(g.n());
    for (int v : s) {
        blocked.set(v);
        blocked |= g.neighbors(v);
    }
    for (std::size_t v = 0; v < g.n(); ++v)
        if (!blocked.test(v)) {
            s.push_back(static_cast<int>(v));
            blocked.set(v);
            blocked |= g.neighbors(v);
        }
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace detail

// Exact maximum-weight independent set for non-negative rational weights.
inline std::pair<Rational, std::vector<int>> max_weight_independent_set(const Graph& g, const std::vector<Rational>& w)
{
    Integer den = 1;
    for (const auto& x : w) {
        if (sgn(x) < 0) throw InvalidArgument("weights must be non-negative");
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<Integer> iw;
    for (const auto& x : w) iw.push_back(x.get_num() * (den / x.get_den()));
    auto [best, set] = detail::WeightedIS(g, std::move(iw)).run();
    Rational r(best, den);
    r.canonicalize();
    std::sort(set.begin(), set.end());
    return {r, set};
}

inline std::optional<std::vector<std::vector<int>>> maximal_independent_sets(const Graph& g, std::size_t cap)
{
    std::vector<Bitset> out;
    Bitset r(g.n()), p(g.n()), x(g.n());
    p.set_all();
    if (!detail::enumerate_mis(detail::complement_rows(g), r, p, x, out, cap)) return std::nullopt;
    std::vector<std::vector<int>> sets;
    for (const auto& b : out) sets.push_back(b.to_vector());
    std::sort(sets.begin(), sets.end());
    return sets;
}

namespace detail {

inline FractionalValue solve_cover_lp(const Graph& g, const std::vector<std::vector<int>>& sets, std::string method)
{
    LinearProgram lp;
    lp.maximize = false;
    lp.c.assign(sets.size(), 1);
    for (std::size_t v = 0; v < g.n(); ++v) {
        std::vector<Rational> row(sets.size(), 0);
        for (std::size_t j = 0; j < sets.size(); ++j)
            if (std::binary_search(sets[j].begin(), sets[j].end(), static_cast<int>(v))) row[j] = 1;
        lp.add_row(std::move(row), Sense::ge, 1);
    }
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) throw std::logic_error("cover LP is not optimal");
    FractionalValue fv;
    fv.value = sol.value;
    fv.dual = sol.y;
    fv.method = std::move(method);
    for (std::size_t j = 0; j < sets.size(); ++j)
        if (sgn(sol.x[j]) > 0) {
            fv.sets.push_back(sets[j]);
            fv.weights.push_back(sol.x[j]);
        }
    return fv;
}

} // namespace detail

inline FractionalValue fractional_chromatic(const Graph& g, const FractionalOptions& opts = {})
{
    if (g.n() == 0) throw InvalidArgument("fractional chromatic number of the empty graph");
    if (g.n() > opts.max_vertices) throw SizeLimitError("fractional chromatic number: graph too large");
    if (auto sets = maximal_independent_sets(g, opts.max_sets))
        return detail::solve_cover_lp(g, *sets, "enumeration");

    // Column generation seeded with one maximal independent set through each vertex.
    std::vector<std::vector<int>> cols;
    for (std::size_t v = 0; v < g.n(); ++v) cols.push_back(detail::extend_to_maximal(g, {static_cast<int>(v)}));
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    while (true) {
        auto fv = detail::solve_cover_lp(g, cols, "column-generation");
        auto [w, set] = max_weight_independent_set(g, fv.dual);
        if (w <= 1) return fv;
        auto s = detail::extend_to_maximal(g, set);
        if (std::find(cols.begin(), cols.end(), s) != cols.end())
            throw std::logic_error("column generation repeated a column");
        cols.push_back(std::move(s));
    }
}

// Fractional clique cover number; its sets are cliques of g.
inline FractionalValue chi_bar_f(const Graph& g, const FractionalOptions& opts = {})
{
    return fractional_chromatic(complement(g), opts);
}

// Checks a fractional colouring certificate of g from scratch.
inline bool verify_fractional(const Graph& g, const FractionalValue& fv, std::string* why = nullptr)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (fv.sets.size() != fv.weights.size()) return fail("sets and weights differ in length");
    std::vector<Rational> cover(g.n(), 0);
    Rational total = 0;
    for (std::size_t j = 0; j < fv.sets.size(); ++j) {
        if (sgn(fv.weights[j]) < 0) return fail("negative set weight");
        if (!is_independent(g, fv.sets[j])) return fail("set is not independent");
        for (int v : fv.sets[j]) cover[v] += fv.weights[j];
        total += fv.weights[j];
    }
    for (const auto& c : cover)
        if (c < 1) return fail("vertex not covered");
    if (total != fv.value) return fail("primal weight differs from value");
    if (fv.dual.size() != g.n()) return fail("dual has the wrong length");
    Rational dual_total = 0;
    for (const auto& y : fv.dual) {
        if (sgn(y) < 0) return fail("negative dual weight");
        dual_total += y;
    }
    if (dual_total != fv.value) return fail("dual weight differs from value");
    if (max_weight_independent_set(g, fv.dual).first > 1) return fail("dual violated by an independent set");
    return true;
}

} // namespace irkit
