#pragma once

// Brute-force reference implementations used only by the tests. They share nothing with the
// library beyond the Graph container, so agreement is meaningful.

#include <irkit/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using irkit::Graph;

inline Graph random_graph(std::mt19937& rng, std::size_t n, double p)
{
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

inline Graph random_sized(std::mt19937& rng, std::size_t lo, std::size_t hi)
{
    std::uniform_int_distribution<std::size_t> nd(lo, hi);
    std::uniform_real_distribution<double> pd(0.2, 0.8);
    std::size_t n = nd(rng);
    return random_graph(rng, n, pd(rng));
}

inline bool independent_mask(const Graph& g, std::uint32_t mask)
{
    for (std::size_t u = 0; u < g.n(); ++u)
        if (mask >> u & 1)
            for (std::size_t v = u + 1; v < g.n(); ++v)
                if ((mask >> v & 1) && g.adjacent(u, v)) return false;
    return true;
}

inline bool clique_mask(const Graph& g, std::uint32_t mask)
{
    for (std::size_t u = 0; u < g.n(); ++u)
        if (mask >> u & 1)
            for (std::size_t v = u + 1; v < g.n(); ++v)
                if ((mask >> v & 1) && !g.adjacent(u, v)) return false;
    return true;
}

// Maximum independent set size over all subsets (n <= 20).
inline std::size_t alpha(const Graph& g)
{
    std::size_t best = 0;
    for (std::uint32_t m = 0; m < (1u << g.n()); ++m)
        if (independent_mask(g, m)) best = std::max<std::size_t>(best, std::popcount(m));
    return best;
}

inline std::size_t omega(const Graph& g)
{
    std::size_t best = 0;
    for (std::uint32_t m = 0; m < (1u << g.n()); ++m)
        if (clique_mask(g, m)) best = std::max<std::size_t>(best, std::popcount(m));
    return best;
}

// Smallest number of colors in a proper coloring, by trying every assignment with c colors.
inline std::size_t chromatic(const Graph& g)
{
    const std::size_t n = g.n();
    if (n == 0) return 0;
    for (std::size_t c = 1; c <= n; ++c) {
        std::vector<std::size_t> col(n, 0);
        while (true) {
            bool ok = true;
            for (auto [u, v] : g.edges())
                if (col[u] == col[v]) ok = false;
            if (ok) return c;
            std::size_t i = 0;
            while (i < n && ++col[i] == c) col[i++] = 0;
            if (i == n) break;
        }
    }
    return n;
}

// Chronological backtracking over all maps V(g) -> V(h), checking each edge once both ends are set.
inline bool hom_exists(const Graph& g, const Graph& h, std::vector<int>* out = nullptr)
{
    const std::size_t n = g.n();
    std::vector<int> f(n, -1);
    std::function<bool(std::size_t)> go = [&](std::size_t v) {
        if (v == n) return true;
        for (std::size_t x = 0; x < h.n(); ++x) {
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u)
                if (g.adjacent(u, v) && !h.adjacent(static_cast<std::size_t>(f[u]), x)) ok = false;
            if (!ok) continue;
            f[v] = static_cast<int>(x);
            if (go(v + 1)) return true;
        }
        f[v] = -1;
        return false;
    };
    bool found = go(0);
    if (found && out) *out = f;
    return found;
}

inline Graph induced(const Graph& g, std::uint32_t mask)
{
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < g.n(); ++v)
        if (mask >> v & 1) vs.push_back(v);
    Graph s(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) s.add_edge(i, j);
    return s;
}

// Largest induced subgraph of g admitting a homomorphism into f.
inline std::size_t beta(const Graph& g, const Graph& f)
{
    std::size_t best = 0;
    for (std::uint32_t m = 0; m < (1u << g.n()); ++m) {
        std::size_t c = std::popcount(m);
        if (c > best && oracle::hom_exists(induced(g, m), f)) best = c;
    }
    return best;
}

// Size of the smallest induced subgraph that g maps onto (the core size).
inline std::size_t core_size(const Graph& g)
{
    std::size_t best = g.n();
    for (std::uint32_t m = 1; m < (1u << g.n()); ++m) {
        std::size_t c = std::popcount(m);
        if (c < best && oracle::hom_exists(g, induced(g, m))) best = c;
    }
    return best;
}

inline bool isomorphic(const Graph& a, const Graph& b)
{
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    std::vector<std::size_t> p(a.n());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (std::size_t u = 0; u < a.n() && ok; ++u)
            for (std::size_t v = u + 1; v < a.n() && ok; ++v)
                if (a.adjacent(u, v) != b.adjacent(p[u], p[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Coordinates of word x in base b, most significant first.
inline std::vector<std::size_t> word(std::size_t x, std::size_t b, int len)
{
    std::vector<std::size_t> d(len);
    for (int i = len - 1; i >= 0; --i) {
        d[i] = x % b;
        x /= b;
    }
    return d;
}

// Two words are distinguishable when some coordinate holds distinct non-adjacent letters.
inline bool distinguishable(const Graph& g, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] && !g.adjacent(a[i], b[i])) return true;
    return false;
}

inline std::size_t ipow(std::size_t b, int e)
{
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Exhaustive search over maps from source words of length k to channel words of length n that
// keep every distinguishable pair distinguishable. Source words are visited so that each one is
// constrained by as many earlier words as possible. Returns nullopt past node_limit.
inline std::optional<bool> code_exists(const Graph& g, int k, const Graph& h, int n,
                                       std::uint64_t node_limit = 20'000'000)
{
    const std::size_t ns = ipow(g.n(), k), nt = ipow(h.n(), n);
    std::vector<std::vector<std::size_t>> sw(ns), tw(nt);
    for (std::size_t x = 0; x < ns; ++x) sw[x] = word(x, g.n(), k);
    for (std::size_t y = 0; y < nt; ++y) tw[y] = word(y, h.n(), n);
    std::vector<std::vector<char>> need(ns, std::vector<char>(ns)), keep(nt, std::vector<char>(nt));
    for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = 0; y < ns; ++y) need[x][y] = distinguishable(g, sw[x], sw[y]);
    for (std::size_t x = 0; x < nt; ++x)
        for (std::size_t y = 0; y < nt; ++y) keep[x][y] = distinguishable(h, tw[x], tw[y]);
    std::vector<std::size_t> order;
    std::vector<char> used(ns, 0);
    for (std::size_t step = 0; step < ns; ++step) {
        std::size_t best = ns;
        int best_links = -1;
        for (std::size_t x = 0; x < ns; ++x) {
            if (used[x]) continue;
            int links = 0;
            for (std::size_t u : order) links += need[u][x];
            if (links > best_links) best = x, best_links = links;
        }
        used[best] = 1;
        order.push_back(best);
    }
    std::vector<std::size_t> f(ns);
    std::uint64_t nodes = 0;
    bool aborted = false;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == ns) return true;
        if (++nodes > node_limit) {
            aborted = true;
            return false;
        }
        const std::size_t v = order[i];
        for (std::size_t y = 0; y < nt && !aborted; ++y) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                if (need[order[j]][v] && !keep[f[order[j]]][y]) ok = false;
            if (!ok) continue;
            f[v] = y;
            if (go(i + 1)) return true;
        }
        return false;
    };
    bool r = go(0);
    if (aborted) return std::nullopt;
    return r;
}

// Rank over GF(2) by elimination on row masks.
inline std::size_t gf2_rank(std::vector<std::uint32_t> rows)
{
    std::size_t r = 0;
    for (int bit = 31; bit >= 0; --bit) {
        std::size_t piv = r;
        while (piv < rows.size() && !(rows[piv] >> bit & 1)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && (rows[i] >> bit & 1)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

// minrk over GF(2): diagonal ones, zeros on non-edges, free entries on edges (n <= 5).
inline std::size_t minrank_gf2(const Graph& g)
{
    const std::size_t n = g.n();
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && g.adjacent(i, j)) free.emplace_back(i, j);
    std::size_t best = n;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()); ++m) {
        std::vector<std::uint32_t> rows(n);
        for (std::size_t i = 0; i < n; ++i) rows[i] = 1u << i;
        for (std::size_t t = 0; t < free.size(); ++t)
            if (m >> t & 1) rows[free[t].first] |= 1u << free[t].second;
        best = std::min(best, gf2_rank(rows));
    }
    return best;
}

// All cliques of g as bit masks (n <= 16), including the empty set.
inline std::vector<std::uint32_t> cliques(const Graph& g)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << g.n()); ++m)
        if (clique_mask(g, m)) out.push_back(m);
    return out;
}

} // namespace oracle
