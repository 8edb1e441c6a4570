#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "irkit/graph.hpp"

namespace irkit {

struct SetWitness {
    std::size_t value = 0;
    std::vector<int> vertices;
    bool optimal = true;
};

struct Coloring {
    std::size_t colors = 0;
    std::vector<int> color; // color[v] in 0..colors-1
};

inline bool is_proper_coloring(const Graph& g, const Coloring& c)
{
    if (c.color.size() != g.n()) return false;
    for (int x : c.color)
        if (x < 0 || static_cast<std::size_t>(x) >= c.colors) return false;
    for (auto [u, v] : g.edges())
        if (c.color[u] == c.color[v]) return false;
    return true;
}

// Colour classes that are cliques of g.
inline bool is_clique_partition(const Graph& g, const Coloring& c)
{
    if (c.color.size() != g.n()) return false;
    for (std::size_t u = 0; u < g.n(); ++u) {
        if (c.color[u] < 0 || static_cast<std::size_t>(c.color[u]) >= c.colors) return false;
        for (std::size_t v = u + 1; v < g.n(); ++v)
            if (c.color[u] == c.color[v] && !g.adjacent(u, v)) return false;
    }
    return true;
}

inline std::vector<int> greedy_clique(const Graph& g)
{
    std::vector<int> best;
    for (std::size_t s = 0; s < g.n(); ++s) {
        std::vector<int> c{static_cast<int>(s)};
        Bitset cand = g.neighbors(s);
        while (cand.any()) {
            std::size_t pick = Bitset::npos, deg = 0;
            cand.for_each([&](std::size_t v) {
                std::size_t d = g.neighbors(v).count_and(cand);
                if (pick == Bitset::npos || d > deg) pick = v, deg = d;
            });
            c.push_back(static_cast<int>(pick));
            cand &= g.neighbors(pick);
        }
        if (c.size() > best.size()) best = std::move(c);
        if (g.n() > 200 && s >= 32) break;
    }
    if (best.empty() && g.n()) best.push_back(0);
    return best;
}

// DSATUR greedy coloring.
inline Coloring greedy_coloring(const Graph& g)
{
    const std::size_t n = g.n();
    Coloring c;
    c.color.assign(n, -1);
    std::vector<Bitset> seen(n, Bitset(n + 1));
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = 0, best_sat = 0, best_deg = 0;
        bool have = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (c.color[v] >= 0) continue;
            std::size_t sat = seen[v].count(), deg = g.degree(v);
            if (!have || sat > best_sat || (sat == best_sat && deg > best_deg)) {
                pick = v, best_sat = sat, best_deg = deg, have = true;
            }
        }
        int col = 0;
        while (seen[pick].test(col)) ++col;
        c.color[pick] = col;
        c.colors = std::max<std::size_t>(c.colors, col + 1);
        g.neighbors(pick).for_each([&](std::size_t w) { seen[w].set(col); });
    }
    return c;
}

namespace detail {

// Bitset branch and bound for maximum clique with greedy colouring bounds.
class CliqueSearch {
public:
    CliqueSearch(const Graph& g, Meter* meter) : meter_(meter)
    {
        const std::size_t n = g.n();
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
        std::vector<int> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[order_[i]] = static_cast<int>(i);
        adj_.assign(n, Bitset(n));
        for (auto [u, v] : g.edges()) {
            adj_[pos[u]].set(pos[v]);
            adj_[pos[v]].set(pos[u]);
        }
        n_ = n;
    }

    std::vector<int> run(std::vector<int> initial)
    {
        std::vector<int> pos(n_);
        for (std::size_t i = 0; i < n_; ++i) pos[order_[i]] = static_cast<int>(i);
        for (int v : initial) best_.push_back(pos[v]);
        Bitset p(n_);
        p.set_all();
        std::vector<int> cur;
        expand(cur, p);
        std::vector<int> out;
        for (int v : best_) out.push_back(order_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void expand(std::vector<int>& cur, Bitset p)
    {
        if (meter_ && !meter_->tick()) throw BudgetExceeded("clique search exceeded its node budget");
        std::vector<int> verts, bounds;
        verts.reserve(p.count());
        Bitset uncol = p;
        int k = 0;
        while (uncol.any()) {
            ++k;
            Bitset q = uncol;
            while (q.any()) {
                std::size_t v = q.first();
                q.reset(v);
                q -= adj_[v];
                uncol.reset(v);
                verts.push_back(static_cast<int>(v));
                bounds.push_back(k);
            }
        }
        for (int i = static_cast<int>(verts.size()) - 1; i >= 0; --i) {
            if (cur.size() + bounds[i] <= best_.size()) return;
            int v = verts[i];
            cur.push_back(v);
            Bitset np = p & adj_[v];
            if (np.none()) {
                if (cur.size() > best_.size()) best_ = cur;
            } else {
                expand(cur, np);
            }
            cur.pop_back();
            p.reset(v);
        }
    }

    std::size_t n_ = 0;
    std::vector<int> order_;
    std::vector<Bitset> adj_;
    std::vector<int> best_;
    Meter* meter_;
};

} // namespace detail

inline SetWitness clique_number(const Graph& g, const Budget& budget = Budget::unlimited())
{
    if (g.n() == 0) return {};
    Meter m(budget);
    auto c = detail::CliqueSearch(g, &m).run(greedy_clique(g));
    return {c.size(), c};
}

inline SetWitness independence_number(const Graph& g, const Budget& budget = Budget::unlimited())
{
    return clique_number(complement(g), budget);
}

// Largest independent set found within budget; falls back to a greedy set when the search runs out.
inline SetWitness independent_set_within(const Graph& g, const Budget& budget)
{
    try {
        return independence_number(g, budget);
    } catch (const BudgetExceeded&) {
        auto c = greedy_clique(complement(g));
        std::sort(c.begin(), c.end());
        return {c.size(), c, false};
    }
}

namespace detail {

class ColoringSearch {
public:
    ColoringSearch(const Graph& g, Meter* meter) : g_(g), n_(g.n()), meter_(meter) {}

    Coloring run()
    {
        best_ = greedy_coloring(g_);
        auto clique = clique_number(g_).vertices;
        lower_ = clique.size();
        if (best_.colors <= lower_) return best_;
        color_.assign(n_, -1);
        counts_.assign(n_, std::vector<int>(best_.colors + 1, 0));
        sat_.assign(n_, 0);
        for (std::size_t i = 0; i < clique.size(); ++i) assign(clique[i], static_cast<int>(i));
        dfs(clique.size(), static_cast<int>(clique.size()));
        return best_;
    }

private:
    void assign(int v, int c)
    {
        color_[v] = c;
        g_.neighbors(v).for_each([&](std::size_t w) {
            if (counts_[w][c]++ == 0) ++sat_[w];
        });
    }
    void unassign(int v)
    {
        int c = color_[v];
        color_[v] = -1;
        g_.neighbors(v).for_each([&](std::size_t w) {
            if (--counts_[w][c] == 0) --sat_[w];
        });
    }

    void dfs(std::size_t done, int used)
    {
        if (meter_ && !meter_->tick()) throw BudgetExceeded("coloring search exceeded its node budget");
        if (done == n_) {
            best_.colors = used;
            best_.color = color_;
            return;
        }
        int pick = -1, bs = -1, bd = -1;
        for (std::size_t v = 0; v < n_; ++v) {
            if (color_[v] >= 0) continue;
            int d = static_cast<int>(g_.degree(v));
            if (sat_[v] > bs || (sat_[v] == bs && d > bd)) pick = static_cast<int>(v), bs = sat_[v], bd = d;
        }
        for (int c = 0; c < used; ++c) {
            if (counts_[pick][c]) continue;
            assign(pick, c);
            dfs(done + 1, used);
            unassign(pick);
            if (best_.colors <= lower_) return;
        }
        if (static_cast<std::size_t>(used + 1) < best_.colors) {
            assign(pick, used);
            dfs(done + 1, used + 1);
            unassign(pick);
        }
    }

    const Graph& g_;
    std::size_t n_;
    Meter* meter_;
    Coloring best_;
    std::size_t lower_ = 0;
    std::vector<int> color_;
    std::vector<std::vector<int>> counts_;
    std::vector<int> sat_;
};

} // namespace detail

inline Coloring chromatic_number(const Graph& g, const Budget& budget = Budget::unlimited())
{
    if (g.n() == 0) return {};
    Meter m(budget);
    return detail::ColoringSearch(g, &m).run();
}

// Partition of V(g) into the fewest cliques.
inline Coloring clique_cover(const Graph& g, const Budget& budget = Budget::unlimited())
{
    return chromatic_number(complement(g), budget);
}

inline std::size_t clique_cover_number(const Graph& g) { return clique_cover(g).colors; }

// Length of the shortest odd cycle, or nullopt for bipartite graphs.
inline std::optional<std::size_t> odd_girth(const Graph& g)
{
    std::optional<std::size_t> best;
    std::vector<int> dist(g.n());
    for (std::size_t s = 0; s < g.n(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(static_cast<int>(s));
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (best && static_cast<std::size_t>(2 * dist[u] + 1) >= *best) break;
            bool stop = false;
            g.neighbors(u).for_each([&](std::size_t w) {
                if (stop) return;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(static_cast<int>(w));
                } else if (dist[w] == dist[u]) {
                    std::size_t len = 2 * dist[u] + 1;
                    if (!best || len < *best) best = len;
                    stop = true;
                }
            });
        }
    }
    return best;
}

inline std::optional<std::vector<int>> bipartition(const Graph& g)
{
    std::vector<int> side(g.n(), -1);
    for (std::size_t s = 0; s < g.n(); ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<int> st{static_cast<int>(s)};
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            bool bad = false;
            g.neighbors(u).for_each([&](std::size_t w) {
                if (side[w] < 0) {
                    side[w] = 1 - side[u];
                    st.push_back(static_cast<int>(w));
                } else if (side[w] == side[u]) {
                    bad = true;
                }
            });
            if (bad) return std::nullopt;
        }
    }
    return side;
}

} // namespace irkit
