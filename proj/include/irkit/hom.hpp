#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "irkit/canonical.hpp"
#include "irkit/graph.hpp"
#include "irkit/independence.hpp"

namespace irkit {

enum class SearchStatus { found, none, inconclusive };

inline const char* to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

// Edge-preserving vertex map source -> target.
struct HomMap {
    Graph source;
    Graph target;
    std::vector<int> map;

    bool verify() const
    {
        if (map.size() != source.n()) return false;
        for (int x : map)
            if (x < 0 || static_cast<std::size_t>(x) >= target.n()) return false;
        for (auto [u, v] : source.edges())
            if (!target.adjacent(map[u], map[v])) return false;
        return true;
    }
};

inline HomMap compose(const HomMap& a, const HomMap& b)
{
    HomMap c{a.source, b.target, std::vector<int>(a.map.size())};
    for (std::size_t v = 0; v < a.map.size(); ++v) c.map[v] = b.map[a.map[v]];
    return c;
}

struct HomOptions {
    // Restricts the image of root_vertex to root_candidates (symmetry reduction).
    int root_vertex = -1;
    std::vector<int> root_candidates;
};

struct HomResult {
    SearchStatus status = SearchStatus::inconclusive;
    std::optional<HomMap> hom;
    std::string reason;
    std::uint64_t nodes = 0;
};

namespace detail {

class HomSearch {
public:
    HomSearch(const Graph& g, const Graph& h, Meter& meter) : g_(g), h_(h), meter_(meter)
    {
        order_.resize(h.n());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return h.degree(a) > h.degree(b); });
        nonisolated_ = Bitset(h.n());
        for (std::size_t v = 0; v < h.n(); ++v)
            if (h.degree(v)) nonisolated_.set(v);
    }

    // Solves one connected component; fills map for its vertices.
    SearchStatus solve(const std::vector<int>& comp, std::vector<int>& map, int root, const std::vector<int>& root_cands)
    {
        comp_ = comp;
        std::vector<Bitset> dom(comp.size(), nonisolated_);
        if (comp.size() == 1) dom[0].set_all();
        local_.assign(g_.n(), -1);
        for (std::size_t i = 0; i < comp.size(); ++i) local_[comp[i]] = static_cast<int>(i);
        if (root >= 0 && local_[root] >= 0) {
            Bitset r(h_.n());
            for (int c : root_cands) r.set(c);
            dom[local_[root]] &= r;
        }
        assignment_.assign(comp.size(), -1);
        bool ok = dfs(dom, 0);
        if (meter_.exhausted()) return SearchStatus::inconclusive;
        if (!ok) return SearchStatus::none;
        for (std::size_t i = 0; i < comp.size(); ++i) map[comp[i]] = assignment_[i];
        return SearchStatus::found;
    }

private:
    bool dfs(std::vector<Bitset>& dom, std::size_t done)
    {
        if (!meter_.tick()) return false;
        if (done == comp_.size()) return true;
        int var = -1;
        std::size_t best = 0, best_deg = 0;
        for (std::size_t i = 0; i < comp_.size(); ++i) {
            if (assignment_[i] >= 0) continue;
            std::size_t c = dom[i].count(), d = g_.degree(comp_[i]);
            if (var < 0 || c < best || (c == best && d > best_deg)) var = static_cast<int>(i), best = c, best_deg = d;
        }
        if (best == 0) return false;
        for (int t : order_) {
            if (!dom[var].test(t)) continue;
            std::vector<Bitset> next = dom;
            next[var].clear();
            next[var].set(t);
            bool wiped = false;
            g_.neighbors(comp_[var]).for_each([&](std::size_t w) {
                int lw = local_[w];
                if (wiped || assignment_[lw] >= 0) return;
                next[lw] &= h_.neighbors(t);
                if (next[lw].none()) wiped = true;
            });
            if (wiped) continue;
            assignment_[var] = t;
            if (dfs(next, done + 1)) return true;
            assignment_[var] = -1;
            if (meter_.exhausted()) return false;
        }
        return false;
    }

    const Graph& g_;
    const Graph& h_;
    Meter& meter_;
    std::vector<int> order_;
    Bitset nonisolated_;
    std::vector<int> comp_, local_, assignment_;
};

} // namespace detail

// Decides whether a homomorphism g -> h exists. Sound cutoffs run first:
//  - an odd cycle in g needs an odd cycle in h no longer than g's shortest one;
//  - a clique in g needs a clique at least as large in h (bounded by a colouring of h);
//  - a colouring of g into a clique of h is a homomorphism.
inline HomResult hom_exists(const Graph& g, const Graph& h, const Budget& budget = {}, const HomOptions& opts = {})
{
    HomResult res;
    auto found = [&](std::vector<int> map, std::string why) {
        res.status = SearchStatus::found;
        res.hom = HomMap{g, h, std::move(map)};
        res.reason = std::move(why);
        if (!res.hom->verify()) throw std::logic_error("hom search produced an invalid map");
        return res;
    };
    auto none = [&](std::string why) {
        res.status = SearchStatus::none;
        res.reason = std::move(why);
        return res;
    };
    const bool restricted = opts.root_vertex >= 0;
    if (h.n() == 0) return g.n() == 0 ? found({}, "empty source") : none("empty target");
    if (g.is_edgeless() && !restricted) return found(std::vector<int>(g.n(), 0), "edgeless source");
    if (!g.is_edgeless() && h.is_edgeless()) return none("target has no edges");

    auto side = bipartition(g);
    if (side && !restricted) {
        auto e = h.edges().front();
        std::vector<int> map(g.n());
        for (std::size_t v = 0; v < g.n(); ++v) map[v] = (*side)[v] ? e.second : e.first;
        return found(std::move(map), "bipartite source onto an edge");
    }
    if (!side) {
        auto og_h = odd_girth(h);
        if (!og_h) return none("odd cycle in source, bipartite target");
        if (*og_h > *odd_girth(g)) return none("odd girth of target exceeds that of source");
    }
    auto gc = greedy_clique(g);
    std::size_t omega_h_upper;
    try {
        Budget small{200'000, 0.0};
        omega_h_upper = clique_number(h, small).value;
    } catch (const BudgetExceeded&) {
        omega_h_upper = greedy_coloring(h).colors;
    }
    if (gc.size() > omega_h_upper) return none("clique of source larger than clique number of target");
    if (!restricted) {
        auto hc = greedy_clique(h);
        auto col = greedy_coloring(g);
        if (col.colors <= hc.size()) {
            std::vector<int> map(g.n());
            for (std::size_t v = 0; v < g.n(); ++v) map[v] = hc[col.color[v]];
            return found(std::move(map), "colouring of source into a clique of target");
        }
    }

    Meter meter(budget);
    detail::HomSearch search(g, h, meter);
    std::vector<int> map(g.n(), -1);
    // Largest components first: they fail most often.
    auto comps = connected_components(g);
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    bool undecided = false;
    for (const auto& comp : comps) {
        if (comp.size() == 1 && !(restricted && comp[0] == opts.root_vertex)) {
            map[comp[0]] = 0;
            continue;
        }
        auto st = search.solve(comp, map, opts.root_vertex, opts.root_candidates);
        if (st == SearchStatus::none) {
            res.nodes = meter.used();
            return none("exhaustive search");
        }
        if (st == SearchStatus::inconclusive) undecided = true;
        if (meter.exhausted()) break;
    }
    res.nodes = meter.used();
    if (undecided || meter.exhausted()) {
        res.status = SearchStatus::inconclusive;
        res.reason = "node or time budget exhausted";
        return res;
    }
    return found(std::move(map), "search");
}

struct CoreResult {
    // found: conclusive core; inconclusive: a retract that could not be shown minimal.
    SearchStatus status = SearchStatus::inconclusive;
    Graph core;
    // Vertices of the input kept in the core, ascending.
    std::vector<int> vertices;
    // Homomorphism from the input onto core (indices into core); identity on core when conclusive.
    std::vector<int> retraction;
};

inline CoreResult core_of(const Graph& g, const Budget& budget = {})
{
    CoreResult res;
    std::vector<int> cur_vs(g.n());
    std::iota(cur_vs.begin(), cur_vs.end(), 0);
    std::vector<int> to_cur = cur_vs; // g vertex -> index in current graph
    Graph cur = g;
    bool undecided = false;
    while (true) {
        bool shrunk = false;
        undecided = false;
        if (cur.n() <= 1) break;
        auto orbits = canonical_form(cur).orbit;
        for (std::size_t v = 0; v < cur.n() && !shrunk; ++v) {
            if (orbits[v] != static_cast<int>(v)) continue;
            std::vector<int> keep;
            for (std::size_t u = 0; u < cur.n(); ++u)
                if (u != v) keep.push_back(static_cast<int>(u));
            Graph minus = induced_subgraph(cur, keep);
            auto r = hom_exists(cur, minus, budget);
            if (r.status == SearchStatus::inconclusive) undecided = true;
            if (r.status != SearchStatus::found) continue;
            // Restrict to the image of the endomorphism.
            std::vector<int> img_flag(cur.n(), 0);
            for (int x : r.hom->map) img_flag[keep[x]] = 1;
            std::vector<int> image, pos(cur.n(), -1);
            for (std::size_t u = 0; u < cur.n(); ++u)
                if (img_flag[u]) pos[u] = static_cast<int>(image.size()), image.push_back(static_cast<int>(u));
            for (auto& t : to_cur) t = pos[keep[r.hom->map[t]]];
            std::vector<int> next_vs;
            for (int u : image) next_vs.push_back(cur_vs[u]);
            cur = induced_subgraph(cur, image);
            cur_vs = std::move(next_vs);
            shrunk = true;
        }
        if (!shrunk) break;
    }
    res.status = undecided ? SearchStatus::inconclusive : SearchStatus::found;
    res.vertices = cur_vs;
    res.core = induced_subgraph(g, cur_vs);
    res.core.set_name(g.name().empty() ? "core" : "core(" + g.name() + ")");
    res.retraction = to_cur;
    // Make the retraction the identity on the core when its restriction is a bijection.
    std::vector<int> sigma(cur_vs.size()), inv(cur_vs.size(), -1);
    bool bijective = true;
    for (std::size_t i = 0; i < cur_vs.size(); ++i) {
        sigma[i] = to_cur[cur_vs[i]];
        if (inv[sigma[i]] >= 0) bijective = false;
        inv[sigma[i]] = static_cast<int>(i);
    }
    if (bijective)
        for (auto& t : res.retraction) t = inv[t];
    return res;
}

inline bool is_core(const Graph& g, const Budget& budget = {})
{
    auto r = core_of(g, budget);
    if (r.core.n() < g.n()) return false;
    if (r.status != SearchStatus::found) throw BudgetExceeded("core test did not finish within budget");
    return true;
}

enum class Tri { yes, no, unknown };

inline const char* to_string(Tri t) { return t == Tri::yes ? "yes" : t == Tri::no ? "no" : "unknown"; }

inline Tri hom_equivalent(const Graph& g, const Graph& h, const Budget& budget = {})
{
    auto a = hom_exists(g, h, budget);
    if (a.status == SearchStatus::none) return Tri::no;
    auto b = hom_exists(h, g, budget);
    if (b.status == SearchStatus::none) return Tri::no;
    if (a.status != SearchStatus::found || b.status != SearchStatus::found) return Tri::unknown;
    auto cg = core_of(g, budget), ch = core_of(h, budget);
    if (cg.status == SearchStatus::found && ch.status == SearchStatus::found &&
        canonical_key(cg.core) != canonical_key(ch.core))
        throw std::logic_error("homomorphically equivalent graphs with non-isomorphic cores");
    return Tri::yes;
}

} // namespace irkit
