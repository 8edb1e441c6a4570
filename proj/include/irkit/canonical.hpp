#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "irkit/graph.hpp"

namespace irkit {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x)
    {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    // Keeps the smaller index as root.
    void unite(int a, int b)
    {
        a = find(a), b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<int> parent_;
};

struct CanonicalForm {
    // labeling[v] is the position of vertex v in the canonical order.
    std::vector<int> labeling;
    // Automorphism generators, each a permutation of V(g).
    std::vector<std::vector<int>> generators;
    // orbit[v] is the smallest vertex in the automorphism orbit of v.
    std::vector<int> orbit;
    // graph6 text of the canonically relabeled graph.
    std::string key;
};

namespace detail {

using Cells = std::vector<std::vector<int>>;

class Canonizer {
public:
    explicit Canonizer(const Graph& g) : g_(g), n_(g.n()) {}

    CanonicalForm run()
    {
        CanonicalForm out;
        if (n_ == 0) {
            out.key = to_graph6(g_);
            return out;
        }
        Cells root{std::vector<int>(n_)};
        std::iota(root[0].begin(), root[0].end(), 0);
        std::vector<int> path;
        search(root, path, true);
        out.labeling = best_lab_;
        out.generators = gens_;
        UnionFind uf(n_);
        for (const auto& gen : gens_)
            for (std::size_t v = 0; v < n_; ++v) uf.unite(static_cast<int>(v), gen[v]);
        out.orbit.resize(n_);
        for (std::size_t v = 0; v < n_; ++v) out.orbit[v] = uf.find(static_cast<int>(v));
        Graph c = relabel(g_, best_lab_);
        out.key = to_graph6(c);
        return out;
    }

private:
    // Splits cells until every cell has uniform neighbour counts into every other cell.
    void refine(Cells& cells, std::vector<std::vector<int>> queue) const
    {
        std::vector<int> cnt(n_);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            Bitset w(n_);
            for (int v : queue[qi]) w.set(v);
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                auto& x = cells[ci];
                if (x.size() == 1) continue;
                bool uniform = true;
                for (int v : x) {
                    cnt[v] = static_cast<int>(g_.neighbors(v).count_and(w));
                    if (cnt[v] != cnt[x[0]]) uniform = false;
                }
                if (uniform) continue;
                std::vector<int> keys;
                for (int v : x) keys.push_back(cnt[v]);
                std::sort(keys.begin(), keys.end());
                keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
                Cells frags(keys.size());
                for (int v : x) {
                    auto k = std::lower_bound(keys.begin(), keys.end(), cnt[v]) - keys.begin();
                    frags[k].push_back(v);
                }
                for (const auto& f : frags) queue.push_back(f);
                cells.erase(cells.begin() + ci);
                cells.insert(cells.begin() + ci, frags.begin(), frags.end());
                ci += frags.size() - 1;
            }
        }
    }

    std::vector<std::uint64_t> certificate(const std::vector<int>& lab) const
    {
        std::vector<int> inv(n_);
        for (std::size_t v = 0; v < n_; ++v) inv[lab[v]] = static_cast<int>(v);
        const std::size_t words = (n_ + 63) / 64;
        std::vector<std::uint64_t> cert(n_ * words, 0);
        for (std::size_t i = 0; i < n_; ++i)
            g_.neighbors(inv[i]).for_each([&](std::size_t u) {
                std::size_t j = lab[u];
                cert[i * words + j / 64] |= std::uint64_t{1} << (63 - j % 64);
            });
        return cert;
    }

    static std::size_t common_prefix(const std::vector<int>& a, const std::vector<int>& b)
    {
        std::size_t k = 0;
        while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
        return k;
    }

    void add_automorphism(const std::vector<int>& lab_a, const std::vector<int>& lab_b)
    {
        std::vector<int> inv_b(n_);
        for (std::size_t v = 0; v < n_; ++v) inv_b[lab_b[v]] = static_cast<int>(v);
        std::vector<int> gamma(n_);
        bool identity = true;
        for (std::size_t v = 0; v < n_; ++v) {
            gamma[v] = inv_b[lab_a[v]];
            if (gamma[v] != static_cast<int>(v)) identity = false;
        }
        if (!identity) gens_.push_back(std::move(gamma));
    }

    // Returns the depth to unwind to, or -1 to continue normally.
    int search(Cells cells, std::vector<int>& path, bool root)
    {
        if (root) {
            Cells q = cells;
            refine(cells, q);
        }
        std::size_t target = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1) {
                target = i;
                break;
            }
        if (target == cells.size()) return leaf(cells, path);

        const int depth = static_cast<int>(path.size());
        std::vector<int> explored;
        const std::vector<int> members = cells[target];
        for (int v : members) {
            if (!explored.empty() && same_orbit_as_any(v, explored, path)) continue;
            Cells child = cells;
            std::vector<int> rest;
            for (int u : child[target])
                if (u != v) rest.push_back(u);
            child[target] = {v};
            child.insert(child.begin() + target + 1, rest);
            refine(child, {{v}});
            path.push_back(v);
            int r = search(std::move(child), path, false);
            path.pop_back();
            explored.push_back(v);
            if (r >= 0 && r < depth) return r;
        }
        return -1;
    }

    bool same_orbit_as_any(int v, const std::vector<int>& explored, const std::vector<int>& path) const
    {
        UnionFind uf(n_);
        for (const auto& gen : gens_) {
            bool fixes = std::all_of(path.begin(), path.end(), [&](int p) { return gen[p] == p; });
            if (!fixes) continue;
            for (std::size_t u = 0; u < n_; ++u) uf.unite(static_cast<int>(u), gen[u]);
        }
        int rv = uf.find(v);
        return std::any_of(explored.begin(), explored.end(), [&](int u) { return uf.find(u) == rv; });
    }

    int leaf(const Cells& cells, const std::vector<int>& path)
    {
        std::vector<int> lab(n_);
        for (std::size_t i = 0; i < cells.size(); ++i) lab[cells[i][0]] = static_cast<int>(i);
        auto cert = certificate(lab);
        if (first_lab_.empty()) {
            first_lab_ = best_lab_ = lab;
            first_cert_ = best_cert_ = std::move(cert);
            first_path_ = best_path_ = path;
            return -1;
        }
        if (cert == first_cert_) {
            add_automorphism(lab, first_lab_);
            return static_cast<int>(common_prefix(path, first_path_));
        }
        if (cert == best_cert_) {
            add_automorphism(lab, best_lab_);
            return static_cast<int>(common_prefix(path, best_path_));
        }
        if (cert > best_cert_) {
            best_lab_ = lab;
            best_cert_ = std::move(cert);
            best_path_ = path;
        }
        return -1;
    }

    const Graph& g_;
    std::size_t n_;
    std::vector<int> first_lab_, best_lab_, first_path_, best_path_;
    std::vector<std::uint64_t> first_cert_, best_cert_;
    std::vector<std::vector<int>> gens_;
};

} // namespace detail

inline CanonicalForm canonical_form(const Graph& g) { return detail::Canonizer(g).run(); }

inline std::string canonical_key(const Graph& g) { return canonical_form(g).key; }

inline bool isomorphic(const Graph& a, const Graph& b)
{
    return a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b);
}

// Returns iso with iso[v] the image in b of vertex v of a, if the graphs are isomorphic.
inline std::optional<std::vector<int>> find_isomorphism(const Graph& a, const Graph& b)
{
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return std::nullopt;
    auto fa = canonical_form(a), fb = canonical_form(b);
    if (fa.key != fb.key) return std::nullopt;
    std::vector<int> inv_b(b.n());
    for (std::size_t v = 0; v < b.n(); ++v) inv_b[fb.labeling[v]] = static_cast<int>(v);
    std::vector<int> iso(a.n());
    for (std::size_t v = 0; v < a.n(); ++v) iso[v] = inv_b[fa.labeling[v]];
    return iso;
}

inline bool is_automorphism(const Graph& g, const std::vector<int>& p)
{
    if (p.size() != g.n()) return false;
    std::vector<char> hit(g.n(), 0);
    for (int x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= g.n() || hit[x]) return false;
        hit[x] = 1;
    }
    for (auto [u, v] : g.edges())
        if (!g.adjacent(p[u], p[v])) return false;
    return true;
}

} // namespace irkit
