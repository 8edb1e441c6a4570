#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irkit/bitset.hpp"
#include "irkit/errors.hpp"

namespace irkit {

// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n, std::string name = {}) : n_(n), rows_(n, Bitset(n)), name_(std::move(name)) {}

    std::size_t n() const { return n_; }
    bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
    const Bitset& neighbors(std::size_t v) const { return rows_[v]; }
    std::size_t degree(std::size_t v) const { return rows_[v].count(); }

    // Builder-style mutation; graphs are treated as values once handed out.
    void add_edge(std::size_t u, std::size_t v)
    {
        if (u == v) return;
        rows_[u].set(v);
        rows_[v].set(u);
    }
    void remove_edge(std::size_t u, std::size_t v)
    {
        rows_[u].reset(v);
        rows_[v].reset(u);
    }

    std::size_t edge_count() const
    {
        std::size_t s = 0;
        for (const auto& r : rows_) s += r.count();
        return s / 2;
    }
    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (std::size_t u = 0; u < n_; ++u)
            rows_[u].for_each([&](std::size_t v) {
                if (u < v) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
            });
        return out;
    }
    bool is_complete() const { return edge_count() == n_ * (n_ - (n_ > 0)) / 2; }
    bool is_edgeless() const
    {
        for (const auto& r : rows_)
            if (r.any()) return false;
        return true;
    }

    const std::string& name() const { return name_; }
    void set_name(std::string s) { name_ = std::move(s); }
    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

    // Labeled equality; names and vertex labels are ignored.
    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

private:
    std::size_t n_ = 0;
    std::vector<Bitset> rows_;
    std::string name_;
    std::vector<std::string> labels_;
};

struct SizeLimits {
    std::size_t max_vertices = 1'000'000;
    // Dense bit rows need n^2/8 bytes.
    std::size_t max_adjacency_bytes = std::size_t{1} << 31;
};

inline void check_size(std::size_t n, const SizeLimits& lim, std::string_view what)
{
    if (n > lim.max_vertices || (n / 8 + 1) * n > lim.max_adjacency_bytes)
        throw SizeLimitError(std::string(what) + ": " + std::to_string(n) + " vertices exceeds the size limit");
}

inline std::size_t checked_power(std::size_t base, int k, std::size_t cap)
{
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

// ---------------------------------------------------------------- generators

inline Graph complete(std::size_t n)
{
    Graph g(n, "K(" + std::to_string(n) + ")");
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph edgeless(std::size_t n) { return Graph(n, "Kbar(" + std::to_string(n) + ")"); }

inline Graph cycle(std::size_t n)
{
    if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    Graph g(n, "C(" + std::to_string(n) + ")");
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

// Apex is vertex 0, the rim cycle runs through 1..n.
inline Graph wheel(std::size_t n)
{
    if (n < 3) throw InvalidArgument("wheel rim needs at least 3 vertices");
    Graph g(n + 1, "W(" + std::to_string(n) + ")");
    for (std::size_t i = 1; i <= n; ++i) {
        g.add_edge(0, i);
        g.add_edge(i, i % n + 1);
    }
    return g;
}

// Vertices are the r-subsets of {1..n} in lexicographic order; adjacent iff disjoint.
inline Graph kneser(int n, int r)
{
    if (r < 1 || n < r) throw InvalidArgument("Kneser graph needs n >= r >= 1");
    if (n > 62) throw InvalidArgument("Kneser graph needs n <= 62");
    std::size_t count = 1;
    for (int i = 0; i < r; ++i) {
        count = count * (n - i) / (i + 1);
        if (count > 1'000'000) throw SizeLimitError("Kneser graph has too many vertices");
    }
    check_size(count, SizeLimits{}, "Kneser graph");
    std::vector<std::uint64_t> sets;
    std::vector<std::string> labels;
    std::vector<int> comb(r);
    for (int i = 0; i < r; ++i) comb[i] = i;
    while (true) {
        std::uint64_t m = 0;
        std::string lab = "{";
        for (int i = 0; i < r; ++i) {
            m |= std::uint64_t{1} << comb[i];
            lab += (i ? "," : "") + std::to_string(comb[i] + 1);
        }
        sets.push_back(m);
        labels.push_back(lab + "}");
        int i = r - 1;
        while (i >= 0 && comb[i] == n - r + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
    }
    Graph g(sets.size(), "KG(" + std::to_string(n) + "," + std::to_string(r) + ")");
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b)
            if (!(sets[a] & sets[b])) g.add_edge(a, b);
    g.set_labels(std::move(labels));
    return g;
}

inline bool is_strongly_regular(const Graph& g, std::size_t k, std::size_t lambda, std::size_t mu)
{
    for (std::size_t u = 0; u < g.n(); ++u) {
        if (g.degree(u) != k) return false;
        for (std::size_t v = u + 1; v < g.n(); ++v) {
            std::size_t c = g.neighbors(u).count_and(g.neighbors(v));
            if (c != (g.adjacent(u, v) ? lambda : mu)) return false;
        }
    }
    return true;
}

// The 27 lines on a cubic surface: a_i, b_i (i = 1..6) and c_ij. Two lines are
// adjacent here when they are skew, which gives the (27,16,10,8) graph.
inline Graph schlafli()
{
    struct Line {
        char kind;
        int i, j;
    };
    std::vector<Line> lines;
    for (int i = 0; i < 6; ++i) lines.push_back({'a', i, -1});
    for (int i = 0; i < 6; ++i) lines.push_back({'b', i, -1});
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) lines.push_back({'c', i, j});
    auto meets = [](const Line& x, const Line& y) {
        if (x.kind > y.kind) return false;
        if (x.kind == 'a' && y.kind == 'b') return x.i != y.i;
        if (x.kind == 'c' && y.kind == 'c') return x.i != y.i && x.i != y.j && x.j != y.i && x.j != y.j;
        if (x.kind != 'c' && y.kind == 'c') return x.i == y.i || x.i == y.j;
        return false;
    };
    Graph g(27, "schlafli");
    std::vector<std::string> labels;
    for (std::size_t u = 0; u < 27; ++u) {
        const auto& l = lines[u];
        labels.push_back(l.kind == 'c' ? "c" + std::to_string(l.i + 1) + std::to_string(l.j + 1)
                                       : std::string(1, l.kind) + std::to_string(l.i + 1));
        for (std::size_t v = u + 1; v < 27; ++v)
            if (!meets(lines[u], lines[v]) && !meets(lines[v], lines[u])) g.add_edge(u, v);
    }
    g.set_labels(std::move(labels));
    if (!is_strongly_regular(g, 16, 10, 8)) throw std::logic_error("schlafli construction is not srg(27,16,10,8)");
    return g;
}

// ---------------------------------------------------------------- operations

inline std::string wrap(const std::string& s) { return s.empty() ? "?" : s; }

inline Graph complement(const Graph& g)
{
    Graph c(g.n(), "~" + wrap(g.name()));
    for (std::size_t u = 0; u < g.n(); ++u)
        for (std::size_t v = u + 1; v < g.n(); ++v)
            if (!g.adjacent(u, v)) c.add_edge(u, v);
    c.set_labels(g.labels());
    return c;
}

// Product vertex (u,v) has index u * |V(h)| + v.
template <typename Adj>
Graph product_graph(const Graph& g, const Graph& h, Adj adj, std::string name, const SizeLimits& lim)
{
    if (h.n() != 0 && g.n() > lim.max_vertices / h.n()) throw SizeLimitError(name + ": product exceeds the vertex limit");
    const std::size_t n = g.n() * h.n();
    check_size(n, lim, name);
    Graph p(n, std::move(name));
    const std::size_t m = h.n();
    for (std::size_t u1 = 0; u1 < g.n(); ++u1)
        for (std::size_t v1 = 0; v1 < m; ++v1)
            for (std::size_t u2 = u1; u2 < g.n(); ++u2) {
                int gu = u1 == u2 ? 0 : (g.adjacent(u1, u2) ? 1 : -1);
                for (std::size_t v2 = (u2 == u1 ? v1 + 1 : 0); v2 < m; ++v2) {
                    int hv = v1 == v2 ? 0 : (h.adjacent(v1, v2) ? 1 : -1);
                    if (adj(gu, hv)) p.add_edge(u1 * m + v1, u2 * m + v2);
                }
            }
    return p;
}

// Coordinate relation codes: 0 equal, 1 adjacent, -1 distinct and non-adjacent.
inline Graph strong_product(const Graph& g, const Graph& h, const SizeLimits& lim = {})
{
    return product_graph(g, h, [](int a, int b) { return a >= 0 && b >= 0; },
                         "(" + wrap(g.name()) + " * " + wrap(h.name()) + ")", lim);
}

inline Graph or_product(const Graph& g, const Graph& h, const SizeLimits& lim = {})
{
    return product_graph(g, h, [](int a, int b) { return a == 1 || b == 1; },
                         "(" + wrap(g.name()) + " | " + wrap(h.name()) + ")", lim);
}

inline Graph tensor_product(const Graph& g, const Graph& h, const SizeLimits& lim = {})
{
    return product_graph(g, h, [](int a, int b) { return a == 1 && b == 1; },
                         "(" + wrap(g.name()) + " x " + wrap(h.name()) + ")", lim);
}

// Vertices of g come first, then those of h shifted by |V(g)|.
inline Graph disjoint_union(const Graph& g, const Graph& h)
{
    Graph u(g.n() + h.n(), "(" + wrap(g.name()) + " + " + wrap(h.name()) + ")");
    for (auto [a, b] : g.edges()) u.add_edge(a, b);
    for (auto [a, b] : h.edges()) u.add_edge(a + g.n(), b + g.n());
    return u;
}

inline Graph strong_power(const Graph& g, int k, const SizeLimits& lim = {})
{
    if (k < 1) throw InvalidArgument("power exponent must be at least 1");
    check_size(checked_power(g.n(), k, lim.max_vertices), lim, "strong power");
    Graph p = g;
    for (int i = 1; i < k; ++i) p = strong_product(p, g, lim);
    p.set_name(k == 1 ? g.name() : "(" + wrap(g.name()) + ")^" + std::to_string(k));
    return p;
}

inline Graph or_power(const Graph& g, int k, const SizeLimits& lim = {})
{
    if (k < 1) throw InvalidArgument("power exponent must be at least 1");
    check_size(checked_power(g.n(), k, lim.max_vertices), lim, "OR power");
    Graph p = g;
    for (int i = 1; i < k; ++i) p = or_product(p, g, lim);
    p.set_name(k == 1 ? g.name() : "(" + wrap(g.name()) + ")^|" + std::to_string(k));
    return p;
}

// Vertices: originals 0..n-1, mirrors n..2n-1, apex 2n.
inline Graph mycielski(const Graph& g)
{
    const std::size_t n = g.n();
    Graph m(2 * n + 1, "M(" + wrap(g.name()) + ")");
    for (auto [a, b] : g.edges()) {
        m.add_edge(a, b);
        m.add_edge(a, b + n);
        m.add_edge(a + n, b);
    }
    for (std::size_t i = 0; i < n; ++i) m.add_edge(n + i, 2 * n);
    return m;
}

inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vs)
{
    Graph s(vs.size(), g.name().empty() ? std::string{} : g.name() + "[sub]");
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) s.add_edge(i, j);
    if (!g.labels().empty()) {
        std::vector<std::string> l;
        for (int v : vs) l.push_back(g.labels()[v]);
        s.set_labels(std::move(l));
    }
    return s;
}

inline Graph delete_edge(const Graph& g, int u, int v)
{
    Graph r = g;
    r.remove_edge(u, v);
    r.set_name(wrap(g.name()) + "\\{" + std::to_string(u) + "," + std::to_string(v) + "}");
    return r;
}

// Vertex v of g becomes perm[v] in the result.
inline Graph relabel(const Graph& g, const std::vector<int>& perm)
{
    Graph r(g.n(), g.name());
    for (auto [a, b] : g.edges()) r.add_edge(perm[a], perm[b]);
    return r;
}

inline bool is_independent(const Graph& g, const std::vector<int>& vs)
{
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || static_cast<std::size_t>(vs[i]) >= g.n()) return false;
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j] || g.adjacent(vs[i], vs[j])) return false;
    }
    return true;
}

inline bool is_clique(const Graph& g, const std::vector<int>& vs)
{
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || static_cast<std::size_t>(vs[i]) >= g.n()) return false;
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j] || !g.adjacent(vs[i], vs[j])) return false;
    }
    return true;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g)
{
    std::vector<std::vector<int>> comps;
    Bitset seen(g.n());
    for (std::size_t s = 0; s < g.n(); ++s) {
        if (seen.test(s)) continue;
        std::vector<int> comp{static_cast<int>(s)};
        seen.set(s);
        for (std::size_t i = 0; i < comp.size(); ++i)
            g.neighbors(comp[i]).for_each([&](std::size_t w) {
                if (!seen.test(w)) {
                    seen.set(w);
                    comp.push_back(static_cast<int>(w));
                }
            });
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// ---------------------------------------------------------------- graph6

inline std::string to_graph6(const Graph& g)
{
    const std::size_t n = g.n();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    } else {
        out += "\x7e\x7e";
        for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    }
    int acc = 0, nbits = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = nbits = 0;
            }
        }
    if (nbits) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph from_graph6(std::string_view text)
{
    if (text.rfind(">>graph6<<", 0) == 0) text.remove_prefix(10);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
    auto val = [&](std::size_t i) -> std::uint64_t {
        if (i >= text.size()) throw ParseError("graph6: truncated input");
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126) throw ParseError("graph6: byte out of range at offset " + std::to_string(i));
        return c - 63;
    };
    if (text.empty()) throw ParseError("graph6: empty input");
    std::size_t pos = 0;
    std::uint64_t n = 0;
    if (val(0) < 63) {
        n = val(0);
        pos = 1;
    } else if (val(1) < 63) {
        for (int i = 1; i <= 3; ++i) n = (n << 6) | val(i);
        pos = 4;
    } else {
        for (int i = 2; i <= 7; ++i) n = (n << 6) | val(i);
        pos = 8;
    }
    SizeLimits lim;
    check_size(n, lim, "graph6");
    std::size_t bits = n * (n - (n > 0)) / 2;
    std::size_t bytes = (bits + 5) / 6;
    if (text.size() != pos + bytes)
        throw ParseError("graph6: expected " + std::to_string(pos + bytes) + " bytes, got " + std::to_string(text.size()));
    Graph g(n);
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i, ++k)
            if ((val(pos + k / 6) >> (5 - k % 6)) & 1) g.add_edge(i, j);
    if (bits % 6 && (val(pos + bytes - 1) & ((1u << (6 - bits % 6)) - 1)))
        throw ParseError("graph6: nonzero padding bits");
    return g;
}

// ---------------------------------------------------------------- named lookup

inline Graph make_named(const std::string& name, const std::vector<long long>& p)
{
    auto need = [&](std::size_t k) {
        if (p.size() != k)
            throw InvalidArgument(name + " takes " + std::to_string(k) + " parameter(s), got " + std::to_string(p.size()));
    };
    auto positive = [&](long long v, long long lo, const char* what) {
        if (v < lo || v > 100000) throw InvalidArgument(name + ": " + what + " out of range");
        return static_cast<std::size_t>(v);
    };
    if (name == "K") return need(1), complete(positive(p[0], 1, "n"));
    if (name == "Kbar") return need(1), edgeless(positive(p[0], 1, "n"));
    if (name == "C") return need(1), cycle(positive(p[0], 3, "n"));
    if (name == "W") return need(1), wheel(positive(p[0], 3, "n"));
    if (name == "KG") {
        need(2);
        if (p[1] < 1 || p[0] < p[1] || p[0] > 62) throw InvalidArgument("KG: need 62 >= n >= r >= 1");
        return kneser(static_cast<int>(p[0]), static_cast<int>(p[1]));
    }
    if (name == "schlafli") return need(0), schlafli();
    throw InvalidArgument("unknown graph generator '" + name + "'");
}

} // namespace irkit
