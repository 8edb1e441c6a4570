#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irkit/canonical.hpp"
#include "irkit/hom.hpp"
#include "irkit/rational.hpp"

namespace irkit {

// A (k,n) code: a non-adjacency preserving map V(source^k) -> V(channel^n).
// Power vertices are tuples in row-major order, first coordinate most significant.
struct CodeMap {
    Graph source;
    int k = 1;
    Graph channel;
    int n = 1;
    std::vector<std::size_t> map;

    Rational rate() const { return make_rational(k, n); }
};

namespace detail {

inline std::vector<int> digits(std::size_t x, std::size_t base, int len)
{
    std::vector<int> d(len);
    for (int i = len - 1; i >= 0; --i) {
        d[i] = static_cast<int>(x % base);
        x /= base;
    }
    return d;
}

inline std::size_t from_digits(const std::vector<int>& d, std::size_t base)
{
    std::size_t x = 0;
    for (int v : d) x = x * base + static_cast<std::size_t>(v);
    return x;
}

// Distinct and non-adjacent in the strong power: some coordinate differs and is non-adjacent.
inline bool separated(const Graph& g, const int* a, const int* b, int len)
{
    for (int i = 0; i < len; ++i)
        if (a[i] != b[i] && !g.adjacent(a[i], b[i])) return true;
    return false;
}

inline std::size_t power_size(std::size_t base, int k, std::size_t cap)
{
    std::size_t s = 1;
    for (int i = 0; i < k; ++i) {
        if (base != 0 && s > cap / base) return cap + 1;
        s *= base;
    }
    return s;
}

} // namespace detail

inline bool verify_code(const CodeMap& c, std::string* why = nullptr)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (c.k < 1 || c.n < 1) return fail("k and n must be positive");
    const std::size_t gs = c.source.n(), hs = c.channel.n();
    const std::size_t cap = std::size_t{1} << 40;
    const std::size_t ns = detail::power_size(gs, c.k, cap), nt = detail::power_size(hs, c.n, cap);
    if (ns > cap || nt > cap) return fail("power too large");
    if (c.map.size() != ns) return fail("map has the wrong length");
    std::vector<int> sd(ns * c.k), td(ns * c.n);
    for (std::size_t x = 0; x < ns; ++x) {
        if (c.map[x] >= nt) return fail("image out of range");
        auto a = detail::digits(x, gs, c.k), b = detail::digits(c.map[x], hs, c.n);
        std::copy(a.begin(), a.end(), sd.begin() + x * c.k);
        std::copy(b.begin(), b.end(), td.begin() + x * c.n);
    }
    for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = x + 1; y < ns; ++y)
            if (detail::separated(c.source, &sd[x * c.k], &sd[y * c.k], c.k) &&
                !detail::separated(c.channel, &td[x * c.n], &td[y * c.n], c.n))
                return fail("source pair " + std::to_string(x) + "," + std::to_string(y) + " is not kept apart");
    return true;
}

struct CodeOptions {
    std::size_t max_source = 4096;  // |V(G^k)|
    std::size_t max_target = 20000; // |V(H^n)|
    bool symmetry = true;
};

struct CodeResult {
    SearchStatus status = SearchStatus::inconclusive;
    std::optional<CodeMap> code;
    std::string reason;
    std::uint64_t nodes = 0;
};

// Orbit representatives of V(h^n) under coordinate-wise automorphisms and coordinate permutations.
inline std::vector<int> power_orbit_representatives(const Graph& h, int n)
{
    auto orb = canonical_form(h).orbit;
    const std::size_t size = detail::power_size(h.n(), n, std::size_t{1} << 40);
    std::map<std::vector<int>, int> seen;
    std::vector<int> reps;
    for (std::size_t x = 0; x < size; ++x) {
        auto d = detail::digits(x, h.n(), n);
        for (auto& v : d) v = orb[v];
        std::sort(d.begin(), d.end());
        if (seen.emplace(d, static_cast<int>(x)).second) reps.push_back(static_cast<int>(x));
    }
    return reps;
}

// Lemma-style reformulation: a (k,n) code is a homomorphism complement(G^k) -> complement(H^n).
inline CodeResult find_code(const Graph& g, const Graph& h, int k, int n, const Budget& budget = {},
                            const CodeOptions& opts = {})
{
    if (k < 1 || n < 1) throw InvalidArgument("find_code: k and n must be positive");
    if (g.n() == 0 || h.n() == 0) throw InvalidArgument("find_code: empty graph");
    CodeResult out;
    const std::size_t ns = detail::power_size(g.n(), k, opts.max_source);
    const std::size_t nt = detail::power_size(h.n(), n, opts.max_target);
    if (ns > opts.max_source) throw SizeLimitError("find_code: source power exceeds the size limit");
    if (nt > opts.max_target) throw SizeLimitError("find_code: channel power exceeds the size limit");
    Graph src = complement(strong_power(g, k));
    Graph tgt = complement(strong_power(h, n));
    HomOptions ho;
    if (opts.symmetry && src.edge_count() > 0) {
        int root = 0;
        for (std::size_t v = 0; v < src.n(); ++v)
            if (src.degree(v) > src.degree(root)) root = static_cast<int>(v);
        ho.root_vertex = root;
        ho.root_candidates = power_orbit_representatives(h, n);
    }
    auto r = hom_exists(src, tgt, budget, ho);
    out.status = r.status;
    out.reason = r.reason;
    out.nodes = r.nodes;
    if (r.status == SearchStatus::found) {
        CodeMap c{g, k, h, n, {}};
        for (int x : r.hom->map) c.map.push_back(static_cast<std::size_t>(x));
        std::string why;
        if (!verify_code(c, &why)) throw std::logic_error("found code failed verification: " + why);
        out.code = std::move(c);
    }
    return out;
}

// (k,n) -> (k, n + extra): pad channel words with a fixed symbol.
inline CodeMap pad_code(const CodeMap& c, int extra)
{
    if (extra < 0) throw InvalidArgument("pad_code: negative padding");
    CodeMap out{c.source, c.k, c.channel, c.n + extra, {}};
    std::size_t mul = detail::power_size(c.channel.n(), extra, std::size_t{1} << 40);
    for (auto y : c.map) out.map.push_back(y * mul);
    return out;
}

// (k,n) -> (k2,n) for k2 <= k: embed source words by appending a fixed symbol.
inline CodeMap restrict_code(const CodeMap& c, int k2)
{
    if (k2 < 1 || k2 > c.k) throw InvalidArgument("restrict_code: k2 out of range");
    CodeMap out{c.source, k2, c.channel, c.n, {}};
    std::size_t mul = detail::power_size(c.source.n(), c.k - k2, std::size_t{1} << 40);
    std::size_t ns = detail::power_size(c.source.n(), k2, std::size_t{1} << 40);
    for (std::size_t x = 0; x < ns; ++x) out.map.push_back(c.map[x * mul]);
    return out;
}

// Coordinate-wise repetition: (k,n) -> (km, nm).
inline CodeMap extend_code(const CodeMap& c, int m, std::size_t max_source = 1u << 22)
{
    if (m < 1) throw InvalidArgument("extend_code: m must be positive");
    const std::size_t gs = c.source.n(), hs = c.channel.n();
    const std::size_t ns = detail::power_size(gs, c.k * m, max_source);
    if (ns > max_source) throw SizeLimitError("extend_code: source power too large");
    CodeMap out{c.source, c.k * m, c.channel, c.n * m, {}};
    out.map.resize(ns);
    for (std::size_t x = 0; x < ns; ++x) {
        auto d = detail::digits(x, gs, c.k * m);
        std::vector<int> img;
        for (int b = 0; b < m; ++b) {
            std::vector<int> block(d.begin() + b * c.k, d.begin() + (b + 1) * c.k);
            auto y = detail::digits(c.map[detail::from_digits(block, gs)], hs, c.n);
            img.insert(img.end(), y.begin(), y.end());
        }
        out.map[x] = detail::from_digits(img, hs);
    }
    return out;
}

// Concatenation: a is G -> F at (k1,n1), b is F -> H at (k2,n2); result G -> H at (k1 k2, n1 n2).
inline CodeMap compose_codes(const CodeMap& a, const CodeMap& b, std::size_t max_source = 1u << 22)
{
    if (!(a.channel == b.source)) throw InvalidArgument("compose_codes: middle graphs differ");
    CodeMap ea = extend_code(a, b.k, max_source);   // (k1 k2, n1 k2)
    CodeMap eb = extend_code(b, a.n, max_source);   // (k2 n1, n2 n1)
    CodeMap out{a.source, a.k * b.k, b.channel, a.n * b.n, {}};
    out.map.reserve(ea.map.size());
    for (auto y : ea.map) out.map.push_back(eb.map[y]);
    return out;
}

struct FrontierCell {
    int k = 0, n = 0;
    SearchStatus status = SearchStatus::inconclusive;
    bool inferred = false;
    std::string note;
    std::optional<CodeMap> code;
};

struct Frontier {
    std::vector<FrontierCell> cells; // row-major in n, then k
    std::optional<Rational> best;
    int best_k = 0, best_n = 0;

    const FrontierCell* cell(int k, int n) const
    {
        for (const auto& c : cells)
            if (c.k == k && c.n == n) return &c;
        return nullptr;
    }
};

// All cells 1..k_max x 1..n_max. Found cells propagate to smaller k and larger n;
// none cells propagate to larger k and smaller n.
inline Frontier ratio_frontier(const Graph& g, const Graph& h, int k_max, int n_max, const Budget& budget = {},
                               const CodeOptions& opts = {})
{
    if (k_max < 1 || n_max < 1) throw InvalidArgument("ratio_frontier: limits must be positive");
    Frontier fr;
    for (int n = 1; n <= n_max; ++n)
        for (int k = 1; k <= k_max; ++k) {
            FrontierCell cell;
            cell.k = k;
            cell.n = n;
            const FrontierCell* donor = nullptr;
            for (const auto& c : fr.cells)
                if (c.status == SearchStatus::found && c.k >= k && c.n <= n && c.code) donor = &c;
            bool blocked = false;
            for (const auto& c : fr.cells)
                if (c.status == SearchStatus::none && c.k <= k && c.n >= n) blocked = true;
            if (donor) {
                CodeMap c = *donor->code;
                if (c.k > k) c = restrict_code(c, k);
                if (c.n < n) c = pad_code(c, n - c.n);
                if (!verify_code(c)) throw std::logic_error("inferred code failed verification");
                cell.status = SearchStatus::found;
                cell.inferred = true;
                cell.note = "from (" + std::to_string(donor->k) + "," + std::to_string(donor->n) + ")";
                cell.code = std::move(c);
            } else if (blocked) {
                cell.status = SearchStatus::none;
                cell.inferred = true;
                cell.note = "implied by a smaller impossible cell";
            } else {
                try {
                    auto r = find_code(g, h, k, n, budget, opts);
                    cell.status = r.status;
                    cell.note = r.reason;
                    cell.code = std::move(r.code);
                } catch (const SizeLimitError& e) {
                    cell.status = SearchStatus::inconclusive;
                    cell.note = e.what();
                }
            }
            if (cell.status == SearchStatus::found) {
                Rational r = make_rational(k, n);
                if (!fr.best || r > *fr.best) {
                    fr.best = r;
                    fr.best_k = k;
                    fr.best_n = n;
                }
            }
            fr.cells.push_back(std::move(cell));
        }
    return fr;
}

} // namespace irkit
