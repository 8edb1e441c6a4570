#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "irkit/graph.hpp"
#include "irkit/independence.hpp"
#include "irkit/rational.hpp"

namespace irkit {

enum class Field { gf2 };

// Minimum rank of a matrix with nonzero diagonal and zeros on non-adjacent pairs.
struct MinrankValue {
    std::size_t value = 0;
    Field field = Field::gf2;
    std::vector<std::uint32_t> matrix; // row i as a bit mask over columns
};

inline std::size_t gf2_rank(std::vector<std::uint32_t> rows)
{
    std::size_t rank = 0;
    for (int bit = 31; bit >= 0; --bit) {
        std::uint32_t mask = std::uint32_t{1} << bit;
        std::size_t piv = rank;
        while (piv < rows.size() && !(rows[piv] & mask)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

inline bool verify_minrank_witness(const Graph& g, const MinrankValue& mv)
{
    if (mv.matrix.size() != g.n() || g.n() > 32) return false;
    for (std::size_t i = 0; i < g.n(); ++i) {
        if (!((mv.matrix[i] >> i) & 1u)) return false;
        for (std::size_t j = 0; j < g.n(); ++j)
            if (i != j && !g.adjacent(i, j) && ((mv.matrix[i] >> j) & 1u)) return false;
    }
    return gf2_rank(mv.matrix) == mv.value;
}

namespace detail {

inline int dot2(std::uint32_t a, std::uint32_t b) { return std::popcount(a & b) & 1; }

// All v in GF(2)^r with <c_k, v> = t_k for every constraint.
inline std::vector<std::uint32_t> gf2_solutions(std::vector<std::pair<std::uint32_t, int>> cons, int r)
{
    const std::uint32_t full = r >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << r) - 1;
    for (auto& c : cons) c.first &= full;
    std::vector<int> pivot_of_row;
    std::size_t rank = 0;
    for (int bit = 0; bit < r; ++bit) {
        std::uint32_t mask = std::uint32_t{1} << bit;
        std::size_t p = rank;
        while (p < cons.size() && !(cons[p].first & mask)) ++p;
        if (p == cons.size()) continue;
        std::swap(cons[rank], cons[p]);
        for (std::size_t i = 0; i < cons.size(); ++i)
            if (i != rank && (cons[i].first & mask)) {
                cons[i].first ^= cons[rank].first;
                cons[i].second ^= cons[rank].second;
            }
        pivot_of_row.push_back(bit);
        ++rank;
    }
    for (std::size_t i = rank; i < cons.size(); ++i)
        if (cons[i].second) return {};
    std::uint32_t pivots = 0;
    for (int b : pivot_of_row) pivots |= std::uint32_t{1} << b;
    std::vector<int> free_bits;
    for (int b = 0; b < r; ++b)
        if (!((pivots >> b) & 1u)) free_bits.push_back(b);
    std::vector<std::uint32_t> out;
    for (std::uint32_t f = 0; f < (std::uint32_t{1} << free_bits.size()); ++f) {
        std::uint32_t v = 0;
        for (std::size_t k = 0; k < free_bits.size(); ++k)
            if ((f >> k) & 1u) v |= std::uint32_t{1} << free_bits[k];
        for (std::size_t i = 0; i < rank; ++i) {
            int val = cons[i].second ^ dot2(cons[i].first & ~(std::uint32_t{1} << pivot_of_row[i]), v);
            if (val) v |= std::uint32_t{1} << pivot_of_row[i];
        }
        out.push_back(v);
    }
    return out;
}

// Looks for u_i, v_i in GF(2)^r with <u_i,v_i> = 1 and <u_i,v_j> = 0 on non-adjacent pairs.
// The general linear group acts on the u's, so each new u is either inside the span of
// the earlier ones (kept as e_1..e_k) or exactly the next basis vector.
class MinrankSearch {
public:
    MinrankSearch(const Graph& g, int r) : g_(g), r_(r), u_(g.n()), v_(g.n()) {}

    bool run() { return rec(0, 0); }
    const std::vector<std::uint32_t>& u() const { return u_; }
    const std::vector<std::uint32_t>& v() const { return v_; }

private:
    bool rec(std::size_t i, int k)
    {
        if (i == g_.n()) return true;
        std::vector<std::pair<std::uint32_t, int>> ucons;
        for (std::size_t j = 0; j < i; ++j)
            if (!g_.adjacent(i, j)) ucons.emplace_back(v_[j], 0);
        std::vector<std::uint32_t> cands;
        for (auto u : gf2_solutions(ucons, k))
            if (u) cands.push_back(u);
        if (k < r_) {
            std::uint32_t e = std::uint32_t{1} << k;
            bool ok = true;
            for (const auto& c : ucons)
                if (dot2(c.first, e)) ok = false;
            if (ok) cands.push_back(e);
        }
        for (auto u : cands) {
            int k2 = (u >> k) & 1u ? k + 1 : k;
            std::vector<std::pair<std::uint32_t, int>> vcons{{u, 1}};
            for (std::size_t j = 0; j < i; ++j)
                if (!g_.adjacent(i, j)) vcons.emplace_back(u_[j], 0);
            for (auto v : gf2_solutions(vcons, r_)) {
                u_[i] = u;
                v_[i] = v;
                if (rec(i + 1, k2)) return true;
            }
        }
        return false;
    }

    const Graph& g_;
    int r_;
    std::vector<std::uint32_t> u_, v_;
};

} // namespace detail

struct MinrankOptions {
    std::size_t max_vertices = 12;
};

inline MinrankValue minrank_gf2(const Graph& g, const MinrankOptions& opts = {})
{
    if (g.n() > opts.max_vertices) throw SizeLimitError("minrank: graph exceeds the vertex limit");
    MinrankValue out;
    const std::size_t n = g.n();
    if (n == 0) return out;
    auto cover = clique_cover(g);
    const std::size_t lo = independence_number(g).value;
    for (std::size_t r = lo; r < cover.colors; ++r) {
        detail::MinrankSearch s(g, static_cast<int>(r));
        if (!s.run()) continue;
        out.value = r;
        out.matrix.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (detail::dot2(s.u()[i], s.v()[j])) out.matrix[i] |= std::uint32_t{1} << j;
        if (!verify_minrank_witness(g, out)) throw std::logic_error("minrank witness failed verification");
        return out;
    }
    // Block matrix of a minimum clique cover.
    out.value = cover.colors;
    out.matrix.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (cover.color[i] == cover.color[j]) out.matrix[i] |= std::uint32_t{1} << j;
    if (!verify_minrank_witness(g, out)) throw std::logic_error("clique cover minrank witness failed verification");
    return out;
}

// (γ(g^m))^(1/m); an upper approximant of the fractional minrank.
inline Root gamma_power_root(const Graph& g, int m, const MinrankOptions& opts = {})
{
    if (checked_power(g.n(), m, opts.max_vertices) > opts.max_vertices)
        throw SizeLimitError("minrank: power exceeds the vertex limit");
    auto mv = minrank_gf2(strong_power(g, m), opts);
    return Root::of(Rational(static_cast<long>(mv.value)), static_cast<unsigned>(m));
}

} // namespace irkit
