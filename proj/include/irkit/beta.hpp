#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "irkit/hom.hpp"
#include "irkit/rational.hpp"

namespace irkit {

// Largest induced subgraph of g admitting a homomorphism to f.
struct BetaValue {
    std::size_t value = 0;
    std::vector<int> subset; // ascending vertices of g
    HomMap hom;              // g[subset] -> f
};

inline bool verify_beta_witness(const Graph& g, const Graph& f, const BetaValue& b)
{
    if (b.subset.size() != b.value) return false;
    for (std::size_t i = 0; i + 1 < b.subset.size(); ++i)
        if (b.subset[i] >= b.subset[i + 1]) return false;
    if (!b.subset.empty() && (b.subset.front() < 0 || static_cast<std::size_t>(b.subset.back()) >= g.n())) return false;
    return b.hom.source == induced_subgraph(g, b.subset) && b.hom.target == f && b.hom.verify();
}

namespace detail {

class BetaSearch {
public:
    BetaSearch(const Graph& g, const Graph& f, Meter& meter) : g_(g), f_(f), meter_(meter)
    {
        order_.resize(g.n());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
        assign_.assign(g.n(), -2);
    }

    void run(std::size_t initial_best)
    {
        best_value_ = initial_best;
        std::vector<Bitset> dom(g_.n(), Bitset(f_.n()));
        for (auto& d : dom) d.set_all();
        rec(0, 0, dom);
    }

    bool improved() const { return !best_assign_.empty(); }
    std::size_t best_value() const { return best_value_; }
    const std::vector<int>& best_assign() const { return best_assign_; }

private:
    void rec(std::size_t idx, std::size_t included, const std::vector<Bitset>& dom)
    {
        if (!meter_.tick()) throw BudgetExceeded("beta search exceeded its node budget");
        std::size_t possible = included;
        for (std::size_t k = idx; k < order_.size(); ++k)
            if (dom[order_[k]].any()) ++possible;
        if (possible <= best_value_) return;
        if (idx == order_.size()) {
            best_value_ = included;
            best_assign_ = assign_;
            return;
        }
        const int v = order_[idx];
        for (std::size_t t = dom[v].first(); t != Bitset::npos; t = dom[v].next(t)) {
            std::vector<Bitset> next = dom;
            g_.neighbors(v).for_each([&](std::size_t w) {
                if (assign_[w] == -2) next[w] &= f_.neighbors(t);
            });
            assign_[v] = static_cast<int>(t);
            rec(idx + 1, included + 1, next);
        }
        assign_[v] = -1;
        rec(idx + 1, included, dom);
        assign_[v] = -2;
    }

    const Graph& g_;
    const Graph& f_;
    Meter& meter_;
    std::vector<int> order_;
    std::vector<int> assign_; // -2 undecided, -1 excluded, else image
    std::size_t best_value_ = 0;
    std::vector<int> best_assign_;
};

} // namespace detail

inline BetaValue beta(const Graph& g, const Graph& f, const Budget& budget = {})
{
    if (f.n() == 0) throw InvalidArgument("beta: target graph is empty");
    BetaValue out;
    auto whole = hom_exists(g, f, budget);
    if (whole.status == SearchStatus::found) {
        out.value = g.n();
        out.subset.resize(g.n());
        std::iota(out.subset.begin(), out.subset.end(), 0);
        out.hom = *whole.hom;
        return out;
    }
    Meter meter(budget);
    detail::BetaSearch s(g, f, meter);
    s.run(0);
    const auto& a = s.best_assign();
    std::vector<int> image;
    for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v] >= 0) {
            out.subset.push_back(static_cast<int>(v));
            image.push_back(a[v]);
        }
    out.value = out.subset.size();
    out.hom = HomMap{induced_subgraph(g, out.subset), f, image};
    if (!verify_beta_witness(g, f, out)) throw std::logic_error("beta witness failed verification");
    return out;
}

// Finite-m value β(ḡ^{∨km}, f^{∨m})^{1/(km)}. A heuristic diagnostic only: it approximates
// the limit from below and certifies nothing.
inline Root beta_f_estimate(const Graph& g, const Graph& f, int k, int m, const Budget& budget = {})
{
    if (k < 1 || m < 1) throw InvalidArgument("beta_f_estimate: k and m must be positive");
    Graph src = or_power(complement(g), k * m);
    Graph tgt = or_power(f, m);
    auto b = beta(src, tgt, budget);
    return Root::of(Rational(static_cast<long>(b.value)), static_cast<unsigned>(k * m));
}

} // namespace irkit
