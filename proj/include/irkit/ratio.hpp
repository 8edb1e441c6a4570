#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "irkit/cache.hpp"
#include "irkit/certificate.hpp"
#include "irkit/code.hpp"
#include "irkit/expr.hpp"
#include "irkit/fractional.hpp"
#include "irkit/independence.hpp"
#include "irkit/minrank.hpp"
#include "irkit/rules.hpp"
#include "irkit/theta.hpp"
#include "irkit/theta_exact.hpp"

namespace irkit {

struct EngineOptions {
    double tol = 1e-6;
    Budget budget{2'000'000, 0.0};
    int max_power = 2;                       // α(g^j) for j <= max_power
    std::size_t power_vertex_cap = 400;      // |V(g^j)| limit for j >= 2
    std::size_t theta_max_vertices = 200;
    std::size_t theta_max_edges = 600;
    std::size_t chibarf_max_vertices = 400;
    std::size_t minrank_max_vertices = 10;
    std::size_t exact_theta_max_vertices = 64;
    std::size_t witness_max_vertices = 64;   // SDP witnesses stored in certificates up to this size
    int code_kmax = 3;
    int code_nmax = 2;
    std::size_t code_max_source = 64;
    std::size_t code_max_target = 625;
    Budget code_budget{100'000, 0.0};
    std::vector<std::string> pivots = {"Kbar(2)", "Kbar(3)"};
    bool core_reduction = true;
    std::size_t core_max_vertices = 40;
    std::size_t max_vertices = 2048;         // graphs are materialized up to this size
    std::string cache_dir;                   // empty: no disk cache
};

// Everything the bound rules need to know about one graph.
struct Profile {
    ExprPtr expr;
    std::string label;
    std::size_t n = 0;
    std::optional<Graph> g;
    nlohmann::json graph = nullptr; // graph6 text or null
    std::optional<bool> complete;
    CertPtr caplo, chibarf, theta, capacity, minrank;
    std::vector<std::string> notes;
};

// Certified interval on Ir(channel/source).
struct RatioBounds {
    std::string source, channel;
    CertPtr lower, upper;
    std::vector<std::string> flags;
    std::vector<std::string> notes;

    // Lower and upper endpoints identify the same number.
    bool closed() const
    {
        if (lower->value.sym && upper->value.sym) {
            if (auto e = formally_equal(*lower->value.sym, *upper->value.sym); e && *e) return true;
        }
        return false;
    }

    Exactness exactness() const
    {
        if (closed()) return worst(lower->value.kind, upper->value.kind);
        return Exactness::numeric;
    }

    double lo() const { return lower->value.iv.lo; }
    double hi() const { return upper->value.iv.hi; }
};

namespace detail {

inline bool better_lower(const CertPtr& a, const CertPtr& b)
{
    double x = a->value.iv.lo, y = b->value.iv.lo;
    if (std::abs(x - y) > 1e-9 * std::max(1.0, std::abs(y)) || std::isinf(x) != std::isinf(y)) return x > y;
    return static_cast<int>(a->value.kind) < static_cast<int>(b->value.kind);
}

inline bool better_upper(const CertPtr& a, const CertPtr& b)
{
    double x = a->value.iv.hi, y = b->value.iv.hi;
    if (std::isinf(x) && std::isinf(y)) return false;
    if (std::abs(x - y) > 1e-9 * std::max(1.0, std::abs(y)) || std::isinf(x) != std::isinf(y)) return x < y;
    return static_cast<int>(a->value.kind) < static_cast<int>(b->value.kind);
}

inline std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t cap)
{
    if (a != 0 && b > cap / a) return cap + 1;
    return std::min(a * b, cap + 1);
}

// |V| of an expression without materializing it; saturates at cap + 1.
inline std::size_t expr_size(const Expr& e, std::size_t cap)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::named: return make_named(e.name, e.params).n();
    case K::literal: return e.graph->n();
    case K::complement: return expr_size(*e.kids[0], cap);
    case K::mycielski: return std::min(2 * expr_size(*e.kids[0], cap) + 1, cap + 1);
    case K::strong:
    case K::or_product:
    case K::tensor: return saturating_mul(expr_size(*e.kids[0], cap), expr_size(*e.kids[1], cap), cap);
    case K::disjoint_union: return std::min(expr_size(*e.kids[0], cap) + expr_size(*e.kids[1], cap), cap + 1);
    case K::power: {
        std::size_t s = 1, b = expr_size(*e.kids[0], cap);
        for (int i = 0; i < e.exponent; ++i) s = saturating_mul(s, b, cap);
        return s;
    }
    }
    return cap + 1;
}

inline bool all_components_cliques(const Graph& g, std::size_t& count)
{
    auto comps = connected_components(g);
    count = comps.size();
    for (const auto& c : comps)
        if (!is_clique(g, c)) return false;
    return true;
}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m)
{
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        j.push_back(std::move(row));
    }
    return j;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j)
{
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (j[i].size() != static_cast<std::size_t>(n)) throw ParseError("matrix is not square");
        for (Eigen::Index k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

inline bool certified_at_least_one(const Quantity& q)
{
    if (q.iv.lo >= 1) return true;
    if (q.kind == Exactness::exact && q.sym) {
        auto c = compare(*q.sym, Real(1));
        return c && *c >= 0;
    }
    return false;
}

inline bool certified_below_one(const Quantity& q)
{
    if (q.iv.hi < 1) return true;
    if (q.kind == Exactness::exact && q.sym) {
        auto c = compare(*q.sym, Real(1));
        return c && *c < 0;
    }
    return false;
}

} // namespace detail

inline ThetaValue theta_from_json(const nlohmann::json& p)
{
    ThetaValue tv;
    tv.lo = p.at("lo").get<double>();
    tv.hi = p.at("hi").get<double>();
    tv.value = p.at("value").get<double>();
    tv.tol = p.at("tol").get<double>();
    tv.t = p.at("t").get<double>();
    if (p.contains("primal") && !p.at("primal").is_null()) tv.primal = detail::matrix_from_json(p.at("primal"));
    if (p.contains("multipliers") && !p.at("multipliers").is_null())
        tv.edge_multipliers = p.at("multipliers").get<std::vector<double>>();
    return tv;
}

class Engine {
public:
    explicit Engine(EngineOptions opts = {}) : opts_(std::move(opts))
    {
        if (!(opts_.tol > 0 && opts_.tol <= 1e-3)) throw InvalidArgument("tolerance must lie in (0, 1e-3]");
        if (opts_.budget.nodes == 0 || opts_.code_budget.nodes == 0) throw InvalidArgument("budgets must be positive");
        if (opts_.max_power < 1) throw InvalidArgument("max power must be at least 1");
        if (!opts_.cache_dir.empty()) cache_ = std::make_unique<InvariantCache>(opts_.cache_dir);
        for (const auto& p : opts_.pivots) pivots_.push_back(parse_expr(p));
    }

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const EngineOptions& options() const { return opts_; }
    const InvariantCache* cache() const { return cache_.get(); }

    const Profile& profile(const std::string& text) { return profile(parse_expr(text)); }

    const Profile& profile(const ExprPtr& e)
    {
        std::string key = to_string(*e);
        if (auto it = profiles_.find(key); it != profiles_.end()) return *it->second;
        auto p = build_profile(e);
        auto& slot = profiles_[key];
        slot = std::move(p);
        return *slot;
    }

    RatioBounds bounds(const std::string& source, const std::string& channel)
    {
        return bounds(parse_expr(source), parse_expr(channel));
    }

    RatioBounds bounds(const ExprPtr& source, const ExprPtr& channel) { return bounds_at(source, channel, 0); }

private:
    using json = nlohmann::json;
    using K = Expr::Kind;

    EngineOptions opts_;
    std::unique_ptr<InvariantCache> cache_;
    std::vector<ExprPtr> pivots_;
    std::map<std::string, std::unique_ptr<Profile>> profiles_;
    std::map<std::string, RatioBounds> memo_;
    std::set<std::string> active_;

    // ---- invariants ----------------------------------------------------

    json inv_payload(const Profile& p, const char* kind) const
    {
        return json{{"invariant", kind}, {"graph", p.graph}, {"expr", p.label}};
    }

    std::optional<json> cache_get(const std::string& key) const
    {
        if (!cache_) return std::nullopt;
        return cache_->get(key);
    }

    void cache_put(const std::string& key, const json& v) const
    {
        if (cache_) cache_->put(key, v);
    }

    static std::vector<int> invert(const std::vector<int>& perm)
    {
        std::vector<int> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
        return inv;
    }

    // Relabels a vertex of g^j coordinate-wise.
    static int relabel_power_vertex(int x, const std::vector<int>& perm, std::size_t n, int j)
    {
        auto d = detail::digits(static_cast<std::size_t>(x), n, j);
        for (auto& v : d) v = perm[v];
        return static_cast<int>(detail::from_digits(d, n));
    }

    SetWitness alpha_of_power(const Graph& g, int j, const std::string& ckey, const std::vector<int>& lab)
    {
        std::string key = ckey + "|alpha|" + std::to_string(j);
        Graph gp = j == 1 ? g : strong_power(g, j);
        if (auto hit = cache_get(key)) {
            auto inv = invert(lab);
            std::vector<int> set;
            for (int x : hit->at("set").get<std::vector<int>>()) set.push_back(relabel_power_vertex(x, inv, g.n(), j));
            std::sort(set.begin(), set.end());
            bool distinct = std::adjacent_find(set.begin(), set.end()) == set.end();
            bool in_range = std::all_of(set.begin(), set.end(), [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < gp.n(); });
            if (distinct && in_range && is_independent(gp, set) && hit->value("optimal", false))
                return {set.size(), set};
        }
        auto w = independent_set_within(gp, opts_.budget);
        std::vector<int> canon;
        for (int x : w.vertices) canon.push_back(relabel_power_vertex(x, lab, g.n(), j));
        cache_put(key, json{{"set", canon}, {"optimal", w.optimal}});
        return w;
    }

    FractionalValue chibarf_cached(const Graph& g, const std::string& ckey, const std::vector<int>& lab)
    {
        std::string key = ckey + "|chibarf";
        Graph co = complement(g);
        if (auto hit = cache_get(key)) {
            try {
                auto inv = invert(lab);
                FractionalValue fv;
                fv.method = "cache";
                fv.value = parse_rational(hit->at("value").get<std::string>());
                for (const auto& s : hit->at("sets")) {
                    std::vector<int> set;
                    for (int x : s.get<std::vector<int>>()) set.push_back(inv.at(x));
                    std::sort(set.begin(), set.end());
                    fv.sets.push_back(set);
                }
                fv.weights = detail::rationals_from_json(hit->at("weights"));
                auto dual = detail::rationals_from_json(hit->at("dual"));
                fv.dual.assign(g.n(), 0);
                if (dual.size() == g.n())
                    for (std::size_t v = 0; v < g.n(); ++v) fv.dual[v] = dual[lab[v]];
                if (verify_fractional(co, fv)) return fv;
            } catch (const std::exception&) {
            }
        }
        FractionalOptions fo;
        fo.max_vertices = opts_.chibarf_max_vertices;
        auto fv = chi_bar_f(g, fo);
        json sets = json::array();
        for (const auto& s : fv.sets) {
            std::vector<int> c;
            for (int x : s) c.push_back(lab[x]);
            sets.push_back(c);
        }
        std::vector<Rational> dual(g.n());
        for (std::size_t v = 0; v < g.n(); ++v) dual[lab[v]] = fv.dual[v];
        cache_put(key, json{{"value", fv.value.get_str()},
                            {"sets", sets},
                            {"weights", detail::rationals_to_json(fv.weights)},
                            {"dual", detail::rationals_to_json(dual)}});
        return fv;
    }

    ThetaValue theta_cached(const Graph& g, const std::string& ckey, const std::vector<int>& lab)
    {
        std::string key = ckey + "|theta|" + std::to_string(opts_.tol);
        const auto n = static_cast<Eigen::Index>(g.n());
        auto edges = g.edges();
        if (auto hit = cache_get(key)) {
            try {
                ThetaValue tv = theta_from_json(*hit);
                // Stored in canonical labelling: B_canon(lab[i], lab[j]) = B(i, j).
                Eigen::MatrixXd b(n, n);
                for (Eigen::Index i = 0; i < n; ++i)
                    for (Eigen::Index k = 0; k < n; ++k) b(i, k) = tv.primal(lab[i], lab[k]);
                std::map<std::pair<int, int>, double> ym;
                auto cedges = hit->at("edges").get<std::vector<std::pair<int, int>>>();
                for (std::size_t e = 0; e < cedges.size(); ++e) ym[cedges[e]] = tv.edge_multipliers.at(e);
                std::vector<double> y;
                for (auto [u, v] : edges) y.push_back(ym.at({std::min(lab[u], lab[v]), std::max(lab[u], lab[v])}));
                tv.primal = b;
                tv.edge_multipliers = y;
                if (verify_theta(g, tv)) return tv;
            } catch (const std::exception&) {
            }
        }
        ThetaOptions to;
        to.tol = opts_.tol;
        to.max_vertices = opts_.theta_max_vertices;
        to.max_edges = opts_.theta_max_edges;
        ThetaValue tv = lovasz_theta(g, to);
        if (cache_) {
            Eigen::MatrixXd b(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index k = 0; k < n; ++k) b(lab[i], lab[k]) = tv.primal(i, k);
            json cedges = json::array();
            for (auto [u, v] : edges) cedges.push_back({std::min(lab[u], lab[v]), std::max(lab[u], lab[v])});
            cache_put(key, json{{"lo", tv.lo},
                                {"hi", tv.hi},
                                {"value", tv.value},
                                {"tol", tv.tol},
                                {"t", tv.t},
                                {"primal", detail::matrix_to_json(b)},
                                {"multipliers", tv.edge_multipliers},
                                {"edges", cedges}});
        }
        return tv;
    }

    std::unique_ptr<Profile> build_profile(const ExprPtr& e)
    {
        auto p = std::make_unique<Profile>();
        p->expr = e;
        p->label = to_string(*e);
        p->n = detail::expr_size(*e, opts_.max_vertices);

        // Sub-profiles feed the multiplicative rules.
        const Profile* a = nullptr;
        const Profile* b = nullptr;
        if (e->kind == K::strong || e->kind == K::disjoint_union) {
            a = &profile(e->kids[0]);
            b = &profile(e->kids[1]);
        } else if (e->kind == K::power) {
            a = &profile(e->kids[0]);
        }

        if (p->n <= opts_.max_vertices) {
            Graph g;
            if (e->kind == K::strong && a->g && b->g) g = strong_product(*a->g, *b->g);
            else if (e->kind == K::disjoint_union && a->g && b->g) g = disjoint_union(*a->g, *b->g);
            else if (e->kind == K::power && a->g) g = strong_power(*a->g, e->exponent);
            else g = evaluate(*e);
            g.set_name(p->label);
            p->graph = to_graph6(g);
            p->complete = g.is_complete();
            p->g = std::move(g);
        } else {
            p->notes.push_back("graph has more than " + std::to_string(opts_.max_vertices) +
                               " vertices; only product rules apply");
            if (e->kind == K::strong && a->complete && b->complete) p->complete = *a->complete && *b->complete;
            else if (e->kind == K::power && a->complete) p->complete = *a->complete;
            else if (e->kind == K::disjoint_union) p->complete = false;
        }

        std::string ckey;
        std::vector<int> lab;
        if (p->g && p->g->n() <= 400) {
            auto cf = canonical_form(*p->g);
            ckey = cf.key;
            lab = cf.labeling;
        }
        const bool cacheable = !ckey.empty();

        // χ̄_f
        if (e->kind == K::strong && a->chibarf && b->chibarf)
            p->chibarf = derive("chibarf_product", {a->chibarf, b->chibarf}, inv_payload(*p, "chibarf"));
        else if (e->kind == K::disjoint_union && a->chibarf && b->chibarf)
            p->chibarf = derive("chibarf_union", {a->chibarf, b->chibarf}, inv_payload(*p, "chibarf"));
        else if (e->kind == K::power && a->chibarf)
            p->chibarf = derive("chibarf_power", {a->chibarf}, merge(inv_payload(*p, "chibarf"), {{"power", e->exponent}}));
        else if (p->g && p->n <= opts_.chibarf_max_vertices) {
            try {
                FractionalValue fv;
                if (cacheable) fv = chibarf_cached(*p->g, ckey, lab);
                else {
                    FractionalOptions fo;
                    fo.max_vertices = opts_.chibarf_max_vertices;
                    fv = chi_bar_f(*p->g, fo);
                }
                json sets = json::array();
                for (const auto& s : fv.sets) sets.push_back(s);
                p->chibarf = derive("chibarf_lp", {},
                                    merge(inv_payload(*p, "chibarf"), {{"sets", sets},
                                                                       {"weights", detail::rationals_to_json(fv.weights)},
                                                                       {"dual", detail::rationals_to_json(fv.dual)}}));
            } catch (const Error& ex) {
                p->notes.push_back(std::string("fractional clique cover skipped: ") + ex.what());
            }
        }
        if (!p->complete && p->chibarf && p->chibarf->value.is_exact())
            p->complete = p->chibarf->value.sym->is_rational() && p->chibarf->value.sym->rational() == 1;

        // Θ lower bound.
        std::vector<CertPtr> lows;
        if (e->kind == K::strong && a->caplo && b->caplo)
            lows.push_back(derive("caplo_product", {a->caplo, b->caplo}, inv_payload(*p, "caplo")));
        else if (e->kind == K::disjoint_union && a->caplo && b->caplo)
            lows.push_back(derive("caplo_union", {a->caplo, b->caplo}, inv_payload(*p, "caplo")));
        else if (e->kind == K::power && a->caplo)
            lows.push_back(derive("caplo_power", {a->caplo}, merge(inv_payload(*p, "caplo"), {{"power", e->exponent}})));
        if (p->g) {
            auto reached_chibarf = [&]() {
                if (!p->chibarf || lows.empty()) return false;
                for (const auto& l : lows)
                    if (l->value.sym && p->chibarf->value.sym)
                        if (auto eq = formally_equal(*l->value.sym, *p->chibarf->value.sym); eq && *eq) return true;
                return false;
            };
            for (int j = 1; j <= opts_.max_power && !reached_chibarf(); ++j) {
                std::size_t sz = detail::power_size(p->g->n(), j, opts_.max_vertices);
                // Compound expressions already get powers of their parts through the product rules.
                if (j > 1 && (sz > opts_.power_vertex_cap || p->g->n() < 2 || a)) break;
                SetWitness w;
                if (cacheable) w = alpha_of_power(*p->g, j, ckey, lab);
                else w = independent_set_within(j == 1 ? *p->g : strong_power(*p->g, j), opts_.budget);
                lows.push_back(derive("alpha_power", {},
                                      merge(inv_payload(*p, "caplo"), {{"power", j}, {"set", w.vertices}})));
            }
        }
        if (lows.size() == 1) p->caplo = lows[0];
        else if (lows.size() > 1) p->caplo = derive("caplo_max", lows, inv_payload(*p, "caplo"));

        // ϑ
        build_theta(*p, e, a, b, cacheable, ckey, lab);

        // Θ interval.
        if (p->caplo) {
            std::vector<CertPtr> prem{p->caplo};
            json roles = json::array({"lower"});
            if (p->theta) prem.push_back(p->theta), roles.push_back("theta");
            if (p->chibarf) prem.push_back(p->chibarf), roles.push_back("chibarf");
            p->capacity = derive("capacity", prem, merge(inv_payload(*p, "capacity"), {{"tol", opts_.tol}, {"roles", roles}}));
        }

        // Minrank over GF(2).
        if (p->g && p->g->n() >= 1 && p->g->n() <= opts_.minrank_max_vertices) {
            MinrankOptions mo;
            mo.max_vertices = opts_.minrank_max_vertices;
            auto mv = minrank_gf2(*p->g, mo);
            p->minrank = derive("minrank_power", {},
                                merge(inv_payload(*p, "minrank"), {{"rank", mv.value}, {"power", 1}, {"matrix", mv.matrix}}));
        }
        return p;
    }

    static json merge(json base, const json& extra)
    {
        for (auto it = extra.begin(); it != extra.end(); ++it) base[it.key()] = it.value();
        return base;
    }

    void build_theta(Profile& p, const ExprPtr& e, const Profile* a, const Profile* b, bool cacheable,
                     const std::string& ckey, const std::vector<int>& lab)
    {
        std::vector<CertPtr> prem;
        json roles = json::array();
        auto add = [&](CertPtr c, const char* role) {
            prem.push_back(std::move(c));
            roles.push_back(role);
        };
        CertPtr structural;
        if (e->kind == K::strong && a->theta && b->theta)
            structural = derive("theta_product", {a->theta, b->theta}, inv_payload(p, "theta"));
        else if (e->kind == K::disjoint_union && a->theta && b->theta)
            structural = derive("theta_union", {a->theta, b->theta}, inv_payload(p, "theta"));
        else if (e->kind == K::power && a->theta)
            structural = derive("theta_power", {a->theta}, merge(inv_payload(p, "theta"), {{"power", e->exponent}}));
        if (structural) add(structural, "bracket");

        bool sandwich_closed = false;
        if (p.caplo && p.chibarf && p.caplo->value.sym && p.chibarf->value.sym)
            if (auto eq = formally_equal(*p.caplo->value.sym, *p.chibarf->value.sym); eq && *eq) sandwich_closed = true;

        const bool structural_exact = structural && structural->value.is_exact();
        if (!sandwich_closed && !structural_exact && p.g && p.g->n() <= opts_.theta_max_vertices &&
            p.g->edge_count() <= opts_.theta_max_edges && p.g->n() >= 1) {
            try {
                ThetaValue tv = cacheable ? theta_cached(*p.g, ckey, lab) : [&] {
                    ThetaOptions to;
                    to.tol = opts_.tol;
                    to.max_vertices = opts_.theta_max_vertices;
                    to.max_edges = opts_.theta_max_edges;
                    return lovasz_theta(*p.g, to);
                }();
                json pl = merge(inv_payload(p, "theta"),
                                {{"lo", tv.lo}, {"hi", tv.hi}, {"value", tv.value}, {"tol", tv.tol}, {"t", tv.t}});
                if (p.g->n() <= opts_.witness_max_vertices) {
                    pl["primal"] = detail::matrix_to_json(tv.primal);
                    pl["multipliers"] = tv.edge_multipliers;
                }
                add(derive("theta_sdp", {}, pl), "bracket");

                // Exact rational witnesses at nearby rational candidates.
                if (p.g->n() <= opts_.exact_theta_max_vertices) {
                    std::vector<Rational> cands;
                    auto consider = [&](const std::optional<Real>& r) {
                        if (r && r->is_rational()) cands.push_back(r->rational());
                    };
                    if (p.caplo) consider(p.caplo->value.sym);
                    if (p.chibarf) consider(p.chibarf->value.sym);
                    if (auto q = rationalize(tv.value, 10 * opts_.tol, 1000)) cands.push_back(*q);
                    std::sort(cands.begin(), cands.end());
                    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
                    for (const auto& t : cands) {
                        double td = t.get_d();
                        if (td < tv.lo - 2 * opts_.tol || td > tv.hi + 2 * opts_.tol) continue;
                        auto ex = exact_theta(*p.g, tv, t, {opts_.exact_theta_max_vertices});
                        if (ex.dual) {
                            add(derive("theta_exact_dual", {},
                                       merge(inv_payload(p, "theta_upper"),
                                             {{"t", t.get_str()}, {"y", detail::rationals_to_json(*ex.dual)}})),
                                "dual");
                        }
                        if (ex.primal) {
                            json m = json::array();
                            for (const auto& row : *ex.primal) m.push_back(detail::rationals_to_json(row));
                            add(derive("theta_exact_primal", {},
                                       merge(inv_payload(p, "theta_lower"), {{"t", t.get_str()}, {"b", m}})),
                                "primal");
                        }
                        if (ex.dual) break;
                    }
                    // Quadratic irrational candidates √d.
                    std::vector<Rational> ds;
                    auto consider_root = [&](const std::optional<Real>& r) {
                        if (r && r->kind() == Real::Kind::root && r->root_value().m == 2) ds.push_back(r->root_value().base);
                    };
                    if (p.caplo) consider_root(p.caplo->value.sym);
                    if (p.chibarf) consider_root(p.chibarf->value.sym);
                    if (auto q = rationalize(tv.value * tv.value, 20 * opts_.tol * std::max(1.0, tv.value), 1000))
                        ds.push_back(*q);
                    std::sort(ds.begin(), ds.end());
                    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
                    for (const auto& d : ds) {
                        if (is_rational_square(d)) continue;
                        double td = std::sqrt(d.get_d());
                        if (td < tv.lo - 2 * opts_.tol || td > tv.hi + 2 * opts_.tol) continue;
                        if (auto y = quadratic_theta_dual(*p.g, tv, d, {opts_.exact_theta_max_vertices})) {
                            add(derive("theta_quadratic_dual", {},
                                       merge(inv_payload(p, "theta_upper"), {{"d", d.get_str()}, {"y", detail::quad_to_json(*y)}})),
                                "dual");
                            break;
                        }
                    }
                }
            } catch (const Error& ex) {
                p.notes.push_back(std::string("theta solver skipped: ") + ex.what());
            }
        }
        if (p.caplo) add(p.caplo, "lower");
        if (p.chibarf) add(p.chibarf, "chibarf");
        if (prem.empty()) return;
        p.theta = derive("theta", prem, merge(inv_payload(p, "theta"), {{"tol", opts_.tol}, {"roles", roles}}));
    }

    // ---- bounds --------------------------------------------------------

    static bool same_graph(const Profile& x, const Profile& y)
    {
        if (x.label == y.label) return true;
        return x.g && y.g && *x.g == *y.g;
    }

    static std::pair<ExprPtr, int> base_power(const ExprPtr& e)
    {
        if (e->kind == K::power) return {e->kids[0], e->exponent};
        return {e, 1};
    }

    static double rate_value(const CertPtr& c) { return c->value.iv.lo; }

    RatioBounds bounds_at(const ExprPtr& s, const ExprPtr& c, int depth)
    {
        std::string key = to_string(*s) + "\x1f" + to_string(*c) + "\x1f" + std::to_string(depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const Profile& S = profile(s);
        const Profile& C = profile(c);
        if (active_.count(key)) return trivial(S, C);
        active_.insert(key);
        RatioBounds rb = compute(s, c, S, C, depth);
        active_.erase(key);
        memo_.emplace(key, rb);
        return rb;
    }

    json bound_payload(const Profile& S, const Profile& C, const char* side) const
    {
        return json{{"side", side}, {"source", S.graph}, {"channel", C.graph}, {"source_expr", S.label},
                    {"channel_expr", C.label}};
    }

    RatioBounds trivial(const Profile& S, const Profile& C) const
    {
        RatioBounds rb;
        rb.source = S.label;
        rb.channel = C.label;
        rb.lower = derive("trivial_lower", {}, bound_payload(S, C, "lower"));
        rb.upper = derive("trivial_upper", {}, bound_payload(S, C, "upper"));
        return rb;
    }

    RatioBounds compute(const ExprPtr& s, const ExprPtr& c, const Profile& S, const Profile& C, int depth)
    {
        RatioBounds rb;
        rb.source = S.label;
        rb.channel = C.label;
        std::vector<CertPtr> lows, ups;
        auto lower = [&](const std::string& rule, std::vector<CertPtr> prem, const json& extra = json::object()) {
            lows.push_back(derive(rule, std::move(prem), merge(bound_payload(S, C, "lower"), extra)));
        };
        auto upper = [&](const std::string& rule, std::vector<CertPtr> prem, const json& extra = json::object()) {
            ups.push_back(derive(rule, std::move(prem), merge(bound_payload(S, C, "upper"), extra)));
        };
        // Identities map bounds on the rewritten pair to both sides.
        auto both = [&](const std::string& rule, const RatioBounds& sub, const json& extra = json::object()) {
            lower(rule, {sub.lower}, extra);
            upper(rule, {sub.upper}, extra);
        };

        for (const auto& n : S.notes) rb.notes.push_back(S.label + ": " + n);
        for (const auto& n : C.notes) rb.notes.push_back(C.label + ": " + n);

        const bool s_complete = S.complete.value_or(false);
        const bool c_complete = C.complete.value_or(false);
        if (s_complete) {
            rb.flags.push_back("source_complete");
            if (c_complete) rb.flags.push_back("both_complete");
            rb.lower = derive("source_complete", {}, bound_payload(S, C, "lower"));
            rb.upper = derive("trivial_upper", {}, bound_payload(S, C, "upper"));
            return rb;
        }
        if (c_complete) {
            rb.flags.push_back("channel_complete");
            rb.lower = derive("trivial_lower", {}, bound_payload(S, C, "lower"));
            rb.upper = derive("channel_complete", {}, bound_payload(S, C, "upper"));
            return rb;
        }
        if (!S.complete || !C.complete) rb.flags.push_back("completeness_unknown");

        lower("trivial_lower", {});
        upper("trivial_upper", {});

        // Identical pair up to relabelling: a (1,1) code.
        if (S.g && C.g && S.n == C.n && S.n <= 400)
            if (auto iso = find_isomorphism(*S.g, *C.g)) {
                CodeMap cm{*S.g, 1, *C.g, 1, {}};
                for (int x : *iso) cm.map.push_back(static_cast<std::size_t>(x));
                if (verify_code(cm)) lower("code", {}, {{"code", code_json(cm)}});
            }

        // Disjoint unions of cliques.
        if (S.g && C.g) {
            std::size_t sc = 0, tc = 0;
            if (detail::all_components_cliques(*S.g, sc) && detail::all_components_cliques(*C.g, tc) && sc >= 2) {
                json x{{"s", sc}, {"t", tc}};
                lower("clique_union", {}, x);
                upper("clique_union", {}, x);
            }
        }

        // Powers of one graph.
        {
            auto [sb, m2] = base_power(s);
            auto [cb, m1] = base_power(c);
            if ((m1 > 1 || m2 > 1) && (to_string(*sb) == to_string(*cb))) {
                const Profile& B = profile(sb);
                json x{{"m1", m1}, {"m2", m2}, {"base", B.graph}};
                lower("power_ratio", {}, x);
                upper("power_ratio", {}, x);
            }
        }

        // Product identities and inequalities on the channel side.
        if (c->kind == K::strong) {
            const Profile& A = profile(c->kids[0]);
            const Profile& B = profile(c->kids[1]);
            for (int side = 0; side < 2; ++side) {
                const Profile& X = side == 0 ? A : B;
                const ExprPtr& other = c->kids[1 - side];
                if (same_graph(X, S)) {
                    both("source_factor", bounds_at(s, other, depth));
                    break;
                }
            }
            auto ra = bounds_at(s, c->kids[0], depth), rb2 = bounds_at(s, c->kids[1], depth);
            lower("product_lower", {ra.lower, rb2.lower});
            if (depth == 0) weak_sum(s, c, S, depth, upper);
        }
        if (c->kind == K::power) {
            auto sub = bounds_at(s, c->kids[0], depth);
            both("channel_power", sub, {{"power", c->exponent}});
        }
        if (c->kind == K::disjoint_union && S.chibarf && S.chibarf->value.iv.lo > 1) {
            const Profile& A = profile(c->kids[0]);
            const Profile& B = profile(c->kids[1]);
            if (same_graph(A, S) && same_graph(B, S)) {
                lower("ff_channel", {S.chibarf});
                upper("ff_channel", {S.chibarf});
            }
            auto ra = bounds_at(s, c->kids[0], depth), rb2 = bounds_at(s, c->kids[1], depth);
            lower("power_union_lower", {ra.lower, rb2.lower, S.chibarf});
        }

        // Source side.
        if (s->kind == K::strong) {
            const Profile& A = profile(s->kids[0]);
            const Profile& B = profile(s->kids[1]);
            for (int side = 0; side < 2; ++side) {
                const Profile& X = side == 0 ? A : B;
                const ExprPtr& other = s->kids[1 - side];
                if (same_graph(X, C)) {
                    both("channel_factor", bounds_at(other, c, depth));
                    break;
                }
            }
            auto ra = bounds_at(s->kids[0], c, depth), rb2 = bounds_at(s->kids[1], c, depth);
            lower("reverse_product_lower", {ra.lower, rb2.lower});
            if (depth == 0) weak_harmonic(s, c, C, depth, upper);
        }
        if (s->kind == K::power) {
            auto sub = bounds_at(s->kids[0], c, depth);
            both("source_power", sub, {{"power", s->exponent}});
        }
        if (s->kind == K::disjoint_union) {
            const Profile& A = profile(s->kids[0]);
            const Profile& B = profile(s->kids[1]);
            if (same_graph(A, C) && same_graph(B, C) && C.caplo && C.capacity) {
                lower("ff_source", {C.caplo});
                upper("ff_source", {C.capacity});
            }
        }

        // Separation through bits.
        if (C.caplo && S.chibarf && S.chibarf->value.iv.lo > 1) lower("separation", {C.caplo, S.chibarf});

        // Hom-monotone upper bounds.
        if (C.chibarf && S.chibarf && S.chibarf->value.iv.lo > 1) upper("upper_chibarf", {C.chibarf, S.chibarf});
        if (C.theta && S.theta && S.theta->value.iv.lo > 1 && std::isfinite(C.theta->value.iv.hi))
            upper("upper_theta", {C.theta, S.theta});
        if (C.capacity && S.capacity && C.capacity->value.kind != Exactness::numeric &&
            S.capacity->value.kind != Exactness::numeric && S.capacity->value.iv.lo > 1)
            upper("upper_capacity", {C.capacity, S.capacity});
        if (C.minrank && S.caplo && S.caplo->value.iv.lo > 1) upper("upper_minrank", {C.minrank, S.caplo});
        if (depth <= 1) {
            auto rev = bounds_at(c, s, depth + 1);
            if (rev.lower->value.iv.lo > 0) upper("reciprocal", {rev.lower});
        }

        // Concatenation through pivots.
        if (depth == 0) {
            for (const auto& pv : pivots_) {
                std::string pl = to_string(*pv);
                if (pl == S.label || pl == C.label) continue;
                auto l1 = bounds_at(s, pv, 1), l2 = bounds_at(pv, c, 1);
                if (l1.lower->value.iv.lo > 0 && l2.lower->value.iv.lo > 0 && std::isfinite(l1.lower->value.iv.lo) &&
                    std::isfinite(l2.lower->value.iv.lo))
                    lower("concatenation", {l1.lower, l2.lower});
            }
        }

        // Explicit codes between the current lower and upper.
        if (depth <= 1 && S.g && C.g) {
            auto best_lo = *std::max_element(lows.begin(), lows.end(), [](auto& x, auto& y) { return detail::better_lower(y, x); });
            auto best_up = *std::max_element(ups.begin(), ups.end(), [](auto& x, auto& y) { return detail::better_upper(y, x); });
            search_codes(S, C, best_lo->value.iv.lo, best_up->value.iv.hi, lower, rb);
        }

        // Cores of complements.
        if (depth == 0 && opts_.core_reduction) core_reduce(S, C, lower, upper, rb);

        rb.lower = *std::max_element(lows.begin(), lows.end(), [](auto& x, auto& y) { return detail::better_lower(y, x); });
        rb.upper = *std::max_element(ups.begin(), ups.end(), [](auto& x, auto& y) { return detail::better_upper(y, x); });
        if (rb.lower->value.iv.lo > rb.upper->value.iv.hi + 1e-9 * std::max(1.0, rb.upper->value.iv.hi))
            throw std::logic_error("inconsistent bounds for " + S.label + " -> " + C.label + ": lower " +
                                   rb.lower->rule + " " + rb.lower->value.str() + " exceeds upper " + rb.upper->rule +
                                   " " + rb.upper->value.str());
        return rb;
    }

    static json code_json(const CodeMap& cm)
    {
        return json{{"k", cm.k}, {"n", cm.n}, {"map", cm.map}};
    }

    template <class Lower>
    void search_codes(const Profile& S, const Profile& C, double lo, double hi, Lower& lower, RatioBounds& rb)
    {
        struct Cell {
            int k, n;
        };
        std::vector<Cell> cells;
        for (int n = 1; n <= opts_.code_nmax; ++n)
            for (int k = 1; k <= opts_.code_kmax; ++k) {
                if (std::gcd(k, n) != 1) continue;
                double r = static_cast<double>(k) / n;
                if (r <= lo + 1e-12 || r > hi + 1e-12) continue;
                if (detail::power_size(S.n, k, opts_.code_max_source) > opts_.code_max_source) continue;
                if (detail::power_size(C.n, n, opts_.code_max_target) > opts_.code_max_target) continue;
                cells.push_back({k, n});
            }
        std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
            return static_cast<long>(x.k) * y.n > static_cast<long>(y.k) * x.n;
        });
        std::vector<Cell> impossible;
        for (const auto& cell : cells) {
            bool blocked = false;
            for (const auto& x : impossible)
                if (x.k <= cell.k && x.n >= cell.n) blocked = true;
            if (blocked) continue;
            CodeOptions co;
            co.max_source = opts_.code_max_source;
            co.max_target = opts_.code_max_target;
            try {
                auto r = find_code(*S.g, *C.g, cell.k, cell.n, opts_.code_budget, co);
                if (r.status == SearchStatus::found) {
                    lower("code", {}, {{"code", code_json(*r.code)}});
                    return;
                }
                if (r.status == SearchStatus::none) impossible.push_back(cell);
                else
                    rb.notes.push_back("code search (" + std::to_string(cell.k) + "," + std::to_string(cell.n) +
                                       ") inconclusive");
            } catch (const SizeLimitError&) {
            }
        }
    }

    // Complement cores; hom maps both ways certify the reduction.
    struct Reduction {
        ExprPtr expr;
        std::vector<int> to, from;
    };

    std::optional<Reduction> reduce(const Profile& P)
    {
        if (!P.g || P.g->n() > opts_.core_max_vertices || P.g->n() < 2) return std::nullopt;
        Graph co = complement(*P.g);
        auto cr = core_of(co, opts_.budget);
        if (cr.core.n() >= co.n()) return std::nullopt;
        Graph reduced = complement(cr.core);
        Reduction r;
        r.expr = Expr::literal(reduced, "g6:" + to_graph6(reduced));
        r.to = cr.retraction;
        r.from = cr.vertices;
        HomMap h1{co, cr.core, r.to}, h2{cr.core, co, r.from};
        if (!h1.verify() || !h2.verify()) return std::nullopt;
        return r;
    }

    template <class Lower, class Upper>
    void core_reduce(const Profile& S, const Profile& C, Lower& lower, Upper& upper, RatioBounds& rb)
    {
        auto rs = reduce(S);
        auto rc = reduce(C);
        if (!rs && !rc) return;
        auto identity = [](const Profile& P) {
            std::vector<int> id(P.n);
            for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
            return id;
        };
        ExprPtr s2 = rs ? rs->expr : S.expr;
        ExprPtr c2 = rc ? rc->expr : C.expr;
        auto sub = bounds_at(s2, c2, 0);
        json x{{"source_to", rs ? rs->to : identity(S)},
               {"source_from", rs ? rs->from : identity(S)},
               {"channel_to", rc ? rc->to : identity(C)},
               {"channel_from", rc ? rc->from : identity(C)}};
        lower("core_reduction", {sub.lower}, x);
        upper("core_reduction", {sub.upper}, x);
        rb.notes.push_back("reduced to complement cores: " + to_string(*s2) + " -> " + to_string(*c2));
    }

    // Ir(A/B) Ir(B/A) >= 1 certified from two lower bounds.
    CertPtr weak_certificate(const ExprPtr& x, const ExprPtr& y)
    {
        auto xy = bounds_at(x, y, 1), yx = bounds_at(y, x, 1);
        const Profile& X = profile(x);
        const Profile& Y = profile(y);
        json pl{{"side", "weak"}, {"first", X.graph}, {"second", Y.graph}, {"first_expr", X.label}, {"second_expr", Y.label}};
        auto w = derive("weak_equivalence", {xy.lower, yx.lower}, pl);
        if (!detail::certified_at_least_one(w->value)) return nullptr;
        return w;
    }

    CertPtr weak_among(const ExprPtr& f, const ExprPtr& g, const ExprPtr& h)
    {
        for (auto [x, y] : {std::pair{g, h}, std::pair{f, g}, std::pair{f, h}})
            if (auto w = weak_certificate(x, y)) return w;
        return nullptr;
    }

    // Ir(G⊠H/F) = Ir(G/F) + Ir(H/F) under weak equivalence of one pair.
    template <class Upper>
    void weak_sum(const ExprPtr& f, const ExprPtr& gh, const Profile&, int depth, Upper& upper)
    {
        const ExprPtr& g = gh->kids[0];
        const ExprPtr& h = gh->kids[1];
        auto w = weak_among(f, g, h);
        if (!w) return;
        auto a = bounds_at(f, g, depth + 1), b = bounds_at(f, h, depth + 1);
        upper("weak_sum_upper", {a.upper, b.upper, w});
    }

    // Ir(F/G⊠H) = harmonic combination under weak equivalence of one pair.
    template <class Upper>
    void weak_harmonic(const ExprPtr& gh, const ExprPtr& f, const Profile&, int depth, Upper& upper)
    {
        const ExprPtr& g = gh->kids[0];
        const ExprPtr& h = gh->kids[1];
        auto w = weak_among(f, g, h);
        if (!w) return;
        auto a = bounds_at(g, f, depth + 1), b = bounds_at(h, f, depth + 1);
        upper("weak_harmonic_upper", {a.upper, b.upper, w});
    }
};

inline nlohmann::json quantity_report(const CertPtr& c, bool with_certificate)
{
    nlohmann::json j = c->value.to_json();
    j["value"] = c->value.str();
    j["rule"] = c->rule;
    if (with_certificate) j["certificate"] = certificate_to_json(c);
    return j;
}

inline nlohmann::json to_json(const RatioBounds& rb, bool with_certificates = true)
{
    return nlohmann::json{{"pair", {{"source", rb.source}, {"channel", rb.channel}}},
                          {"lower", quantity_report(rb.lower, with_certificates)},
                          {"upper", quantity_report(rb.upper, with_certificates)},
                          {"closed", rb.closed()},
                          {"exactness", to_string(rb.exactness())},
                          {"flags", rb.flags},
                          {"notes", rb.notes}};
}

} // namespace irkit
