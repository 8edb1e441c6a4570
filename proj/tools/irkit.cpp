#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "irkit/irkit.hpp"

using namespace irkit;
using nlohmann::json;

namespace {

enum Exit { ok = 0, internal = 1, usage = 2, inconclusive = 3, limit = 4, solver = 5 };

struct Config {
    double tol = 1e-6;
    std::uint64_t budget_nodes = 2'000'000;
    double budget_secs = 0;
    int max_power = 2;
    std::string cache_dir;
    std::string format = "text";
    std::string pivots = "Kbar(2),Kbar(3)";
    bool certificates = false;
};

EngineOptions engine_options(const Config& c)
{
    EngineOptions o;
    o.tol = c.tol;
    o.budget = Budget{c.budget_nodes, c.budget_secs};
    o.code_budget = Budget{std::min<std::uint64_t>(c.budget_nodes, o.code_budget.nodes), c.budget_secs};
    o.max_power = c.max_power;
    o.cache_dir = c.cache_dir;
    o.pivots.clear();
    // Pivot expressions may contain commas inside parentheses.
    std::string cur;
    int depth = 0;
    for (char ch : c.pivots) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            if (!cur.empty()) o.pivots.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) o.pivots.push_back(cur);
    for (const auto& p : o.pivots) parse_expr(p);
    return o;
}

bool json_out(const Config& c) { return c.format == "json"; }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string interval_text(const Quantity& q)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.9g", q.approx());
    std::string s = q.str();
    if (q.sym && q.kind != Exactness::numeric) s += " = " + std::string(buf);
    return s;
}

void print_bounds(const RatioBounds& rb)
{
    std::cout << "Ir(" << rb.channel << " / " << rb.source << ")\n";
    std::cout << "  lower: " << interval_text(rb.lower->value) << "   [" << rb.lower->rule << "]\n";
    std::cout << "  upper: " << interval_text(rb.upper->value) << "   [" << rb.upper->rule << "]\n";
    std::cout << "  " << (rb.closed() ? "closed" : "open") << ", " << to_string(rb.exactness()) << "\n";
    for (const auto& f : rb.flags) std::cout << "  flag: " << f << "\n";
    for (const auto& n : rb.notes) std::cout << "  note: " << n << "\n";
}

int cmd_invariant(const Config& cfg, const std::string& text, std::vector<std::string> names)
{
    Engine eng(engine_options(cfg));
    const Profile& p = eng.profile(text);
    if (!p.g) throw SizeLimitError("graph too large to materialize");
    const Graph& g = *p.g;
    if (names.empty()) names = {"n", "edges", "alpha", "chibarf", "theta", "capacity"};
    json out{{"expr", p.label}};
    bool conclusive = true;
    auto cert_value = [&](const CertPtr& c) -> json {
        if (!c) {
            conclusive = false;
            return nullptr;
        }
        return quantity_report(c, cfg.certificates);
    };
    for (const auto& name : names) {
        if (name == "n") out["n"] = g.n();
        else if (name == "edges") out["edges"] = g.edge_count();
        else if (name == "graph6") out["graph6"] = to_graph6(g);
        else if (name == "alpha" || name == "omega") {
            auto w = independent_set_within(name == "alpha" ? g : complement(g), Budget{cfg.budget_nodes, cfg.budget_secs});
            out[name] = {{"value", w.value}, {"witness", w.vertices}, {"optimal", w.optimal}};
            conclusive = conclusive && w.optimal;
        } else if (name == "chibarf") out["chibarf"] = cert_value(p.chibarf);
        else if (name == "chif") {
            auto fv = fractional_chromatic(g);
            out["chif"] = {{"value", fv.value.get_str()}, {"approx", fv.value.get_d()}};
        } else if (name == "theta") out["theta"] = cert_value(p.theta);
        else if (name == "caplo") out["caplo"] = cert_value(p.caplo);
        else if (name == "capacity") {
            out["capacity"] = cert_value(p.capacity);
            if (p.capacity && !p.capacity->value.is_exact()) conclusive = false;
        } else if (name == "minrank") {
            auto mv = minrank_gf2(g, {std::max<std::size_t>(12, g.n())});
            out["minrank"] = {{"value", mv.value}, {"field", "GF(2)"}};
        } else if (name == "chromatic") out["chromatic"] = chromatic_number(g).colors;
        else if (name == "clique_cover") out["clique_cover"] = clique_cover_number(g);
        else throw InvalidArgument("unknown invariant '" + name + "'");
    }
    if (json_out(cfg)) print(out);
    else {
        std::cout << out["expr"].get<std::string>() << "\n";
        for (auto it = out.begin(); it != out.end(); ++it) {
            if (it.key() == "expr") continue;
            const json& v = it.value();
            std::cout << "  " << it.key() << ": ";
            if (v.is_object() && v.contains("rule")) std::cout << v.at("value").get<std::string>() << "   [" << v.at("rule").get<std::string>() << "]";
            else if (v.is_object() && v.contains("value")) std::cout << v.at("value").dump();
            else std::cout << v.dump();
            std::cout << "\n";
        }
    }
    return conclusive ? ok : inconclusive;
}

int cmd_bounds(const Config& cfg, const std::string& s, const std::string& c, bool verify)
{
    Engine eng(engine_options(cfg));
    auto rb = eng.bounds(s, c);
    std::optional<VerifyReport> vr;
    if (verify) vr = verify_bounds(rb);
    if (json_out(cfg)) {
        json j = to_json(rb, cfg.certificates);
        if (vr) j["verification"] = vr->to_json();
        print(j);
    } else {
        print_bounds(rb);
        if (vr) std::cout << "  verification: " << (vr->ok ? "ok" : "FAILED: " + vr->error) << " (" << vr->nodes << " nodes)\n";
    }
    if (vr && !vr->ok) return internal;
    return rb.closed() ? ok : inconclusive;
}

int cmd_tables(const Config& cfg)
{
    Engine eng(engine_options(cfg));
    auto rows = reference_tables(eng);
    std::size_t fails = 0;
    json arr = json::array();
    for (const auto& r : rows) {
        fails += !r.pass;
        arr.push_back(to_json(r));
    }
    if (json_out(cfg)) print({{"rows", arr}, {"failures", fails}});
    else {
        std::string group;
        for (const auto& r : rows) {
            if (r.group != group) std::cout << (group.empty() ? "" : "\n") << "== " << (group = r.group) << "\n";
            std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.item << "\n      expected: " << r.expected
                      << "\n      computed: " << r.computed << "\n";
        }
        std::cout << "\n" << rows.size() - fails << "/" << rows.size() << " rows pass\n";
    }
    return fails ? internal : ok;
}

int cmd_code_search(const Config& cfg, const std::string& s, const std::string& c, int kmax, int nmax, bool csv)
{
    Graph g = parse_graph(s), h = parse_graph(c);
    auto fr = ratio_frontier(g, h, kmax, nmax, Budget{cfg.budget_nodes, cfg.budget_secs});
    if (csv) {
        std::cout << "k,n,status,inferred,note\n";
        for (const auto& cell : fr.cells)
            std::cout << cell.k << ',' << cell.n << ',' << to_string(cell.status) << ',' << cell.inferred << ",\"" << cell.note << "\"\n";
    } else if (json_out(cfg)) {
        json cells = json::array();
        for (const auto& cell : fr.cells) {
            json j{{"k", cell.k}, {"n", cell.n}, {"status", to_string(cell.status)}, {"inferred", cell.inferred}, {"note", cell.note}};
            if (cell.code && cfg.certificates) j["map"] = cell.code->map;
            cells.push_back(j);
        }
        json j{{"source", s}, {"channel", c}, {"cells", cells}};
        if (fr.best) j["best"] = {{"k", fr.best_k}, {"n", fr.best_n}, {"rate", fr.best->get_str()}};
        print(j);
    } else {
        std::cout << "codes " << s << "^k -> " << c << "^n\n     ";
        for (int k = 1; k <= kmax; ++k) std::cout << " k=" << k << "         ";
        std::cout << "\n";
        for (int n = 1; n <= nmax; ++n) {
            std::cout << "n=" << n << "  ";
            for (int k = 1; k <= kmax; ++k) {
                const auto* cell = fr.cell(k, n);
                std::string t = to_string(cell->status);
                if (cell->inferred) t += "*";
                t.resize(14, ' ');
                std::cout << t;
            }
            std::cout << "\n";
        }
        std::cout << "(* inferred from a neighbouring cell)\n";
        if (fr.best) std::cout << "best rate " << fr.best->get_str() << " at (" << fr.best_k << "," << fr.best_n << ")\n";
    }
    for (const auto& cell : fr.cells)
        if (cell.status == SearchStatus::inconclusive) return inconclusive;
    return ok;
}

int cmd_core(const Config& cfg, const std::string& text)
{
    Graph g = parse_graph(text);
    Budget b{cfg.budget_nodes, cfg.budget_secs};
    auto cg = core_of(g, b);
    auto cc = core_of(complement(g), b);
    auto describe = [](const CoreResult& r) {
        return json{{"status", to_string(r.status)}, {"n", r.core.n()}, {"edges", r.core.edge_count()},
                    {"graph6", to_graph6(r.core)}, {"vertices", r.vertices}, {"retraction", r.retraction}};
    };
    json j{{"expr", text}, {"core", describe(cg)}, {"complement_core", describe(cc)}};
    if (json_out(cfg)) print(j);
    else {
        auto line = [](const char* what, const CoreResult& r) {
            std::cout << what << ": " << r.core.n() << " vertices, " << r.core.edge_count() << " edges, graph6 "
                      << to_graph6(r.core) << " (" << to_string(r.status) << ")\n";
        };
        std::cout << text << "\n";
        line("  core", cg);
        line("  core of complement", cc);
        std::cout << "  Ir depends on " << text << " only through the core of its complement\n";
    }
    return cg.status == SearchStatus::found && cc.status == SearchStatus::found ? ok : inconclusive;
}

int cmd_equiv(const Config& cfg, const std::string& a, const std::string& b)
{
    Engine eng(engine_options(cfg));
    auto r = equivalence_check(eng, a, b);
    if (json_out(cfg)) print(to_json(r, cfg.certificates));
    else {
        auto m = metric_eval(r.ab, r.ba);
        std::cout << "information equivalence: " << to_string(r.information) << "\n"
                  << "weak equivalence:        " << to_string(r.weak) << "\n"
                  << "L(" << r.a << ") <= L(" << r.b << "): " << to_string(r.a_below_b) << "\n"
                  << "L(" << r.b << ") <= L(" << r.a << "): " << to_string(r.b_below_a) << "\n";
        if (r.incomparable()) std::cout << "incomparable in the information order\n";
        std::cout << "d   in [" << m.d.lo << ", " << m.d.hi << "]\n"
                  << "d_w in [" << m.d_w.lo << ", " << m.d_w.hi << "]\n";
        print_bounds(r.ab);
        print_bounds(r.ba);
    }
    return r.information == Verdict::unknown ? inconclusive : ok;
}

int cmd_critical(const Config& cfg, const std::string& text)
{
    Engine eng(engine_options(cfg));
    CriticalityOptions co;
    co.max_power = cfg.max_power;
    co.budget = Budget{cfg.budget_nodes, cfg.budget_secs};
    auto r = criticality_check(eng, text, co);
    std::string why;
    bool verified = r.critical && verify_criticality(*eng.profile(text).g, r, &why);
    json j = to_json(r);
    j["verified"] = verified;
    if (json_out(cfg)) print(j);
    else {
        std::cout << r.graph << ": " << (r.critical ? "certified_critical" : "unknown") << "\n";
        if (r.chibarf) std::cout << "  chibarf = " << r.chibarf->value.str() << "\n";
        if (!r.method.empty()) std::cout << "  method: " << r.method << "\n";
        if (r.edge) {
            std::cout << "  edge {" << r.edge->first << "," << r.edge->second << "}: independent set of size " << r.set.size()
                      << " in power " << r.power << ":";
            for (int v : r.set) std::cout << ' ' << v;
            std::cout << "\n";
        }
        if (r.critical) std::cout << "  witness " << (verified ? "re-verified" : "REJECTED: " + why) << "\n";
        for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
    }
    if (r.critical && !verified) return internal;
    return r.critical ? ok : inconclusive;
}

int cmd_spectra(const Config& cfg, const std::string& text, const std::vector<std::string>& cores)
{
    Engine eng(engine_options(cfg));
    auto sp = spectra(eng, text, cores.empty() ? default_reference_cores() : cores);
    bool closed = true;
    json arr = json::array();
    for (const auto& e : sp) {
        closed = closed && e.source.closed() && e.channel.closed();
        arr.push_back({{"core", e.core}, {"source", to_json(e.source, false)}, {"channel", to_json(e.channel, false)}});
    }
    if (json_out(cfg)) print({{"expr", text}, {"spectra", arr}});
    else {
        std::cout << "spectra of " << text << " against complements of reference cores\n";
        for (const auto& e : sp) {
            auto iv = [](const RatioBounds& rb) {
                char buf[80];
                std::snprintf(buf, sizeof buf, "[%.6g, %.6g]", rb.lower->value.iv.lo, rb.upper->value.iv.hi);
                return std::string(buf);
            };
            std::cout << "  ~" << e.core << ":  source " << iv(e.source) << "  channel " << iv(e.channel) << "\n";
        }
    }
    return closed ? ok : inconclusive;
}

int cmd_verify(const Config& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    json j = json::parse(in);
    std::vector<std::pair<std::string, CertPtr>> roots;
    if (j.contains("nodes")) roots.emplace_back("certificate", certificate_from_json(j));
    for (const char* side : {"lower", "upper"})
        if (j.contains(side) && j.at(side).contains("certificate"))
            roots.emplace_back(side, certificate_from_json(j.at(side).at("certificate")));
    if (roots.empty()) throw InvalidArgument(path + " contains no certificate");
    bool all = true;
    json out = json::object();
    for (const auto& [name, c] : roots) {
        auto r = verify_certificate(c);
        all = all && r.ok;
        out[name] = r.to_json();
        out[name]["value"] = c->value.str();
        if (!json_out(cfg))
            std::cout << name << ": " << (r.ok ? "ok" : "REJECTED: " + r.error) << " (" << r.nodes << " nodes, " << r.witnesses
                      << " witnesses, " << r.structural << " graph relations, " << r.skipped << " skipped)\n";
    }
    if (json_out(cfg)) print(out);
    return all ? ok : internal;
}

int cmd_cache(const Config& cfg, const std::string& action)
{
    if (cfg.cache_dir.empty()) throw InvalidArgument("cache: --cache-dir (or IRKIT_CACHE_DIR) is required");
    InvariantCache cache(cfg.cache_dir);
    if (action == "clear") {
        auto n = cache.clear();
        if (json_out(cfg)) print({{"removed", n}});
        else std::cout << "removed " << n << " entries\n";
    } else {
        auto s = cache.stats();
        if (json_out(cfg)) print({{"dir", cfg.cache_dir}, {"entries", s.entries}, {"bytes", s.bytes}});
        else std::cout << cfg.cache_dir << ": " << s.entries << " entries, " << s.bytes << " bytes\n";
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified bounds on graph information ratios"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--tol", cfg.tol, "numerical tolerance, in (0, 1e-3]")->envname("IRKIT_TOL")->check(CLI::Range(1e-15, 1e-3));
    app.add_option("--budget-nodes", cfg.budget_nodes, "search node budget")->envname("IRKIT_BUDGET_NODES")->check(CLI::PositiveNumber);
    app.add_option("--budget-secs", cfg.budget_secs, "search time budget in seconds, 0 for none")->envname("IRKIT_BUDGET_SECS")->check(CLI::NonNegativeNumber);
    app.add_option("--max-power", cfg.max_power, "largest strong power used for alpha")->envname("IRKIT_MAX_POWER")->check(CLI::Range(1, 6));
    app.add_option("--cache-dir", cfg.cache_dir, "invariant cache directory")->envname("IRKIT_CACHE_DIR");
    app.add_option("--format", cfg.format, "text or json")->envname("IRKIT_FORMAT")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--pivots", cfg.pivots, "comma separated pivot graphs for concatenation")->envname("IRKIT_PIVOTS");
    app.add_flag("--certificates", cfg.certificates, "include certificates in JSON output");

    std::string expr, source, channel, a, b, file, action = "stats";
    std::vector<std::string> names, cores;
    bool verify = false, csv = false;
    int kmax = 2, nmax = 2;
    std::function<int()> run;

    auto* inv = app.add_subcommand("invariant", "graph invariants with witnesses");
    inv->add_option("expr", expr, "graph expression")->required();
    inv->add_option("names", names, "alpha omega chibarf chif theta caplo capacity minrank chromatic clique_cover n edges graph6");
    inv->callback([&] { run = [&] { return cmd_invariant(cfg, expr, names); }; });

    auto* bnd = app.add_subcommand("bounds", "certified interval on Ir(channel/source)");
    bnd->add_option("--source", source, "source graph G")->required();
    bnd->add_option("--channel", channel, "channel graph H")->required();
    bnd->add_flag("--verify", verify, "replay the certificates");
    bnd->callback([&] { run = [&] { return cmd_bounds(cfg, source, channel, verify); }; });

    auto* tab = app.add_subcommand("tables", "recompute the worked examples");
    tab->callback([&] { run = [&] { return cmd_tables(cfg); }; });

    auto* cs = app.add_subcommand("code-search", "(k,n) code frontier");
    cs->add_option("--source", source)->required();
    cs->add_option("--channel", channel)->required();
    cs->add_option("--kmax", kmax)->check(CLI::Range(1, 8));
    cs->add_option("--nmax", nmax)->check(CLI::Range(1, 8));
    cs->add_flag("--csv", csv, "CSV table");
    cs->callback([&] { run = [&] { return cmd_code_search(cfg, source, channel, kmax, nmax, csv); }; });

    auto* core = app.add_subcommand("core", "cores of a graph and of its complement");
    core->add_option("expr", expr)->required();
    core->callback([&] { run = [&] { return cmd_core(cfg, expr); }; });

    auto* eq = app.add_subcommand("equiv", "information equivalence, order and metrics");
    eq->add_option("a", a)->required();
    eq->add_option("b", b)->required();
    eq->callback([&] { run = [&] { return cmd_equiv(cfg, a, b); }; });

    auto* cr = app.add_subcommand("critical", "information criticality");
    cr->add_option("expr", expr)->required();
    cr->callback([&] { run = [&] { return cmd_critical(cfg, expr); }; });

    auto* sp = app.add_subcommand("spectra", "source and channel spectra");
    sp->add_option("expr", expr)->required();
    sp->add_option("--cores", cores, "reference cores");
    sp->callback([&] { run = [&] { return cmd_spectra(cfg, expr, cores); }; });

    auto* ca = app.add_subcommand("cache", "inspect or clear the invariant cache");
    ca->add_option("action", action)->check(CLI::IsMember({"stats", "clear"}));
    ca->callback([&] { run = [&] { return cmd_cache(cfg, action); }; });

    auto* ve = app.add_subcommand("verify", "replay certificates from a JSON file");
    ve->add_option("file", file)->required()->check(CLI::ExistingFile);
    ve->callback([&] { run = [&] { return cmd_verify(cfg, file); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }
    try {
        return run();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return limit;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return limit;
    } catch (const SolverFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return solver;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    }
}
