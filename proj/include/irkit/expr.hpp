#pragma once

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "irkit/graph.hpp"

namespace irkit {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Graph expression tree. Evaluation materializes the graph.
struct Expr {
    enum class Kind { named, literal, complement, strong, or_product, tensor, disjoint_union, power, mycielski };

    Kind kind = Kind::named;
    std::string name;                // generator name, or source text of a literal
    std::vector<long long> params;   // generator parameters
    std::shared_ptr<const Graph> graph; // literal graphs
    std::vector<ExprPtr> kids;
    int exponent = 1;

    static ExprPtr named(std::string n, std::vector<long long> p = {})
    {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::named;
        e->name = std::move(n);
        e->params = std::move(p);
        return e;
    }
    static ExprPtr literal(Graph g, std::string text)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::literal;
        e->name = std::move(text);
        e->graph = std::make_shared<const Graph>(std::move(g));
        return e;
    }
    static ExprPtr unary(Kind k, ExprPtr a)
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->kids = {std::move(a)};
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b)
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->kids = {std::move(a), std::move(b)};
        return e;
    }
    static ExprPtr power(ExprPtr a, int k)
    {
        if (k < 1) throw ParseError("power exponent must be at least 1");
        auto e = std::make_shared<Expr>();
        e->kind = Kind::power;
        e->kids = {std::move(a)};
        e->exponent = k;
        return e;
    }
};

inline std::string to_string(const Expr& e)
{
    auto sub = [](const ExprPtr& k) {
        bool atomic = k->kind == Expr::Kind::named || k->kind == Expr::Kind::literal ||
                      k->kind == Expr::Kind::mycielski || k->kind == Expr::Kind::complement;
        return atomic ? to_string(*k) : "(" + to_string(*k) + ")";
    };
    switch (e.kind) {
    case Expr::Kind::named: {
        if (e.params.empty()) return e.name;
        std::string s = e.name + "(";
        for (std::size_t i = 0; i < e.params.size(); ++i) s += (i ? "," : "") + std::to_string(e.params[i]);
        return s + ")";
    }
    case Expr::Kind::literal: return e.name;
    case Expr::Kind::complement: return "~" + sub(e.kids[0]);
    case Expr::Kind::strong: return sub(e.kids[0]) + " * " + sub(e.kids[1]);
    case Expr::Kind::or_product: return sub(e.kids[0]) + " | " + sub(e.kids[1]);
    case Expr::Kind::tensor: return sub(e.kids[0]) + " x " + sub(e.kids[1]);
    case Expr::Kind::disjoint_union: return sub(e.kids[0]) + " + " + sub(e.kids[1]);
    case Expr::Kind::power: return sub(e.kids[0]) + "^" + std::to_string(e.exponent);
    case Expr::Kind::mycielski: return "M(" + to_string(*e.kids[0]) + ")";
    }
    return {};
}

inline Graph evaluate(const Expr& e, const SizeLimits& lim = {})
{
    Graph g;
    switch (e.kind) {
    case Expr::Kind::named: g = make_named(e.name, e.params); break;
    case Expr::Kind::literal: g = *e.graph; break;
    case Expr::Kind::complement: g = complement(evaluate(*e.kids[0], lim)); break;
    case Expr::Kind::strong: g = strong_product(evaluate(*e.kids[0], lim), evaluate(*e.kids[1], lim), lim); break;
    case Expr::Kind::or_product: g = or_product(evaluate(*e.kids[0], lim), evaluate(*e.kids[1], lim), lim); break;
    case Expr::Kind::tensor: g = tensor_product(evaluate(*e.kids[0], lim), evaluate(*e.kids[1], lim), lim); break;
    case Expr::Kind::disjoint_union: g = disjoint_union(evaluate(*e.kids[0], lim), evaluate(*e.kids[1], lim)); break;
    case Expr::Kind::power: g = strong_power(evaluate(*e.kids[0], lim), e.exponent, lim); break;
    case Expr::Kind::mycielski: g = mycielski(evaluate(*e.kids[0], lim)); break;
    }
    g.set_name(to_string(e));
    return g;
}

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, int depth) : s_(text), depth_(depth)
    {
        if (depth_ > 8) throw ParseError("@file nesting too deep");
    }

    ExprPtr parse()
    {
        auto e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError("expression: " + msg + " at offset " + std::to_string(pos_));
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) return ++pos_, true;
        return false;
    }
    void expect(char c)
    {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident()
    {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }
    long long integer()
    {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected an integer");
        if (pos_ - b > 9) fail("integer too large");
        return std::stoll(std::string(s_.substr(b, pos_ - b)));
    }
    std::string word()
    {
        std::size_t b = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }
    bool peek_tensor()
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != 'x') return false;
        std::size_t next = pos_ + 1;
        return next >= s_.size() || !(std::isalnum(static_cast<unsigned char>(s_[next])) || s_[next] == '_');
    }

    ExprPtr sum()
    {
        auto e = product();
        while (eat('+')) e = Expr::binary(Expr::Kind::disjoint_union, e, product());
        return e;
    }
    ExprPtr product()
    {
        auto e = unary();
        while (true) {
            if (eat('*')) e = Expr::binary(Expr::Kind::strong, e, unary());
            else if (eat('|')) e = Expr::binary(Expr::Kind::or_product, e, unary());
            else if (peek_tensor()) {
                ++pos_;
                e = Expr::binary(Expr::Kind::tensor, e, unary());
            } else
                return e;
        }
    }
    ExprPtr unary()
    {
        if (eat('~')) return Expr::unary(Expr::Kind::complement, unary());
        return postfix();
    }
    ExprPtr postfix()
    {
        auto e = primary();
        while (eat('^')) {
            long long k = integer();
            if (k < 1 || k > 64) fail("power exponent out of range");
            e = Expr::power(e, static_cast<int>(k));
        }
        return e;
    }
    ExprPtr primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (eat('(')) {
            auto e = sum();
            expect(')');
            return e;
        }
        if (eat('@')) return load_file(word());
        std::string id = ident();
        if (id.empty()) fail("expected a graph");
        if (id == "g6" && pos_ < s_.size() && s_[pos_] == ':') {
            ++pos_;
            std::string text = word();
            return Expr::literal(from_graph6(text), "g6:" + text);
        }
        if (id == "M") {
            expect('(');
            auto inner = sum();
            expect(')');
            return Expr::unary(Expr::Kind::mycielski, inner);
        }
        if (id == "schlafli") return Expr::named(id);
        if (id != "K" && id != "Kbar" && id != "C" && id != "W" && id != "KG") fail("unknown generator '" + id + "'");
        std::vector<long long> params;
        expect('(');
        params.push_back(integer());
        while (eat(',')) params.push_back(integer());
        expect(')');
        auto e = Expr::named(id, params);
        try {
            (void)make_named(id, params);
        } catch (const InvalidArgument& ex) {
            throw ParseError(ex.what());
        }
        return e;
    }

    ExprPtr load_file(const std::string& path)
    {
        if (path.empty()) fail("expected a file name after '@'");
        std::ifstream in(path);
        if (!in) throw ParseError("cannot read graph file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.erase(text.begin());
        try {
            return Expr::literal(from_graph6(text), "@" + path);
        } catch (const ParseError&) {
        }
        return ExprParser(text, depth_ + 1).parse();
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int depth_;
};

} // namespace detail

inline ExprPtr parse_expr(std::string_view text) { return detail::ExprParser(text, 0).parse(); }

inline Graph parse_graph(std::string_view text, const SizeLimits& lim = {}) { return evaluate(*parse_expr(text), lim); }

} // namespace irkit
