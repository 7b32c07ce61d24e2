#ifndef VCOALG_FUNCTOR_HPP
#define VCOALG_FUNCTOR_HPP

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "vcoalg/errors.hpp"

namespace vcoalg {

enum class FKind {
    Id,
    Const,
    Sum,
    Prod,
    Comp,
    VLower,          // Vl : down-sets, hit subbasis
    VCompact,        // V  : all subsets, hit-and-miss subbasis
    VCompactNonempty,// V+ : compact variant without the empty set
    VCompactConnected// Vc : compact and connected subsets
};

struct FunctorExpr;
using FunctorPtr = std::shared_ptr<const FunctorExpr>;

/// AST of the functor grammar
///   F ::= F + F | F * F | F . F | C(name) | Id | V | Vl | V+ | Vc
/// `*` binds tighter than `+`, both associate left; `.` (composition)
/// is loosest and associates right.
struct FunctorExpr {
    FKind kind;
    FunctorPtr lhs, rhs; // Sum, Prod, Comp
    std::string name;    // Const

    static FunctorPtr leaf(FKind k) { return std::make_shared<FunctorExpr>(FunctorExpr{k, nullptr, nullptr, ""}); }
    static FunctorPtr constant(std::string name) {
        return std::make_shared<FunctorExpr>(FunctorExpr{FKind::Const, nullptr, nullptr, std::move(name)});
    }
    static FunctorPtr node(FKind k, FunctorPtr l, FunctorPtr r) {
        return std::make_shared<FunctorExpr>(FunctorExpr{k, std::move(l), std::move(r), ""});
    }
};

inline bool functor_equal(const FunctorExpr& a, const FunctorExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case FKind::Const: return a.name == b.name;
    case FKind::Sum:
    case FKind::Prod:
    case FKind::Comp: return functor_equal(*a.lhs, *b.lhs) && functor_equal(*a.rhs, *b.rhs);
    default: return true;
    }
}

namespace detail {

inline int precedence(FKind k) {
    switch (k) {
    case FKind::Comp: return 0;
    case FKind::Sum: return 1;
    case FKind::Prod: return 2;
    default: return 3;
    }
}

inline void print_rec(const FunctorExpr& e, std::string& out, int parent_prec, bool right_child) {
    const int p = precedence(e.kind);
    switch (e.kind) {
    case FKind::Id: out += "Id"; return;
    case FKind::VLower: out += "Vl"; return;
    case FKind::VCompact: out += "V"; return;
    case FKind::VCompactNonempty: out += "V+"; return;
    case FKind::VCompactConnected: out += "Vc"; return;
    case FKind::Const:
        out += "C(";
        out += e.name;
        out += ")";
        return;
    default: break;
    }
    const char* op = e.kind == FKind::Sum ? " + " : e.kind == FKind::Prod ? " * " : " . ";
    // Left-associative operators need parens when they appear as a right
    // child at the same precedence; composition is the mirror case.
    bool need = p < parent_prec ||
                (p == parent_prec && (e.kind == FKind::Comp ? !right_child : right_child));
    if (need) out += "(";
    print_rec(*e.lhs, out, p, false);
    out += op;
    print_rec(*e.rhs, out, p, true);
    if (need) out += ")";
}

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(std::size_t at, const std::string& expected) {
        throw ParseError("parse error at offset " + std::to_string(at) + ": expected " + expected,
                         at, expected);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool starts_atom(std::size_t p) const {
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        if (p >= text.size()) return false;
        char c = text[p];
        return c == '(' || std::isalpha(static_cast<unsigned char>(c));
    }

    FunctorPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail(pos, "Id, V, Vl, V+, Vc, C(name) or '('");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            FunctorPtr e = parse_comp();
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') fail(pos, "')'");
            ++pos;
            return e;
        }
        if (!std::isalpha(static_cast<unsigned char>(c)))
            fail(pos, "Id, V, Vl, V+, Vc, C(name) or '('");
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string_view word = text.substr(start, pos - start);
        if (word == "Id") return FunctorExpr::leaf(FKind::Id);
        if (word == "Vl") return FunctorExpr::leaf(FKind::VLower);
        if (word == "Vc") return FunctorExpr::leaf(FKind::VCompactConnected);
        if (word == "V") {
            // "V+" is the nonempty-variant token unless the '+' reads as a
            // binary sum, i.e. unless it is followed by the start of a term.
            std::size_t save = pos;
            skip_ws();
            if (pos < text.size() && text[pos] == '+' && !starts_atom(pos + 1)) {
                ++pos;
                return FunctorExpr::leaf(FKind::VCompactNonempty);
            }
            pos = save;
            return FunctorExpr::leaf(FKind::VCompact);
        }
        if (word == "C") {
            skip_ws();
            if (pos >= text.size() || text[pos] != '(') fail(pos, "'(' after C");
            ++pos;
            skip_ws();
            std::size_t nstart = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            if (pos == nstart) fail(pos, "constant name");
            std::string name(text.substr(nstart, pos - nstart));
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') fail(pos, "')' after constant name");
            ++pos;
            return FunctorExpr::constant(std::move(name));
        }
        fail(start, "Id, V, Vl, V+, Vc or C(name)");
    }

    FunctorPtr parse_prod() {
        FunctorPtr e = parse_atom();
        while (peek() == '*') {
            ++pos;
            e = FunctorExpr::node(FKind::Prod, e, parse_atom());
        }
        return e;
    }

    FunctorPtr parse_sum() {
        FunctorPtr e = parse_prod();
        while (peek() == '+') {
            ++pos;
            e = FunctorExpr::node(FKind::Sum, e, parse_prod());
        }
        return e;
    }

    FunctorPtr parse_comp() {
        FunctorPtr e = parse_sum();
        if (peek() == '.') {
            ++pos;
            return FunctorExpr::node(FKind::Comp, e, parse_comp());
        }
        return e;
    }
};

} // namespace detail

/// Parse the concrete functor syntax. Throws ParseError with the byte
/// offset and the expected-token set.
inline FunctorPtr parse_functor(std::string_view text) {
    detail::Parser p{text};
    if (p.at_end()) p.fail(0, "a functor expression");
    FunctorPtr e = p.parse_comp();
    if (!p.at_end()) p.fail(p.pos, "'+', '*', '.' or end of input");
    return e;
}

/// Canonical printer; parse(print(e)) == e.
inline std::string print_functor(const FunctorExpr& e) {
    std::string out;
    detail::print_rec(e, out, 0, true);
    return out;
}

inline std::string print_functor(const FunctorPtr& e) { return print_functor(*e); }

} // namespace vcoalg

#endif
