#pragma once

// Concrete syntax:
//
//   term := "\" ident "." term | app
//   app  := item { item }                  (application, left-associative)
//   item := atom { "[" ident "<-" term "]" }   (postfix, tighter than app)
//   atom := ident | "(" term ")"
//
// Identifiers match [a-zA-Z][a-zA-Z0-9_']*. The printer emits minimal
// parentheses and renames freshened binders so that no two distinct names
// in a term print alike; parse(print(t)) is alpha-equivalent to t.

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "lsc/term.hpp"

namespace lsc {

struct ParseError : Error {
    std::size_t line;
    std::size_t column;

    ParseError(const std::string& msg, std::size_t l, std::size_t c)
        : Error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l), column(c) {}
};

namespace detail {

struct Token {
    enum class Kind { Ident, Lambda, Dot, LParen, RParen, LBracket, RBracket, Arrow, End };
    Kind kind;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    void bump() {
        if (src[pos] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++pos;
    }

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) bump();
        Token t;
        t.line = line;
        t.column = column;
        if (pos >= src.size()) {
            t.kind = Token::Kind::End;
            return t;
        }
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < src.size()) {
                char d = src[pos];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'')
                    bump();
                else
                    break;
            }
            t.kind = Token::Kind::Ident;
            t.text = std::string(src.substr(start, pos - start));
            return t;
        }
        switch (c) {
            case '\\': bump(); t.kind = Token::Kind::Lambda; return t;
            case '.': bump(); t.kind = Token::Kind::Dot; return t;
            case '(': bump(); t.kind = Token::Kind::LParen; return t;
            case ')': bump(); t.kind = Token::Kind::RParen; return t;
            case '[': bump(); t.kind = Token::Kind::LBracket; return t;
            case ']': bump(); t.kind = Token::Kind::RBracket; return t;
            case '<':
                bump();
                if (pos < src.size() && src[pos] == '-') {
                    bump();
                    t.kind = Token::Kind::Arrow;
                    return t;
                }
                throw ParseError("expected '<-'", t.line, t.column);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
    }
};

struct Parser {
    Lexer lexer;
    Token tok;
    std::uint64_t uid = 0;
    std::vector<std::pair<std::string, Name>> scope;

    explicit Parser(std::string_view src) : lexer{src} { tok = lexer.next(); }

    void advance() { tok = lexer.next(); }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok.line, tok.column); }

    void expect(Token::Kind k, const char* what) {
        if (tok.kind != k) fail(std::string("expected ") + what);
        advance();
    }

    Name lookup(const std::string& text) const {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == text) return it->second;
        return Name{text, 0};
    }

    TermPtr parse_term() {
        if (tok.kind == Token::Kind::Lambda) {
            advance();
            if (tok.kind != Token::Kind::Ident) fail("expected identifier after '\\'");
            Name binder{tok.text, ++uid};
            std::string text = tok.text;
            advance();
            expect(Token::Kind::Dot, "'.'");
            scope.emplace_back(text, binder);
            TermPtr body = parse_term();
            scope.pop_back();
            return lam(binder, body);
        }
        return parse_app();
    }

    bool starts_item() const {
        return tok.kind == Token::Kind::Ident || tok.kind == Token::Kind::LParen;
    }

    TermPtr parse_app() {
        if (!starts_item()) fail("expected a term");
        TermPtr t = parse_item();
        while (starts_item()) t = app(t, parse_item());
        return t;
    }

    TermPtr parse_item() {
        TermPtr t = parse_atom();
        while (tok.kind == Token::Kind::LBracket) {
            advance();
            if (tok.kind != Token::Kind::Ident) fail("expected identifier in substitution");
            std::string text = tok.text;
            advance();
            expect(Token::Kind::Arrow, "'<-'");
            TermPtr content = parse_term();
            expect(Token::Kind::RBracket, "']'");
            // The postfix substitution binds the occurrences that were free
            // (with respect to this bracket) in the parsed body.
            Name old = lookup(text);
            Name binder{text, ++uid};
            t = esub(subst(t, old, var(binder)), binder, content);
        }
        return t;
    }

    TermPtr parse_atom() {
        if (tok.kind == Token::Kind::Ident) {
            TermPtr t = var(lookup(tok.text));
            advance();
            return t;
        }
        if (tok.kind == Token::Kind::LParen) {
            advance();
            TermPtr t = parse_term();
            expect(Token::Kind::RParen, "')'");
            return t;
        }
        fail("expected a term");
    }
};

}  // namespace detail

inline TermPtr parse(std::string_view text) {
    detail::Parser p(text);
    TermPtr t = p.parse_term();
    if (p.tok.kind != detail::Token::Kind::End) p.fail("unexpected trailing input");
    return t;
}

namespace detail {

inline void collect_names(const TermPtr& t, std::vector<Name>& order, NameSet& seen) {
    auto add = [&](const Name& n) {
        if (seen.insert(n).second) order.push_back(n);
    };
    switch (t->kind()) {
        case TermKind::Var: add(t->name()); return;
        case TermKind::Lam:
            add(t->name());
            collect_names(t->body(), order, seen);
            return;
        case TermKind::App:
            collect_names(t->fun(), order, seen);
            collect_names(t->arg(), order, seen);
            return;
        case TermKind::ESub:
            add(t->name());
            collect_names(t->body(), order, seen);
            collect_names(t->content(), order, seen);
            return;
    }
}

// Assign every distinct name a printable identifier: uid-0 names keep their
// text; freshened names keep theirs when unambiguous and otherwise get
// primes appended until the result collides with nothing else in the term.
inline std::map<Name, std::string> print_names(const TermPtr& t) {
    std::vector<Name> order;
    NameSet seen;
    collect_names(t, order, seen);

    std::map<std::string, int> text_count;
    for (const Name& n : order) ++text_count[n.text];

    std::set<std::string> taken;
    for (const Name& n : order) taken.insert(n.text);

    std::map<Name, std::string> out;
    for (const Name& n : order) {
        if (n.uid == 0 || text_count[n.text] == 1) {
            out[n] = n.text;
            continue;
        }
        std::string candidate = n.text + "'";
        while (taken.count(candidate)) candidate += "'";
        taken.insert(candidate);
        out[n] = candidate;
    }
    return out;
}

inline void render(const TermPtr& t, const std::map<Name, std::string>& names, std::string& out);

inline void render_wrapped(const TermPtr& t, const std::map<Name, std::string>& names,
                           std::string& out) {
    out += '(';
    render(t, names, out);
    out += ')';
}

// item level: variables and substitution chains stand alone, anything else
// needs parentheses.
inline void render_item(const TermPtr& t, const std::map<Name, std::string>& names,
                        std::string& out) {
    switch (t->kind()) {
        case TermKind::Var:
            out += names.at(t->name());
            return;
        case TermKind::ESub:
            render_item(t->body(), names, out);
            out += '[';
            out += names.at(t->name());
            out += " <- ";
            render(t->content(), names, out);
            out += ']';
            return;
        default:
            render_wrapped(t, names, out);
            return;
    }
}

inline void render_app(const TermPtr& t, const std::map<Name, std::string>& names,
                       std::string& out) {
    if (t->kind() == TermKind::App) {
        if (t->fun()->kind() == TermKind::Lam)
            render_wrapped(t->fun(), names, out);
        else if (t->fun()->kind() == TermKind::App)
            render_app(t->fun(), names, out);
        else
            render_item(t->fun(), names, out);
        out += ' ';
        if (t->arg()->kind() == TermKind::Lam || t->arg()->kind() == TermKind::App)
            render_wrapped(t->arg(), names, out);
        else
            render_item(t->arg(), names, out);
        return;
    }
    render_item(t, names, out);
}

inline void render(const TermPtr& t, const std::map<Name, std::string>& names, std::string& out) {
    if (t->kind() == TermKind::Lam) {
        out += '\\';
        out += names.at(t->name());
        out += ". ";
        render(t->body(), names, out);
        return;
    }
    render_app(t, names, out);
}

}  // namespace detail

inline std::string print(const TermPtr& t) {
    auto names = detail::print_names(t);
    std::string out;
    detail::render(t, names, out);
    return out;
}

}  // namespace lsc
