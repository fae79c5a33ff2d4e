#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "polybif/errors.hpp"
#include "polybif/poly.hpp"

namespace polybif {

// Grammar:
//   rationalfn := expr ('/' '(' expr ')')?
//   expr       := '-'? term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := '-'? ( rational | var ('^' integer)? | '(' expr ')' )
//   rational   := integer ('/' positive-integer)?
// Implicit multiplication is not allowed.
namespace detail {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default:
                throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : toks_(tokenize(text)), vars_(vars) {}

    SparseLaurentPoly parse_expr() {
        bool neg = accept(Tok::Minus);
        SparseLaurentPoly p = parse_term();
        if (neg) p = -p;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            SparseLaurentPoly t = parse_term();
            p = minus ? p - t : p + t;
        }
        return p;
    }

    // top-level '/' introducing a parenthesized denominator
    std::optional<SparseLaurentPoly> parse_denominator() {
        if (!accept(Tok::Slash)) return std::nullopt;
        expect(Tok::LParen, "'(' (top-level denominators must be parenthesized)");
        SparseLaurentPoly q = parse_expr();
        expect(Tok::RParen, "')'");
        return q;
    }

    void expect_end() {
        if (peek().kind != Tok::End)
            throw ParseError(peek().pos, "unexpected token '" + peek().text + "'");
    }

private:
    int n() const { return static_cast<int>(vars_.size()); }

    SparseLaurentPoly parse_term() {
        SparseLaurentPoly p = parse_factor();
        while (accept(Tok::Star)) p = p * parse_factor();
        return p;
    }

    SparseLaurentPoly parse_factor() {
        if (accept(Tok::Minus)) return -parse_factor();
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: {
                next();
                Rat c(Int(t.text));
                // a '/' here is a literal rational only when an integer follows;
                // otherwise it belongs to the top-level split
                if (peek().kind == Tok::Slash && peek(1).kind == Tok::Int) {
                    next();
                    const Token& d = next();
                    Int den(d.text);
                    if (den == 0) throw ParseError(d.pos, "zero denominator in rational literal");
                    c /= Rat(den);
                }
                return SparseLaurentPoly::constant(n(), c);
            }
            case Tok::Ident: {
                next();
                int idx = -1;
                for (std::size_t i = 0; i < vars_.size(); ++i)
                    if (vars_[i] == t.text) idx = static_cast<int>(i);
                if (idx < 0) throw ParseError(t.pos, "unknown variable '" + t.text + "'");
                std::int64_t e = 1;
                if (accept(Tok::Caret)) {
                    if (peek().kind == Tok::Minus)
                        throw ParseError(peek().pos,
                                         "negative exponents are not allowed in input polynomials");
                    const Token& ex = expect(Tok::Int, "exponent");
                    e = std::stoll(ex.text);
                }
                ExponentVector ev(n(), 0);
                ev[idx] = e;
                return SparseLaurentPoly::monomial(n(), ev, 1);
            }
            case Tok::LParen: {
                next();
                SparseLaurentPoly p = parse_expr();
                expect(Tok::RParen, "')'");
                return p;
            }
            default:
                throw ParseError(t.pos, "expected a number, variable or '(', got '" +
                                            (t.kind == Tok::End ? std::string("end of input") : t.text) +
                                            "'");
        }
    }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }
    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k) throw ParseError(peek().pos, "expected " + what);
        return next();
    }

    std::vector<Token> toks_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline void check_vars(const std::vector<std::string>& vars) {
    if (vars.empty()) throw ParseError(0, "variable list is empty");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw ParseError(0, "duplicate variable '" + vars[i] + "'");
}

/// Parse a single polynomial expression (no top-level '/').
inline SparseLaurentPoly parse_polynomial(const std::string& text,
                                          const std::vector<std::string>& vars) {
    check_vars(vars);
    detail::Parser p(text, vars);
    SparseLaurentPoly poly = p.parse_expr();
    p.expect_end();
    return poly;
}

/// Parse "P" or "P/(Q)"; returns the raw numerator/denominator pair.
inline std::pair<SparseLaurentPoly, SparseLaurentPoly> parse_fraction(
    const std::string& text, const std::vector<std::string>& vars) {
    check_vars(vars);
    detail::Parser p(text, vars);
    SparseLaurentPoly num = p.parse_expr();
    auto den = p.parse_denominator();
    p.expect_end();
    SparseLaurentPoly q = den ? *den : SparseLaurentPoly::constant(vars.size(), 1);
    if (q.is_zero()) throw ParseError(text.size(), "denominator is the zero polynomial");
    return {num, q};
}

} // namespace polybif
