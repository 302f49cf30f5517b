#pragma once

#include "reeb/ratexpr.hpp"

#include <string>
#include <vector>

namespace reeb {

// Shared lexer for the expression grammars. `/\` lexes as the wedge token
// (never valid as division), `@` introduces coordinate-vector atoms.
enum class Tok {
    end,
    ident,
    number,
    plus,
    minus,
    star,
    slash,
    caret,
    wedge,
    lparen,
    rparen,
    at,
    comma,
    equals,
    semicolon,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text);
    const Token& peek(std::size_t ahead = 0) const;
    Token next();
    bool accept(Tok kind);
    Token expect(Tok kind, const std::string& what);
    [[noreturn]] void fail(const std::string& msg) const;

private:
    std::vector<Token> tokens_;
    std::size_t i_ = 0;
};

// Rational expression in the symbols of the context's universe. `i` is the
// imaginary unit when the universe has no symbol of that name; `^` takes
// integer exponents; rationals are ordinary quotients like 3/2.
RatExpr parse_scalar(const std::string& text, const ContextPtr& ctx);

// Grammar fragment shared by the form/multivector/operator parsers.
RatExpr parse_scalar_expr(Lexer& lex, const ContextPtr& ctx);
RatExpr parse_scalar_primary(Lexer& lex, const ContextPtr& ctx);

} // namespace reeb
