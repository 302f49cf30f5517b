#include "reeb/parse.hpp"

#include "reeb/errors.hpp"

#include <cctype>

namespace reeb {

Lexer::Lexer(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tokens_.push_back({Tok::ident, text.substr(i, j - i), start});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            tokens_.push_back({Tok::number, text.substr(i, j - i), start});
            i = j;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '\\') {
            tokens_.push_back({Tok::wedge, "/\\", start});
            i += 2;
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::plus; break;
            case '-': kind = Tok::minus; break;
            case '*': kind = Tok::star; break;
            case '/': kind = Tok::slash; break;
            case '^': kind = Tok::caret; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            case '@': kind = Tok::at; break;
            case ',': kind = Tok::comma; break;
            case '=': kind = Tok::equals; break;
            case ';': kind = Tok::semicolon; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        tokens_.push_back({kind, std::string(1, c), start});
        ++i;
    }
    tokens_.push_back({Tok::end, "", n});
}

const Token& Lexer::peek(std::size_t ahead) const {
    std::size_t idx = std::min(i_ + ahead, tokens_.size() - 1);
    return tokens_[idx];
}

Token Lexer::next() {
    Token t = tokens_[i_];
    if (i_ + 1 < tokens_.size()) ++i_;
    return t;
}

bool Lexer::accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
}

Token Lexer::expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail("expected " + what);
    return next();
}

void Lexer::fail(const std::string& msg) const {
    throw ParseError(msg, peek().pos);
}

namespace {

int parse_exponent(Lexer& lex) {
    bool negative = lex.accept(Tok::minus);
    Token t = lex.expect(Tok::number, "integer exponent");
    int value = 0;
    try {
        value = std::stoi(t.text);
    } catch (const std::exception&) {
        throw ParseError("exponent out of range", t.pos);
    }
    return negative ? -value : value;
}

RatExpr parse_scalar_unary(Lexer& lex, const ContextPtr& ctx) {
    if (lex.accept(Tok::minus)) return -parse_scalar_unary(lex, ctx);
    if (lex.accept(Tok::plus)) return parse_scalar_unary(lex, ctx);
    RatExpr base = parse_scalar_primary(lex, ctx);
    while (lex.peek().kind == Tok::caret) {
        lex.next();
        base = base.pow(parse_exponent(lex));
    }
    return base;
}

RatExpr parse_scalar_term(Lexer& lex, const ContextPtr& ctx) {
    RatExpr out = parse_scalar_unary(lex, ctx);
    for (;;) {
        if (lex.accept(Tok::star)) {
            out *= parse_scalar_unary(lex, ctx);
        } else if (lex.accept(Tok::slash)) {
            out /= parse_scalar_unary(lex, ctx);
        } else {
            return out;
        }
    }
}

} // namespace

RatExpr parse_scalar_primary(Lexer& lex, const ContextPtr& ctx) {
    const Token& t = lex.peek();
    if (t.kind == Tok::number) {
        Token tok = lex.next();
        return RatExpr::constant(ctx, Scalar::from_decimal_string(tok.text));
    }
    if (t.kind == Tok::ident) {
        Token tok = lex.next();
        if (auto idx = ctx->universe()->find(tok.text))
            return RatExpr::variable(ctx, *idx);
        if (tok.text == "i") return RatExpr::constant(ctx, Scalar::i());
        throw ParseError("unknown symbol: " + tok.text, tok.pos);
    }
    if (t.kind == Tok::lparen) {
        lex.next();
        RatExpr inner = parse_scalar_expr(lex, ctx);
        lex.expect(Tok::rparen, "')'");
        return inner;
    }
    lex.fail("expected a number, symbol, or parenthesized expression");
}

RatExpr parse_scalar_expr(Lexer& lex, const ContextPtr& ctx) {
    RatExpr out = parse_scalar_term(lex, ctx);
    for (;;) {
        if (lex.accept(Tok::plus)) {
            out += parse_scalar_term(lex, ctx);
        } else if (lex.accept(Tok::minus)) {
            out -= parse_scalar_term(lex, ctx);
        } else {
            return out;
        }
    }
}

RatExpr parse_scalar(const std::string& text, const ContextPtr& ctx) {
    Lexer lex(text);
    RatExpr out = parse_scalar_expr(lex, ctx);
    if (lex.peek().kind != Tok::end) lex.fail("trailing input");
    return out;
}

} // namespace reeb
