#include "jv/parser.hpp"

#include <algorithm>
#include <cctype>

namespace jv {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take()
    {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance()
    {
        while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        size_t start = pos_;
        if (pos_ >= s_.size()) {
            cur_ = {Tok::end, "", start};
            return;
        }
        char c = s_[pos_];
        if (isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') {
                ++pos_;
                while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
            cur_ = {Tok::number, s_.substr(start, pos_ - start), start};
            return;
        }
        if (isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < s_.size() && isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '_') {
                ++pos_;
                while (pos_ < s_.size() && isalnum(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
            cur_ = {Tok::ident, s_.substr(start, pos_ - start), start};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': cur_ = {Tok::plus, "+", start}; return;
            case '-': cur_ = {Tok::minus, "-", start}; return;
            case '*': cur_ = {Tok::star, "*", start}; return;
            case '/': cur_ = {Tok::slash, "/", start}; return;
            case '^': cur_ = {Tok::caret, "^", start}; return;
            case '(': cur_ = {Tok::lparen, "(", start}; return;
            case ')': cur_ = {Tok::rparen, ")", start}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& s_;
    size_t pos_ = 0;
    Token cur_;
};

// Split a derivative suffix into base-coordinate occurrences; greedy
// longest-match with backtracking so names like "x1" and "x12" coexist.
bool match_suffix(const std::string& s, size_t pos, const std::vector<std::string>& names_by_len,
                  const JetContext& ctx, MultiIndex& alpha)
{
    if (pos == s.size())
        return true;
    for (const auto& name : names_by_len) {
        if (s.compare(pos, name.size(), name) == 0) {
            MultiIndex saved = alpha;
            alpha = alpha.plus(ctx.base_index(name));
            if (match_suffix(s, pos + name.size(), names_by_len, ctx, alpha))
                return true;
            alpha = saved;
        }
    }
    return false;
}

class Parser {
public:
    Parser(const std::string& text, const JetContext& ctx) : lex_(text), ctx_(ctx) {}

    Expr parse()
    {
        Expr e = expression();
        if (lex_.peek().kind != Tok::end)
            throw ParseError("unexpected token '" + lex_.peek().text + "'", lex_.peek().pos);
        return e;
    }

private:
    Expr expression()
    {
        Expr e = term();
        while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
            Tok op = lex_.take().kind;
            Expr rhs = term();
            e = (op == Tok::plus) ? e + rhs : e - rhs;
        }
        return e;
    }

    Expr term()
    {
        Expr e = unary();
        while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
            Token op = lex_.take();
            Expr rhs = unary();
            if (op.kind == Tok::star)
                e = e * rhs;
            else {
                if (rhs.is_zero())
                    throw ParseError("division by zero", op.pos);
                e = e / rhs;
            }
        }
        return e;
    }

    Expr unary()
    {
        if (lex_.peek().kind == Tok::minus) {
            lex_.take();
            return -unary();
        }
        if (lex_.peek().kind == Tok::plus) {
            lex_.take();
            return unary();
        }
        return power();
    }

    Expr power()
    {
        Expr e = primary();
        if (lex_.peek().kind == Tok::caret) {
            Token caret = lex_.take();
            int k = exponent(caret.pos);
            if (k < 0 && e.is_zero())
                throw ParseError("negative power of zero", caret.pos);
            e = pow(e, k);
        }
        return e;
    }

    int exponent(size_t where)
    {
        bool paren = false, neg = false;
        if (lex_.peek().kind == Tok::lparen) {
            paren = true;
            lex_.take();
        }
        if (lex_.peek().kind == Tok::minus) {
            neg = true;
            lex_.take();
        }
        if (lex_.peek().kind != Tok::number || lex_.peek().text.find('.') != std::string::npos)
            throw ParseError("exponent must be an integer", where);
        Token num = lex_.take();
        if (paren && lex_.take().kind != Tok::rparen)
            throw ParseError("expected ')'", num.pos);
        long k = std::stol(num.text);
        if (k > 64)
            throw ParseError("exponent too large", num.pos);
        return static_cast<int>(neg ? -k : k);
    }

    Expr primary()
    {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::number: return Expr(rational_from_decimal(t.text));
            case Tok::lparen: {
                Expr e = expression();
                if (lex_.peek().kind != Tok::rparen)
                    throw ParseError("expected ')'", lex_.peek().pos);
                lex_.take();
                return e;
            }
            case Tok::ident: return identifier(t);
            default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
        }
    }

    Expr identifier(const Token& t)
    {
        const std::string& name = t.text;
        if (name == "pi")
            return Expr::pi_const();
        for (Fn f : {Fn::sin, Fn::cos, Fn::exp, Fn::log}) {
            if (name == fn_name(f)) {
                if (lex_.peek().kind != Tok::lparen)
                    throw ParseError("expected '(' after function name", t.pos);
                lex_.take();
                Expr a = expression();
                if (lex_.peek().kind != Tok::rparen)
                    throw ParseError("expected ')'", lex_.peek().pos);
                lex_.take();
                if (f == Fn::log && a.is_constant() && a.constant_value() <= 0)
                    throw ParseError("log of non-positive constant", t.pos);
                return apply_fn(f, a);
            }
        }
        auto under = name.find('_');
        std::string head = name.substr(0, under);
        std::string suffix = under == std::string::npos ? "" : name.substr(under + 1);
        if (int lambda = ctx_.base_index(head); lambda >= 0) {
            if (!suffix.empty())
                throw ParseError("base coordinate '" + head + "' has no derivatives", t.pos);
            return Expr::base(lambda);
        }
        if (int fiber = ctx_.fiber_index(head); fiber >= 0) {
            MultiIndex alpha(ctx_.base_dim);
            if (!suffix.empty()) {
                auto names = ctx_.base_names;
                std::sort(names.begin(), names.end(), [](const auto& a, const auto& b) {
                    return a.size() != b.size() ? a.size() > b.size() : a < b;
                });
                if (!match_suffix(suffix, 0, names, ctx_, alpha))
                    throw ParseError("cannot read derivative suffix '" + suffix + "'", t.pos);
            }
            if (alpha.order() > ctx_.order)
                throw ParseError("derivative order " + std::to_string(alpha.order()) +
                                     " exceeds jet order " + std::to_string(ctx_.order),
                                 t.pos);
            return Expr::jet(fiber, alpha);
        }
        throw ParseError("unknown identifier '" + name + "'", t.pos);
    }

    Lexer lex_;
    const JetContext& ctx_;
};

} // namespace

Expr parse_expr(const std::string& text, const JetContext& ctx)
{
    return Parser(text, ctx).parse();
}

} // namespace jv
