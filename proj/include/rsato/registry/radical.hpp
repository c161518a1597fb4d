#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/numerics/ball.hpp"
#include "rsato/numerics/rational.hpp"

namespace rsato {

/// Closed-form real number built from integers with + - * / ^k and sqrt.
///
/// Text syntax (whitespace is ignored):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' digits)?
///   primary := digits | 'sqrt' '(' expr ')' | '(' expr ')'
class RadicalExpr {
public:
    enum class Kind { Literal, Add, Sub, Mul, Div, Neg, Pow, Sqrt };

    RadicalExpr() : RadicalExpr(BigRational(0)) {}
    explicit RadicalExpr(const BigRational& v) : node_(std::make_shared<Node>(Node{Kind::Literal, v, 0, {}})) {}

    static RadicalExpr parse(std::string_view text, int line = 1, int column = 1) {
        Parser p{text, 0, line, column};
        RadicalExpr e = p.expr();
        p.skip_ws();
        if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
        return e;
    }

    Kind kind() const { return node_->kind; }

    /// Enclosure of the value. A square root of a ball that is not strictly
    /// positive throws DomainError naming the offending subexpression.
    BallReal eval(long prec = kDefaultPrecision) const { return eval_node(*node_, prec); }

    /// Fully parenthesized canonical text; parse(to_string()) gives back an
    /// equal expression.
    std::string to_string() const { return text(*node_, 0); }

    friend bool operator==(const RadicalExpr& a, const RadicalExpr& b) { return a.to_string() == b.to_string(); }

private:
    struct Node {
        Kind kind;
        BigRational value;
        unsigned long power;
        std::vector<std::shared_ptr<const Node>> kids;
    };

    explicit RadicalExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static RadicalExpr make(Kind k, std::vector<std::shared_ptr<const Node>> kids, unsigned long power = 0) {
        return RadicalExpr(std::make_shared<Node>(Node{k, BigRational(0), power, std::move(kids)}));
    }

    static BallReal eval_node(const Node& n, long prec) {
        switch (n.kind) {
        case Kind::Literal: return BallReal::from_rational(n.value, prec);
        case Kind::Add: return eval_node(*n.kids[0], prec) + eval_node(*n.kids[1], prec);
        case Kind::Sub: return eval_node(*n.kids[0], prec) - eval_node(*n.kids[1], prec);
        case Kind::Mul: return eval_node(*n.kids[0], prec) * eval_node(*n.kids[1], prec);
        case Kind::Div: return eval_node(*n.kids[0], prec) / eval_node(*n.kids[1], prec);
        case Kind::Neg: return -eval_node(*n.kids[0], prec);
        case Kind::Pow: return ball_pow(eval_node(*n.kids[0], prec), n.power);
        case Kind::Sqrt: {
            BallReal arg = eval_node(*n.kids[0], prec);
            return ball_sqrt(arg, "radicand " + text(*n.kids[0], 0));
        }
        }
        throw Error("corrupt radical expression");
    }

    // Precedence levels: 0 sum, 1 product, 2 unary, 3 power/atom.
    static std::string text(const Node& n, int ctx) {
        auto wrap = [&](int level, std::string s) { return level < ctx ? "(" + s + ")" : s; };
        switch (n.kind) {
        case Kind::Literal: {
            std::string s = rsato::to_string(n.value);
            if (n.value < 0 || n.value.get_den() != 1) return ctx > 0 ? "(" + s + ")" : s;
            return s;
        }
        case Kind::Add: return wrap(0, text(*n.kids[0], 0) + " + " + text(*n.kids[1], 1));
        case Kind::Sub: return wrap(0, text(*n.kids[0], 0) + " - " + text(*n.kids[1], 1));
        case Kind::Mul: return wrap(1, text(*n.kids[0], 1) + "*" + text(*n.kids[1], 2));
        case Kind::Div: return wrap(1, text(*n.kids[0], 1) + "/" + text(*n.kids[1], 2));
        case Kind::Neg: return wrap(2, "-" + text(*n.kids[0], 2));
        case Kind::Pow: return wrap(3, text(*n.kids[0], 4) + "^" + std::to_string(n.power));
        case Kind::Sqrt: return "sqrt(" + text(*n.kids[0], 0) + ")";
        }
        return "?";
    }

    struct Parser {
        std::string_view s;
        std::size_t pos;
        int line;
        int column;

        [[noreturn]] void fail(const std::string& why) const {
            throw ParseError(why + " in radical expression", line, column + static_cast<int>(pos));
        }
        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        RadicalExpr expr() {
            RadicalExpr lhs = term();
            for (;;) {
                if (eat('+')) lhs = make(Kind::Add, {lhs.node_, term().node_});
                else if (eat('-')) lhs = make(Kind::Sub, {lhs.node_, term().node_});
                else return lhs;
            }
        }
        RadicalExpr term() {
            RadicalExpr lhs = unary();
            for (;;) {
                if (eat('*')) lhs = make(Kind::Mul, {lhs.node_, unary().node_});
                else if (eat('/')) lhs = make(Kind::Div, {lhs.node_, unary().node_});
                else return lhs;
            }
        }
        RadicalExpr unary() {
            if (eat('-')) return make(Kind::Neg, {unary().node_});
            if (eat('+')) return unary();
            return power();
        }
        RadicalExpr power() {
            RadicalExpr base = primary();
            if (eat('^')) {
                skip_ws();
                std::size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (start == pos) fail("expected an exponent");
                unsigned long k = std::stoul(std::string(s.substr(start, pos - start)));
                return make(Kind::Pow, {base.node_}, k);
            }
            return base;
        }
        RadicalExpr primary() {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end");
            if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                return RadicalExpr(BigRational(BigInt(std::string(s.substr(start, pos - start)), 10)));
            }
            if (s.substr(pos, 4) == "sqrt") {
                pos += 4;
                if (!eat('(')) fail("expected '(' after sqrt");
                RadicalExpr inner = expr();
                if (!eat(')')) fail("expected ')'");
                return make(Kind::Sqrt, {inner.node_});
            }
            if (eat('(')) {
                RadicalExpr inner = expr();
                if (!eat(')')) fail("expected ')'");
                return inner;
            }
            fail("unexpected '" + std::string(1, s[pos]) + "'");
        }
    };

    std::shared_ptr<const Node> node_;
};

/// Free-function spelling of RadicalExpr::eval.
inline BallReal eval_radical(const RadicalExpr& e, long prec = kDefaultPrecision) { return e.eval(prec); }

} // namespace rsato
