#pragma once

// Small closed-form expression grammar over a single variable t:
//   +, -, *, /, ^, sin, cos, sinh, cosh, exp, numeric literals, pi, e.
// Expressions are parsed once into an AST; derivatives are formed
// symbolically so that warp jets stay accurate to roundoff.

#include <cmath>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace serrinlab::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Log is internal only (derivative of a general power); the grammar does not expose it.
enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Sinh, Cosh, Exp, Log };

struct Node {
    Op op;
    double value = 0.0;   // Const only
    NodePtr a, b;

    Node(Op o, NodePtr lhs, NodePtr rhs) : op(o), a(std::move(lhs)), b(std::move(rhs)) {}
    explicit Node(double v) : op(Op::Const), value(v) {}
};

inline NodePtr constant(double v) { return std::make_shared<Node>(v); }
inline NodePtr make(Op o, NodePtr a = nullptr, NodePtr b = nullptr) {
    return std::make_shared<Node>(o, std::move(a), std::move(b));
}
inline NodePtr variable() { return make(Op::Var); }

inline bool is_const(const NodePtr& n, double v) {
    return n && n->op == Op::Const && n->value == v;
}

// Constructors with light constant folding; keeps derivative trees small.
inline NodePtr add(NodePtr a, NodePtr b) {
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value + b->value);
    return make(Op::Add, std::move(a), std::move(b));
}
inline NodePtr sub(NodePtr a, NodePtr b) {
    if (is_const(b, 0)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value - b->value);
    return make(Op::Sub, std::move(a), std::move(b));
}
inline NodePtr mul(NodePtr a, NodePtr b) {
    if (is_const(a, 0) || is_const(b, 0)) return constant(0);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value * b->value);
    return make(Op::Mul, std::move(a), std::move(b));
}
inline NodePtr div(NodePtr a, NodePtr b) {
    if (is_const(a, 0)) return constant(0);
    if (is_const(b, 1)) return a;
    return make(Op::Div, std::move(a), std::move(b));
}
inline NodePtr neg(NodePtr a) {
    if (a->op == Op::Const) return constant(-a->value);
    return make(Op::Neg, std::move(a));
}
inline NodePtr pow_node(NodePtr a, NodePtr b) {
    if (is_const(b, 1)) return a;
    if (is_const(b, 0)) return constant(1);
    return make(Op::Pow, std::move(a), std::move(b));
}

inline double eval(const NodePtr& n, double t) {
    switch (n->op) {
        case Op::Const: return n->value;
        case Op::Var:   return t;
        case Op::Add:   return eval(n->a, t) + eval(n->b, t);
        case Op::Sub:   return eval(n->a, t) - eval(n->b, t);
        case Op::Mul:   return eval(n->a, t) * eval(n->b, t);
        case Op::Div:   return eval(n->a, t) / eval(n->b, t);
        case Op::Pow:   return std::pow(eval(n->a, t), eval(n->b, t));
        case Op::Neg:   return -eval(n->a, t);
        case Op::Sin:   return std::sin(eval(n->a, t));
        case Op::Cos:   return std::cos(eval(n->a, t));
        case Op::Sinh:  return std::sinh(eval(n->a, t));
        case Op::Cosh:  return std::cosh(eval(n->a, t));
        case Op::Exp:   return std::exp(eval(n->a, t));
        case Op::Log:   return std::log(eval(n->a, t));
    }
    throw std::logic_error("expr: bad node");
}

inline NodePtr derivative(const NodePtr& n) {
    switch (n->op) {
        case Op::Const: return constant(0);
        case Op::Var:   return constant(1);
        case Op::Add:   return add(derivative(n->a), derivative(n->b));
        case Op::Sub:   return sub(derivative(n->a), derivative(n->b));
        case Op::Mul:   return add(mul(derivative(n->a), n->b), mul(n->a, derivative(n->b)));
        case Op::Div:
            return div(sub(mul(derivative(n->a), n->b), mul(n->a, derivative(n->b))),
                       mul(n->b, n->b));
        case Op::Pow: {
            if (n->b->op == Op::Const) {
                const double p = n->b->value;
                return mul(mul(constant(p), pow_node(n->a, constant(p - 1))), derivative(n->a));
            }
            // d(a^b) = a^b (b' ln a + b a'/a)
            NodePtr t1 = mul(derivative(n->b), make(Op::Log, n->a));
            NodePtr t2 = div(mul(n->b, derivative(n->a)), n->a);
            return mul(pow_node(n->a, n->b), add(std::move(t1), std::move(t2)));
        }
        case Op::Neg:  return neg(derivative(n->a));
        case Op::Sin:  return mul(make(Op::Cos, n->a), derivative(n->a));
        case Op::Cos:  return neg(mul(make(Op::Sin, n->a), derivative(n->a)));
        case Op::Sinh: return mul(make(Op::Cosh, n->a), derivative(n->a));
        case Op::Cosh: return mul(make(Op::Sinh, n->a), derivative(n->a));
        case Op::Exp:  return mul(make(Op::Exp, n->a), derivative(n->a));
        case Op::Log:  return div(derivative(n->a), n->a);
    }
    throw std::logic_error("expr: bad node");
}

class Parser {
public:
    explicit Parser(std::string src) : src_(std::move(src)) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != src_.size())
            throw std::invalid_argument("expr: trailing input at '" + src_.substr(pos_) + "'");
        return e;
    }

private:
    std::string src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    NodePtr expression() {
        NodePtr e = term();
        for (;;) {
            if (consume('+')) e = add(e, term());
            else if (consume('-')) e = sub(e, term());
            else return e;
        }
    }
    NodePtr term() {
        NodePtr e = factor();
        for (;;) {
            if (consume('*')) e = mul(e, factor());
            else if (consume('/')) e = div(e, factor());
            else return e;
        }
    }
    NodePtr factor() {
        if (consume('-')) return neg(factor());
        NodePtr base = primary();
        if (consume('^')) return pow_node(base, factor());  // right associative
        return base;
    }
    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw std::invalid_argument("expr: unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = std::stod(src_.substr(pos_), &used);
            pos_ += used;
            return constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            if (name == "t") return variable();
            if (name == "pi") return constant(3.14159265358979323846);
            if (name == "e") return constant(2.71828182845904523536);
            Op op;
            if (name == "sin") op = Op::Sin;
            else if (name == "cos") op = Op::Cos;
            else if (name == "sinh") op = Op::Sinh;
            else if (name == "cosh") op = Op::Cosh;
            else if (name == "exp") op = Op::Exp;
            else throw std::invalid_argument("expr: unknown identifier '" + name + "'");
            if (!consume('(')) throw std::invalid_argument("expr: expected '(' after " + name);
            NodePtr arg = expression();
            if (!consume(')')) throw std::invalid_argument("expr: missing ')'");
            return make(op, std::move(arg));
        }
        if (consume('(')) {
            NodePtr e = expression();
            if (!consume(')')) throw std::invalid_argument("expr: missing ')'");
            return e;
        }
        throw std::invalid_argument(std::string("expr: unexpected character '") + c + "'");
    }
};

inline NodePtr parse(const std::string& src) { return Parser(src).parse(); }

}  // namespace serrinlab::expr
