#include "carnot/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace carnot {

namespace {

struct Node {
    enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Abs } op;
    double value = 0.0;
    int var = -1;
    std::unique_ptr<Node> a, b;

    double eval(const Vec& x) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Var: return x[var];
            case Op::Add: return a->eval(x) + b->eval(x);
            case Op::Sub: return a->eval(x) - b->eval(x);
            case Op::Mul: return a->eval(x) * b->eval(x);
            case Op::Div: return a->eval(x) / b->eval(x);
            case Op::Pow: return std::pow(a->eval(x), b->eval(x));
            case Op::Neg: return -a->eval(x);
            case Op::Sin: return std::sin(a->eval(x));
            case Op::Cos: return std::cos(a->eval(x));
            case Op::Abs: return std::fabs(a->eval(x));
        }
        return 0.0;
    }
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
    Parser(const std::string& src, int q) : src_(src), q_(q) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression error at position " + std::to_string(pos_) +
                                    ": " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    static NodePtr mk(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_unique<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (eat('+')) e = mk(Node::Op::Add, std::move(e), term());
            else if (eat('-')) e = mk(Node::Op::Sub, std::move(e), term());
            else return e;
        }
    }

    NodePtr term() {
        NodePtr e = factor();
        for (;;) {
            if (eat('*')) e = mk(Node::Op::Mul, std::move(e), factor());
            else if (eat('/')) e = mk(Node::Op::Div, std::move(e), factor());
            else return e;
        }
    }

    NodePtr factor() {
        NodePtr base = unary();
        if (eat('^')) return mk(Node::Op::Pow, std::move(base), factor());
        return base;
    }

    NodePtr unary() {
        if (eat('-')) return mk(Node::Op::Neg, unary());
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t end = 0;
            double v = std::stod(src_.substr(pos_), &end);
            pos_ += end;
            auto n = mk(Node::Op::Const);
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string word = src_.substr(start, pos_ - start);
            if (word == "sin" || word == "cos" || word == "abs") {
                if (!eat('(')) fail(word + " expects '('");
                NodePtr arg = expr();
                if (!eat(')')) fail("missing ')'");
                return mk(word == "sin"   ? Node::Op::Sin
                          : word == "cos" ? Node::Op::Cos
                                          : Node::Op::Abs,
                          std::move(arg));
            }
            if (word.size() >= 2 && word[0] == 'x') {
                int idx = 0;
                try {
                    idx = std::stoi(word.substr(1));
                } catch (...) {
                    fail("unknown identifier '" + word + "'");
                }
                if (idx < 1 || idx > q_)
                    fail("coordinate " + word + " out of range (q = " + std::to_string(q_) + ")");
                auto n = mk(Node::Op::Var);
                n->var = idx - 1;
                return n;
            }
            fail("unknown identifier '" + word + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& src_;
    int q_;
    size_t pos_ = 0;
};

} // namespace

std::function<double(const Vec&)> parse_expression(const std::string& src, int q) {
    Parser p(src, q);
    std::shared_ptr<Node> root(p.parse().release());
    return [root](const Vec& x) { return root->eval(x); };
}

} // namespace carnot
