#include "covham/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace covham {

namespace detail {

enum class NodeType { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sin, Cos, Exp, Log, Sqrt };

struct ExprNode {
    NodeType type{};
    double value = 0.0;   // Constant
    int var_index = -1;   // Variable
    Func fn{};            // Call
    bool int_pow = false; // Pow with integral constant exponent
    long long int_exp = 0;
    std::unique_ptr<ExprNode> lhs;
    std::unique_ptr<ExprNode> rhs;
};

namespace {

using NodePtr = std::unique_ptr<ExprNode>;

NodePtr make_node(NodeType t) {
    auto n = std::make_unique<ExprNode>();
    n->type = t;
    return n;
}

NodePtr make_binary(NodeType t, NodePtr lhs, NodePtr rhs) {
    auto n = make_node(t);
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    if (t == NodeType::Pow) {
        // Resolve integral constant exponents up front: they are evaluated by
        // repeated multiplication and place no sign constraint on the base.
        const ExprNode* e = n->rhs.get();
        double sign = 1.0;
        while (e->type == NodeType::Negate) {
            sign = -sign;
            e = e->lhs.get();
        }
        if (e->type == NodeType::Constant) {
            double val = sign * e->value;
            if (val == std::floor(val) && std::abs(val) <= 1e9) {
                n->int_pow = true;
                n->int_exp = static_cast<long long>(val);
            }
        }
    }
    return n;
}

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::size_t pos = 0;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& current() const { return tok_; }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        tok_ = Token{Token::End, pos_};
        if (pos_ >= src_.size())
            return;
        const char c = src_[pos_];
        switch (c) {
        case '+': tok_ = {Token::Plus, pos_++}; return;
        case '-': tok_ = {Token::Minus, pos_++}; return;
        case '*': tok_ = {Token::Star, pos_++}; return;
        case '/': tok_ = {Token::Slash, pos_++}; return;
        case '^': tok_ = {Token::Caret, pos_++}; return;
        case '(': tok_ = {Token::LParen, pos_++}; return;
        case ')': tok_ = {Token::RParen, pos_++}; return;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_ = Token{Token::Ident, start};
            tok_.text.assign(src_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "' at offset " +
                             std::to_string(pos_),
                         pos_);
    }

private:
    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark; // bare 'e' belongs to the next token
            }
        }
        double value = 0.0;
        auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (res.ec != std::errc{} || res.ptr != src_.data() + pos_)
            throw ParseError("malformed number at offset " + std::to_string(start), start);
        tok_ = Token{Token::Number, start};
        tok_.number = value;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& coords)
        : lex_(src), coords_(coords) {}

    NodePtr parse() {
        NodePtr e = parse_sum();
        if (lex_.current().kind != Token::End)
            throw ParseError("unexpected token at offset " + std::to_string(lex_.current().pos),
                             lex_.current().pos);
        return e;
    }

private:
    NodePtr parse_sum() {
        NodePtr lhs = parse_term();
        for (;;) {
            Token::Kind k = lex_.current().kind;
            if (k == Token::Plus) {
                lex_.advance();
                lhs = make_binary(NodeType::Add, std::move(lhs), parse_term());
            } else if (k == Token::Minus) {
                lex_.advance();
                lhs = make_binary(NodeType::Sub, std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            Token::Kind k = lex_.current().kind;
            if (k == Token::Star) {
                lex_.advance();
                lhs = make_binary(NodeType::Mul, std::move(lhs), parse_unary());
            } else if (k == Token::Slash) {
                lex_.advance();
                lhs = make_binary(NodeType::Div, std::move(lhs), parse_unary());
            } else {
                return lhs;
            }
        }
    }

    // Unary minus binds looser than '^': -q^2 is -(q^2).
    NodePtr parse_unary() {
        if (lex_.current().kind == Token::Minus) {
            lex_.advance();
            auto n = make_node(NodeType::Negate);
            n->lhs = parse_unary();
            return n;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (lex_.current().kind == Token::Caret) {
            lex_.advance();
            return make_binary(NodeType::Pow, std::move(base), parse_unary());
        }
        return base;
    }

    NodePtr parse_primary() {
        const Token tok = lex_.current();
        switch (tok.kind) {
        case Token::Number: {
            lex_.advance();
            auto n = make_node(NodeType::Constant);
            n->value = tok.number;
            return n;
        }
        case Token::Ident: {
            lex_.advance();
            if (lex_.current().kind == Token::LParen) {
                Func fn;
                if (tok.text == "sin")
                    fn = Func::Sin;
                else if (tok.text == "cos")
                    fn = Func::Cos;
                else if (tok.text == "exp")
                    fn = Func::Exp;
                else if (tok.text == "log")
                    fn = Func::Log;
                else if (tok.text == "sqrt")
                    fn = Func::Sqrt;
                else
                    throw ParseError("unknown function '" + tok.text + "' at offset " +
                                         std::to_string(tok.pos),
                                     tok.pos);
                lex_.advance();
                auto n = make_node(NodeType::Call);
                n->fn = fn;
                n->lhs = parse_sum();
                expect(Token::RParen, "')'");
                return n;
            }
            for (std::size_t i = 0; i < coords_.size(); ++i) {
                if (coords_[i] == tok.text) {
                    auto n = make_node(NodeType::Variable);
                    n->var_index = static_cast<int>(i);
                    return n;
                }
            }
            throw ParseError("unknown identifier '" + tok.text + "' at offset " +
                                 std::to_string(tok.pos),
                             tok.pos);
        }
        case Token::LParen: {
            lex_.advance();
            NodePtr inner = parse_sum();
            expect(Token::RParen, "')'");
            return inner;
        }
        default:
            throw ParseError("expected expression at offset " + std::to_string(tok.pos), tok.pos);
        }
    }

    void expect(Token::Kind kind, const char* what) {
        if (lex_.current().kind != kind)
            throw ParseError(std::string("expected ") + what + " at offset " +
                                 std::to_string(lex_.current().pos),
                             lex_.current().pos);
        lex_.advance();
    }

    Lexer lex_;
    const std::vector<std::string>& coords_;
};

template <typename T>
T eval_node(const ExprNode& n, std::span<const T> x) {
    switch (n.type) {
    case NodeType::Constant:
        return scalar_of<T>(n.value);
    case NodeType::Variable:
        return x[static_cast<std::size_t>(n.var_index)];
    case NodeType::Negate:
        return -eval_node(*n.lhs, x);
    case NodeType::Add:
        return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case NodeType::Sub:
        return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case NodeType::Mul:
        return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case NodeType::Div:
        return checked::div(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
    case NodeType::Pow:
        if (n.int_pow)
            return checked::pow_int(eval_node(*n.lhs, x), n.int_exp);
        return checked::pow_general(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
    case NodeType::Call: {
        T a = eval_node(*n.lhs, x);
        switch (n.fn) {
        case Func::Sin: return sin(a);
        case Func::Cos: return cos(a);
        case Func::Exp: return exp(a);
        case Func::Log: return checked::log(a);
        case Func::Sqrt: return checked::sqrt(a);
        }
        break;
    }
    }
    throw std::logic_error("corrupt expression node");
}

// Negate shares the precedence tier of +/- so "-q^2" and "q - -p" print back
// to themselves.
int precedence(NodeType t) {
    switch (t) {
    case NodeType::Add:
    case NodeType::Sub:
    case NodeType::Negate:
        return 1;
    case NodeType::Mul:
    case NodeType::Div:
        return 2;
    case NodeType::Pow:
        return 3;
    default:
        return 4;
    }
}

std::string format_literal(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* func_name(Func f) {
    switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    }
    return "?";
}

void print_node(const ExprNode& n, const std::vector<std::string>& coords, std::string& out) {
    auto child = [&](const ExprNode& c, bool needs_parens) {
        if (needs_parens)
            out += '(';
        print_node(c, coords, out);
        if (needs_parens)
            out += ')';
    };
    const int prec = precedence(n.type);
    switch (n.type) {
    case NodeType::Constant:
        if (n.value < 0.0 || std::signbit(n.value)) {
            out += '(';
            out += format_literal(n.value);
            out += ')';
        } else {
            out += format_literal(n.value);
        }
        return;
    case NodeType::Variable:
        out += coords[static_cast<std::size_t>(n.var_index)];
        return;
    case NodeType::Negate:
        out += '-';
        child(*n.lhs, precedence(n.lhs->type) < prec);
        return;
    case NodeType::Add:
    case NodeType::Sub:
    case NodeType::Mul:
    case NodeType::Div: {
        child(*n.lhs, precedence(n.lhs->type) < prec);
        switch (n.type) {
        case NodeType::Add: out += " + "; break;
        case NodeType::Sub: out += " - "; break;
        case NodeType::Mul: out += "*"; break;
        case NodeType::Div: out += "/"; break;
        default: break;
        }
        // Right child needs parens on ties: a - (b - c), a/(b*c).
        child(*n.rhs, precedence(n.rhs->type) <= prec);
        return;
    }
    case NodeType::Pow:
        child(*n.lhs, precedence(n.lhs->type) <= prec);
        out += '^';
        child(*n.rhs, precedence(n.rhs->type) < prec);
        return;
    case NodeType::Call:
        out += func_name(n.fn);
        out += '(';
        print_node(*n.lhs, coords, out);
        out += ')';
        return;
    }
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
    if (a.type != b.type)
        return false;
    switch (a.type) {
    case NodeType::Constant:
        return a.value == b.value;
    case NodeType::Variable:
        return a.var_index == b.var_index;
    case NodeType::Negate:
        return nodes_equal(*a.lhs, *b.lhs);
    case NodeType::Call:
        return a.fn == b.fn && nodes_equal(*a.lhs, *b.lhs);
    default:
        return nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
    }
}

} // namespace
} // namespace detail

template <typename T>
T Expression::eval(std::span<const T> x) const {
    return detail::eval_node<T>(*root_, x);
}

template double Expression::eval<double>(std::span<const double>) const;
template Dual1 Expression::eval<Dual1>(std::span<const Dual1>) const;
template Dual2 Expression::eval<Dual2>(std::span<const Dual2>) const;

std::string Expression::to_string() const {
    std::string out;
    detail::print_node(*root_, coords_, out);
    return out;
}

bool Expression::structurally_equal(const Expression& other) const {
    return coords_ == other.coords_ && detail::nodes_equal(*root_, *other.root_);
}

bool Expression::is_constant() const {
    return root_->type == detail::NodeType::Constant;
}

Expression parse_expression(std::string_view text, std::vector<std::string> coordinates) {
    if (coordinates.empty())
        throw ValidationError("coordinate list must not be empty");
    for (std::size_t i = 0; i < coordinates.size(); ++i)
        for (std::size_t j = i + 1; j < coordinates.size(); ++j)
            if (coordinates[i] == coordinates[j])
                throw ValidationError("duplicate coordinate name '" + coordinates[i] + "'");
    detail::Parser parser(text, coordinates);
    Expression e;
    e.root_ = parser.parse();
    e.coords_ = std::move(coordinates);
    return e;
}

Expression make_constant_expression(double value, std::vector<std::string> coordinates) {
    auto n = std::make_unique<detail::ExprNode>();
    n->type = detail::NodeType::Constant;
    n->value = value;
    Expression e;
    e.root_ = std::move(n);
    e.coords_ = std::move(coordinates);
    return e;
}

} // namespace covham
