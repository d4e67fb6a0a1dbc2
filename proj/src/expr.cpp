#include "charflow/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace charflow::expr {

Bindings::Bindings(std::initializer_list<std::pair<std::string, double>> init) {
    for (auto& [k, v] : init) set(k, v);
}

void Bindings::set(std::string name, double value) {
    for (auto& [k, v] : entries_) {
        if (k == name) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(std::move(name), value);
}

const double* Bindings::find(std::string_view name) const {
    for (auto& [k, v] : entries_)
        if (k == name) return &v;
    return nullptr;
}

namespace {

[[noreturn]] void fault(const std::string& what) {
    raise(errc::domain_fault, "domain fault: " + what);
}

bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x); }

// ---- dual arithmetic -------------------------------------------------------

Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.der + b.der}; }
Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.der - b.der}; }
Dual operator-(Dual a) { return {-a.val, -a.der}; }
Dual operator*(Dual a, Dual b) { return {a.val * b.val, a.der * b.val + a.val * b.der}; }

Dual div_checked(Dual a, Dual b) {
    if (b.val == 0.0) fault("division by zero");
    return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
}

double div_checked(double a, double b) {
    if (b == 0.0) fault("division by zero");
    return a / b;
}

double pow_checked(double base, double exponent) {
    if (base < 0.0 && !is_integral(exponent))
        fault("negative base with non-integer exponent");
    if (base == 0.0 && exponent < 0.0) fault("zero base with negative exponent");
    return std::pow(base, exponent);
}

Dual pow_checked(Dual a, Dual b) {
    const double v = pow_checked(a.val, b.val);
    double der = 0.0;
    if (a.der != 0.0) {
        // d/dt a^b contribution: b * a^(b-1) * a'
        if (a.val == 0.0) {
            if (b.val == 1.0)
                der += a.der;
            else if (b.val > 1.0)
                der += 0.0;
            else
                fault("derivative of x^p at x = 0 with p < 1");
        } else {
            der += b.val * pow_checked(a.val, b.val - 1.0) * a.der;
        }
    }
    if (b.der != 0.0) {
        // contribution: a^b * ln(a) * b'
        if (a.val <= 0.0) fault("derivative of a^x needs a > 0");
        der += v * std::log(a.val) * b.der;
    }
    return {v, der};
}

double call_fn(Func f, double x) {
    switch (f) {
        case Func::exp: return std::exp(x);
        case Func::ln:
            if (x <= 0.0) fault("ln of non-positive value");
            return std::log(x);
        case Func::sqrt:
            if (x < 0.0) fault("sqrt of negative value");
            return std::sqrt(x);
        case Func::sin: return std::sin(x);
        case Func::cos: return std::cos(x);
        case Func::tan: {
            if (std::cos(x) == 0.0) fault("tan at a pole");
            return std::tan(x);
        }
        case Func::atan: return std::atan(x);
        case Func::abs: return std::abs(x);
    }
    fault("unreachable function id");
}

Dual call_fn(Func f, Dual x) {
    switch (f) {
        case Func::exp: {
            const double e = std::exp(x.val);
            return {e, x.der * e};
        }
        case Func::ln: {
            if (x.val <= 0.0) fault("ln of non-positive value");
            return {std::log(x.val), x.der / x.val};
        }
        case Func::sqrt: {
            if (x.val < 0.0) fault("sqrt of negative value");
            const double s = std::sqrt(x.val);
            if (x.der == 0.0) return {s, 0.0};
            if (s == 0.0) fault("derivative of sqrt at 0");
            return {s, x.der / (2.0 * s)};
        }
        case Func::sin: return {std::sin(x.val), x.der * std::cos(x.val)};
        case Func::cos: return {std::cos(x.val), -x.der * std::sin(x.val)};
        case Func::tan: {
            const double c = std::cos(x.val);
            if (c == 0.0) fault("tan at a pole");
            return {std::tan(x.val), x.der / (c * c)};
        }
        case Func::atan: return {std::atan(x.val), x.der / (1.0 + x.val * x.val)};
        case Func::abs: {
            if (x.val == 0.0) {
                if (x.der == 0.0) return {0.0, 0.0};
                fault("derivative of abs at 0");
            }
            return {std::abs(x.val), x.val > 0.0 ? x.der : -x.der};
        }
    }
    fault("unreachable function id");
}

// ---- lexer -----------------------------------------------------------------

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::size_t length = 0;
    double number = 0.0;
    std::string_view text;
};

const char* tok_desc(Tok t) {
    switch (t) {
        case Tok::number: return "number";
        case Tok::ident: return "identifier";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::slash: return "'/'";
        case Tok::caret: return "'^'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::comma: return "','";
        case Tok::end: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_.offset = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::end;
            current_.length = 0;
            return;
        }
        const char c = text_[pos_];
        switch (c) {
            case '+': single(Tok::plus); return;
            case '-': single(Tok::minus); return;
            case '*': single(Tok::star); return;
            case '/': single(Tok::slash); return;
            case '^': single(Tok::caret); return;
            case '(': single(Tok::lparen); return;
            case ')': single(Tok::rparen); return;
            case ',': single(Tok::comma); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                          text_[end] == '_'))
                ++end;
            current_.kind = Tok::ident;
            current_.length = end - pos_;
            current_.text = text_.substr(pos_, end - pos_);
            pos_ = end;
            return;
        }
        error e(errc::syntax_error, "syntax error at offset " + std::to_string(pos_) +
                                        ": unexpected character '" + std::string(1, c) + "'");
        e.offset = pos_;
        throw e;
    }

    void single(Tok k) {
        current_.kind = k;
        current_.length = 1;
        ++pos_;
    }

    void lex_number() {
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        }
        // Exponent only when e/E is followed by an (optionally signed) digit;
        // otherwise the e belongs to the next token.
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t cursor = end + 1;
            if (cursor < text_.size() && (text_[cursor] == '+' || text_[cursor] == '-')) ++cursor;
            if (cursor < text_.size() && std::isdigit(static_cast<unsigned char>(text_[cursor]))) {
                ++cursor;
                while (cursor < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[cursor])))
                    ++cursor;
                end = cursor;
            }
        }
        const std::string_view lexeme = text_.substr(pos_, end - pos_);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
        if (ec != std::errc() || ptr != lexeme.data() + lexeme.size()) {
            error e(errc::syntax_error,
                    "syntax error at offset " + std::to_string(pos_) + ": bad number literal");
            e.offset = pos_;
            throw e;
        }
        current_.kind = Tok::number;
        current_.length = end - pos_;
        current_.number = value;
        current_.text = lexeme;
        pos_ = end;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_{};
};

// ---- parser ----------------------------------------------------------------

const std::array<std::pair<std::string_view, Func>, 8> kFunctions = {{
    {"exp", Func::exp},
    {"ln", Func::ln},
    {"sqrt", Func::sqrt},
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"tan", Func::tan},
    {"atan", Func::atan},
    {"abs", Func::abs},
}};

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->number = v;
    return n;
}

NodePtr make_variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::variable;
    n->name = std::move(name);
    return n;
}

NodePtr make_unary(NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::negate;
    n->lhs = std::move(child);
    return n;
}

NodePtr make_binary(Node::Kind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(Func f, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) {}

    NodePtr parse_all() {
        NodePtr root = additive();
        expect(Tok::end, "operator or end of input");
        return root;
    }

private:
    [[noreturn]] void unexpected(const Token& t, const std::string& expected) {
        error e(errc::syntax_error, "syntax error at offset " + std::to_string(t.offset) +
                                        ": unexpected " + tok_desc(t.kind) + ", expected " +
                                        expected);
        e.offset = t.offset;
        throw e;
    }

    void expect(Tok kind, const std::string& expected) {
        if (lexer_.peek().kind != kind) unexpected(lexer_.peek(), expected);
        lexer_.take();
    }

    NodePtr additive() {
        NodePtr lhs = multiplicative();
        for (;;) {
            const Tok k = lexer_.peek().kind;
            if (k != Tok::plus && k != Tok::minus) return lhs;
            lexer_.take();
            lhs = make_binary(k == Tok::plus ? Node::Kind::add : Node::Kind::sub, std::move(lhs),
                              multiplicative());
        }
    }

    NodePtr multiplicative() {
        NodePtr lhs = unary();
        for (;;) {
            const Tok k = lexer_.peek().kind;
            if (k != Tok::star && k != Tok::slash) return lhs;
            lexer_.take();
            lhs = make_binary(k == Tok::star ? Node::Kind::mul : Node::Kind::div, std::move(lhs),
                              unary());
        }
    }

    NodePtr unary() {
        if (lexer_.peek().kind == Tok::minus) {
            lexer_.take();
            return make_unary(unary());
        }
        return power();
    }

    // power binds tighter than unary minus and associates right: -x^2 is
    // -(x^2) and 2^3^2 is 2^(3^2); the exponent may start with a sign.
    NodePtr power() {
        NodePtr base = atom();
        if (lexer_.peek().kind != Tok::caret) return base;
        lexer_.take();
        return make_binary(Node::Kind::pow, std::move(base), unary());
    }

    NodePtr atom() {
        const Token t = lexer_.peek();
        switch (t.kind) {
            case Tok::number:
                lexer_.take();
                return make_number(t.number);
            case Tok::lparen: {
                lexer_.take();
                NodePtr inner = additive();
                expect(Tok::rparen, "')'");
                return inner;
            }
            case Tok::ident: {
                lexer_.take();
                if (lexer_.peek().kind == Tok::lparen) {
                    const auto it =
                        std::find_if(kFunctions.begin(), kFunctions.end(),
                                     [&](const auto& f) { return f.first == t.text; });
                    if (it == kFunctions.end()) {
                        error e(errc::unknown_function,
                                "unknown function '" + std::string(t.text) + "' at offset " +
                                    std::to_string(t.offset));
                        e.offset = t.offset;
                        throw e;
                    }
                    lexer_.take();  // '('
                    NodePtr arg = additive();
                    expect(Tok::rparen, "')'");
                    return make_call(it->second, std::move(arg));
                }
                if (t.text == "pi") return make_number(3.14159265358979323846);
                if (t.text == "e") return make_number(2.71828182845904523536);
                return make_variable(std::string(t.text));
            }
            default:
                unexpected(t, "number, variable, function call, or '('");
        }
    }

    Lexer lexer_;
};

// ---- evaluation ------------------------------------------------------------

template <typename T, typename Lookup>
T eval_node(const Node& n, const Lookup& lookup) {
    switch (n.kind) {
        case Node::Kind::number: return T(n.number);
        case Node::Kind::variable: return lookup(n.name);
        case Node::Kind::negate: return -eval_node<T>(*n.lhs, lookup);
        case Node::Kind::add:
            return eval_node<T>(*n.lhs, lookup) + eval_node<T>(*n.rhs, lookup);
        case Node::Kind::sub:
            return eval_node<T>(*n.lhs, lookup) - eval_node<T>(*n.rhs, lookup);
        case Node::Kind::mul:
            return eval_node<T>(*n.lhs, lookup) * eval_node<T>(*n.rhs, lookup);
        case Node::Kind::div:
            return div_checked(eval_node<T>(*n.lhs, lookup), eval_node<T>(*n.rhs, lookup));
        case Node::Kind::pow:
            return pow_checked(eval_node<T>(*n.lhs, lookup), eval_node<T>(*n.rhs, lookup));
        case Node::Kind::call: return call_fn(n.func, eval_node<T>(*n.lhs, lookup));
    }
    fault("unreachable node kind");
}

[[noreturn]] void unbound(const std::string& name) {
    raise(errc::unbound_variable, "unbound variable '" + name + "'");
}

void collect_variables(const Node& n, std::vector<std::string>& out) {
    switch (n.kind) {
        case Node::Kind::variable:
            if (std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
            return;
        case Node::Kind::number: return;
        default:
            if (n.lhs) collect_variables(*n.lhs, out);
            if (n.rhs) collect_variables(*n.rhs, out);
    }
}

// ---- printing --------------------------------------------------------------

int precedence(const Node& n) {
    switch (n.kind) {
        case Node::Kind::add:
        case Node::Kind::sub: return 1;
        case Node::Kind::mul:
        case Node::Kind::div: return 2;
        case Node::Kind::negate: return 3;
        case Node::Kind::pow: return 4;
        default: return 5;
    }
}

const char* func_name(Func f) {
    switch (f) {
        case Func::exp: return "exp";
        case Func::ln: return "ln";
        case Func::sqrt: return "sqrt";
        case Func::sin: return "sin";
        case Func::cos: return "cos";
        case Func::tan: return "tan";
        case Func::atan: return "atan";
        case Func::abs: return "abs";
    }
    return "?";
}

void print_node(const Node& n, std::ostream& os, int parent_prec, bool rhs_of_binary) {
    const int prec = precedence(n);
    const bool parens = prec < parent_prec || (prec == parent_prec && rhs_of_binary);
    if (parens) os << '(';
    switch (n.kind) {
        case Node::Kind::number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.number;
            os << tmp.str();
            break;
        }
        case Node::Kind::variable: os << n.name; break;
        case Node::Kind::negate:
            os << '-';
            print_node(*n.lhs, os, prec, true);
            break;
        case Node::Kind::add:
        case Node::Kind::sub:
        case Node::Kind::mul:
        case Node::Kind::div: {
            const char op = n.kind == Node::Kind::add   ? '+'
                            : n.kind == Node::Kind::sub ? '-'
                            : n.kind == Node::Kind::mul ? '*'
                                                        : '/';
            print_node(*n.lhs, os, prec, false);
            os << ' ' << op << ' ';
            print_node(*n.rhs, os, prec, true);
            break;
        }
        case Node::Kind::pow:
            // base is an atom in the grammar, so force parens unless atomic
            print_node(*n.lhs, os, 5, false);
            os << '^';
            print_node(*n.rhs, os, prec, false);  // right-associative
            break;
        case Node::Kind::call:
            os << func_name(n.func) << '(';
            print_node(*n.lhs, os, 0, false);
            os << ')';
            break;
    }
    if (parens) os << ')';
}

bool equal_nodes(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Node::Kind::number: return a->number == b->number;
        case Node::Kind::variable: return a->name == b->name;
        case Node::Kind::call:
            return a->func == b->func && equal_nodes(a->lhs, b->lhs);
        default: return equal_nodes(a->lhs, b->lhs) && equal_nodes(a->rhs, b->rhs);
    }
}

}  // namespace

Expression parse(std::string_view text) {
    Parser p(text);
    return Expression(p.parse_all());
}

std::vector<std::string> Expression::variables() const {
    std::vector<std::string> out;
    if (root_) collect_variables(*root_, out);
    return out;
}

double eval(const Expression& e, const Bindings& b) {
    if (e.empty()) raise(errc::bad_parameter, "eval: empty expression");
    return eval_node<double>(*e.root(), [&](const std::string& name) -> double {
        if (const double* v = b.find(name)) return *v;
        unbound(name);
    });
}

Dual eval_dual(const Expression& e, const Bindings& b, std::string_view seed) {
    if (e.empty()) raise(errc::bad_parameter, "eval_dual: empty expression");
    if (!b.find(seed))
        raise(errc::unbound_variable, "eval_dual: seed variable '" + std::string(seed) +
                                          "' is not bound");
    return eval_node<Dual>(*e.root(), [&](const std::string& name) -> Dual {
        if (const double* v = b.find(name)) return Dual(*v, name == seed ? 1.0 : 0.0);
        unbound(name);
    });
}

std::string to_string(const Expression& e) {
    if (e.empty()) return "";
    std::ostringstream os;
    print_node(*e.root(), os, 0, false);
    return os.str();
}

bool equal(const Expression& a, const Expression& b) { return equal_nodes(a.root(), b.root()); }

}  // namespace charflow::expr
