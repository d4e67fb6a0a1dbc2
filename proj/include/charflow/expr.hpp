#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charflow/errors.hpp"

namespace charflow::expr {

// Forward-mode dual number: value and one directional derivative.
struct Dual {
    double val = 0.0;
    double der = 0.0;

    Dual() = default;
    Dual(double v) : val(v) {}
    Dual(double v, double d) : val(v), der(d) {}
};

// Variable bindings for evaluation. Insertion order is preserved; setting an
// already-bound name replaces its value.
class Bindings {
public:
    Bindings() = default;
    Bindings(std::initializer_list<std::pair<std::string, double>> init);

    void set(std::string name, double value);
    const double* find(std::string_view name) const;

    const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

enum class Func { exp, ln, sqrt, sin, cos, tan, atan, abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };

    Kind kind;
    double number = 0.0;
    std::string name;       // variable name
    Func func = Func::exp;  // for Kind::call
    NodePtr lhs, rhs;       // rhs unused for unary nodes
};

// Immutable parsed expression. Cheap to copy, safe to share across threads.
class Expression {
public:
    Expression() = default;
    explicit Expression(NodePtr root) : root_(std::move(root)) {}

    bool empty() const { return root_ == nullptr; }
    const NodePtr& root() const { return root_; }

    // Names of free variables, in first-appearance order ('pi'/'e' excluded).
    std::vector<std::string> variables() const;

private:
    NodePtr root_;
};

// Parses the expression grammar (precedence low to high): additive,
// multiplicative, unary minus, power (right-associative), atoms. Reserved
// constants: pi, e. Syntax errors carry the byte offset of the offending
// token and the expected-token set in the message.
Expression parse(std::string_view text);

double eval(const Expression& e, const Bindings& b);

// Value and exact partial derivative with respect to `seed`.
Dual eval_dual(const Expression& e, const Bindings& b, std::string_view seed);

// Canonical text form; parse(to_string(parse(s))) equals parse(s) node for node.
std::string to_string(const Expression& e);

bool equal(const Expression& a, const Expression& b);

}  // namespace charflow::expr
