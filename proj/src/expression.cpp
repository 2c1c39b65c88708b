#include "jetmech/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "jetmech/errors.hpp"

namespace jetmech {

struct Expression::Node {
  enum class Op { constant, variable, add, sub, mul, div, neg, sin, cos, exp, pow };

  Op op = Op::constant;
  double value = 0.0;
  int index = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  /// True if no variable occurs in the subtree.
  [[nodiscard]] bool is_constant() const {
    if (op == Op::variable) return false;
    if (lhs && !lhs->is_constant()) return false;
    if (rhs && !rhs->is_constant()) return false;
    return true;
  }

  template <class T>
  T eval(const T* x) const {
    using std::cos;
    using std::exp;
    using std::pow;
    using std::sin;
    switch (op) {
      case Op::constant: return T(value);
      case Op::variable: return x[index];
      case Op::add: return lhs->eval(x) + rhs->eval(x);
      case Op::sub: return lhs->eval(x) - rhs->eval(x);
      case Op::mul: return lhs->eval(x) * rhs->eval(x);
      case Op::div: return lhs->eval(x) / rhs->eval(x);
      case Op::neg: return -lhs->eval(x);
      case Op::sin: return sin(lhs->eval(x));
      case Op::cos: return cos(lhs->eval(x));
      case Op::exp: return exp(lhs->eval(x));
      case Op::pow: {
        if (rhs->is_constant()) return pow(lhs->eval(x), rhs->eval(static_cast<const double*>(nullptr)));
        const T base = lhs->eval(x);
        if (value_of(base) <= 0.0) {
          throw DomainError("pow with a variable exponent needs a positive base");
        }
        return pow(base, rhs->eval(x));
      }
    }
    return T(0.0);
  }

 private:
  static double value_of(double v) { return v; }
  static double value_of(const HyperDual& v) { return v.value(); }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, VariableSet vars, int n,
         const std::map<std::string, double>& parameters)
      : text_(text), vars_(vars), n_(n), parameters_(parameters) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + text_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Op::add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Node::Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Op::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Node::Op::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Op::neg, unary());
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("bad number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    auto n = std::make_shared<Node>();
    n->op = Node::Op::constant;
    n->value = value;
    return n;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  NodePtr function(const std::string& name) {
    expect('(');
    NodePtr a = expr();
    if (name == "pow") {
      expect(',');
      NodePtr b = expr();
      expect(')');
      return make(Node::Op::pow, a, b);
    }
    expect(')');
    if (name == "sin") return make(Node::Op::sin, a);
    if (name == "cos") return make(Node::Op::cos, a);
    return make(Node::Op::exp, a);
  }

  // Index of a coordinate name, or -1.
  int variable_index(const std::string& name) const {
    if (name == "t") return 0;
    if (name.size() < 2) return -1;
    const char block = name[0];
    const std::string digits = name.substr(1);
    if (digits.empty() || digits[0] == '0') return -1;
    int i = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), i);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return -1;
    if (i < 1 || i > n_) return -1;
    if (block == 'q') return i;
    const char momentum = vars_ == VariableSet::lagrangian ? 'v' : 'p';
    if (block == momentum) return n_ + i;
    return -1;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string name = identifier();
      if (name == "sin" || name == "cos" || name == "exp" || name == "pow") {
        return function(name);
      }
      if (const int idx = variable_index(name); idx >= 0) {
        auto n = std::make_shared<Node>();
        n->op = Node::Op::variable;
        n->index = idx;
        return n;
      }
      if (auto it = parameters_.find(name); it != parameters_.end()) {
        auto n = std::make_shared<Node>();
        n->op = Node::Op::constant;
        n->value = it->second;
        return n;
      }
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  VariableSet vars_;
  int n_;
  const std::map<std::string, double>& parameters_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, VariableSet vars, int n,
                             const std::map<std::string, double>& parameters) {
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");
  Expression e;
  e.root_ = Parser(text, vars, n, parameters).parse();
  e.arity_ = 1 + 2 * n;
  e.text_ = text;
  return e;
}

double Expression::eval(const double* x) const { return root_->eval(x); }

HyperDual Expression::eval(const HyperDual* x) const { return root_->eval(x); }

}  // namespace jetmech
