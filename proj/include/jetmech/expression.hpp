#pragma once

// Infix expressions over the coordinates of a Lagrangian or Hamiltonian.
//
// Grammar (standard precedence, left association):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := number | name | func '(' expr (',' expr)* ')' | '(' expr ')'
//   func    := sin | cos | exp | pow
//
// Names: t, q1..qn, and v1..vn (velocities) for a Lagrangian or p1..pn for a
// Hamiltonian, plus any user parameter.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jetmech/hyperdual.hpp"

namespace jetmech {

/// Which coordinates the variables name: (t, q, v) or (t, q, p).
enum class VariableSet { lagrangian, hamiltonian };

class Expression {
 public:
  /// Throws ParseError on malformed text or unknown names.
  static Expression parse(const std::string& text, VariableSet vars, int n,
                          const std::map<std::string, double>& parameters = {});

  [[nodiscard]] int arity() const { return arity_; }
  [[nodiscard]] const std::string& text() const { return text_; }

  [[nodiscard]] double eval(const double* x) const;
  [[nodiscard]] HyperDual eval(const HyperDual* x) const;

  struct Node;

 private:
  Expression() = default;

  std::shared_ptr<const Node> root_;
  int arity_ = 0;
  std::string text_;
};

}  // namespace jetmech
