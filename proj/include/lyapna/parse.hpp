#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "lyapna/walks.hpp"

namespace lyapna {

// AST for the Laurent-polynomial grammar
//   expr   := '-'? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' uint)?
//   atom   := uint | 'i' | 't' | '(' expr ')'
// Negative powers are written as divisions (1/t^2); division is only exact
// by monomials.
struct ExprAST {
  enum class Kind { Rational, Imag, Var, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  Rat value;          // Rational
  long exponent = 0;  // Pow
  std::size_t offset = 0;
  std::unique_ptr<ExprAST> lhs, rhs;

  Series eval() const;
};

std::unique_ptr<ExprAST> parse_expr_ast(std::string_view src);

// Parse one Laurent polynomial; exact Series out.
Series parse_laurent(std::string_view src);

// Configuration format (documented in the README):
//
//   # comment
//   symmetrize = false
//
//   [defaults]            # optional experiment defaults
//   n = 400
//   S = 50
//   seed = 0
//
//   [generator NAME]
//   weight = 1/2
//   a = 2/t
//   b = -1
//   c = 1
//   d = 0
//
// Weights are exact rationals summing to 1; each matrix must have exact
// determinant 1.  `symmetrize = true` adds every inverse with halved weight.
struct ExperimentDefaults {
  long n = -1;
  long samples = -1;
  long seed = -1;
  bool has_n() const { return n >= 0; }
  bool has_samples() const { return samples >= 0; }
  bool has_seed() const { return seed >= 0; }
};

struct ParsedSpec {
  MeasureSpec measure;
  ExperimentDefaults defaults;
};

ParsedSpec parse_spec(std::string_view src);
ParsedSpec load_spec_file(const std::string& path);

}  // namespace lyapna
