#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "folia/poly.hpp"

namespace folia {

// Ordered variable names; position k is variable index k.
using VariableNames = std::vector<std::string>;

// Names accepted by the grammar: z0..z9, x, y, X, Y, Z, x0, x1, x2.
bool is_grammar_variable(std::string_view name);

// X, Y, Z for P^2; z0..zn otherwise.
VariableNames projective_names(std::size_t n);
VariableNames affine_names();  // x, y
VariableNames local_names();   // x0, x1, x2

// Parses one polynomial. Grammar: integer and rational literals (3, 3/2), the
// imaginary unit i, variables from `vars`, binary + - *, unary -, ^ with a
// non-negative integer exponent, parentheses. Juxtaposition is rejected.
// Errors carry `line` and a 1-based column.
MultiPoly parse_polynomial(std::string_view text, const VariableNames& vars, std::size_t line = 1);

// Parses "<expr> dV + <expr> dW + ..." into one coefficient per variable.
std::vector<MultiPoly> parse_one_form(std::string_view text, const VariableNames& vars,
                                      std::size_t line = 1);

// Canonical text (grlex, largest first) in the same grammar.
std::string to_string(const MultiPoly& p, const VariableNames& vars);
std::string to_string(const MultiPoly& p);  // default names for p.nvars()

}  // namespace folia
