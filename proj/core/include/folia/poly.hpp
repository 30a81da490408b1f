#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "folia/gaussian.hpp"

namespace folia {

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order, largest first: total degree, then the first
// differing exponent.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

std::uint64_t total_degree(const Exponents& e);

// Sparse polynomial in a fixed number of variables over Q(i). No stored
// coefficient is zero; all exponent vectors have length nvars().
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, GaussianRational, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const GaussianRational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t var);
  static MultiPoly monomial(Exponents exps, const GaussianRational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  // -1 for the zero polynomial.
  int total_degree() const;
  int min_total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  // The zero polynomial counts as homogeneous.
  bool is_homogeneous() const;

  GaussianRational coefficient(const Exponents& e) const;
  GaussianRational constant_term() const;
  // Grlex-largest term; undefined on zero.
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const GaussianRational& leading_coefficient() const { return terms_.begin()->second; }

  void add_term(const Exponents& e, const GaussianRational& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussianRational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
  friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_arity(const MultiPoly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned k);

// Partial derivative with respect to variable `var`.
MultiPoly differentiate(const MultiPoly& p, std::size_t var);

// Substitutes args[j] for variable j. All args must share one arity, which
// becomes the arity of the result.
MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> args);

GaussianRational evaluate(const MultiPoly& p, std::span<const GaussianRational> point);
std::complex<double> evaluate(const MultiPoly& p, std::span<const std::complex<double>> point);

// Floating evaluation with a running error bound. Each term is formed with at
// most deg+1 complex products, each contributing at most 4u relative error
// (u = 2^-53); summation of N terms adds at most N*u relative to the sum of
// term magnitudes. The bound is (4*(deg+1) + N) * u * sum|term|.
struct BoundedEvaluation {
  std::complex<double> value;
  double error_bound = 0.0;
};
BoundedEvaluation evaluate_bounded(const MultiPoly& p, std::span<const std::complex<double>> point);

// Exact quotient p / q when q divides p, std::nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q);

// Componentwise minimum exponent over all terms (the largest monomial factor).
Exponents monomial_content(const MultiPoly& p);
MultiPoly divide_by_monomial(const MultiPoly& p, const Exponents& e);

// coefficients_in(p, v)[k] is the coefficient of v^k, as a polynomial in the
// same variables not involving v.
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var);

// Resultant with respect to `eliminate`: determinant of the Sylvester matrix,
// computed by fraction-free (Bareiss) elimination with exact division.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t eliminate);

// Exact partial evaluation: sets variable `var` to `value`, keeping arity.
MultiPoly substitute(const MultiPoly& p, std::size_t var, const GaussianRational& value);

// Same polynomial viewed in more variables (new ones appended, unused).
MultiPoly extend_variables(const MultiPoly& p, std::size_t nvars);

// Drops variable `var` (which must not occur) from the arity.
MultiPoly drop_variable(const MultiPoly& p, std::size_t var);

// Inserts a new variable at position `var` and homogenizes p to `degree`
// with it. degree must be >= p.total_degree().
MultiPoly homogenize(const MultiPoly& p, std::size_t var, unsigned degree);

// Terms of total degree exactly `degree`.
MultiPoly homogeneous_part(const MultiPoly& p, unsigned degree);

// Ascending coefficients of a polynomial involving only `var`.
std::vector<std::complex<double>> univariate_coefficients(const MultiPoly& p, std::size_t var);

// Largest coefficient modulus (0 for the zero polynomial).
double max_coefficient_modulus(const MultiPoly& p);

}  // namespace folia
