#pragma once

#include <complex>
#include <span>
#include <vector>

#include "folia/poly.hpp"

namespace folia {

struct RootOptions {
  // |p(r)| <= residual_tol * ||p|| * max(1, |r|)^deg for every reported root.
  double residual_tol = 1e-10;
  // Approximations closer than cluster_tol * max(1, |r|) merge into one
  // root of higher multiplicity.
  double cluster_tol = 1e-4;
  unsigned max_iterations = 1000;
};

struct Root {
  std::complex<double> value;
  unsigned multiplicity = 1;
  double residual = 0.0;  // normalized as in RootOptions::residual_tol
};

// All complex roots of a polynomial given by ascending coefficients, via
// Aberth-Ehrlich simultaneous iteration. Multiplicities sum to the degree.
// Throws kDegreeZero for constants, kNonConvergence when the budget runs out
// or a root fails the residual bound.
std::vector<Root> univariate_complex_roots(std::span<const std::complex<double>> ascending,
                                           const RootOptions& options = {});

// Same for a MultiPoly in which at most one variable occurs.
std::vector<Root> univariate_complex_roots(const MultiPoly& p, const RootOptions& options = {});

// Horner evaluation of ascending coefficients.
std::complex<double> horner(std::span<const std::complex<double>> ascending, std::complex<double> z);

}  // namespace folia
