#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "folia/foliation.hpp"

namespace folia {

// f = (F0^alpha : F1^beta : F2^gamma) on P^n, with deg(F_i) * weight_i = nu.
struct BranchedMap {
  std::array<MultiPoly, 3> components;
  std::array<unsigned, 3> weights{};  // alpha, beta, gamma
  unsigned nu = 0;
  bool regime = false;  // 1 < alpha < beta < gamma and nu >= 2

  std::size_t nvars() const { return components[0].nvars(); }
};

struct MapOptions {
  bool require_regime = false;
  std::uint64_t seed = 0;
};

// Validates homogeneity, positive weights, the degree balance and pairwise
// coprimality of the F_i (resultants on random lines, seeded). Throws
// kInvalidMap, or kRegimeViolation when the regime is required but fails.
BranchedMap make_branched_map(const MultiPoly& f0, const MultiPoly& f1, const MultiPoly& f2, unsigned alpha,
                              unsigned beta, unsigned gamma, const MapOptions& options = {});

// nu * ((d-1) + 1/alpha + 1/beta + 1/gamma) - 1
unsigned expected_eta_degree(const BranchedMap& f, unsigned d);

// alpha F1 F2 (A o F) dF0 + beta F0 F2 (B o F) dF1 + gamma F0 F1 (C o F) dF2,
// where (A o F) = A(F0^alpha, F1^beta, F2^gamma).
ProjectiveFoliation build_eta(const BranchedMap& f, const ThreeLineFoliation& g);

// F0^(alpha-1) F1^(beta-1) F2^(gamma-1): the pull-back of G's form under f
// equals this factor times build_eta.
MultiPoly eta_pullback_factor(const BranchedMap& f);

using PointPn = std::vector<std::complex<double>>;

// Common zeros of F_i = z_i^k_i - c_i z_3^k_i on P^3, with z_3 = 1.
// Throws kNotFermatForm for any other shape.
std::vector<PointPn> indeterminacy_fermat(const BranchedMap& f);

struct GenericityCheck {
  bool generic = false;
  double max_minor = 0.0;  // largest |3x3 minor| over the product of row norms
};

// dF0 ^ dF1 ^ dF2 != 0 at each point. Throws kPointNotOnIndeterminacy when
// some |F_i(p)| exceeds tol relative to the coefficient size.
std::vector<GenericityCheck> check_generic_at_points(const BranchedMap& f, const std::vector<PointPn>& points,
                                                     double tol = 1e-9);

struct BezoutCount {
  std::uint64_t points = 0;
  std::uint64_t multiplicity = 0;
};

// (nu^3 / (alpha beta gamma), alpha beta gamma); kNonIntegerCount unless every
// weight divides nu.
BezoutCount bezout_count(unsigned nu, unsigned alpha, unsigned beta, unsigned gamma);

}  // namespace folia
