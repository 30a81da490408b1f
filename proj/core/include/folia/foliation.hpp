#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "folia/exterior.hpp"
#include "folia/poly.hpp"

namespace folia {

struct CheckResult {
  bool ok = false;
  PolyForm residual;  // the form that should vanish
};

// i_R(omega) = sum_j z_j A_j, R the radial field.
CheckResult check_euler(const PolyForm& omega);
// omega ^ d(omega).
CheckResult check_integrability(const PolyForm& omega);

// Codimension-one foliation on P^n given by a homogeneous 1-form in n+1
// variables. Construction validates homogeneity, the Euler identity and
// integrability exactly, throwing kNonHomogeneous / kNotEuler / kNotIntegrable.
class ProjectiveFoliation {
 public:
  explicit ProjectiveFoliation(PolyForm omega);

  std::size_t dimension() const { return omega_.nvars() - 1; }
  std::size_t nvars() const { return omega_.nvars(); }
  const PolyForm& omega() const { return omega_; }
  const std::vector<MultiPoly>& coefficients() const { return coefficients_; }
  unsigned coefficient_degree() const { return coefficient_degree_; }
  // deg(F) = coefficient degree - 1
  unsigned degree() const { return coefficient_degree_ - 1; }

  friend bool operator==(const ProjectiveFoliation& a, const ProjectiveFoliation& b) {
    return a.omega_ == b.omega_;
  }

 private:
  PolyForm omega_;
  std::vector<MultiPoly> coefficients_;
  unsigned coefficient_degree_ = 0;
};

// Omega = YZ*A dX + XZ*B dY + XY*C dZ with A + B + C = 0.
class ThreeLineFoliation {
 public:
  const MultiPoly& a() const { return a_; }
  const MultiPoly& b() const { return b_; }
  const MultiPoly& c() const { return c_; }
  // Foliation degree d; A, B, C have degree d - 1.
  unsigned d() const { return d_; }
  const ProjectiveFoliation& foliation() const { return foliation_; }

 private:
  friend ThreeLineFoliation make_three_line(const MultiPoly& a, const MultiPoly& b);
  ThreeLineFoliation(MultiPoly a, MultiPoly b, MultiPoly c, unsigned d, ProjectiveFoliation f)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(d), foliation_(std::move(f)) {}

  MultiPoly a_, b_, c_;
  unsigned d_;
  ProjectiveFoliation foliation_;
};

PolyForm three_line_form(const MultiPoly& a, const MultiPoly& b, const MultiPoly& c);

// C := -A - B. Rejects non-homogeneous or unequal-degree input, and input
// whose singular set contains a coordinate line (X | A, Y | B or Z | C).
ThreeLineFoliation make_three_line(const MultiPoly& a, const MultiPoly& b);

// Recovers (A, B) when F has the three coordinate lines in the form above.
std::optional<ThreeLineFoliation> as_three_line(const ProjectiveFoliation& f);

// Projective line a*X + b*Y + c*Z = 0 with exact coefficients.
struct Line {
  std::array<GaussianRational, 3> coefficients;

  static Line coordinate(std::size_t k);  // X = 0, Y = 0 or Z = 0
  friend bool operator==(const Line&, const Line&) = default;
};

// Two exact points spanning the line.
std::pair<std::array<GaussianRational, 3>, std::array<GaussianRational, 3>> line_basis(const Line& line);

// Restriction of a 1-form in n+1 variables to the line s*p + t*q: returns
// the (ds, dt) coefficients as polynomials in (s, t).
std::pair<MultiPoly, MultiPoly> restrict_to_line(const PolyForm& omega, std::span<const GaussianRational> p,
                                                 std::span<const GaussianRational> q);

// Exact invariance: the restriction of omega to the line vanishes.
bool is_line_invariant(const PolyForm& omega, const Line& line);

struct TangencyDegree {
  unsigned degree = 0;
  std::vector<int> per_trial;  // -1 when the trial line was invariant / degenerate
};

// Degree as the number of tangencies with random lines through small
// Gaussian-integer points. phi^*Omega = alpha ds + beta dt with
// s*alpha + t*beta = 0, so alpha = t*h and the count is deg h.
TangencyDegree foliation_degree_by_tangency(const ProjectiveFoliation& f, unsigned trials, std::uint64_t seed);

// Homogenizes the affine field (xdot, ydot) through its dual form
// ydot dx - xdot dy, appends the dZ term forced by Euler, and strips the
// common factor of the three coefficients.
ProjectiveFoliation affine_to_projective(const MultiPoly& xdot, const MultiPoly& ydot);

// True when two bivariate polynomials share a nonconstant factor.
bool has_common_factor(const MultiPoly& p, const MultiPoly& q);

struct FamilyParameters {
  GaussianRational a, b, c, e, lambda, mu;
};

// a = 1 - i, b = 1, c = i, e = 1, mu = i, lambda = 1.
FamilyParameters reference_parameters();

// xdot = x(cx + ay + lambda), ydot = y(bx + ey + mu).
std::pair<MultiPoly, MultiPoly> example_family_field(const FamilyParameters& p);
ProjectiveFoliation example_family(const FamilyParameters& p);

// Pull-back under [X:Y:Z] -> [X^k:Y^k:Z^k], divided by the common monomial
// factor and by k.
ProjectiveFoliation ramified_cover_pullback(const ProjectiveFoliation& f, unsigned k);

using Matrix3 = std::array<std::array<GaussianRational, 3>, 3>;

GaussianRational determinant(const Matrix3& m);
Matrix3 inverse(const Matrix3& m);
Matrix3 identity_matrix();

// Pull-back of Omega under z = M w. Singular points move by M^-1.
ProjectiveFoliation apply_automorphism(const ProjectiveFoliation& f, const Matrix3& m);

}  // namespace folia
