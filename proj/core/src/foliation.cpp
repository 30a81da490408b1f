#include "folia/foliation.hpp"

#include <random>
#include <string>

#include "folia/error.hpp"

namespace folia {

CheckResult check_euler(const PolyForm& omega) {
  if (omega.degree() != 1) throw Error(ErrorCode::kArityMismatch, "Euler check needs a 1-form");
  PolyForm residual = interior_product(PolyField::radial(omega.nvars()), omega);
  return {residual.is_zero(), residual};
}

CheckResult check_integrability(const PolyForm& omega) {
  if (omega.degree() != 1) throw Error(ErrorCode::kArityMismatch, "integrability check needs a 1-form");
  PolyForm residual = wedge(omega, ext_derivative(omega));
  return {residual.is_zero(), residual};
}

ProjectiveFoliation::ProjectiveFoliation(PolyForm omega) : omega_(std::move(omega)) {
  if (omega_.degree() != 1) throw Error(ErrorCode::kArityMismatch, "a foliation is given by a 1-form");
  if (omega_.nvars() < 2) throw Error(ErrorCode::kArityMismatch, "a foliation needs at least two variables");
  if (omega_.is_zero()) throw Error(ErrorCode::kZeroInput, "the zero form defines no foliation");
  coefficients_ = omega_.one_form_coefficients();
  int degree = -1;
  for (const auto& c : coefficients_) {
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) throw Error(ErrorCode::kNonHomogeneous, "coefficient is not homogeneous");
    if (degree < 0) {
      degree = c.total_degree();
    } else if (degree != c.total_degree()) {
      throw Error(ErrorCode::kUnequalDegrees, "coefficients have different degrees");
    }
  }
  if (degree < 1) throw Error(ErrorCode::kNonHomogeneous, "coefficients must have degree at least 1");
  coefficient_degree_ = static_cast<unsigned>(degree);
  if (!check_euler(omega_).ok) throw Error(ErrorCode::kNotEuler, "Euler identity sum z_j A_j = 0 fails");
  if (!check_integrability(omega_).ok) throw Error(ErrorCode::kNotIntegrable, "Omega ^ dOmega != 0");
}

PolyForm three_line_form(const MultiPoly& a, const MultiPoly& b, const MultiPoly& c) {
  const MultiPoly x = MultiPoly::variable(3, 0);
  const MultiPoly y = MultiPoly::variable(3, 1);
  const MultiPoly z = MultiPoly::variable(3, 2);
  const std::array<MultiPoly, 3> coeffs = {y * z * a, x * z * b, x * y * c};
  return PolyForm::one_form(coeffs);
}

ThreeLineFoliation make_three_line(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != 3 || b.nvars() != 3) throw Error(ErrorCode::kArityMismatch, "A and B must be in X, Y, Z");
  if (!a.is_homogeneous() || !b.is_homogeneous()) {
    throw Error(ErrorCode::kNonHomogeneous, "A and B must be homogeneous");
  }
  if (!a.is_zero() && !b.is_zero() && a.total_degree() != b.total_degree()) {
    throw Error(ErrorCode::kUnequalDegrees, "A and B must have equal degree");
  }
  MultiPoly c = -(a + b);
  const std::array<const MultiPoly*, 3> parts = {&a, &b, &c};
  for (std::size_t k = 0; k < 3; ++k) {
    if (substitute(*parts[k], k, 0).is_zero()) {
      throw Error(ErrorCode::kDegenerateInput,
                  "singular set contains the coordinate line " + std::string(1, "XYZ"[k]) + " = 0");
    }
  }
  const int deg = a.is_zero() ? b.total_degree() : a.total_degree();
  ProjectiveFoliation f(three_line_form(a, b, c));
  return ThreeLineFoliation(a, b, std::move(c), static_cast<unsigned>(deg + 1), std::move(f));
}

std::optional<ThreeLineFoliation> as_three_line(const ProjectiveFoliation& f) {
  if (f.nvars() != 3) return std::nullopt;
  const MultiPoly x = MultiPoly::variable(3, 0);
  const MultiPoly y = MultiPoly::variable(3, 1);
  const MultiPoly z = MultiPoly::variable(3, 2);
  const auto& cs = f.coefficients();
  auto a = divide_exact(cs[0], y * z);
  auto b = divide_exact(cs[1], x * z);
  if (!a || !b) return std::nullopt;
  try {
    return make_three_line(*a, *b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Line Line::coordinate(std::size_t k) {
  Line l;
  l.coefficients.at(k) = 1;
  return l;
}

std::pair<std::array<GaussianRational, 3>, std::array<GaussianRational, 3>> line_basis(const Line& line) {
  const auto& l = line.coefficients;
  std::size_t pivot = 3;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!l[k].is_zero()) {
      pivot = k;
      break;
    }
  }
  if (pivot == 3) throw Error(ErrorCode::kZeroInput, "line with all coefficients zero");
  std::array<std::array<GaussianRational, 3>, 2> basis;
  std::size_t slot = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == pivot) continue;
    std::array<GaussianRational, 3> v;
    v[j] = 1;
    v[pivot] = -(l[j] / l[pivot]);
    basis[slot++] = v;
  }
  return {basis[0], basis[1]};
}

std::pair<MultiPoly, MultiPoly> restrict_to_line(const PolyForm& omega, std::span<const GaussianRational> p,
                                                 std::span<const GaussianRational> q) {
  const std::size_t n = omega.nvars();
  if (p.size() != n || q.size() != n) throw Error(ErrorCode::kArityMismatch, "line points have wrong length");
  const MultiPoly s = MultiPoly::variable(2, 0);
  const MultiPoly t = MultiPoly::variable(2, 1);
  std::vector<MultiPoly> param;
  for (std::size_t j = 0; j < n; ++j) param.push_back(s * p[j] + t * q[j]);
  MultiPoly alpha(2), beta(2);
  for (const auto& [mask, c] : omega.components()) {
    const std::size_t j = indices_of(mask).front();
    MultiPoly cj = compose(c, param);
    alpha += cj * p[j];
    beta += cj * q[j];
  }
  return {alpha, beta};
}

bool is_line_invariant(const PolyForm& omega, const Line& line) {
  if (omega.nvars() != 3 || omega.degree() != 1) throw Error(ErrorCode::kArityMismatch, "need a 1-form on P^2");
  auto [p, q] = line_basis(line);
  auto [alpha, beta] = restrict_to_line(omega, p, q);
  return alpha.is_zero() && beta.is_zero();
}

namespace {

bool proportional(const std::vector<GaussianRational>& p, const std::vector<GaussianRational>& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (!(p[i] * q[j] - p[j] * q[i]).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TangencyDegree foliation_degree_by_tangency(const ProjectiveFoliation& f, unsigned trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::kIndexOutOfRange, "at least one trial is required");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-4, 4);
  auto draw = [&] {
    std::vector<GaussianRational> v;
    for (std::size_t j = 0; j < f.nvars(); ++j) v.emplace_back(mpq_class(coord(rng)), mpq_class(coord(rng)));
    return v;
  };
  const MultiPoly t = MultiPoly::variable(2, 1);
  TangencyDegree out;
  bool found = false;
  for (unsigned trial = 0; trial < trials; ++trial) {
    std::vector<GaussianRational> p, q;
    do {
      p = draw();
      q = draw();
    } while (proportional(p, q));
    auto [alpha, beta] = restrict_to_line(f.omega(), p, q);
    if (alpha.is_zero()) {
      out.per_trial.push_back(-1);
      continue;
    }
    auto h = divide_exact(alpha, t);
    if (!h) throw Error(ErrorCode::kNotEuler, "restriction violates s*alpha + t*beta = 0");
    const int deg = h->total_degree();
    out.per_trial.push_back(deg);
    if (found && static_cast<unsigned>(deg) != out.degree) {
      throw Error(ErrorCode::kInconsistentDegree, "tangency count differs between random lines");
    }
    out.degree = static_cast<unsigned>(deg);
    found = true;
  }
  if (!found) throw Error(ErrorCode::kDegenerateLine, "every trial line was invariant or singular");
  return out;
}

bool has_common_factor(const MultiPoly& p, const MultiPoly& q) {
  if (p.nvars() != 2 || q.nvars() != 2) throw Error(ErrorCode::kArityMismatch, "expected bivariate input");
  if (p.is_zero()) return !q.is_constant() || q.is_zero();
  if (q.is_zero()) return !p.is_constant();
  if (p.is_constant() || q.is_constant()) return false;
  const MultiPoly x = MultiPoly::variable(2, 0);
  const MultiPoly y = MultiPoly::variable(2, 1);
  // After x -> x + s*y with a generic s every nonconstant factor has full
  // degree in y and the leading coefficients in y are constants.
  for (long k = 1; k < 64; ++k) {
    const GaussianRational s(mpq_class(k), mpq_class(k % 3 - 1));
    const std::array<MultiPoly, 2> shear = {x + y * s, y};
    MultiPoly ps = compose(p, shear);
    MultiPoly qs = compose(q, shear);
    if (static_cast<int>(ps.degree_in(1)) != ps.total_degree() ||
        static_cast<int>(qs.degree_in(1)) != qs.total_degree()) {
      continue;
    }
    return resultant(ps, qs, 1).is_zero();
  }
  throw Error(ErrorCode::kInternal, "no admissible shear found");
}

ProjectiveFoliation affine_to_projective(const MultiPoly& xdot, const MultiPoly& ydot) {
  if (xdot.nvars() != 2 || ydot.nvars() != 2) throw Error(ErrorCode::kArityMismatch, "expected fields in x, y");
  if (xdot.is_zero() && ydot.is_zero()) throw Error(ErrorCode::kZeroField, "zero vector field");
  if (has_common_factor(xdot, ydot)) {
    throw Error(ErrorCode::kCommonFactor, "field components share a polynomial factor");
  }
  const unsigned k = static_cast<unsigned>(std::max(xdot.total_degree(), ydot.total_degree()));
  const MultiPoly ph = homogenize(xdot, 2, k);
  const MultiPoly qh = homogenize(ydot, 2, k);
  const MultiPoly x = MultiPoly::variable(3, 0);
  const MultiPoly y = MultiPoly::variable(3, 1);
  const MultiPoly z = MultiPoly::variable(3, 2);
  const std::array<MultiPoly, 3> coeffs = {z * qh, -(z * ph), y * ph - x * qh};
  PolyForm omega = PolyForm::one_form(coeffs);
  omega = divide_by_monomial(omega, monomial_content(omega));
  return ProjectiveFoliation(std::move(omega));
}

FamilyParameters reference_parameters() {
  return {GaussianRational(1, -1), 1, GaussianRational::i(), 1, 1, GaussianRational::i()};
}

std::pair<MultiPoly, MultiPoly> example_family_field(const FamilyParameters& p) {
  const MultiPoly x = MultiPoly::variable(2, 0);
  const MultiPoly y = MultiPoly::variable(2, 1);
  const MultiPoly one = MultiPoly::constant(2, 1);
  MultiPoly xdot = x * (x * p.c + y * p.a + one * p.lambda);
  MultiPoly ydot = y * (x * p.b + y * p.e + one * p.mu);
  return {xdot, ydot};
}

ProjectiveFoliation example_family(const FamilyParameters& p) {
  auto [xdot, ydot] = example_family_field(p);
  try {
    return affine_to_projective(xdot, ydot);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kZeroField || e.code() == ErrorCode::kCommonFactor) {
      throw Error(ErrorCode::kDegenerateParameters, std::string("degenerate family parameters: ") + e.what());
    }
    throw;
  }
}

ProjectiveFoliation ramified_cover_pullback(const ProjectiveFoliation& f, unsigned k) {
  if (f.nvars() != 3) throw Error(ErrorCode::kArityMismatch, "ramified cover is defined on P^2");
  if (k == 0) throw Error(ErrorCode::kIndexOutOfRange, "ramification order must be at least 1");
  if (k == 1) return f;
  std::vector<MultiPoly> map;
  for (std::size_t j = 0; j < 3; ++j) map.push_back(pow(MultiPoly::variable(3, j), k));
  PolyForm pulled = pullback_form(map, f.omega());
  pulled = divide_by_monomial(pulled, monomial_content(pulled));
  pulled = GaussianRational(1) / GaussianRational(static_cast<long>(k)) * pulled;
  return ProjectiveFoliation(std::move(pulled));
}

GaussianRational determinant(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Matrix3 identity_matrix() {
  Matrix3 m;
  for (std::size_t i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

Matrix3 inverse(const Matrix3& m) {
  const GaussianRational det = determinant(m);
  if (det.is_zero()) throw Error(ErrorCode::kSingularMatrix, "matrix is singular");
  const GaussianRational inv = det.inverse();
  Matrix3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // cofactor of (j, i)
      const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      out[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * inv;
    }
  }
  return out;
}

ProjectiveFoliation apply_automorphism(const ProjectiveFoliation& f, const Matrix3& m) {
  if (f.nvars() != 3) throw Error(ErrorCode::kArityMismatch, "automorphisms act on P^2");
  if (determinant(m).is_zero()) throw Error(ErrorCode::kSingularMatrix, "automorphism matrix is singular");
  std::vector<MultiPoly> map;
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly row(3);
    for (std::size_t j = 0; j < 3; ++j) row += MultiPoly::variable(3, j) * m[i][j];
    map.push_back(row);
  }
  return ProjectiveFoliation(pullback_form(map, f.omega()));
}

}  // namespace folia
