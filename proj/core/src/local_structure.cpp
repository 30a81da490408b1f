#include "folia/local_structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "folia/error.hpp"

namespace folia {

PolyForm local_model_eta(const ThreeLineFoliation& g, unsigned alpha, unsigned beta, unsigned gamma) {
  if (alpha == 0 || beta == 0 || gamma == 0) throw Error(ErrorCode::kIndexOutOfRange, "weights must be positive");
  const MultiPoly x0 = MultiPoly::variable(3, 0);
  const MultiPoly x1 = MultiPoly::variable(3, 1);
  const MultiPoly x2 = MultiPoly::variable(3, 2);
  const std::array<MultiPoly, 3> powers = {pow(x0, alpha), pow(x1, beta), pow(x2, gamma)};
  const std::array<MultiPoly, 3> coeffs = {
      x1 * x2 * compose(g.a(), powers) * GaussianRational(static_cast<long>(alpha)),
      x0 * x2 * compose(g.b(), powers) * GaussianRational(static_cast<long>(beta)),
      x0 * x1 * compose(g.c(), powers) * GaussianRational(static_cast<long>(gamma))};
  return PolyForm::one_form(coeffs);
}

WeightField weight_field(unsigned alpha, unsigned beta, unsigned gamma) {
  if (alpha == 0 || beta == 0 || gamma == 0) throw Error(ErrorCode::kIndexOutOfRange, "weights must be positive");
  WeightField w;
  w.raw = {beta * gamma, alpha * gamma, alpha * beta};
  w.theta = std::gcd(std::gcd(w.raw[0], w.raw[1]), w.raw[2]);
  std::array<GaussianRational, 3> diag;
  for (std::size_t i = 0; i < 3; ++i) {
    w.weights[i] = w.raw[i] / w.theta;
    diag[i] = GaussianRational(static_cast<long>(w.weights[i]));
  }
  w.s = PolyField::diagonal(diag);
  return w;
}

PolyField curl_field(const PolyForm& eta) {
  if (eta.nvars() != 3 || eta.degree() != 1) throw Error(ErrorCode::kArityMismatch, "curl needs a 1-form in 3 variables");
  const PolyForm d = ext_derivative(eta);
  const std::array<std::size_t, 2> i12 = {1, 2}, i02 = {0, 2}, i01 = {0, 1};
  return PolyField({d.coefficient(i12), -d.coefficient(i02), d.coefficient(i01)});
}

namespace {

PolyForm volume_form() {
  return wedge(wedge(PolyForm::differential(3, 0), PolyForm::differential(3, 1)), PolyForm::differential(3, 2));
}

// c with b = c * a, read off the first term of a; nullopt if no such c.
std::optional<GaussianRational> proportionality(const std::map<IndexMask, MultiPoly>& a,
                                                const std::map<IndexMask, MultiPoly>& b) {
  if (a.empty()) return std::nullopt;
  const auto& [mask, coeff] = *a.begin();
  const auto& [exps, value] = *coeff.terms().begin();
  auto it = b.find(mask);
  const GaussianRational ratio = it == b.end() ? GaussianRational() : it->second.coefficient(exps) / value;
  return ratio;
}

long as_integer(const GaussianRational& g, ErrorCode code, const char* what) {
  if (!g.is_real() || g.re().get_den() != 1 || !g.re().get_num().fits_slong_p()) {
    throw Error(code, std::string(what) + " is not an integer");
  }
  return g.re().get_num().get_si();
}

PolyForm field_as_form(const PolyField& v) {
  // Components as a 1-form, to reuse the proportionality helper.
  return PolyForm::one_form(v.components());
}

struct Eigen {
  long m = 0;
  long ell = 0;
  bool contraction = false;
};

Eigen eigen_data(const PolyForm& eta, const PolyField& s, const PolyField& z, const PolyForm& vol) {
  Eigen out;
  const PolyForm lie = lie_derivative(s, eta);
  const auto m = proportionality(eta.components(), lie.components());
  if (!m || !(lie == *m * eta)) throw Error(ErrorCode::kNotEigenform, "L_S eta is not a multiple of eta");
  out.m = as_integer(*m, ErrorCode::kNotEigenform, "L_S eigenvalue");

  const PolyField bracket = lie_bracket(s, z);
  const PolyForm zf = field_as_form(z);
  const auto ell = proportionality(zf.components(), field_as_form(bracket).components());
  if (!ell || !(bracket == *ell * z)) throw Error(ErrorCode::kNotProportional, "[S, Z] is not a multiple of Z");
  out.ell = as_integer(*ell, ErrorCode::kNotProportional, "[S, Z] eigenvalue");

  out.contraction = interior_product(s, interior_product(z, vol)) == GaussianRational(out.m) * eta;
  return out;
}

}  // namespace

QuasiHomogStructure quasi_homog_analyze(const PolyForm& eta, unsigned alpha, unsigned beta, unsigned gamma) {
  if (eta.nvars() != 3 || eta.degree() != 1) throw Error(ErrorCode::kArityMismatch, "expected a 1-form in 3 variables");
  if (eta.is_zero()) throw Error(ErrorCode::kZeroInput, "eta is zero");
  QuasiHomogStructure out;
  out.weights = weight_field(alpha, beta, gamma);
  std::array<GaussianRational, 3> raw;
  for (std::size_t i = 0; i < 3; ++i) raw[i] = GaussianRational(static_cast<long>(out.weights.raw[i]));
  out.s_raw = PolyField::diagonal(raw);

  if (!interior_product(out.s_raw, eta).is_zero()) throw Error(ErrorCode::kNotEigenform, "i_S eta does not vanish");
  out.z = curl_field(eta);
  if (out.z == PolyField::zero(3)) throw Error(ErrorCode::kNotProportional, "d eta vanishes, so Z = 0");
  for (const auto& c : out.z.components()) {
    if (!homogeneous_part(c, 1).is_zero()) throw Error(ErrorCode::kNonzeroLinearPart, "DZ(0) is not zero");
  }

  const PolyForm vol = volume_form();
  const Eigen raw_data = eigen_data(eta, out.s_raw, out.z, vol);
  const Eigen norm_data = eigen_data(eta, out.weights.s, out.z, vol);
  out.m = raw_data.m;
  out.ell = raw_data.ell;
  out.m_normalized = norm_data.m;
  out.ell_normalized = norm_data.ell;
  if (out.m == 0 || out.m_normalized == 0) throw Error(ErrorCode::kNotEigenform, "L_S eigenvalue is zero");
  out.lambda = mpq_class(1, out.m);
  out.lambda.canonicalize();
  out.lambda_normalized = mpq_class(1, out.m_normalized);
  out.lambda_normalized.canonicalize();
  out.contraction_identity = raw_data.contraction && norm_data.contraction;
  return out;
}

const char* kupka_name(KupkaKind kind) {
  switch (kind) {
    case KupkaKind::kKupka: return "kupka";
    case KupkaKind::kGkCandidate: return "gk-candidate";
    case KupkaKind::kRegular: return "regular";
    case KupkaKind::kSingularNonKupka: return "singular-nonkupka";
  }
  return "unknown";
}

namespace {

double radical_inverse(unsigned index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * (index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

unsigned nth_prime(std::size_t k) {
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
  if (k >= std::size(primes)) throw Error(ErrorCode::kIndexOutOfRange, "too many variables for the probe");
  return primes[k];
}

double max_norm(const PolyForm& form, const std::vector<std::complex<double>>& p) {
  double out = 0.0;
  for (const auto& [mask, c] : form.components()) {
    out = std::max(out, std::abs(evaluate(c, std::span<const std::complex<double>>(p))));
  }
  return out;
}

double coefficient_scale(const PolyForm& form) {
  double out = 1.0;
  for (const auto& [mask, c] : form.components()) out = std::max(out, max_coefficient_modulus(c));
  return out;
}

}  // namespace

KupkaResult kupka_check(const PolyForm& omega, const std::vector<std::complex<double>>& point,
                        const KupkaOptions& options) {
  if (omega.degree() != 1) throw Error(ErrorCode::kArityMismatch, "Kupka check needs a 1-form");
  if (point.size() != omega.nvars()) throw Error(ErrorCode::kArityMismatch, "point has the wrong number of coordinates");
  KupkaResult out;
  double pmax = 1.0;
  for (const auto& z : point) pmax = std::max(pmax, std::abs(z));
  out.omega_norm = max_norm(omega, point);
  const PolyForm d = ext_derivative(omega);
  out.d_omega_norm = max_norm(d, point);
  if (out.omega_norm > options.zero_tol * coefficient_scale(omega) * pmax) {
    out.kind = KupkaKind::kRegular;
    return out;
  }
  if (out.d_omega_norm > options.zero_tol * coefficient_scale(d) * pmax) {
    out.kind = KupkaKind::kKupka;
    return out;
  }
  if (d.is_zero()) {
    out.kind = KupkaKind::kSingularNonKupka;
    return out;
  }
  // Quasi-random points on the sphere of the given radius: Halton pairs
  // mapped to complex Gaussians (Box-Muller), then normalized.
  const std::size_t n = point.size();
  std::vector<double> values;
  for (unsigned s = 1; s <= options.samples; ++s) {
    std::vector<std::complex<double>> dir(n);
    double len = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u1 = std::max(radical_inverse(s, nth_prime(2 * j)), 1e-300);
      const double u2 = radical_inverse(s, nth_prime(2 * j + 1));
      dir[j] = std::polar(std::sqrt(-2.0 * std::log(u1)), 2.0 * std::numbers::pi * u2);
      len += std::norm(dir[j]);
    }
    len = std::sqrt(len);
    std::vector<std::complex<double>> q(n);
    for (std::size_t j = 0; j < n; ++j) q[j] = point[j] + dir[j] * (options.radius / len);
    values.push_back(max_norm(d, q));
  }
  const double top = *std::max_element(values.begin(), values.end());
  const double bottom = *std::min_element(values.begin(), values.end());
  out.shell_min_ratio = top > 0.0 ? bottom / top : 0.0;
  if (out.shell_min_ratio <= options.near_zero) {
    throw Error(ErrorCode::kProbeInconclusive, "d omega nearly vanishes on the probe shell");
  }
  out.kind = KupkaKind::kGkCandidate;
  return out;
}

RamifiedPullback ramified_pullback_2d(const GaussianRational& lambda1, const GaussianRational& lambda2, unsigned alpha,
                                      unsigned beta, const MultiPoly& r) {
  if (alpha == 0 || beta == 0) throw Error(ErrorCode::kIndexOutOfRange, "ramification orders must be positive");
  if (r.nvars() != 2) throw Error(ErrorCode::kArityMismatch, "R must be a polynomial in (u, v)");
  const MultiPoly u = MultiPoly::variable(2, 0);
  const MultiPoly v = MultiPoly::variable(2, 1);
  const std::array<MultiPoly, 2> omega = {-(v * lambda2), u * (MultiPoly::constant(2, 1) + r) * lambda1};
  const std::array<MultiPoly, 2> map = {pow(u, alpha), pow(v, beta)};
  const PolyForm pulled = pullback_form(map, PolyForm::one_form(omega));
  const Exponents content = monomial_content(pulled);
  return {MultiPoly::monomial(content, 1), divide_by_monomial(pulled, content)};
}

}  // namespace folia
