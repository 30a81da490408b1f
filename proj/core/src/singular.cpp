#include "folia/singular.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "folia/error.hpp"
#include "folia/roots.hpp"

namespace folia {

const char* kind_name(SingularityKind kind) {
  switch (kind) {
    case SingularityKind::kHyperbolic: return "nondegenerate-hyperbolic";
    case SingularityKind::kNonhyperbolic: return "nondegenerate-nonhyperbolic";
    case SingularityKind::kDegenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

std::array<std::size_t, 2> chart_coordinates(std::size_t chart) {
  switch (chart) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

double omega_scale(const ProjectiveFoliation& f) {
  double s = 0.0;
  for (const auto& c : f.coefficients()) s = std::max(s, max_coefficient_modulus(c));
  return std::max(1.0, s);
}

double residual_at(const ProjectiveFoliation& f, const PointP2& p) {
  double r = 0.0;
  for (const auto& c : f.coefficients()) r = std::max(r, std::abs(evaluate(c, std::span<const Complex>(p))));
  return r;
}

// Chart field together with its partial derivatives.
struct ChartData {
  MultiPoly p, q;
  std::array<MultiPoly, 4> jac;  // dP/du, dP/dv, dQ/du, dQ/dv
};

ChartData chart_data(const ProjectiveFoliation& f, std::size_t chart) {
  ChartData d;
  std::tie(d.p, d.q) = chart_field(f, chart);
  d.jac = {differentiate(d.p, 0), differentiate(d.p, 1), differentiate(d.q, 0), differentiate(d.q, 1)};
  return d;
}

std::array<Complex, 2> affine_of(const PointP2& p, std::size_t chart) {
  auto [u, v] = chart_coordinates(chart);
  return {p[u] / p[chart], p[v] / p[chart]};
}

PointP2 projective_of(const std::array<Complex, 2>& uv, std::size_t chart) {
  auto [u, v] = chart_coordinates(chart);
  PointP2 p{};
  p[chart] = 1.0;
  p[u] = uv[0];
  p[v] = uv[1];
  return p;
}

Matrix2 eval_jacobian(const ChartData& d, const std::array<Complex, 2>& uv) {
  std::span<const Complex> at(uv);
  return {{{evaluate(d.jac[0], at), evaluate(d.jac[1], at)}, {evaluate(d.jac[2], at), evaluate(d.jac[3], at)}}};
}

// Newton on the chart field in the chart of the largest coordinate.
PointP2 polish(const std::array<ChartData, 3>& charts, PointP2 p) {
  for (int iter = 0; iter < 12; ++iter) {
    const std::size_t c = normalize_point(p);
    const ChartData& d = charts[c];
    auto uv = affine_of(p, c);
    std::span<const Complex> at(uv);
    const Complex fp = evaluate(d.p, at), fq = evaluate(d.q, at);
    const Matrix2 j = eval_jacobian(d, uv);
    const Complex det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (std::abs(det) == 0.0) break;
    const Complex du = (j[1][1] * fp - j[0][1] * fq) / det;
    const Complex dv = (j[0][0] * fq - j[1][0] * fp) / det;
    if (!std::isfinite(std::abs(du)) || !std::isfinite(std::abs(dv))) break;
    const double step = std::max(std::abs(du), std::abs(dv));
    if (step > 1e-3) break;  // not in the basin; leave the point alone
    uv[0] -= du;
    uv[1] -= dv;
    p = projective_of(uv, c);
    if (step <= 1e-16) break;
  }
  normalize_point(p);
  return p;
}

// Distance between projective points after scaling q to p's chart.
double projective_distance(const PointP2& p, const PointP2& q) {
  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j) {
    if (std::abs(p[j]) > std::abs(p[k])) k = j;
  }
  if (std::abs(q[k]) == 0.0) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t j = 0; j < 3; ++j) d = std::max(d, std::abs(p[j] / p[k] - q[j] / q[k]));
  return d;
}

using Solutions = std::vector<std::array<Complex, 2>>;

GaussianRational random_shear(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 9), im(-9, 9), den(1, 7);
  const long d = den(rng);
  return {mpq_class(num(rng), d), mpq_class(im(rng), d)};
}

// Common zeros of two bivariate polynomials.
Solutions solve_system(const MultiPoly& f, const MultiPoly& g, const SingularOptions& options, std::mt19937_64& rng) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::kNonIsolatedSingularity, "chart field vanishes identically");
  if (f.is_zero() || g.is_zero()) {
    const MultiPoly& other = f.is_zero() ? g : f;
    if (other.is_constant()) return {};
    throw Error(ErrorCode::kNonIsolatedSingularity, "a field component vanishes identically");
  }
  if (f.is_constant() || g.is_constant()) return {};

  const MultiPoly x = MultiPoly::variable(2, 0);
  const MultiPoly y = MultiPoly::variable(2, 1);
  RootOptions ropts;
  ropts.residual_tol = options.root_tol;
  for (unsigned attempt = 0; attempt < options.max_shears; ++attempt) {
    const GaussianRational s = random_shear(rng);
    const std::array<MultiPoly, 2> shear = {x + y * s, y};
    const MultiPoly fs = compose(f, shear);
    const MultiPoly gs = compose(g, shear);
    if (static_cast<int>(fs.degree_in(1)) != fs.total_degree() ||
        static_cast<int>(gs.degree_in(1)) != gs.total_degree()) {
      continue;
    }
    const MultiPoly r = resultant(fs, gs, 1);
    if (r.is_zero()) throw Error(ErrorCode::kNonIsolatedSingularity, "field components share a curve of zeros");
    if (r.is_constant()) return {};
    const auto xroots = univariate_complex_roots(r, ropts);
    if (std::any_of(xroots.begin(), xroots.end(), [](const Root& rt) { return rt.multiplicity > 1; })) continue;

    const auto fcoeffs = coefficients_in(fs, 1);
    Solutions out;
    for (const auto& xr : xroots) {
      const std::array<Complex, 2> at = {xr.value, 0.0};
      std::vector<Complex> ycoeffs;
      for (const auto& c : fcoeffs) ycoeffs.push_back(evaluate(c, std::span<const Complex>(at)));
      RootOptions yopts;
      yopts.residual_tol = 1e-8;
      const auto yroots = univariate_complex_roots(ycoeffs, yopts);
      Complex best_y = yroots.front().value;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& yr : yroots) {
        const std::array<Complex, 2> pt = {xr.value, yr.value};
        const double v = std::abs(evaluate(gs, std::span<const Complex>(pt)));
        if (v < best) {
          best = v;
          best_y = yr.value;
        }
      }
      out.push_back({xr.value + best_y * s.to_complex(), best_y});
    }
    return out;
  }
  throw Error(ErrorCode::kMultipleRootSuspected,
              "eliminant keeps a clustered root under every shear; a singular point is probably degenerate");
}

Matrix2 finite_difference_jacobian(const ChartData& d, const std::array<Complex, 2>& uv) {
  Matrix2 out{};
  const std::array<const MultiPoly*, 2> comps = {&d.p, &d.q};
  for (std::size_t var = 0; var < 2; ++var) {
    const double h = 1e-3 * std::max(1.0, std::abs(uv[var]));
    for (std::size_t row = 0; row < 2; ++row) {
      auto at = [&](double t) {
        auto pt = uv;
        pt[var] += t;
        return evaluate(*comps[row], std::span<const Complex>(pt));
      };
      out[row][var] = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
    }
  }
  return out;
}

double matrix_norm(const Matrix2& m) {
  return std::max({std::abs(m[0][0]), std::abs(m[0][1]), std::abs(m[1][0]), std::abs(m[1][1])});
}

bool eigenvalues_coincide(const Matrix2& j, const SingularOptions& options) {
  const Complex half_trace = (j[0][0] + j[1][1]) / 2.0;
  const Complex disc = half_trace * half_trace - (j[0][0] * j[1][1] - j[0][1] * j[1][0]);
  const double n = matrix_norm(j);
  return std::abs(disc) <= options.equal_eigen_cutoff * n * n;
}

// Eigenvector for eigenvalue e; zero vector when J - e is zero.
std::array<Complex, 2> eigenvector(const Matrix2& j, Complex e) {
  const std::array<Complex, 2> v1 = {j[0][1], e - j[0][0]};
  const std::array<Complex, 2> v2 = {e - j[1][1], j[1][0]};
  const double n1 = std::hypot(std::abs(v1[0]), std::abs(v1[1]));
  const double n2 = std::hypot(std::abs(v2[0]), std::abs(v2[1]));
  return n1 >= n2 ? v1 : v2;
}

bool is_dicritical(const Matrix2& j, const SingularOptions& options) {
  const double n = matrix_norm(j);
  return eigenvalues_coincide(j, options) && std::abs(j[0][1]) <= 1e-9 * n && std::abs(j[1][0]) <= 1e-9 * n;
}

// ---- exact univariate polynomials over Q(i), ascending coefficients ----

using UPoly = std::vector<GaussianRational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly to_upoly(const MultiPoly& p, std::size_t var) {
  UPoly out;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j != var && e[j] != 0) throw Error(ErrorCode::kInternal, "expected a univariate polynomial");
    }
    if (out.size() <= e[var]) out.resize(e[var] + 1);
    out[e[var]] += c;
  }
  trim(out);
  return out;
}

UPoly uderiv(const UPoly& p) {
  UPoly out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * GaussianRational(static_cast<long>(k)));
  trim(out);
  return out;
}

// Polynomial long division; returns (quotient, remainder).
std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw Error(ErrorCode::kDivisionByZero, "division by the zero polynomial");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const std::size_t shift_max = a.size() - b.size();
  UPoly q(shift_max + 1);
  const GaussianRational lead_inv = b.back().inverse();
  for (std::size_t shift = shift_max + 1; shift-- > 0;) {
    const GaussianRational c = a[shift + b.size() - 1] * lead_inv;
    q[shift] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

UPoly monic(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  const GaussianRational inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = udivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UPoly uquo(const UPoly& a, const UPoly& b) { return udivmod(a, b).first; }

// Yun's square-free decomposition: p = lc * prod s_k^k.
std::vector<std::pair<UPoly, unsigned>> squarefree(const UPoly& p) {
  std::vector<std::pair<UPoly, unsigned>> out;
  UPoly dp = uderiv(p);
  UPoly a = ugcd(p, dp);
  UPoly b = uquo(p, a);
  UPoly c = uquo(dp, a);
  UPoly bd = uderiv(b);
  UPoly dd(std::max(c.size(), bd.size()));
  for (std::size_t k = 0; k < dd.size(); ++k) {
    dd[k] = (k < c.size() ? c[k] : GaussianRational()) - (k < bd.size() ? bd[k] : GaussianRational());
  }
  trim(dd);
  unsigned k = 1;
  while (b.size() > 1) {
    a = ugcd(b, dd);
    b = uquo(b, a);
    c = uquo(dd, a);
    if (a.size() > 1) out.push_back({monic(a), k});
    bd = uderiv(b);
    dd.assign(std::max(c.size(), bd.size()), GaussianRational());
    for (std::size_t j = 0; j < dd.size(); ++j) {
      dd[j] = (j < c.size() ? c[j] : GaussianRational()) - (j < bd.size() ? bd[j] : GaussianRational());
    }
    trim(dd);
    ++k;
  }
  return out;
}

std::vector<Complex> to_complex(const UPoly& p) {
  std::vector<Complex> out;
  for (const auto& c : p) out.push_back(c.to_complex());
  return out;
}

// Roots of b with exact multiplicities, each polished on its square-free factor.
std::vector<std::pair<Complex, unsigned>> roots_with_multiplicity(const UPoly& b, const SingularOptions& options) {
  std::vector<std::pair<Complex, unsigned>> out;
  if (b.size() < 2) return out;
  RootOptions ropts;
  ropts.residual_tol = options.root_tol;
  for (const auto& [s, k] : squarefree(b)) {
    const auto sc = to_complex(s);
    for (const auto& r : univariate_complex_roots(sc, ropts)) {
      for (unsigned m = 0; m < r.multiplicity; ++m) out.push_back({r.value, k});
    }
  }
  return out;
}

// Residue of a/b at a root v0 of b of multiplicity m.
Complex residue(const UPoly& a, const UPoly& b, Complex v0, unsigned m) {
  const auto ac = to_complex(a);
  const auto bc = to_complex(b);
  if (m == 1) return horner(ac, v0) / horner(to_complex(uderiv(b)), v0);
  // c = b / (v - v0)^m by synthetic division.
  std::vector<Complex> c = bc;
  for (unsigned k = 0; k < m; ++k) {
    std::vector<Complex> q(c.size() - 1);
    Complex acc = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) {
      acc = acc * v0 + c[j];
      q[j - 1] = acc;
    }
    c = std::move(q);
  }
  // Taylor coefficients at v0 up to order m-1.
  auto taylor = [&](std::vector<Complex> p) {
    std::vector<Complex> t;
    for (unsigned k = 0; k < m; ++k) {
      if (p.empty()) {
        t.push_back(0.0);
        continue;
      }
      std::vector<Complex> q(p.size() > 1 ? p.size() - 1 : 0);
      Complex acc = 0.0;
      for (std::size_t j = p.size(); j-- > 0;) {
        acc = acc * v0 + p[j];
        if (j > 0) q[j - 1] = acc;
      }
      t.push_back(acc);
      p = std::move(q);
    }
    return t;
  };
  const auto ta = taylor(ac);
  const auto tc = taylor(c);
  if (std::abs(tc[0]) == 0.0) throw Error(ErrorCode::kInternal, "deflated denominator vanishes at the pole");
  std::vector<Complex> g(m);
  for (unsigned k = 0; k < m; ++k) {
    Complex acc = ta[k];
    for (unsigned j = 1; j <= k; ++j) acc -= tc[j] * g[k - j];
    g[k] = acc / tc[0];
  }
  return g[m - 1];
}

// Exact coordinates w = M z with w0 the line equation. In the chart w2 = 1
// the field reads (u*a(u,v), b(u,v)); only the restrictions to u = 0 are kept.
struct LineChart {
  Matrix3 m, minv;
  UPoly a, b;  // in v
};

LineChart line_chart(const ProjectiveFoliation& f, const Line& line, const std::array<GaussianRational, 3>& r2) {
  LineChart lc;
  lc.m[0] = line.coefficients;
  lc.m[2] = r2;
  bool ok = false;
  for (std::size_t j = 0; j < 3 && !ok; ++j) {
    lc.m[1] = {GaussianRational(), GaussianRational(), GaussianRational()};
    lc.m[1][j] = 1;
    ok = !determinant(lc.m).is_zero();
  }
  if (!ok) throw Error(ErrorCode::kInternal, "could not complete the line to a coordinate system");
  lc.minv = inverse(lc.m);
  std::vector<MultiPoly> map;
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly row(3);
    for (std::size_t j = 0; j < 3; ++j) row += MultiPoly::variable(3, j) * lc.minv[i][j];
    map.push_back(row);
  }
  const PolyForm pulled = pullback_form(map, f.omega());
  const auto coeffs = pulled.one_form_coefficients();
  const MultiPoly cu = drop_variable(substitute(coeffs[0], 2, 1), 2);
  const MultiPoly cv = drop_variable(substitute(coeffs[1], 2, 1), 2);
  const auto a = divide_exact(-cv, MultiPoly::variable(2, 0));
  if (!a) throw Error(ErrorCode::kNotInvariant, "line is not invariant");
  lc.a = to_upoly(substitute(*a, 0, 0), 1);
  lc.b = to_upoly(substitute(cu, 0, 0), 1);
  if (lc.b.empty()) throw Error(ErrorCode::kNonIsolatedSingularity, "the whole line is singular");
  return lc;
}

PointP2 line_point(const LineChart& lc, Complex v) {
  const std::array<Complex, 3> w = {0.0, v, 1.0};
  PointP2 p{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) p[i] += lc.minv[i][j].to_complex() * w[j];
  }
  normalize_point(p);
  return p;
}

void require_invariant(const ProjectiveFoliation& f, const Line& line) {
  if (f.nvars() != 3) throw Error(ErrorCode::kArityMismatch, "expected a foliation on P^2");
  if (!is_line_invariant(f.omega(), line)) throw Error(ErrorCode::kNotInvariant, "line is not invariant");
}

// Transverse over tangent eigenvalue at a nondegenerate point of the line.
std::optional<Complex> eigen_ratio(const ProjectiveFoliation& f, const Line& line, const PointP2& point,
                                   const SingularOptions& options) {
  SingularityRecord rec;
  try {
    rec = classify_singularity(f, point, options);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (rec.kind == SingularityKind::kDegenerate) return std::nullopt;
  if (eigenvalues_coincide(rec.jacobian, options)) return Complex(1.0);
  auto [u, v] = chart_coordinates(rec.chart);
  const std::array<Complex, 2> dir = {line.coefficients[v].to_complex(), -line.coefficients[u].to_complex()};
  auto cosine = [&](const std::array<Complex, 2>& e) {
    const Complex dot = std::conj(dir[0]) * e[0] + std::conj(dir[1]) * e[1];
    return std::abs(dot) / (std::hypot(std::abs(dir[0]), std::abs(dir[1])) * std::hypot(std::abs(e[0]), std::abs(e[1])));
  };
  const double c1 = cosine(eigenvector(rec.jacobian, rec.eigenvalues[0]));
  const double c2 = cosine(eigenvector(rec.jacobian, rec.eigenvalues[1]));
  if (std::abs(c1 - c2) < 1e-6) throw Error(ErrorCode::kEigenvectorTie, "both eigenvectors are equally tangent to the line");
  return c1 > c2 ? rec.eigenvalues[1] / rec.eigenvalues[0] : rec.eigenvalues[0] / rec.eigenvalues[1];
}

SeparatrixIndex make_index(const ProjectiveFoliation& f, const Line& line, const LineChart& lc, Complex v0, unsigned m,
                           const SingularOptions& options) {
  if (m > 1 && options.poles == PolePolicy::kReject) {
    throw Error(ErrorCode::kHigherOrderPole, "pole of order " + std::to_string(m) + " at the point");
  }
  SeparatrixIndex out;
  out.line = line;
  out.point = line_point(lc, v0);
  out.index = residue(lc.a, lc.b, v0, m);
  out.pole_order = m;
  out.eigen_ratio = eigen_ratio(f, line, out.point, options);
  return out;
}

// Best rational approximation with denominator <= max_den, if within err.
std::optional<mpq_class> rationalize(double x, long max_den, double err) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 1e12) break;
    const long a = static_cast<long>(fl);
    const long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= err) {
      mpq_class q(h1, k1);
      q.canonicalize();
      return q;
    }
    const double frac = r - fl;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

std::array<Complex, 3> cross(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Float invariance test on sample points of the line.
bool numerically_invariant(const ProjectiveFoliation& f, const std::array<Complex, 3>& l) {
  // Two points spanning the line: cross with two coordinate vectors.
  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j) {
    if (std::abs(l[j]) > std::abs(l[k])) k = j;
  }
  std::array<std::array<Complex, 3>, 2> basis;
  std::size_t slot = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == k) continue;
    std::array<Complex, 3> e{};
    e[j] = 1.0;
    e[k] = -l[j] / l[k];
    basis[slot++] = e;
  }
  const double scale = omega_scale(f);
  for (int s = 0; s < 8; ++s) {
    const Complex t(std::cos(0.7 * s + 0.3), std::sin(1.3 * s + 0.1));
    std::array<Complex, 3> z;
    for (std::size_t j = 0; j < 3; ++j) z[j] = basis[0][j] + t * basis[1][j];
    Complex along = 0.0;
    double mag = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      const Complex a = evaluate(f.coefficients()[j], std::span<const Complex>(z));
      along += a * basis[1][j];
      mag = std::max(mag, std::abs(a));
    }
    if (std::abs(along) > 1e-8 * std::max(mag, scale)) return false;
  }
  return true;
}

}  // namespace

std::pair<MultiPoly, MultiPoly> chart_field(const ProjectiveFoliation& f, std::size_t chart) {
  if (f.nvars() != 3) throw Error(ErrorCode::kArityMismatch, "expected a foliation on P^2");
  if (chart > 2) throw Error(ErrorCode::kIndexOutOfRange, "chart index must be 0, 1 or 2");
  auto [u, v] = chart_coordinates(chart);
  const MultiPoly cu = drop_variable(substitute(f.coefficients()[u], chart, 1), chart);
  const MultiPoly cv = drop_variable(substitute(f.coefficients()[v], chart, 1), chart);
  return {-cv, cu};
}

std::size_t normalize_point(PointP2& p) {
  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j) {
    if (std::abs(p[j]) > std::abs(p[k])) k = j;
  }
  if (std::abs(p[k]) == 0.0) throw Error(ErrorCode::kZeroInput, "the zero vector is not a projective point");
  const Complex s = p[k];
  // Parts at rounding level are flushed so exact zeros print as zeros.
  constexpr double kFlush = 1e-14;
  for (auto& c : p) {
    c /= s;
    c = {std::abs(c.real()) < kFlush ? 0.0 : c.real(), std::abs(c.imag()) < kFlush ? 0.0 : c.imag()};
  }
  p[k] = 1.0;
  return k;
}

SingularityRecord classify_singularity(const ProjectiveFoliation& f, const PointP2& point,
                                       const SingularOptions& options) {
  if (f.nvars() != 3) throw Error(ErrorCode::kArityMismatch, "expected a foliation on P^2");
  SingularityRecord rec;
  rec.point = point;
  rec.chart = normalize_point(rec.point);
  rec.residual = residual_at(f, rec.point);
  if (rec.residual > options.tol * omega_scale(f)) {
    std::ostringstream msg;
    msg << "point is not singular (residual " << rec.residual << ")";
    throw Error(ErrorCode::kNotSingular, msg.str());
  }
  const ChartData d = chart_data(f, rec.chart);
  const auto uv = affine_of(rec.point, rec.chart);
  rec.jacobian = eval_jacobian(d, uv);
  rec.jacobian_fd = finite_difference_jacobian(d, uv);
  double diff = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) diff = std::max(diff, std::abs(rec.jacobian[i][j] - rec.jacobian_fd[i][j]));
  }
  const double n = matrix_norm(rec.jacobian);
  rec.jacobian_agreement = diff / std::max(1.0, n);

  const Matrix2& j = rec.jacobian;
  const Complex half_trace = (j[0][0] + j[1][1]) / 2.0;
  const Complex det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  Complex e1 = half_trace, e2 = half_trace;
  if (!eigenvalues_coincide(j, options)) {
    const Complex root = std::sqrt(half_trace * half_trace - det);
    e1 = half_trace + root;
    e2 = half_trace - root;
    const double tie = 1e-12 * std::max(std::abs(e1), std::abs(e2));
    const bool swap = std::abs(e1.real() - e2.real()) <= tie ? e2.imag() < e1.imag() : e2.real() > e1.real();
    if (swap) std::swap(e1, e2);
  }
  rec.eigenvalues = {e1, e2};
  if (n == 0.0 || std::abs(det) < options.det_cutoff * n * n) {
    rec.kind = SingularityKind::kDegenerate;
    return rec;
  }
  const Complex lambda = e2 / e1;
  rec.char_numbers = std::array<Complex, 2>{lambda, 1.0 / lambda};
  rec.kind = std::abs(lambda.imag()) > options.hyperbolic_cutoff * std::abs(lambda) ? SingularityKind::kHyperbolic
                                                                                     : SingularityKind::kNonhyperbolic;
  return rec;
}

std::vector<SingularityRecord> all_singularities_P2(const ProjectiveFoliation& f, const SingularOptions& options) {
  if (f.nvars() != 3) throw Error(ErrorCode::kArityMismatch, "expected a foliation on P^2");
  const std::array<ChartData, 3> charts = {chart_data(f, 0), chart_data(f, 1), chart_data(f, 2)};
  std::mt19937_64 rng(options.seed);
  std::vector<PointP2> points;
  for (std::size_t c = 0; c < 3; ++c) {
    for (const auto& uv : solve_system(charts[c].p, charts[c].q, options, rng)) {
      PointP2 p = polish(charts, projective_of(uv, c));
      const bool seen = std::any_of(points.begin(), points.end(),
                                    [&](const PointP2& q) { return projective_distance(q, p) <= options.tol; });
      if (!seen) points.push_back(p);
    }
  }
  auto key = [](const PointP2& p) {
    std::array<long long, 6> k;
    for (std::size_t j = 0; j < 3; ++j) {
      k[2 * j] = std::llround(p[j].real() * 1e6);
      k[2 * j + 1] = std::llround(p[j].imag() * 1e6);
    }
    return k;
  };
  std::sort(points.begin(), points.end(), [&](const PointP2& a, const PointP2& b) { return key(a) < key(b); });

  const double bound = options.root_tol * omega_scale(f);
  std::vector<SingularityRecord> out;
  for (const auto& p : points) {
    const double r = residual_at(f, p);
    if (r > bound) {
      std::ostringstream msg;
      msg << "singular point residual " << r << " exceeds " << bound;
      throw Error(ErrorCode::kNonConvergence, msg.str());
    }
    out.push_back(classify_singularity(f, p, options));
  }
  return out;
}

SeparatrixIndex camacho_sad_index(const ProjectiveFoliation& f, const Line& line, const PointP2& point,
                                  const SingularOptions& options) {
  require_invariant(f, line);
  PointP2 p = point;
  const std::size_t c = normalize_point(p);
  Complex on = 0.0;
  double lnorm = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    on += line.coefficients[j].to_complex() * p[j];
    lnorm = std::max(lnorm, std::abs(line.coefficients[j].to_complex()));
  }
  if (std::abs(on) > options.tol * lnorm) throw Error(ErrorCode::kPointNotOnLine, "point does not lie on the line");

  std::array<GaussianRational, 3> r2{};
  r2[c] = 1;
  const LineChart lc = line_chart(f, line, r2);
  Complex w1 = 0.0;
  for (std::size_t j = 0; j < 3; ++j) w1 += lc.m[1][j].to_complex() * p[j];
  const Complex v0 = w1;  // w2 = p[c] = 1

  const auto roots = roots_with_multiplicity(lc.b, options);
  const std::pair<Complex, unsigned>* best = nullptr;
  for (const auto& r : roots) {
    if (!best || std::abs(r.first - v0) < std::abs(best->first - v0)) best = &r;
  }
  if (!best || std::abs(best->first - v0) > 1e-6 * std::max(1.0, std::abs(v0))) {
    throw Error(ErrorCode::kNotSingular, "point is not a singular point on the line");
  }
  return make_index(f, line, lc, best->first, best->second, options);
}

std::vector<SeparatrixIndex> camacho_sad_line_indices(const ProjectiveFoliation& f, const Line& line,
                                                      const SingularOptions& options) {
  require_invariant(f, line);
  // Pick the chart so that the point of the line at infinity is not singular;
  // then every singular point of the line is a root of b.
  std::vector<std::array<GaussianRational, 3>> choices;
  for (std::size_t j = 0; j < 3; ++j) {
    std::array<GaussianRational, 3> e{};
    e[j] = 1;
    choices.push_back(e);
  }
  for (long k = 1; k <= 8; ++k) choices.push_back({GaussianRational(1), GaussianRational(k), GaussianRational(k * k)});
  const auto& l = line.coefficients;
  for (const auto& r2 : choices) {
    const std::array<GaussianRational, 3> q = {l[1] * r2[2] - l[2] * r2[1], l[2] * r2[0] - l[0] * r2[2],
                                                l[0] * r2[1] - l[1] * r2[0]};
    if (q[0].is_zero() && q[1].is_zero() && q[2].is_zero()) continue;
    bool singular = true;
    for (const auto& c : f.coefficients()) singular = singular && evaluate(c, std::span<const GaussianRational>(q)).is_zero();
    if (singular) continue;
    const LineChart lc = line_chart(f, line, r2);
    std::vector<SeparatrixIndex> out;
    std::vector<Complex> done;
    for (const auto& [v0, m] : roots_with_multiplicity(lc.b, options)) {
      if (std::any_of(done.begin(), done.end(), [&](Complex d) { return d == v0; })) continue;
      done.push_back(v0);
      out.push_back(make_index(f, line, lc, v0, m, options));
    }
    return out;
  }
  throw Error(ErrorCode::kInternal, "no chart with a regular point at infinity on the line");
}

Complex camacho_sad_line_sum(const ProjectiveFoliation& f, const Line& line, const SingularOptions& options) {
  Complex sum = 0.0;
  for (const auto& idx : camacho_sad_line_indices(f, line, options)) sum += idx.index;
  return sum;
}

LineExclusion invariant_line_exclusion(const ProjectiveFoliation& f, const SingularOptions& options) {
  LineExclusion out;
  out.singularities = all_singularities_P2(f, options);
  const auto& recs = out.singularities;
  for (const auto& r : recs) {
    if (r.kind == SingularityKind::kDegenerate) {
      throw Error(ErrorCode::kDegenerateSingularity, "a singular point is degenerate");
    }
    if (is_dicritical(r.jacobian, options)) {
      throw Error(ErrorCode::kCapExceeded, "dicritical singular point: every line through it is a candidate");
    }
  }

  std::vector<std::array<Complex, 3>> candidates;
  auto add = [&](std::array<Complex, 3> l) {
    double n = 0.0;
    std::size_t k = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (std::abs(l[j]) > n) {
        n = std::abs(l[j]);
        k = j;
      }
    }
    if (n < 1e-12) return;
    const Complex s = l[k];
    for (auto& c : l) c /= s;
    for (const auto& c : candidates) {
      double d = 0.0;
      for (std::size_t j = 0; j < 3; ++j) d = std::max(d, std::abs(c[j] - l[j]));
      if (d <= 1e-7) return;
    }
    candidates.push_back(l);
  };
  for (std::size_t i = 0; i < recs.size(); ++i) {
    for (std::size_t j = i + 1; j < recs.size(); ++j) add(cross(recs[i].point, recs[j].point));
  }
  for (const auto& r : recs) {
    auto [u, v] = chart_coordinates(r.chart);
    const std::size_t count = eigenvalues_coincide(r.jacobian, options) ? 1 : 2;
    for (std::size_t e = 0; e < count; ++e) {
      const auto vec = eigenvector(r.jacobian, r.eigenvalues[e]);
      std::array<Complex, 3> dir{};
      dir[u] = vec[0];
      dir[v] = vec[1];
      add(cross(r.point, dir));
    }
  }
  out.candidates = candidates.size();

  for (const auto& l : candidates) {
    std::optional<Line> exact = Line{};
    for (std::size_t j = 0; j < 3 && exact; ++j) {
      const auto re = rationalize(l[j].real(), 1000, 1e-8);
      const auto im = rationalize(l[j].imag(), 1000, 1e-8);
      if (re && im) {
        exact->coefficients[j] = GaussianRational(*re, *im);
      } else {
        exact.reset();
      }
    }
    InvariantLine found;
    found.coefficients = l;
    if (exact) {
      if (!is_line_invariant(f.omega(), *exact)) continue;
      found.exact = exact;
    } else if (!numerically_invariant(f, l)) {
      continue;
    }
    out.invariant_lines.push_back(found);
    if (out.invariant_lines.size() > options.line_cap) {
      throw Error(ErrorCode::kCapExceeded, "more invariant lines than the configured cap");
    }
  }
  auto key = [](const InvariantLine& l) {
    std::array<long long, 6> k;
    for (std::size_t j = 0; j < 3; ++j) {
      k[2 * j] = std::llround(l.coefficients[j].real() * 1e6);
      k[2 * j + 1] = std::llround(l.coefficients[j].imag() * 1e6);
    }
    return k;
  };
  std::sort(out.invariant_lines.begin(), out.invariant_lines.end(),
            [&](const InvariantLine& a, const InvariantLine& b) { return key(a) < key(b); });
  return out;
}

}  // namespace folia
