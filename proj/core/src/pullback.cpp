#include "folia/pullback.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "folia/error.hpp"

namespace folia {

namespace {

// Resultant test on a random line: restrictions of p and q sharing a root.
bool share_root_on_line(const MultiPoly& p, const MultiPoly& q, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coord(-5, 5);
  const std::size_t n = p.nvars();
  const MultiPoly s = MultiPoly::variable(2, 0);
  const MultiPoly t = MultiPoly::variable(2, 1);
  std::vector<MultiPoly> line;
  for (std::size_t j = 0; j < n; ++j) {
    const GaussianRational a(mpq_class(coord(rng)), mpq_class(coord(rng)));
    const GaussianRational b(mpq_class(coord(rng)), mpq_class(coord(rng)));
    line.push_back(s * a + t * b);
  }
  // Dehomogenize at t = 1; a root at s = infinity shows up as a degree drop.
  const MultiPoly pr = substitute(compose(p, line), 1, 1);
  const MultiPoly qr = substitute(compose(q, line), 1, 1);
  if (pr.degree_in(0) != static_cast<unsigned>(p.total_degree()) ||
      qr.degree_in(0) != static_cast<unsigned>(q.total_degree())) {
    return true;  // inconclusive line; counts as a hit
  }
  return resultant(pr, qr, 0).is_zero();
}

}  // namespace

BranchedMap make_branched_map(const MultiPoly& f0, const MultiPoly& f1, const MultiPoly& f2, unsigned alpha,
                              unsigned beta, unsigned gamma, const MapOptions& options) {
  BranchedMap f;
  f.components = {f0, f1, f2};
  f.weights = {alpha, beta, gamma};
  const std::size_t n = f0.nvars();
  if (n < 3 || f1.nvars() != n || f2.nvars() != n) {
    throw Error(ErrorCode::kInvalidMap, "F0, F1, F2 must share at least three variables");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const MultiPoly& c = f.components[i];
    const std::string name = "F" + std::to_string(i);
    if (f.weights[i] == 0) throw Error(ErrorCode::kInvalidMap, "weights must be positive");
    if (c.is_zero() || c.total_degree() < 1) throw Error(ErrorCode::kInvalidMap, name + " must be nonconstant");
    if (!c.is_homogeneous()) throw Error(ErrorCode::kInvalidMap, name + " is not homogeneous");
  }
  f.nu = static_cast<unsigned>(f0.total_degree()) * alpha;
  for (std::size_t i = 1; i < 3; ++i) {
    if (static_cast<unsigned>(f.components[i].total_degree()) * f.weights[i] != f.nu) {
      throw Error(ErrorCode::kInvalidMap, "deg(F_i) * weight_i must agree for all three components");
    }
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      // Two independent lines must both report a shared root.
      if (share_root_on_line(f.components[i], f.components[j], rng) &&
          share_root_on_line(f.components[i], f.components[j], rng)) {
        throw Error(ErrorCode::kInvalidMap,
                    "F" + std::to_string(i) + " and F" + std::to_string(j) + " appear to share a factor");
      }
    }
  }
  f.regime = 1 < alpha && alpha < beta && beta < gamma && f.nu >= 2;
  if (options.require_regime && !f.regime) {
    throw Error(ErrorCode::kRegimeViolation, "weights must satisfy 1 < alpha < beta < gamma with nu >= 2");
  }
  return f;
}

unsigned expected_eta_degree(const BranchedMap& f, unsigned d) {
  const auto [a, b, c] = f.weights;
  return f.nu * (d - 1) + f.nu / a + f.nu / b + f.nu / c - 1;
}

ProjectiveFoliation build_eta(const BranchedMap& f, const ThreeLineFoliation& g) {
  const auto& F = f.components;
  const auto& w = f.weights;
  const std::array<MultiPoly, 3> powers = {pow(F[0], w[0]), pow(F[1], w[1]), pow(F[2], w[2])};
  const MultiPoly a = compose(g.a(), powers);
  const MultiPoly b = compose(g.b(), powers);
  const MultiPoly c = compose(g.c(), powers);
  PolyForm eta = (F[1] * F[2] * a * GaussianRational(static_cast<long>(w[0]))) * PolyForm::exact(F[0]);
  eta += (F[0] * F[2] * b * GaussianRational(static_cast<long>(w[1]))) * PolyForm::exact(F[1]);
  eta += (F[0] * F[1] * c * GaussianRational(static_cast<long>(w[2]))) * PolyForm::exact(F[2]);
  const unsigned expected = expected_eta_degree(f, g.d());
  for (const auto& coeff : eta.one_form_coefficients()) {
    if (!coeff.is_zero() && static_cast<unsigned>(coeff.total_degree()) != expected) {
      throw Error(ErrorCode::kInternal, "pull-back coefficient degree " + std::to_string(coeff.total_degree()) +
                                            " differs from the predicted " + std::to_string(expected));
    }
  }
  return ProjectiveFoliation(std::move(eta));
}

MultiPoly eta_pullback_factor(const BranchedMap& f) {
  MultiPoly out = MultiPoly::constant(f.nvars(), 1);
  for (std::size_t i = 0; i < 3; ++i) out *= pow(f.components[i], f.weights[i] - 1);
  return out;
}

std::vector<PointPn> indeterminacy_fermat(const BranchedMap& f) {
  if (f.nvars() != 4) throw Error(ErrorCode::kNotFermatForm, "Fermat indeterminacy needs P^3");
  std::array<unsigned, 3> k{};
  std::array<std::complex<double>, 3> c{};
  for (std::size_t i = 0; i < 3; ++i) {
    const MultiPoly& p = f.components[i];
    const unsigned deg = static_cast<unsigned>(p.total_degree());
    Exponents own(4, 0), last(4, 0);
    own[i] = deg;
    last[3] = deg;
    const GaussianRational lead = p.coefficient(own);
    const GaussianRational tail = p.coefficient(last);
    if (p.term_count() != 2 || lead.is_zero() || tail.is_zero()) {
      throw Error(ErrorCode::kNotFermatForm, "F" + std::to_string(i) + " is not z_i^k - c z_3^k with c != 0");
    }
    k[i] = deg;
    c[i] = (-(tail / lead)).to_complex();
  }
  std::vector<PointPn> points;
  for (unsigned a = 0; a < k[0]; ++a) {
    for (unsigned b = 0; b < k[1]; ++b) {
      for (unsigned e = 0; e < k[2]; ++e) {
        const std::array<unsigned, 3> idx = {a, b, e};
        PointPn p(4);
        for (std::size_t i = 0; i < 3; ++i) {
          const double kk = static_cast<double>(k[i]);
          const std::complex<double> root = std::pow(c[i], 1.0 / kk);
          p[i] = root * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(idx[i]) / kk);
        }
        p[3] = 1.0;
        points.push_back(std::move(p));
      }
    }
  }
  return points;
}

std::vector<GenericityCheck> check_generic_at_points(const BranchedMap& f, const std::vector<PointPn>& points,
                                                     double tol) {
  const std::size_t n = f.nvars();
  std::array<std::vector<MultiPoly>, 3> grads;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < n; ++j) grads[i].push_back(differentiate(f.components[i], j));
  }
  std::vector<GenericityCheck> out;
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorCode::kArityMismatch, "point has the wrong number of coordinates");
    double pmax = 1.0;
    for (const auto& z : p) pmax = std::max(pmax, std::abs(z));
    for (std::size_t i = 0; i < 3; ++i) {
      const MultiPoly& fi = f.components[i];
      const double bound =
          tol * std::max(1.0, max_coefficient_modulus(fi)) * std::pow(pmax, static_cast<double>(fi.total_degree()));
      if (std::abs(evaluate(fi, std::span<const std::complex<double>>(p))) > bound) {
        throw Error(ErrorCode::kPointNotOnIndeterminacy, "F" + std::to_string(i) + " does not vanish at the point");
      }
    }
    std::array<std::vector<std::complex<double>>, 3> g;
    double norms = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
      double row = 0.0;
      for (const auto& d : grads[i]) {
        g[i].push_back(evaluate(d, std::span<const std::complex<double>>(p)));
        row = std::max(row, std::abs(g[i].back()));
      }
      norms *= row;
    }
    GenericityCheck check;
    if (norms > 0.0) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          for (std::size_t c = b + 1; c < n; ++c) {
            const auto minor = g[0][a] * (g[1][b] * g[2][c] - g[1][c] * g[2][b]) -
                               g[0][b] * (g[1][a] * g[2][c] - g[1][c] * g[2][a]) +
                               g[0][c] * (g[1][a] * g[2][b] - g[1][b] * g[2][a]);
            check.max_minor = std::max(check.max_minor, std::abs(minor) / norms);
          }
        }
      }
    }
    check.generic = check.max_minor > tol;
    out.push_back(check);
  }
  return out;
}

BezoutCount bezout_count(unsigned nu, unsigned alpha, unsigned beta, unsigned gamma) {
  if (alpha == 0 || beta == 0 || gamma == 0) throw Error(ErrorCode::kNonIntegerCount, "weights must be positive");
  if (nu % alpha != 0 || nu % beta != 0 || nu % gamma != 0) {
    throw Error(ErrorCode::kNonIntegerCount, "every weight must divide nu");
  }
  BezoutCount out;
  out.points = static_cast<std::uint64_t>(nu / alpha) * (nu / beta) * (nu / gamma);
  out.multiplicity = static_cast<std::uint64_t>(alpha) * beta * gamma;
  return out;
}

}  // namespace folia
