#include "folia/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "folia/error.hpp"

namespace folia {

using cplx = std::complex<double>;

cplx horner(std::span<const cplx> a, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * z + a[k];
  return acc;
}

namespace {

std::vector<cplx> derivative(std::span<const cplx> a) {
  std::vector<cplx> out;
  for (std::size_t k = 1; k < a.size(); ++k) out.push_back(a[k] * static_cast<double>(k));
  return out;
}

// p / p' at z; returns false when p(z) vanishes exactly.
bool newton_ratio(std::span<const cplx> a, cplx z, cplx& ratio) {
  cplx p = 0.0, dp = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
  if (p == cplx(0.0)) return false;
  ratio = p / dp;
  return true;
}

std::vector<cplx> aberth(std::span<const cplx> a, unsigned max_iterations) {
  const std::size_t n = a.size() - 1;
  // Start on a circle whose radius is the geometric mean of the root moduli.
  const double radius = std::pow(std::abs(a[0]) / std::abs(a[n]), 1.0 / static_cast<double>(n));
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }
  std::vector<bool> done(n, false);
  for (unsigned iter = 0; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      cplx ratio;
      if (!newton_ratio(a, z[k], ratio)) {
        done[k] = true;
        continue;
      }
      cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k && z[j] != z[k]) sum += 1.0 / (z[k] - z[j]);
      }
      const cplx step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z[k]))) {
        done[k] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) return z;
  }
  // A double root stalls at ~sqrt(eps) separation; the caller clusters and
  // the residual check decides whether the result is usable.
  return z;
}

double normalized_residual(std::span<const cplx> a, double norm, cplx r) {
  const double scale = norm * std::pow(std::max(1.0, std::abs(r)), static_cast<double>(a.size() - 1));
  return std::abs(horner(a, r)) / scale;
}

}  // namespace

std::vector<Root> univariate_complex_roots(std::span<const cplx> ascending, const RootOptions& options) {
  std::vector<cplx> a(ascending.begin(), ascending.end());
  while (!a.empty() && a.back() == cplx(0.0)) a.pop_back();
  if (a.size() < 2) throw Error(ErrorCode::kDegreeZero, "root finding needs degree >= 1");
  double norm = 0.0;
  for (const auto& c : a) norm = std::max(norm, std::abs(c));

  std::vector<Root> roots;
  std::size_t zeros = 0;
  while (a[zeros] == cplx(0.0)) ++zeros;
  if (zeros > 0) roots.push_back({0.0, static_cast<unsigned>(zeros), 0.0});
  std::vector<cplx> reduced(a.begin() + static_cast<std::ptrdiff_t>(zeros), a.end());
  if (reduced.size() >= 2) {
    std::vector<cplx> approx = aberth(reduced, options.max_iterations);

    // Single-linkage clustering.
    std::vector<std::size_t> cluster(approx.size());
    for (std::size_t k = 0; k < approx.size(); ++k) cluster[k] = k;
    auto find = [&](std::size_t k) {
      while (cluster[k] != k) k = cluster[k] = cluster[cluster[k]];
      return k;
    };
    for (std::size_t i = 0; i < approx.size(); ++i) {
      for (std::size_t j = i + 1; j < approx.size(); ++j) {
        const double r = options.cluster_tol * std::max({1.0, std::abs(approx[i]), std::abs(approx[j])});
        if (std::abs(approx[i] - approx[j]) <= r) cluster[find(i)] = find(j);
      }
    }
    std::vector<std::size_t> heads;
    for (std::size_t k = 0; k < approx.size(); ++k) {
      if (find(k) == k) heads.push_back(k);
    }
    for (std::size_t h : heads) {
      cplx mean = 0.0;
      unsigned m = 0;
      for (std::size_t k = 0; k < approx.size(); ++k) {
        if (find(k) == h) {
          mean += approx[k];
          ++m;
        }
      }
      mean /= static_cast<double>(m);
      // Polish on the (m-1)-th derivative, where the root is simple.
      std::vector<cplx> q = reduced;
      for (unsigned k = 1; k < m; ++k) q = derivative(q);
      cplx z = mean;
      for (int step = 0; step < 8; ++step) {
        cplx ratio;
        if (!newton_ratio(q, z, ratio)) break;
        if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) break;
        z -= ratio;
        if (std::abs(ratio) <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) break;
      }
      if (normalized_residual(a, norm, z) > normalized_residual(a, norm, mean)) z = mean;
      roots.push_back({z, m, 0.0});
    }
  }

  double worst = 0.0;
  for (auto& r : roots) {
    r.residual = r.value == cplx(0.0) && zeros > 0 ? 0.0 : normalized_residual(a, norm, r.value);
    worst = std::max(worst, r.residual);
  }
  if (worst > options.residual_tol) {
    std::ostringstream msg;
    msg << "root residual " << worst << " exceeds " << options.residual_tol;
    throw Error(ErrorCode::kNonConvergence, msg.str());
  }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return roots;
}

std::vector<Root> univariate_complex_roots(const MultiPoly& p, const RootOptions& options) {
  std::size_t var = 0;
  bool found = false;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (found && j != var) throw Error(ErrorCode::kArityMismatch, "polynomial is not univariate");
      var = j;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::kDegreeZero, "root finding needs degree >= 1");
  return univariate_complex_roots(univariate_coefficients(p, var), options);
}

}  // namespace folia
