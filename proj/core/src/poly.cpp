#include "folia/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "folia/error.hpp"

namespace folia {

std::uint64_t total_degree(const Exponents& e) {
  std::uint64_t sum = 0;
  for (auto x : e) sum += x;
  return sum;
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : e) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::uint64_t sum = std::uint64_t{a[k]} + b[k];
    if (sum > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::kExponentOverflow, "exponent overflow in product");
    }
    out[k] = static_cast<std::uint32_t>(sum);
  }
  return out;
}

}  // namespace

MultiPoly MultiPoly::constant(std::size_t nvars, const GaussianRational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw Error(ErrorCode::kIndexOutOfRange, "variable index out of range");
  Exponents e(nvars, 0);
  e[var] = 1;
  return monomial(std::move(e), 1);
}

MultiPoly MultiPoly::monomial(Exponents exps, const GaussianRational& c) {
  MultiPoly p(exps.size());
  p.add_term(exps, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(folia::total_degree(terms_.begin()->first));
}

int MultiPoly::min_total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(folia::total_degree(terms_.rbegin()->first));
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  if (var >= nvars_) throw Error(ErrorCode::kIndexOutOfRange, "variable index out of range");
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return total_degree() == min_total_degree();
}

GaussianRational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

GaussianRational MultiPoly::constant_term() const {
  return coefficient(Exponents(nvars_, 0));
}

void MultiPoly::add_term(const Exponents& e, const GaussianRational& c) {
  if (e.size() != nvars_) throw Error(ErrorCode::kArityMismatch, "exponent vector length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_same_arity(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) {
    throw Error(ErrorCode::kArityMismatch, "polynomials have different variable counts (" +
                                               std::to_string(nvars_) + " vs " +
                                               std::to_string(o.nvars_) + ")");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_arity(b);
  MultiPoly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  std::unordered_map<Exponents, GaussianRational, ExponentsHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      auto [it, inserted] = acc.try_emplace(add_exponents(ea, eb));
      if (inserted) {
        it->second = ca * cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) out.terms_.emplace(e, std::move(c));
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly pow(const MultiPoly& p, unsigned k) {
  MultiPoly result = MultiPoly::constant(p.nvars(), 1);
  MultiPoly base = p;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

MultiPoly differentiate(const MultiPoly& p, std::size_t var) {
  if (var >= p.nvars()) {
    throw Error(ErrorCode::kIndexOutOfRange, "differentiation variable " + std::to_string(var) +
                                                 " out of range for " + std::to_string(p.nvars()) +
                                                 " variables");
  }
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * GaussianRational(static_cast<long>(e[var])));
  }
  return out;
}

MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> args) {
  if (args.size() != p.nvars()) {
    throw Error(ErrorCode::kArityMismatch, "compose: expected " + std::to_string(p.nvars()) +
                                               " arguments, got " + std::to_string(args.size()));
  }
  const std::size_t m = args.empty() ? 0 : args.front().nvars();
  for (const auto& a : args) {
    if (a.nvars() != m) throw Error(ErrorCode::kArityMismatch, "compose: arguments differ in arity");
  }
  // powers[j][k] = args[j]^k, filled lazily.
  std::vector<std::vector<MultiPoly>> powers(args.size());
  auto power = [&](std::size_t j, std::uint32_t k) -> const MultiPoly& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(MultiPoly::constant(m, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * args[j]);
    return cache[k];
  };
  MultiPoly out(m);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(m, c);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0) term *= power(j, e[j]);
    }
    out += term;
  }
  return out;
}

GaussianRational evaluate(const MultiPoly& p, std::span<const GaussianRational> point) {
  if (point.size() != p.nvars()) throw Error(ErrorCode::kArityMismatch, "evaluate: point length mismatch");
  GaussianRational sum;
  for (const auto& [e, c] : p.terms()) {
    GaussianRational term = c;
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (std::uint32_t k = 0; k < e[j]; ++k) term *= point[j];
    }
    sum += term;
  }
  return sum;
}

namespace {

std::complex<double> ipow(std::complex<double> z, std::uint32_t k) {
  std::complex<double> r = 1.0;
  while (k > 0) {
    if (k & 1U) r *= z;
    k >>= 1U;
    if (k > 0) z *= z;
  }
  return r;
}

}  // namespace

std::complex<double> evaluate(const MultiPoly& p, std::span<const std::complex<double>> point) {
  return evaluate_bounded(p, point).value;
}

BoundedEvaluation evaluate_bounded(const MultiPoly& p, std::span<const std::complex<double>> point) {
  if (point.size() != p.nvars()) throw Error(ErrorCode::kArityMismatch, "evaluate: point length mismatch");
  BoundedEvaluation out;
  double magnitude = 0.0;
  for (const auto& [e, c] : p.terms()) {
    std::complex<double> term = c.to_complex();
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0) term *= ipow(point[j], e[j]);
    }
    out.value += term;
    magnitude += std::abs(term);
  }
  const double u = std::numeric_limits<double>::epsilon() / 2;
  const double deg = std::max(0, p.total_degree());
  out.error_bound = (4.0 * (deg + 1.0) + static_cast<double>(p.term_count())) * u * magnitude;
  return out;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::kArityMismatch, "divide_exact: arity mismatch");
  if (q.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by the zero polynomial");
  MultiPoly quotient(p.nvars());
  MultiPoly rem = p;
  const Exponents& lq = q.leading_exponents();
  const GaussianRational inv_lc = q.leading_coefficient().inverse();
  while (!rem.is_zero()) {
    const Exponents& lr = rem.leading_exponents();
    Exponents shift(lr.size());
    for (std::size_t k = 0; k < lr.size(); ++k) {
      if (lr[k] < lq[k]) return std::nullopt;
      shift[k] = lr[k] - lq[k];
    }
    GaussianRational factor = rem.leading_coefficient() * inv_lc;
    MultiPoly step = MultiPoly::monomial(shift, factor);
    quotient += step;
    rem -= step * q;
  }
  return quotient;
}

Exponents monomial_content(const MultiPoly& p) {
  if (p.is_zero()) return Exponents(p.nvars(), 0);
  Exponents content = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t k = 0; k < e.size(); ++k) content[k] = std::min(content[k], e[k]);
  }
  return content;
}

MultiPoly divide_by_monomial(const MultiPoly& p, const Exponents& m) {
  if (m.size() != p.nvars()) throw Error(ErrorCode::kArityMismatch, "divide_by_monomial: arity mismatch");
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    Exponents d = e;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (d[k] < m[k]) throw Error(ErrorCode::kInternal, "monomial does not divide polynomial");
      d[k] -= m[k];
    }
    out.add_term(d, c);
  }
  return out;
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
  const std::uint32_t deg = p.degree_in(var);
  std::vector<MultiPoly> out(deg + 1, MultiPoly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    Exponents r = e;
    r[var] = 0;
    out[e[var]].add_term(r, c);
  }
  return out;
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t eliminate) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::kArityMismatch, "resultant: arity mismatch");
  if (eliminate >= p.nvars()) throw Error(ErrorCode::kIndexOutOfRange, "resultant: variable out of range");
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::kZeroInput, "resultant of the zero polynomial");
  const std::size_t m = p.degree_in(eliminate);
  const std::size_t n = q.degree_in(eliminate);
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::kDegreeZero, "resultant: input has degree zero in the eliminated variable");
  }
  const auto pc = coefficients_in(p, eliminate);
  const auto qc = coefficients_in(q, eliminate);
  const std::size_t size = m + n;
  const MultiPoly zero(p.nvars());

  // Sylvester matrix: n shifted rows of p, then m shifted rows of q, highest
  // coefficient first.
  std::vector<std::vector<MultiPoly>> a(size, std::vector<MultiPoly>(size, zero));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) a[r][r + k] = pc[m - k];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) a[n + r][r + k] = qc[n - k];
  }

  bool negate = false;
  MultiPoly prev_pivot = MultiPoly::constant(p.nvars(), 1);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return zero;
      std::swap(a[k], a[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        MultiPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto quot = divide_exact(num, prev_pivot);
        if (!quot) throw Error(ErrorCode::kInternal, "Bareiss step left a remainder");
        a[i][j] = std::move(*quot);
      }
      a[i][k] = zero;
    }
    prev_pivot = a[k][k];
  }
  MultiPoly det = a[size - 1][size - 1];
  return negate ? -det : det;
}

MultiPoly substitute(const MultiPoly& p, std::size_t var, const GaussianRational& value) {
  if (var >= p.nvars()) throw Error(ErrorCode::kIndexOutOfRange, "substitute: variable out of range");
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    GaussianRational coeff = c;
    for (std::uint32_t k = 0; k < e[var]; ++k) coeff *= value;
    Exponents r = e;
    r[var] = 0;
    out.add_term(r, coeff);
  }
  return out;
}

MultiPoly extend_variables(const MultiPoly& p, std::size_t nvars) {
  if (nvars < p.nvars()) throw Error(ErrorCode::kArityMismatch, "extend_variables: cannot shrink");
  MultiPoly out(nvars);
  for (const auto& [e, c] : p.terms()) {
    Exponents r = e;
    r.resize(nvars, 0);
    out.add_term(r, c);
  }
  return out;
}

MultiPoly drop_variable(const MultiPoly& p, std::size_t var) {
  if (var >= p.nvars()) throw Error(ErrorCode::kIndexOutOfRange, "drop_variable: variable out of range");
  MultiPoly out(p.nvars() - 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[var] != 0) throw Error(ErrorCode::kInternal, "drop_variable: variable occurs");
    Exponents r = e;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(var));
    out.add_term(r, c);
  }
  return out;
}

MultiPoly homogenize(const MultiPoly& p, std::size_t var, unsigned degree) {
  if (var > p.nvars()) throw Error(ErrorCode::kIndexOutOfRange, "homogenize: position out of range");
  if (p.total_degree() > static_cast<int>(degree)) {
    throw Error(ErrorCode::kInternal, "homogenize: target degree below polynomial degree");
  }
  MultiPoly out(p.nvars() + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponents r = e;
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(var),
             static_cast<std::uint32_t>(degree - folia::total_degree(e)));
    out.add_term(r, c);
  }
  return out;
}

MultiPoly homogeneous_part(const MultiPoly& p, unsigned degree) {
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (folia::total_degree(e) == degree) out.add_term(e, c);
  }
  return out;
}

std::vector<std::complex<double>> univariate_coefficients(const MultiPoly& p, std::size_t var) {
  if (var >= p.nvars()) throw Error(ErrorCode::kIndexOutOfRange, "univariate: variable out of range");
  std::vector<std::complex<double>> out(p.is_zero() ? 1 : p.degree_in(var) + 1);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k != var && e[k] != 0) {
        throw Error(ErrorCode::kArityMismatch, "polynomial is not univariate in the requested variable");
      }
    }
    out[e[var]] = c.to_complex();
  }
  return out;
}

double max_coefficient_modulus(const MultiPoly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c.to_complex()));
  return m;
}

}  // namespace folia
