#include "folia/exterior.hpp"

#include <bit>
#include <string>

#include "folia/error.hpp"

namespace folia {

namespace {

void check_nvars(std::size_t nvars) {
  if (nvars > kMaxFormVariables) {
    throw Error(ErrorCode::kIndexOutOfRange, "forms support at most 32 variables");
  }
}

// Sign of sorting the concatenation I || J, zero if they overlap.
int merge_sign(IndexMask a, IndexMask b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  for (IndexMask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    // elements of a greater than j
    const IndexMask above = j >= 31 ? 0 : (a >> (j + 1));
    inversions += std::popcount(above);
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

void check_field_form(const PolyField& v, std::size_t nvars) {
  if (v.nvars() != nvars) {
    throw Error(ErrorCode::kArityMismatch, "vector field has " + std::to_string(v.nvars()) +
                                               " components, form has " + std::to_string(nvars) +
                                               " variables");
  }
}

}  // namespace

IndexMask mask_of(std::span<const std::size_t> increasing_indices) {
  IndexMask m = 0;
  std::size_t prev = 0;
  bool first = true;
  for (auto idx : increasing_indices) {
    if (idx >= kMaxFormVariables) throw Error(ErrorCode::kIndexOutOfRange, "form index out of range");
    if (!first && idx <= prev) throw Error(ErrorCode::kIndexOutOfRange, "indices must be strictly increasing");
    m |= IndexMask{1} << idx;
    prev = idx;
    first = false;
  }
  return m;
}

std::vector<std::size_t> indices_of(IndexMask mask) {
  std::vector<std::size_t> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

PolyForm::PolyForm(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
  check_nvars(nvars);
}

PolyForm PolyForm::function(const MultiPoly& f) {
  PolyForm out(f.nvars(), 0);
  out.add(0, f);
  return out;
}

PolyForm PolyForm::differential(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw Error(ErrorCode::kIndexOutOfRange, "differential index out of range");
  PolyForm out(nvars, 1);
  out.add(IndexMask{1} << var, MultiPoly::constant(nvars, 1));
  return out;
}

PolyForm PolyForm::one_form(std::span<const MultiPoly> coefficients) {
  const std::size_t n = coefficients.size();
  PolyForm out(n, 1);
  for (std::size_t j = 0; j < n; ++j) out.add(IndexMask{1} << j, coefficients[j]);
  return out;
}

PolyForm PolyForm::exact(const MultiPoly& f) { return ext_derivative(function(f)); }

MultiPoly PolyForm::coefficient(IndexMask mask) const {
  auto it = components_.find(mask);
  return it == components_.end() ? MultiPoly(nvars_) : it->second;
}

MultiPoly PolyForm::coefficient(std::span<const std::size_t> increasing_indices) const {
  return coefficient(mask_of(increasing_indices));
}

std::vector<MultiPoly> PolyForm::one_form_coefficients() const {
  if (degree_ != 1) throw Error(ErrorCode::kArityMismatch, "not a 1-form");
  std::vector<MultiPoly> out;
  for (std::size_t j = 0; j < nvars_; ++j) out.push_back(coefficient(IndexMask{1} << j));
  return out;
}

void PolyForm::add(IndexMask mask, const MultiPoly& coeff) {
  if (static_cast<unsigned>(std::popcount(mask)) != degree_) {
    throw Error(ErrorCode::kArityMismatch, "component degree does not match form degree");
  }
  if (nvars_ < kMaxFormVariables && (mask >> nvars_) != 0) {
    throw Error(ErrorCode::kIndexOutOfRange, "component index out of range");
  }
  if (coeff.nvars() != nvars_) throw Error(ErrorCode::kArityMismatch, "coefficient arity mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = components_.try_emplace(mask, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) components_.erase(it);
  }
}

void PolyForm::check_compatible(const PolyForm& o) const {
  if (nvars_ != o.nvars_) throw Error(ErrorCode::kArityMismatch, "forms have different variable counts");
  if (degree_ != o.degree_) throw Error(ErrorCode::kArityMismatch, "forms have different degrees");
}

PolyForm PolyForm::operator-() const {
  PolyForm out = *this;
  for (auto& [m, c] : out.components_) c = -c;
  return out;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.components_) add(m, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.components_) add(m, -c);
  return *this;
}

PolyForm operator*(const MultiPoly& f, const PolyForm& a) {
  if (f.nvars() != a.nvars_) throw Error(ErrorCode::kArityMismatch, "function and form arity mismatch");
  PolyForm out(a.nvars_, a.degree_);
  for (const auto& [m, c] : a.components_) out.add(m, f * c);
  return out;
}

PolyForm operator*(const GaussianRational& k, const PolyForm& a) {
  PolyForm out(a.nvars_, a.degree_);
  for (const auto& [m, c] : a.components_) out.add(m, c * k);
  return out;
}

PolyField::PolyField(std::vector<MultiPoly> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.nvars() != components_.size()) {
      throw Error(ErrorCode::kArityMismatch, "vector field component count must equal variable count");
    }
  }
}

PolyField PolyField::zero(std::size_t nvars) { return PolyField(std::vector<MultiPoly>(nvars, MultiPoly(nvars))); }

PolyField PolyField::radial(std::size_t nvars) {
  std::vector<MultiPoly> comps;
  for (std::size_t j = 0; j < nvars; ++j) comps.push_back(MultiPoly::variable(nvars, j));
  return PolyField(std::move(comps));
}

PolyField PolyField::diagonal(std::span<const GaussianRational> weights) {
  const std::size_t n = weights.size();
  std::vector<MultiPoly> comps;
  for (std::size_t j = 0; j < n; ++j) comps.push_back(MultiPoly::variable(n, j) * weights[j]);
  return PolyField(std::move(comps));
}

PolyField PolyField::coordinate(std::size_t nvars, std::size_t var) {
  PolyField v = zero(nvars);
  v.components_.at(var) = MultiPoly::constant(nvars, 1);
  return v;
}

MultiPoly PolyField::apply(const MultiPoly& f) const {
  if (f.nvars() != nvars()) throw Error(ErrorCode::kArityMismatch, "field and function arity mismatch");
  MultiPoly out(nvars());
  for (std::size_t j = 0; j < nvars(); ++j) {
    if (!components_[j].is_zero()) out += components_[j] * differentiate(f, j);
  }
  return out;
}

PolyField& PolyField::operator+=(const PolyField& o) {
  if (o.nvars() != nvars()) throw Error(ErrorCode::kArityMismatch, "vector field arity mismatch");
  for (std::size_t j = 0; j < nvars(); ++j) components_[j] += o.components_[j];
  return *this;
}

PolyField& PolyField::operator-=(const PolyField& o) {
  if (o.nvars() != nvars()) throw Error(ErrorCode::kArityMismatch, "vector field arity mismatch");
  for (std::size_t j = 0; j < nvars(); ++j) components_[j] -= o.components_[j];
  return *this;
}

PolyField operator*(const GaussianRational& c, const PolyField& v) {
  std::vector<MultiPoly> comps;
  for (const auto& p : v.components_) comps.push_back(p * c);
  return PolyField(std::move(comps));
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
  if (a.nvars() != b.nvars()) throw Error(ErrorCode::kArityMismatch, "wedge: variable-count mismatch");
  PolyForm out(a.nvars(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.nvars()) return out;
  for (const auto& [ma, ca] : a.components()) {
    for (const auto& [mb, cb] : b.components()) {
      const int sign = merge_sign(ma, mb);
      if (sign == 0) continue;
      MultiPoly prod = ca * cb;
      if (sign < 0) prod = -prod;
      out.add(ma | mb, prod);
    }
  }
  return out;
}

PolyForm ext_derivative(const PolyForm& a) {
  PolyForm out(a.nvars(), a.degree() + 1);
  if (a.degree() + 1 > a.nvars()) return out;
  for (const auto& [m, c] : a.components()) {
    for (std::size_t j = 0; j < a.nvars(); ++j) {
      const IndexMask bit = IndexMask{1} << j;
      if ((m & bit) != 0) continue;
      MultiPoly dc = differentiate(c, j);
      if (dc.is_zero()) continue;
      // dz_j ^ dz_I
      if (merge_sign(bit, m) < 0) dc = -dc;
      out.add(m | bit, dc);
    }
  }
  return out;
}

PolyForm interior_product(const PolyField& v, const PolyForm& a) {
  check_field_form(v, a.nvars());
  if (a.degree() == 0) return PolyForm(a.nvars(), 0);
  PolyForm out(a.nvars(), a.degree() - 1);
  for (const auto& [m, c] : a.components()) {
    int slot = 0;
    for (IndexMask rest = m; rest != 0; rest &= rest - 1, ++slot) {
      const int j = std::countr_zero(rest);
      const MultiPoly& vj = v[static_cast<std::size_t>(j)];
      if (vj.is_zero()) continue;
      MultiPoly term = vj * c;
      if (slot % 2 == 1) term = -term;
      out.add(m & ~(IndexMask{1} << j), term);
    }
  }
  return out;
}

PolyForm lie_derivative(const PolyField& v, const PolyForm& a) {
  check_field_form(v, a.nvars());
  const std::size_t n = a.nvars();
  PolyForm out(n, a.degree());
  std::vector<PolyForm> dv;
  for (std::size_t j = 0; j < n; ++j) dv.push_back(PolyForm::exact(v[j]));
  for (const auto& [m, c] : a.components()) {
    PolyForm basis(n, a.degree());
    basis.add(m, MultiPoly::constant(n, 1));
    out += v.apply(c) * basis;
    const auto idx = indices_of(m);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      PolyForm piece = PolyForm::function(c);
      for (std::size_t t = 0; t < idx.size(); ++t) {
        piece = wedge(piece, t == s ? dv[idx[t]] : PolyForm::differential(n, idx[t]));
      }
      out += piece;
    }
  }
  return out;
}

PolyForm lie_derivative_cartan(const PolyField& v, const PolyForm& a) {
  check_field_form(v, a.nvars());
  PolyForm first = interior_product(v, ext_derivative(a));
  if (a.degree() == 0) return first;
  return first + ext_derivative(interior_product(v, a));
}

PolyField lie_bracket(const PolyField& v, const PolyField& w) {
  if (v.nvars() != w.nvars()) throw Error(ErrorCode::kArityMismatch, "lie_bracket: variable-count mismatch");
  std::vector<MultiPoly> comps;
  for (std::size_t j = 0; j < v.nvars(); ++j) comps.push_back(v.apply(w[j]) - w.apply(v[j]));
  return PolyField(std::move(comps));
}

PolyForm pullback_form(std::span<const MultiPoly> map, const PolyForm& a) {
  if (map.size() != a.nvars()) {
    throw Error(ErrorCode::kArityMismatch, "pullback: map has " + std::to_string(map.size()) +
                                               " components, form has " + std::to_string(a.nvars()) +
                                               " variables");
  }
  if (map.empty()) return a;
  const std::size_t m = map.front().nvars();
  for (const auto& f : map) {
    if (f.nvars() != m) throw Error(ErrorCode::kArityMismatch, "pullback: map components differ in arity");
  }
  std::vector<PolyForm> dmap;
  for (const auto& f : map) dmap.push_back(PolyForm::exact(f));
  PolyForm out(m, a.degree());
  for (const auto& [mask, c] : a.components()) {
    PolyForm piece = PolyForm::function(compose(c, map));
    for (auto j : indices_of(mask)) piece = wedge(piece, dmap[j]);
    out += piece;
  }
  return out;
}

Exponents monomial_content(const PolyForm& a) {
  bool first = true;
  Exponents content(a.nvars(), 0);
  for (const auto& [m, c] : a.components()) {
    Exponents e = monomial_content(c);
    if (first) {
      content = e;
      first = false;
    } else {
      for (std::size_t k = 0; k < e.size(); ++k) content[k] = std::min(content[k], e[k]);
    }
  }
  return content;
}

PolyForm divide_by_monomial(const PolyForm& a, const Exponents& e) {
  PolyForm out(a.nvars(), a.degree());
  for (const auto& [m, c] : a.components()) out.add(m, divide_by_monomial(c, e));
  return out;
}

}  // namespace folia
