#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "folia/poly.hpp"

namespace folia {

// Index set i1 < ... < ik encoded as a bit mask (bit j <-> dz_j).
using IndexMask = std::uint32_t;

constexpr std::size_t kMaxFormVariables = 32;

// Polynomial differential k-form: sum over strictly increasing index tuples
// of MultiPoly coefficients. Zero components are never stored.
class PolyForm {
 public:
  PolyForm() = default;
  PolyForm(std::size_t nvars, unsigned degree);

  static PolyForm function(const MultiPoly& f);                     // 0-form
  static PolyForm differential(std::size_t nvars, std::size_t var);  // dz_var
  static PolyForm one_form(std::span<const MultiPoly> coefficients);
  static PolyForm exact(const MultiPoly& f);  // df

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  const std::map<IndexMask, MultiPoly>& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  MultiPoly coefficient(IndexMask mask) const;
  MultiPoly coefficient(std::span<const std::size_t> increasing_indices) const;
  // Dense coefficient list of a 1-form.
  std::vector<MultiPoly> one_form_coefficients() const;

  void add(IndexMask mask, const MultiPoly& coeff);

  PolyForm operator-() const;
  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(const MultiPoly& f, const PolyForm& a);
  friend PolyForm operator*(const GaussianRational& c, const PolyForm& a);
  friend bool operator==(const PolyForm& a, const PolyForm& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.components_ == b.components_;
  }

 private:
  void check_compatible(const PolyForm& o) const;

  std::size_t nvars_ = 0;
  unsigned degree_ = 0;
  std::map<IndexMask, MultiPoly> components_;
};

// Polynomial vector field sum_j v_j d/dz_j.
class PolyField {
 public:
  PolyField() = default;
  explicit PolyField(std::vector<MultiPoly> components);

  static PolyField zero(std::size_t nvars);
  static PolyField radial(std::size_t nvars);
  // sum_j weights[j] * z_j d/dz_j
  static PolyField diagonal(std::span<const GaussianRational> weights);
  static PolyField coordinate(std::size_t nvars, std::size_t var);  // d/dz_var

  std::size_t nvars() const { return components_.size(); }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t j) const { return components_[j]; }

  // v(f) = sum_j v_j df/dz_j
  MultiPoly apply(const MultiPoly& f) const;

  PolyField& operator+=(const PolyField& o);
  PolyField& operator-=(const PolyField& o);
  friend PolyField operator+(PolyField a, const PolyField& b) { return a += b; }
  friend PolyField operator-(PolyField a, const PolyField& b) { return a -= b; }
  friend PolyField operator*(const GaussianRational& c, const PolyField& v);
  friend bool operator==(const PolyField& a, const PolyField& b) { return a.components_ == b.components_; }

 private:
  std::vector<MultiPoly> components_;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyForm ext_derivative(const PolyForm& a);

// First-slot contraction: i_v(dz_{i1}^...^dz_{ik}) = sum_s (-1)^s v_{is} (omit is).
PolyForm interior_product(const PolyField& v, const PolyForm& a);

// Componentwise formula: L_v(f dz_I) = v(f) dz_I + f sum_s dz_.. ^ d(v_is) ^ dz_..
PolyForm lie_derivative(const PolyField& v, const PolyForm& a);
// Cartan formula i_v d a + d i_v a.
PolyForm lie_derivative_cartan(const PolyField& v, const PolyForm& a);

// [v, w] = (v.grad) w - (w.grad) v
PolyField lie_bracket(const PolyField& v, const PolyField& w);

// f^*(a) for the polynomial map z_j = map[j](w).
PolyForm pullback_form(std::span<const MultiPoly> map, const PolyForm& a);

// Largest common monomial factor of all coefficients.
Exponents monomial_content(const PolyForm& a);
PolyForm divide_by_monomial(const PolyForm& a, const Exponents& e);

// Sign-aware helpers for masks.
IndexMask mask_of(std::span<const std::size_t> increasing_indices);
std::vector<std::size_t> indices_of(IndexMask mask);

}  // namespace folia
