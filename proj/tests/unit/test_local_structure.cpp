#include <gtest/gtest.h>

#include <set>

#include "folia/error.hpp"
#include "folia/local_structure.hpp"
#include "folia/parse.hpp"
#include "oracles.hpp"

namespace folia {
namespace {

using C = std::complex<double>;

const VariableNames kLocal = local_names();
const VariableNames kXY = affine_names();

MultiPoly L(const char* text) { return parse_polynomial(text, kLocal); }
PolyForm form3(const char* text) { return PolyForm::one_form(parse_one_form(text, kLocal)); }

ThreeLineFoliation simple_g() {
  return make_three_line(parse_polynomial("X - Y", projective_names(2)), parse_polynomial("Y - Z", projective_names(2)));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInternal;
}

// Weighted degree of every term of coefficient j plus the weight of dx_j,
// collected as a set; an eigenform of L_S has exactly one value.
std::set<long> weighted_form_degrees(const PolyForm& eta, const std::array<long, 3>& w) {
  std::set<long> out;
  const auto coeffs = eta.one_form_coefficients();
  for (std::size_t j = 0; j < 3; ++j) {
    for (const auto& [e, v] : coeffs[j].terms()) out.insert(e[0] * w[0] + e[1] * w[1] + e[2] * w[2] + w[j]);
  }
  return out;
}

// Same for a field: [S, Z] = ell Z needs deg_w(term of Z_j) - w_j = ell.
std::set<long> weighted_field_degrees(const PolyField& z, const std::array<long, 3>& w) {
  std::set<long> out;
  for (std::size_t j = 0; j < 3; ++j) {
    for (const auto& [e, v] : z.components()[j].terms()) out.insert(e[0] * w[0] + e[1] * w[1] + e[2] * w[2] - w[j]);
  }
  return out;
}

TEST(LocalModel, MatchesWrittenOutForm) {
  const PolyForm eta = local_model_eta(simple_g(), 2, 3, 4);
  const PolyForm want = form3(
      "2*x1*x2*(x0^2 - x1^3) dx0 + 3*x0*x2*(x1^3 - x2^4) dx1 + 4*x0*x1*(x2^4 - x0^2) dx2");
  EXPECT_EQ(eta, want);
}

TEST(LocalModel, KilledByWeightField) {
  for (const auto& [a, b, c] : std::vector<std::array<unsigned, 3>>{{2, 3, 4}, {1, 1, 1}, {2, 3, 5}, {3, 5, 7}}) {
    const PolyForm eta = local_model_eta(simple_g(), a, b, c);
    const WeightField w = weight_field(a, b, c);
    EXPECT_TRUE(interior_product(w.s, eta).is_zero());
  }
  EXPECT_EQ(code_of([] { local_model_eta(simple_g(), 0, 1, 1); }), ErrorCode::kIndexOutOfRange);
}

TEST(WeightField, Values) {
  const WeightField a = weight_field(2, 3, 4);
  EXPECT_EQ(a.raw, (std::array<unsigned, 3>{12, 8, 6}));
  EXPECT_EQ(a.theta, 2u);
  EXPECT_EQ(a.weights, (std::array<unsigned, 3>{6, 4, 3}));
  EXPECT_EQ(weight_field(1, 1, 1).weights, (std::array<unsigned, 3>{1, 1, 1}));
  const WeightField c = weight_field(2, 3, 5);
  EXPECT_EQ(c.weights, (std::array<unsigned, 3>{15, 10, 6}));
  EXPECT_EQ(c.theta, 1u);
  EXPECT_EQ(code_of([] { weight_field(1, 0, 1); }), ErrorCode::kIndexOutOfRange);
}

TEST(Curl, Examples) {
  const PolyField z = curl_field(form3("x0 dx1"));
  EXPECT_EQ(z, PolyField({MultiPoly(3), MultiPoly(3), MultiPoly::constant(3, 1)}));
  // d of an exact form vanishes.
  const PolyForm exact = PolyForm::exact(L("x0*x1*x2 + x1^3"));
  EXPECT_EQ(curl_field(exact), PolyField::zero(3));
  EXPECT_EQ(code_of([] { curl_field(PolyForm(3, 2)); }), ErrorCode::kArityMismatch);
}

TEST(Curl, AgreesWithHandExpansionAndVolumeContraction) {
  testing::Rng rng(81);
  const PolyForm vol = wedge(wedge(PolyForm::differential(3, 0), PolyForm::differential(3, 1)),
                             PolyForm::differential(3, 2));
  for (int k = 0; k < 50; ++k) {
    const PolyForm eta = testing::random_form(rng, 3, 1);
    const auto coeffs = eta.one_form_coefficients();
    const auto d = testing::hand_exterior_derivative({coeffs.begin(), coeffs.end()});
    const PolyField z = curl_field(eta);
    EXPECT_EQ(z.components()[0], d[1][2]);
    EXPECT_EQ(z.components()[1], -d[0][2]);
    EXPECT_EQ(z.components()[2], d[0][1]);
    EXPECT_EQ(interior_product(z, vol), ext_derivative(eta));
  }
}

TEST(Curl, ModelComponentsDivisibleByTheirVariable) {
  const PolyField z = curl_field(local_model_eta(simple_g(), 2, 3, 4));
  for (std::size_t j = 0; j < 3; ++j) {
    ASSERT_FALSE(z.components()[j].is_zero());
    for (const auto& [e, v] : z.components()[j].terms()) EXPECT_GE(e[j], 1u);
  }
}

TEST(QuasiHomogeneous, ModelExample) {
  const QuasiHomogStructure q = quasi_homog_analyze(local_model_eta(simple_g(), 2, 3, 4), 2, 3, 4);
  EXPECT_EQ(q.m, 50);
  EXPECT_EQ(q.ell, 24);
  EXPECT_EQ(q.m_normalized, 25);
  EXPECT_EQ(q.ell_normalized, 12);
  EXPECT_EQ(q.lambda, mpq_class(1, 50));
  EXPECT_EQ(q.lambda_normalized, mpq_class(1, 25));
  EXPECT_TRUE(q.contraction_identity);
  const PolyForm eta = local_model_eta(simple_g(), 2, 3, 4);
  EXPECT_EQ(lie_derivative(q.s_raw, eta), GaussianRational(50) * eta);
  EXPECT_EQ(lie_bracket(q.s_raw, q.z), GaussianRational(24) * q.z);
}

TEST(QuasiHomogeneous, EigenvaluesMatchWeightedDegrees) {
  const ThreeLineFoliation cubic = make_three_line(parse_polynomial("X^2 - Y*Z", projective_names(2)),
                                                   parse_polynomial("Y^2 - i*X*Z", projective_names(2)));
  const std::vector<std::array<unsigned, 3>> weights = {{2, 3, 4}, {1, 1, 1}, {2, 3, 5}, {3, 4, 5}, {2, 5, 7}, {1, 2, 2}};
  for (const auto& [a, b, c] : weights) {
    for (const ThreeLineFoliation& g : {simple_g(), cubic}) {
      SCOPED_TRACE(::testing::Message() << a << "," << b << "," << c << " d=" << g.d());
      const PolyForm eta = local_model_eta(g, a, b, c);
      const QuasiHomogStructure q = quasi_homog_analyze(eta, a, b, c);
      const std::array<long, 3> raw = {long(b) * c, long(a) * c, long(a) * b};
      const auto m = weighted_form_degrees(eta, raw);
      ASSERT_EQ(m.size(), 1u);
      EXPECT_EQ(q.m, *m.begin());
      const auto ell = weighted_field_degrees(q.z, raw);
      ASSERT_EQ(ell.size(), 1u);
      EXPECT_EQ(q.ell, *ell.begin());
      const long theta = std::gcd(std::gcd(raw[0], raw[1]), raw[2]);
      EXPECT_EQ(q.m_normalized * theta, q.m);
      EXPECT_EQ(q.ell_normalized * theta, q.ell);
      EXPECT_TRUE(q.contraction_identity);
    }
  }
}

TEST(QuasiHomogeneous, Errors) {
  EXPECT_EQ(code_of([] { quasi_homog_analyze(PolyForm(3, 1), 1, 1, 1); }), ErrorCode::kZeroInput);
  EXPECT_EQ(code_of([] { quasi_homog_analyze(PolyForm(4, 1), 1, 1, 1); }), ErrorCode::kArityMismatch);
  EXPECT_EQ(code_of([] { quasi_homog_analyze(form3("x0 dx1"), 1, 1, 1); }), ErrorCode::kNotEigenform);
  // Killed by the radial field but Z is linear.
  EXPECT_EQ(code_of([] { quasi_homog_analyze(form3("x1*x2 dx0 - x0*x2 dx1"), 1, 1, 1); }),
            ErrorCode::kNonzeroLinearPart);
  // The model for (2,3,4) is not an eigenform of the (1,1,1) field.
  EXPECT_EQ(code_of([] { quasi_homog_analyze(local_model_eta(simple_g(), 2, 3, 4), 1, 1, 1); }),
            ErrorCode::kNotEigenform);
}

TEST(Kupka, Classification) {
  const PolyForm eta = local_model_eta(simple_g(), 2, 3, 4);
  EXPECT_EQ(kupka_check(eta, {0.0, 0.0, 0.0}).kind, KupkaKind::kGkCandidate);
  EXPECT_EQ(kupka_check(eta, {1.0, 2.0, 1.0}).kind, KupkaKind::kRegular);
  EXPECT_EQ(kupka_check(PolyForm::exact(L("x0^2 + x1*x2")), {0.0, 0.0, 0.0}).kind, KupkaKind::kSingularNonKupka);
  // x1 dx0 - x0 dx1 vanishes at the origin with d = -2 dx0 ^ dx1.
  EXPECT_EQ(kupka_check(form3("x1 dx0 - x0 dx1"), {0.0, 0.0, 0.0}).kind, KupkaKind::kKupka);
  EXPECT_EQ(kupka_check(form3("x1 dx0 - x0 dx1"), {0.0, 0.0, 5.0}).kind, KupkaKind::kKupka);
  EXPECT_EQ(code_of([&] { kupka_check(eta, {0.0, 0.0}); }), ErrorCode::kArityMismatch);
  EXPECT_STREQ(kupka_name(KupkaKind::kGkCandidate), "gk-candidate");
}

TEST(RamifiedPullback2d, ReducedFormByHand) {
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const MultiPoly r = parse_polynomial("x^2 - 3*x*y + i*y", kXY);
  const GaussianRational l1(2, 1), l2(-1, 3);
  for (const auto& [a, b] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 4}, {1, 1}, {1, 5}}) {
    SCOPED_TRACE(::testing::Message() << a << "," << b);
    const RamifiedPullback out = ramified_pullback_2d(l1, l2, a, b, r);
    EXPECT_EQ(out.factor, pow(x, a - 1) * pow(y, b - 1));
    const std::array<MultiPoly, 2> sub = {pow(x, a), pow(y, b)};
    const MultiPoly r_pulled = compose(r, sub);
    const std::array<MultiPoly, 2> want = {-(y * l2 * GaussianRational(long(a))),
                                           x * (MultiPoly::constant(2, 1) + r_pulled) * l1 * GaussianRational(long(b))};
    EXPECT_EQ(out.reduced, PolyForm::one_form(want));
    // d of the reduced form at the origin is (a l2 + b l1) dx ^ dy.
    const PolyForm d = ext_derivative(out.reduced);
    const std::array<std::size_t, 2> xy = {0, 1};
    const std::array<C, 2> origin = {0.0, 0.0};
    const C at0 = evaluate(d.coefficient(xy), std::span<const C>(origin));
    EXPECT_LT(std::abs(at0 - (l2 * GaussianRational(long(a)) + l1 * GaussianRational(long(b))).to_complex()), 1e-14);
    EXPECT_EQ(kupka_check(out.reduced, {0.0, 0.0}).kind, KupkaKind::kKupka);
  }
}

TEST(RamifiedPullback2d, IdentityWhenUnramified) {
  const RamifiedPullback out = ramified_pullback_2d(GaussianRational(1), GaussianRational(0, 1), 1, 1, MultiPoly(2));
  EXPECT_EQ(out.factor, MultiPoly::constant(2, 1));
  EXPECT_EQ(out.reduced, PolyForm::one_form(parse_one_form("-i*y dx + x dy", kXY)));
  EXPECT_EQ(code_of([] { ramified_pullback_2d(GaussianRational(1), GaussianRational(1), 0, 1, MultiPoly(2)); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([] { ramified_pullback_2d(GaussianRational(1), GaussianRational(1), 1, 1, MultiPoly(3)); }),
            ErrorCode::kArityMismatch);
}

}  // namespace
}  // namespace folia
