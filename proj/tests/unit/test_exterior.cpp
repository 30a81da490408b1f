#include <gtest/gtest.h>

#include <array>

#include "folia/error.hpp"
#include "folia/exterior.hpp"
#include "folia/parse.hpp"
#include "oracles.hpp"

namespace folia {
namespace {

using testing::Rng;

const VariableNames kXY = affine_names();
const VariableNames kProj = projective_names(2);

MultiPoly P(const char* text, const VariableNames& vars = kProj) { return parse_polynomial(text, vars); }
PolyForm d(std::size_t n, std::size_t j) { return PolyForm::differential(n, j); }
PolyForm fn(const MultiPoly& p) { return PolyForm::function(p); }

TEST(Wedge, Examples) {
  EXPECT_TRUE(wedge(d(2, 0), d(2, 0)).is_zero());
  EXPECT_EQ(wedge(d(2, 0), d(2, 1)), -wedge(d(2, 1), d(2, 0)));
  const PolyForm a = P("x", kXY) * d(2, 1), b = P("y", kXY) * d(2, 0);
  EXPECT_EQ(wedge(a, b), P("-x*y", kXY) * wedge(d(2, 0), d(2, 1)));
  EXPECT_THROW(wedge(d(2, 0), d(3, 0)), Error);
}

TEST(Wedge, GradedCommutativityAndAssociativity) {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    const unsigned ka = k % 3, kb = (k / 3) % 2 + 1;
    const PolyForm a = testing::random_form(rng, 4, ka, 2), b = testing::random_form(rng, 4, kb, 2),
                   c = testing::random_form(rng, 4, 1, 2);
    const PolyForm ba = wedge(b, a);
    EXPECT_EQ(wedge(a, b), (ka * kb) % 2 ? -ba : ba);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

TEST(Wedge, AboveTopDegreeIsZero) {
  const PolyForm top = wedge(wedge(d(3, 0), d(3, 1)), d(3, 2));
  EXPECT_EQ(top.degree(), 3u);
  EXPECT_TRUE(wedge(top, d(3, 1)).is_zero());
}

TEST(ExteriorDerivative, Examples) {
  EXPECT_EQ(ext_derivative(P("x", kXY) * d(2, 1)), wedge(d(2, 0), d(2, 1)));
  EXPECT_EQ(ext_derivative(fn(P("X^2*Y"))), P("2*X*Y") * d(3, 0) + P("X^2") * d(3, 1));
}

TEST(ExteriorDerivative, ThreeLineFormAgainstHandExpansion) {
  const MultiPoly a = P("X - Y"), b = P("Y - Z"), c = P("Z - X");
  const std::vector<MultiPoly> coeffs = {P("Y*Z") * a, P("X*Z") * b, P("X*Y") * c};
  const PolyForm omega = PolyForm::one_form(coeffs);
  const PolyForm got = ext_derivative(omega);
  const auto hand = testing::hand_exterior_derivative(coeffs);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const std::array<std::size_t, 2> idx = {i, j};
      EXPECT_EQ(got.coefficient(idx), hand[i][j]);
    }
  }
  // Written out by hand: d(YZ(X - Y)) etc.
  const std::array<std::size_t, 2> i01 = {0, 1};
  EXPECT_EQ(got.coefficient(i01), P("Z*(Y - Z)") - P("X*Z - 2*Y*Z"));
}

TEST(ExteriorDerivative, SquaresToZero) {
  Rng rng(32);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + k % 2;
    const PolyForm a = testing::random_form(rng, n, k % 3, 4);
    EXPECT_TRUE(ext_derivative(ext_derivative(a)).is_zero());
  }
}

TEST(ExteriorDerivative, Antiderivation) {
  Rng rng(33);
  for (int k = 0; k < 30; ++k) {
    const unsigned ka = k % 2;
    const PolyForm a = testing::random_form(rng, 3, ka, 3), b = testing::random_form(rng, 3, 1, 3);
    const PolyForm rhs = wedge(ext_derivative(a), b) + (ka % 2 ? -wedge(a, ext_derivative(b))
                                                                 : wedge(a, ext_derivative(b)));
    EXPECT_EQ(ext_derivative(wedge(a, b)), rhs);
  }
}

TEST(InteriorProduct, Examples) {
  const PolyField radial = PolyField::radial(3);
  EXPECT_EQ(interior_product(radial, wedge(d(3, 0), d(3, 1))), P("X") * d(3, 1) - P("Y") * d(3, 0));
  EXPECT_TRUE(interior_product(radial, fn(P("X"))).is_zero());
  EXPECT_EQ(interior_product(radial, fn(P("X"))).degree(), 0u);
  EXPECT_THROW(interior_product(PolyField::radial(2), d(3, 0)), Error);

  // i_R of a three-line form is XYZ(A + B + C), which is zero.
  const MultiPoly a = P("X + 2*Y"), b = P("i*Z - Y");
  const std::vector<MultiPoly> coeffs = {P("Y*Z") * a, P("X*Z") * b, P("X*Y") * (-a - b)};
  EXPECT_TRUE(interior_product(radial, PolyForm::one_form(coeffs)).is_zero());
}

TEST(InteriorProduct, VolumeFormSignConvention) {
  const PolyForm vol = wedge(wedge(d(3, 0), d(3, 1)), d(3, 2));
  const PolyField z({P("X^2"), P("Y + Z"), P("i")});
  const std::array<std::size_t, 2> i12 = {1, 2}, i02 = {0, 2}, i01 = {0, 1};
  const PolyForm got = interior_product(z, vol);
  EXPECT_EQ(got.coefficient(i12), z[0]);
  EXPECT_EQ(got.coefficient(i02), -z[1]);
  EXPECT_EQ(got.coefficient(i01), z[2]);
}

TEST(InteriorProduct, TwiceIsZero) {
  Rng rng(34);
  for (int k = 0; k < 50; ++k) {
    const PolyField v = testing::random_field(rng, 4);
    const PolyForm a = testing::random_form(rng, 4, 2 + k % 2, 2);
    EXPECT_TRUE(interior_product(v, interior_product(v, a)).is_zero());
  }
}

TEST(InteriorProduct, IsAnAntiderivation) {
  Rng rng(35);
  for (int k = 0; k < 50; ++k) {
    const unsigned ka = 1 + k % 2;
    const PolyField v = testing::random_field(rng, 3);
    const PolyForm a = testing::random_form(rng, 3, ka, 2), b = testing::random_form(rng, 3, 1, 2);
    const PolyForm second = wedge(a, interior_product(v, b));
    EXPECT_EQ(interior_product(v, wedge(a, b)),
              wedge(interior_product(v, a), b) + (ka % 2 ? -second : second));
  }
}

TEST(LieDerivative, Examples) {
  EXPECT_EQ(lie_derivative(PolyField::radial(3), d(3, 0)), d(3, 0));
  EXPECT_EQ(lie_derivative(PolyField::radial(3), fn(P("X*Y^2"))), fn(P("3*X*Y^2")));
}

TEST(LieDerivative, CartanAgreesWithComponentFormula) {
  Rng rng(36);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + k % 2;
    const PolyField v = testing::random_field(rng, n);
    const PolyForm a = testing::random_form(rng, n, k % 4 == 3 ? 3 : k % 3, 3);
    EXPECT_EQ(lie_derivative(v, a), lie_derivative_cartan(v, a));
  }
}

TEST(LieDerivative, IsADerivationOfTheWedge) {
  Rng rng(37);
  for (int k = 0; k < 30; ++k) {
    const PolyField v = testing::random_field(rng, 3);
    const PolyForm a = testing::random_form(rng, 3, k % 2, 2), b = testing::random_form(rng, 3, 1, 2);
    EXPECT_EQ(lie_derivative(v, wedge(a, b)), wedge(lie_derivative(v, a), b) + wedge(a, lie_derivative(v, b)));
  }
}

TEST(LieBracket, Examples) {
  EXPECT_EQ(lie_bracket(PolyField::radial(3), PolyField::radial(3)), PolyField::zero(3));
  const PolyField dx = PolyField::coordinate(2, 0);
  const PolyField x_dx({P("x", kXY), MultiPoly(2)});
  EXPECT_EQ(lie_bracket(dx, x_dx), dx);
  EXPECT_THROW(lie_bracket(dx, PolyField::radial(3)), Error);
}

TEST(LieBracket, AntisymmetryAndJacobi) {
  Rng rng(38);
  for (int k = 0; k < 20; ++k) {
    const PolyField u = testing::random_field(rng, 3), v = testing::random_field(rng, 3),
                    w = testing::random_field(rng, 3);
    EXPECT_EQ(lie_bracket(u, v), GaussianRational(-1) * lie_bracket(v, u));
    EXPECT_EQ(lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u)) +
                  lie_bracket(w, lie_bracket(u, v)),
              PolyField::zero(3));
  }
}

TEST(Pullback, CornerFormUnderSquareCube) {
  // lambda1 u dv - lambda2 v du with symbolic lambdas replaced by 5 and 7i.
  const GaussianRational l1(5), l2(0, 7);
  const std::array<MultiPoly, 2> omega = {P("-y", kXY) * l2, P("x", kXY) * l1};
  const std::array<MultiPoly, 2> map = {P("x^2", kXY), P("y^3", kXY)};
  const PolyForm got = pullback_form(map, PolyForm::one_form(omega));
  const MultiPoly factor = P("x*y^2", kXY);
  const std::array<MultiPoly, 2> want = {factor * P("-2*y", kXY) * l2, factor * P("3*x", kXY) * l1};
  EXPECT_EQ(got, PolyForm::one_form(want));
}

TEST(Pullback, IdentityMap) {
  Rng rng(39);
  const std::array<MultiPoly, 3> id = {MultiPoly::variable(3, 0), MultiPoly::variable(3, 1), MultiPoly::variable(3, 2)};
  for (int k = 0; k < 10; ++k) {
    const PolyForm a = testing::random_form(rng, 3, k % 4, 3);
    EXPECT_EQ(pullback_form(id, a), a);
  }
}

TEST(Pullback, CommutesWithDAndWedge) {
  Rng rng(40);
  for (int k = 0; k < 50; ++k) {
    std::array<MultiPoly, 3> map;
    for (auto& m : map) m = testing::random_poly(rng, 2 + k % 2, 2, 3);
    const PolyForm a = testing::random_form(rng, 3, k % 2, 2), b = testing::random_form(rng, 3, 1, 2);
    EXPECT_EQ(pullback_form(map, ext_derivative(a)), ext_derivative(pullback_form(map, a)));
    EXPECT_EQ(pullback_form(map, wedge(a, b)), wedge(pullback_form(map, a), pullback_form(map, b)));
  }
}

TEST(Pullback, ArityMismatch) {
  const std::array<MultiPoly, 2> map = {P("x", kXY), P("y", kXY)};
  EXPECT_THROW(pullback_form(map, d(3, 0)), Error);
}

TEST(Forms, MonomialContent) {
  const std::array<MultiPoly, 2> c = {P("x^2*y", kXY), P("x*y^3", kXY)};
  const PolyForm f = PolyForm::one_form(c);
  EXPECT_EQ(monomial_content(f), (Exponents{1, 1}));
  const std::array<MultiPoly, 2> r = {P("x", kXY), P("y^2", kXY)};
  EXPECT_EQ(divide_by_monomial(f, {1, 1}), PolyForm::one_form(r));
}

}  // namespace
}  // namespace folia
