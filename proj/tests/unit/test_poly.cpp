#include <gtest/gtest.h>

#include <array>

#include "folia/error.hpp"
#include "folia/parse.hpp"
#include "folia/poly.hpp"
#include "oracles.hpp"

namespace folia {
namespace {

using testing::Rng;

MultiPoly P(const char* text, const VariableNames& vars) { return parse_polynomial(text, vars); }

const VariableNames kXYZ = {"X", "Y", "Z"};
const VariableNames kProj = projective_names(2);
const VariableNames kZ4 = projective_names(3);

// Small random bivariate polynomial of positive degree in y.
MultiPoly bivariate(Rng& rng, unsigned max_y) {
  std::uniform_int_distribution<unsigned> dy(1, max_y);
  MultiPoly p = testing::random_poly(rng, 2, 2, 3);
  Exponents lead = {0, dy(rng)};
  p.add_term(lead, testing::small_scalar(rng));
  return p;
}

TEST(Poly, ZeroCoefficientsAreNeverStored) {
  MultiPoly p = P("X + Y", kXYZ);
  p.add_term({1, 0, 0}, GaussianRational(-1));
  EXPECT_EQ(p, P("Y", kXYZ));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).total_degree(), -1);
}

TEST(Poly, GrlexOrderPutsHigherDegreeFirst) {
  const MultiPoly p = P("Y + X^2 + X*Y + 1", kXYZ);
  std::vector<Exponents> order;
  for (const auto& [e, c] : p.terms()) order.push_back(e);
  const std::vector<Exponents> want = {{2, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}};
  EXPECT_EQ(order, want);
}

TEST(Poly, Homogeneity) {
  EXPECT_TRUE(P("X^2 - Y*Z", kProj).is_homogeneous());
  EXPECT_FALSE(P("X^2 - Y", kProj).is_homogeneous());
  EXPECT_TRUE(MultiPoly(3).is_homogeneous());
}

TEST(Poly, DifferentiateExamples) {
  EXPECT_EQ(differentiate(P("X^2*Y + (1 - i)*Z", kXYZ), 0), P("2*X*Y", kXYZ));
  EXPECT_EQ(differentiate(P("X*Y*Z", kProj), 0), P("Y*Z", kProj));
  EXPECT_EQ(differentiate(P("z0^6 + z3^6", kZ4), 0), P("6*z0^5", kZ4));
  EXPECT_THROW(differentiate(P("X", kXYZ), 3), Error);
}

TEST(Poly, ComposeExamples) {
  const std::array<MultiPoly, 3> squares = {P("X^2", kXYZ), P("Y^2", kXYZ), P("Z^2", kXYZ)};
  EXPECT_EQ(compose(P("X + Y + Z", kProj), squares), P("X^2 + Y^2 + Z^2", kXYZ));

  const std::array<MultiPoly, 4> fermat = {P("z0^6 - z3^6", kZ4), P("z1^4 - z3^4", kZ4), P("z2^3 - z3^3", kZ4),
                                           MultiPoly(4)};
  const std::array<MultiPoly, 3> powers = {pow(fermat[0], 2), pow(fermat[1], 3), pow(fermat[2], 4)};
  const MultiPoly a = compose(P("X - Y", kProj), powers);
  EXPECT_TRUE(a.is_homogeneous());
  EXPECT_EQ(a.total_degree(), 12);

  const std::array<MultiPoly, 3> ids = {MultiPoly::variable(3, 0), MultiPoly::variable(3, 1), MultiPoly::variable(3, 2)};
  const MultiPoly p = P("X^3 - 2*i*X*Y*Z + 5/3", kProj);
  EXPECT_EQ(compose(p, ids), p);
  const std::array<MultiPoly, 2> short_args = {ids[0], ids[1]};
  EXPECT_THROW(compose(p, short_args), Error);
}

TEST(Poly, ComposeOfHomogeneousIsHomogeneous) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const MultiPoly p = testing::random_homogeneous(rng, 3, 3);
    std::array<MultiPoly, 3> args;
    for (auto& a : args) a = testing::random_homogeneous(rng, 2, 2);
    const MultiPoly c = compose(p, args);
    EXPECT_TRUE(c.is_homogeneous());
    if (!c.is_zero()) EXPECT_EQ(c.total_degree(), 6);
  }
}

TEST(Poly, RingAxioms) {
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const MultiPoly a = testing::random_poly(rng, 3, 3), b = testing::random_poly(rng, 3, 3),
                    c = testing::random_poly(rng, 3, 3);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * MultiPoly::constant(3, 1), a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Poly, LeibnizRule) {
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const MultiPoly p = testing::random_poly(rng, 3, 4), q = testing::random_poly(rng, 3, 4);
    const std::size_t v = k % 3;
    EXPECT_EQ(differentiate(p * q, v), p * differentiate(q, v) + q * differentiate(p, v));
  }
}

TEST(Poly, ChainRule) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const MultiPoly p = testing::random_poly(rng, 3, 3);
    std::array<MultiPoly, 3> f;
    for (auto& c : f) c = testing::random_poly(rng, 2, 2);
    const std::size_t v = k % 2;
    MultiPoly rhs(2);
    for (std::size_t j = 0; j < 3; ++j) rhs += compose(differentiate(p, j), f) * differentiate(f[j], v);
    EXPECT_EQ(differentiate(compose(p, f), v), rhs);
  }
}

TEST(Poly, ExponentOverflowIsChecked) {
  const MultiPoly x = MultiPoly::monomial({0xFFFFFFF0u}, 1);
  try {
    (void)(x * x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kExponentOverflow);
  }
}

TEST(Poly, EvaluateExamples) {
  const VariableNames xv = {"x"};
  const std::array<GaussianRational, 1> at_i = {GaussianRational::i()};
  EXPECT_TRUE(evaluate(P("x^2 + 1", xv), at_i).is_zero());

  // XYZ(A + B + C) with C = -A - B vanishes everywhere.
  const MultiPoly a = P("X - 2*Y", kProj), b = P("i*Z + Y", kProj);
  const MultiPoly forced = P("X*Y*Z", kProj) * (a + b + (-a - b));
  const std::array<std::complex<double>, 3> pt = {{{0.3, 1.0}, {-2.0, 0.5}, {1.0, 0.0}}};
  EXPECT_EQ(evaluate(forced, std::span<const std::complex<double>>(pt)), std::complex<double>(0.0));
}

TEST(Poly, ComposeThenEvaluateMatchesEvaluateThenCompose) {
  Rng rng(4);
  const std::array<MultiPoly, 3> f = {P("z0^6 - z3^6", kZ4), P("z1^4 - z3^4", kZ4), P("z2^3 - z3^3", kZ4)};
  const std::array<MultiPoly, 3> powers = {pow(f[0], 2), pow(f[1], 3), pow(f[2], 4)};
  const MultiPoly a = P("X - Y", kProj);
  for (int k = 0; k < 10; ++k) {
    std::array<GaussianRational, 4> pt;
    for (auto& c : pt) c = testing::small_scalar(rng, true);
    std::array<GaussianRational, 3> image;
    for (std::size_t j = 0; j < 3; ++j) image[j] = evaluate(powers[j], pt);
    EXPECT_EQ(evaluate(compose(a, powers), pt), evaluate(a, image));
  }
}

TEST(Poly, BoundedEvaluationCoversTheError) {
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const MultiPoly p = testing::random_poly(rng, 3, 6, 8);
    std::array<GaussianRational, 3> exact;
    std::array<std::complex<double>, 3> approx;
    for (std::size_t j = 0; j < 3; ++j) {
      // Dyadic rationals are exact doubles.
      std::uniform_int_distribution<long> num(-64, 64);
      exact[j] = GaussianRational(mpq_class(num(rng), 32), mpq_class(num(rng), 32));
      approx[j] = exact[j].to_complex();
    }
    const auto b = evaluate_bounded(p, std::span<const std::complex<double>>(approx));
    const std::complex<double> truth = evaluate(p, exact).to_complex();
    EXPECT_LE(std::abs(b.value - truth), b.error_bound + 1e-300);
  }
}

TEST(Poly, DivideExact) {
  const MultiPoly p = P("X^2 - Y^2", kXYZ), q = P("X + Y", kXYZ);
  ASSERT_TRUE(divide_exact(p, q).has_value());
  EXPECT_EQ(*divide_exact(p, q), P("X - Y", kXYZ));
  EXPECT_FALSE(divide_exact(p, P("X + 2*Y", kXYZ)).has_value());
  Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    const MultiPoly a = testing::random_poly(rng, 3, 3), b = testing::random_poly(rng, 3, 2);
    if (b.is_zero()) continue;
    const auto d = divide_exact(a * b, b);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, a);
  }
}

TEST(Poly, MonomialContentAndHomogenize) {
  const MultiPoly p = P("X^2*Y^3 + X^3*Y*Z", kXYZ);
  const Exponents c = monomial_content(p);
  EXPECT_EQ(c, (Exponents{2, 1, 0}));
  EXPECT_EQ(divide_by_monomial(p, c), P("Y^2 + X*Z", kXYZ));
  const MultiPoly h = homogenize(P("x^2 + y + 1", {"x", "y"}), 2, 2);
  EXPECT_EQ(h, P("X^2 + Y*Z + Z^2", kProj));
}

TEST(Resultant, SpecExamples) {
  const VariableNames xy = {"x", "y"};
  EXPECT_EQ(resultant(P("y^2 - x", xy), P("y - x", xy), 1), P("x^2 - x", xy));
  EXPECT_EQ(resultant(P("y - 1", xy), P("y + 1", xy), 1), MultiPoly::constant(2, 2));
  const MultiPoly p = P("x*y^2 + i*y - 3", xy);
  EXPECT_TRUE(resultant(p, p, 1).is_zero());
}

TEST(Resultant, Errors) {
  const VariableNames xy = {"x", "y"};
  try {
    (void)resultant(MultiPoly(2), P("y", xy), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroInput);
  }
  try {
    (void)resultant(P("x + 1", xy), P("y", xy), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegreeZero);
  }
}

TEST(Resultant, MatchesLeibnizExpansion) {
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const MultiPoly p = bivariate(rng, 3), q = bivariate(rng, 3);
    EXPECT_EQ(resultant(p, q, 1), testing::brute_force_resultant(p, q, 1)) << to_string(p) << " | " << to_string(q);
  }
}

TEST(Resultant, VanishesIffCommonRoot) {
  Rng rng(9);
  const VariableNames xy = {"x", "y"};
  for (int k = 0; k < 50; ++k) {
    MultiPoly p = bivariate(rng, 2), q = bivariate(rng, 2);
    if (k % 2 == 0) {
      const MultiPoly shared = bivariate(rng, 1);
      p *= shared;
      q *= shared;
    }
    const bool zero = resultant(p, q, 1).is_zero();
    // Brute force: at a few sample x values, do p(x, .) and q(x, .) share a root?
    bool all_share = true;
    for (long x0 : {3L, -5L, 7L}) {
      const MultiPoly pr = substitute(p, 0, GaussianRational(x0));
      const MultiPoly qr = substitute(q, 0, GaussianRational(x0));
      const auto rp = testing::durand_kerner(univariate_coefficients(pr, 1));
      const auto rq = testing::durand_kerner(univariate_coefficients(qr, 1));
      bool share = false;
      for (const auto& a : rp) {
        for (const auto& b : rq) share = share || std::abs(a - b) < 1e-6 * std::max(1.0, std::abs(a));
      }
      all_share = all_share && share;
    }
    EXPECT_EQ(zero, all_share) << to_string(p, xy) << " | " << to_string(q, xy);
  }
}

TEST(Resultant, AcceptsExtraVariables) {
  Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    MultiPoly p = testing::random_poly(rng, 3, 2, 3), q = testing::random_poly(rng, 3, 2, 3);
    p.add_term({0, 0, 2}, 1);
    q.add_term({0, 1, 1}, 1);
    EXPECT_EQ(resultant(p, q, 2), testing::brute_force_resultant(p, q, 2));
  }
}

}  // namespace
}  // namespace folia
