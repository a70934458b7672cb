#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "contactlab/errors.hpp"
#include "contactlab/jet.hpp"
#include "oracles.hpp"

namespace contactlab {
namespace {

Jet random_jet(std::mt19937_64& rng, int dim, int order, double c0 = 0.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet j = Jet::constant(c0 + u(rng), dim, order);
  // Build a random polynomial so coefficients are arbitrary.
  for (int v = 0; v < dim; ++v) {
    const Jet x = Jet::variable(0.0, v, dim, order);
    j += u(rng) * x + u(rng) * x * x + u(rng) * x * x * x;
  }
  if (dim > 1) j += u(rng) * Jet::variable(0.0, 0, dim, order) * Jet::variable(0.0, 1, dim, order);
  return j;
}

double max_diff(const Jet& a, const Jet& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    m = std::max(m, std::abs(a.coeffs()[k] - b.coeffs()[k]));
  }
  return m;
}

TEST(JetLayout, GradedPrefixAndSize) {
  const auto l = JetLayout::get(5, 3);
  EXPECT_EQ(l->size(), 56u);
  EXPECT_EQ(l->prefix_size(2), JetLayout::get(5, 2)->size());
  for (std::size_t k = 0; k < l->prefix_size(2); ++k) {
    EXPECT_EQ(l->index(k), JetLayout::get(5, 2)->index(k));
  }
  for (std::size_t k = 0; k < l->size(); ++k) {
    EXPECT_LE(l->degree(k), 3);
    EXPECT_EQ(l->index(k).size(), 5u);
  }
  EXPECT_EQ(JetLayout::get(3, 3).get(), JetLayout::get(3, 3).get());
}

TEST(JetLift, CoordinateSeeds) {
  const Jet a = Jet::variable(2.0, 0, 3, 3);
  EXPECT_EQ(a.coeff(MultiIndex{0, 0, 0}), 2.0);
  EXPECT_EQ(a.coeff(MultiIndex{1, 0, 0}), 1.0);
  EXPECT_EQ(a.coeff(MultiIndex{0, 1, 0}), 0.0);
  EXPECT_EQ(a.coeff(MultiIndex{2, 0, 0}), 0.0);

  const Jet b = Jet::variable(0.0, 2, 3, 3);
  EXPECT_EQ(b.value(), 0.0);
  EXPECT_EQ(b.coeff(MultiIndex{0, 0, 1}), 1.0);

  const Jet c = Jet::variable(-1.5, 1, 2, 2);
  EXPECT_EQ(c.coeff(MultiIndex{0, 0}), -1.5);
  EXPECT_EQ(c.coeff(MultiIndex{0, 1}), 1.0);
  EXPECT_EQ(c.coeff(MultiIndex{1, 0}), 0.0);
}

TEST(JetArith, Examples) {
  const Jet x = Jet::variable(3.0, 0, 1, 2);
  const Jet sq = x * x;
  EXPECT_EQ(sq.coeff(MultiIndex{0}), 9.0);
  EXPECT_EQ(sq.coeff(MultiIndex{1}), 6.0);
  EXPECT_EQ(sq.coeff(MultiIndex{2}), 1.0);

  const Jet s = arith(ArithOp::add, Jet::variable(0.0, 0, 1, 2), Jet::constant(1.0, 1, 2));
  EXPECT_EQ(s.coeff(MultiIndex{0}), 1.0);
  EXPECT_EQ(s.coeff(MultiIndex{1}), 1.0);
  EXPECT_EQ(s.coeff(MultiIndex{2}), 0.0);

  // 1 / e^{2z} = e^{-2z}: Taylor coefficients (-2)^k / k!.
  const Jet z = Jet::variable(0.0, 0, 1, 3);
  const Jet inv = arith(ArithOp::div, Jet::constant(1.0, 1, 3), exp(2.0 * z));
  const double expected[] = {1.0, -2.0, 2.0, -4.0 / 3.0};
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(inv.coeff(MultiIndex{k}), expected[k], 1e-15) << k;
}

TEST(JetApply, Examples) {
  const Jet z = Jet::variable(0.0, 0, 1, 3);
  const Jet e2 = exp(2.0 * z);
  const double expected[] = {1.0, 2.0, 2.0, 4.0 / 3.0};
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(e2.coeff(MultiIndex{k}), expected[k], 1e-15);

  const Jet r = sqrt(Jet::constant(4.0, 2, 3));
  EXPECT_EQ(r.value(), 2.0);
  EXPECT_TRUE(r.is_constant());

  const Jet s = sin(z);
  EXPECT_NEAR(s.coeff(MultiIndex{0}), 0.0, 1e-16);
  EXPECT_NEAR(s.coeff(MultiIndex{1}), 1.0, 1e-16);
  EXPECT_NEAR(s.coeff(MultiIndex{2}), 0.0, 1e-16);
  EXPECT_NEAR(s.coeff(MultiIndex{3}), -1.0 / 6.0, 1e-16);
}

TEST(JetApply, AgreesWithAnalyticTaylor) {
  const double p = 0.3;
  const Jet x = Jet::variable(p, 0, 1, 4);
  struct Case {
    UnaryFn fn;
    std::vector<double> derivs;  // f, f', f'', f''', f'''' at p
  };
  const double ch = std::cosh(p), sh = std::sinh(p), th = std::tanh(p);
  const double s2 = 1 - th * th;
  const std::vector<Case> cases = {
      {UnaryFn::exp, {std::exp(p), std::exp(p), std::exp(p), std::exp(p), std::exp(p)}},
      {UnaryFn::ln, {std::log(p), 1 / p, -1 / (p * p), 2 / (p * p * p), -6 / std::pow(p, 4)}},
      {UnaryFn::sin, {std::sin(p), std::cos(p), -std::sin(p), -std::cos(p), std::sin(p)}},
      {UnaryFn::cos, {std::cos(p), -std::sin(p), -std::cos(p), std::sin(p), std::cos(p)}},
      {UnaryFn::sinh, {sh, ch, sh, ch, sh}},
      {UnaryFn::cosh, {ch, sh, ch, sh, ch}},
      {UnaryFn::tanh,
       {th, s2, -2 * th * s2, -2 * s2 * s2 + 4 * th * th * s2,
        16 * th * s2 * s2 - 8 * th * th * th * s2}},
      {UnaryFn::sqrt,
       {std::sqrt(p), 0.5 / std::sqrt(p), -0.25 * std::pow(p, -1.5), 0.375 * std::pow(p, -2.5),
        -0.9375 * std::pow(p, -3.5)}},
  };
  for (const auto& c : cases) {
    const Jet j = apply(c.fn, x);
    for (int k = 0; k <= 4; ++k) {
      EXPECT_NEAR(j.partial(MultiIndex{k}), c.derivs[k], 1e-12 * std::max(1.0, std::abs(c.derivs[k])))
          << function_name(c.fn) << " order " << k;
    }
  }
}

TEST(JetPartial, Examples) {
  const Jet z = Jet::variable(0.0, 0, 1, 3);
  EXPECT_NEAR(exp(2.0 * z).partial(MultiIndex{3}), 8.0, 1e-14);

  std::mt19937_64 rng(5);
  const Jet r = random_jet(rng, 3, 3);
  EXPECT_EQ(r.partial(MultiIndex{0, 0, 0}), r.value());

  const Jet xy = Jet::variable(1.0, 0, 2, 3) * Jet::variable(1.0, 1, 2, 3);
  EXPECT_EQ(xy.partial(MultiIndex{1, 1}), 1.0);
  EXPECT_EQ(xy.partial(0, 1), 1.0);
}

TEST(JetPartial, BeyondOrderThrows) {
  const Jet x = Jet::variable(1.0, 0, 2, 2);
  EXPECT_THROW(x.partial(MultiIndex{3, 0}), OrderError);
  EXPECT_THROW(x.coeff(MultiIndex{1}), OrderError);
}

TEST(JetDerivative, LowersOrder) {
  // f = x^2 y + y^3 at (1, 2)
  const Jet x = Jet::variable(1.0, 0, 2, 3);
  const Jet y = Jet::variable(2.0, 1, 2, 3);
  const Jet f = x * x * y + y * y * y;
  const Jet fy = f.derivative(1);
  EXPECT_EQ(fy.order(), 2);
  EXPECT_NEAR(fy.value(), 1.0 + 12.0, 1e-14);
  EXPECT_NEAR(fy.partial(0), 2.0, 1e-14);
  EXPECT_NEAR(fy.partial(1, 1), 6.0, 1e-14);
  EXPECT_EQ(f.truncated(1).order(), 1);
  EXPECT_EQ(f.truncated(1).partial(0), f.partial(0));
}

TEST(JetProperties, PolynomialPartialsExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), p = u(rng), q = u(rng);
    const Jet x = Jet::variable(p, 0, 2, 3);
    const Jet y = Jet::variable(q, 1, 2, 3);
    // f = a x^3 + b x y^2 + c y
    const Jet f = a * x * x * x + b * x * y * y + c * y;
    const double tol = 1e-12;
    EXPECT_NEAR(f.partial(MultiIndex{1, 0}), 3 * a * p * p + b * q * q, tol * 10);
    EXPECT_NEAR(f.partial(MultiIndex{0, 1}), 2 * b * p * q + c, tol * 10);
    EXPECT_NEAR(f.partial(MultiIndex{2, 0}), 6 * a * p, tol * 10);
    EXPECT_NEAR(f.partial(MultiIndex{1, 1}), 2 * b * q, tol * 10);
    EXPECT_NEAR(f.partial(MultiIndex{0, 2}), 2 * b * p, tol * 10);
    EXPECT_NEAR(f.partial(MultiIndex{3, 0}), 6 * a, tol * 10);
    EXPECT_NEAR(f.partial(MultiIndex{1, 2}), 2 * b, tol * 10);
    EXPECT_NEAR(f.partial(MultiIndex{0, 3}), 0.0, tol);
  }
}

TEST(JetProperties, SmoothCompositionsMatchFiniteDifferences) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng);
    const std::vector<double> p = {u(rng), u(rng)};
    oracle::Field f = [a, b](std::span<const double> v) {
      return std::exp(a * v[0]) * std::sin(v[1] + b * v[0] * v[1]);
    };
    const Jet x = Jet::variable(p[0], 0, 2, 3);
    const Jet y = Jet::variable(p[1], 1, 2, 3);
    const Jet j = exp(a * x) * sin(y + b * x * y);
    for (int i = 0; i < 2; ++i) {
      const double fd = oracle::d1(f, p, i);
      EXPECT_NEAR(j.partial(i), fd, 1e-5 * std::max(1.0, std::abs(fd)));
      for (int k = 0; k < 2; ++k) {
        const double fd2 = oracle::d2(f, p, i, k);
        EXPECT_NEAR(j.partial(i, k), fd2, 1e-5 * std::max(1.0, std::abs(fd2)));
      }
      // third derivative along i: difference of analytic second partials
      oracle::Field g = [&](std::span<const double> v) {
        const Jet xx = Jet::variable(v[0], 0, 2, 2);
        const Jet yy = Jet::variable(v[1], 1, 2, 2);
        return (exp(a * xx) * sin(yy + b * xx * yy)).partial(i, i);
      };
      MultiIndex alpha = {0, 0};
      alpha[i] = 3;
      const double fd3 = oracle::d1(g, p, i);
      EXPECT_NEAR(j.partial(alpha), fd3, 1e-3 * std::max(1.0, std::abs(fd3)));
    }
  }
}

TEST(JetProperties, RingLaws) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Jet a = random_jet(rng, 3, 3);
    const Jet b = random_jet(rng, 3, 3);
    const Jet c = random_jet(rng, 3, 3);
    EXPECT_LE(max_diff(a + b, b + a), 1e-14);
    EXPECT_LE(max_diff(a * b, b * a), 1e-14);
    EXPECT_LE(max_diff((a + b) + c, a + (b + c)), 1e-14);
    EXPECT_LE(max_diff((a * b) * c, a * (b * c)), 1e-13);
    EXPECT_LE(max_diff(a * (b + c), a * b + a * c), 1e-13);
  }
}

TEST(JetProperties, DivisionInvertsMultiplication) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Jet a = random_jet(rng, 3, 3);
    const Jet b = random_jet(rng, 3, 3, 3.0);  // constant term in [2, 4]
    EXPECT_LE(max_diff((a * b) / b, a), 1e-12);
  }
}

TEST(JetErrors, ShapeAndDomain) {
  EXPECT_THROW(Jet::variable(0, 0, 2, 3) + Jet::variable(0, 0, 3, 3), ShapeError);
  EXPECT_THROW(Jet::variable(0, 0, 2, 3) * Jet::variable(0, 0, 2, 2), ShapeError);
  EXPECT_THROW(log(Jet::constant(-1.0, 1, 2)), DomainError);
  EXPECT_THROW(sqrt(Jet::constant(0.0, 1, 2)), DomainError);
  EXPECT_THROW(Jet::constant(1.0, 1, 2) / Jet::constant(0.0, 1, 2), DomainError);
  EXPECT_THROW(pow(Jet::constant(-2.0, 1, 2), 0.5), DomainError);
}

TEST(JetPow, IntegerAndRealExponents) {
  const Jet x = Jet::variable(-2.0, 0, 1, 3);
  const Jet c = pow(x, 3);
  EXPECT_NEAR(c.partial(MultiIndex{0}), -8.0, 1e-14);
  EXPECT_NEAR(c.partial(MultiIndex{1}), 12.0, 1e-14);
  EXPECT_NEAR(c.partial(MultiIndex{2}), -12.0, 1e-14);
  EXPECT_NEAR(c.partial(MultiIndex{3}), 6.0, 1e-14);
  const Jet inv = pow(x, -2);
  EXPECT_NEAR(inv.partial(MultiIndex{1}), -2.0 * std::pow(-2.0, -3), 1e-14);

  const Jet y = Jet::variable(4.0, 0, 1, 2);
  const Jet h = pow(y, 1.5);
  EXPECT_NEAR(h.value(), 8.0, 1e-14);
  EXPECT_NEAR(h.partial(MultiIndex{1}), 1.5 * 2.0, 1e-14);
  EXPECT_NEAR(h.partial(MultiIndex{2}), 0.75 / 2.0, 1e-14);
}

}  // namespace
}  // namespace contactlab
