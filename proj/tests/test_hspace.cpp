#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "common.hpp"

using namespace dlab;
using dlab::testkit::sieve;
using dlab::testkit::weights;

namespace {

DirichletPolynomial random_polynomial(std::mt19937_64& rng, std::uint64_t N, const WeightSequence& w) {
  std::normal_distribution<double> g(0.0, 1.0);
  DirichletPolynomial F(N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (w[n] > 0.0) F.set(n, {g(rng), g(rng)});
  }
  return F;
}

}  // namespace

TEST(DirichletPolynomial, Construction) {
  EXPECT_THROW(DirichletPolynomial(0), InvalidArgument);
  DirichletPolynomial F(3);
  EXPECT_THROW(F.set(4, 1.0), RangeError);
  EXPECT_THROW(F.set(0, 1.0), RangeError);
  EXPECT_THROW(F.set(1, {std::nan(""), 0.0}), InvalidArgument);
  const auto G = DirichletPolynomial::from_coefficients({1.0, 2.0, 0.0});
  EXPECT_EQ(G.limit(), 3u);
  EXPECT_EQ(G[2], cplx(2.0, 0.0));
}

TEST(HwNorm, Examples) {
  const auto& t = sieve(100);
  const auto one = catalog("constant", {}, 20, t);
  const auto d = catalog("divisor", {}, 20, t);
  DirichletPolynomial single(20);
  single.set(7, 1.0);
  EXPECT_DOUBLE_EQ(hw_norm(single, d), 1.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(hw_norm(DirichletPolynomial::from_coefficients({1.0, 1.0, 1.0}), one), std::sqrt(3.0));
  DirichletPolynomial twelve(12);
  twelve.set(12, 1.0);
  EXPECT_DOUBLE_EQ(hw_norm(twelve, d), 1.0 / std::sqrt(6.0));
}

TEST(HwNorm, MembershipViolation) {
  const auto primes = catalog("prime_indicator", {}, 20, sieve(100));
  DirichletPolynomial F(20);
  F.set(3, 1.0);
  EXPECT_NO_THROW(hw_norm(F, primes));
  F.set(4, 1.0);
  EXPECT_THROW(hw_norm(F, primes), MembershipError);
  EXPECT_THROW(hw_norm(DirichletPolynomial(21), primes), RangeError);
}

TEST(Evaluate, Examples) {
  const DirichletPolynomial one = DirichletPolynomial::from_coefficients({1.0});
  EXPECT_EQ(evaluate(one, {3.0, -7.0}), cplx(1.0, 0.0));
  const auto N = 100'000u;
  const auto F = DirichletPolynomial::from_coefficients(std::vector<cplx>(N, 1.0));
  // Euler-Maclaurin: zeta(2) - sum_{n <= N} n^{-2} = 1/N - 1/(2N^2) + ...
  EXPECT_NEAR(evaluate(F, {2.0, 0.0}).real(), zeta(2.0) - 1.0 / N + 0.5 / (double(N) * N), 1e-13);
  const auto two = DirichletPolynomial::from_coefficients({0.0, 1.0});
  for (double t : {0.3, 5.0, 100.0}) {
    const cplx v = evaluate(two, {0.0, t});
    EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
    EXPECT_NEAR(std::arg(v), std::remainder(-t * std::log(2.0), 2.0 * std::numbers::pi), 1e-12);
  }
}

TEST(Kernel, ConstantWeightsGiveTruncatedZeta) {
  const auto& w = weights("constant", {}, 1000);
  const auto k = hw_kernel(w, {0.7, 0.0}, 1000);
  for (std::uint64_t n = 1; n <= 1000; ++n) EXPECT_NEAR(k[n].real(), std::pow(double(n), -0.7), 1e-15);
  // evaluates as a partial sum of zeta(s + 0.7)
  const cplx direct = evaluate(DirichletPolynomial::from_coefficients(std::vector<cplx>(1000, 1.0)), {2.0, 1.0});
  EXPECT_LE(std::abs(evaluate(k, {1.3, 1.0}) - direct), 1e-12);
}

TEST(Kernel, DivisorWeightsCoefficients) {
  const auto& w = weights("bergman", {{"beta", 1.0}}, 1000);
  const auto k = hw_kernel(w, {0.8, 0.0}, 1000);
  const auto& t = sieve(1000);
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    EXPECT_NEAR(k[n].real(), double(divisor_count(factorize(t, n))) * std::pow(double(n), -0.8), 1e-13);
  }
}

TEST(Kernel, ReproducingExample) {
  const auto& w = weights("divisor", {}, 1000);
  const auto F = DirichletPolynomial::from_coefficients({1.0, cplx(0.0, 2.0)});
  const ComplexPoint xi{1.0, 1.0};
  const auto k = hw_kernel(w, xi, 2);
  EXPECT_LE(std::abs(inner_product(F, k, w) - evaluate(F, xi)), 1e-12);
}

TEST(Kernel, ReproducingIdentityRandom) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> sig(0.5001, 3.0);
  std::uniform_real_distribution<double> tt(-50.0, 50.0);
  std::uniform_int_distribution<int> len(1, 2000);
  const std::vector<const WeightSequence*> ws = {&weights("constant", {}, 2000), &weights("divisor", {}, 2000),
                                                  &weights("prime_indicator", {}, 2000),
                                                  &weights("mccarthy_log", {{"alpha", -1.0}}, 2000)};
  for (int i = 0; i < 100; ++i) {
    const auto& w = *ws[static_cast<std::size_t>(i) % ws.size()];
    const std::uint64_t N = static_cast<std::uint64_t>(len(rng));
    const auto F = random_polynomial(rng, N, w);
    const ComplexPoint xi{sig(rng), tt(rng)};
    const cplx lhs = inner_product(F, hw_kernel(w, xi, N), w);
    const cplx rhs = evaluate(F, xi);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)) * std::sqrt(double(N))) << i;
  }
}

TEST(Kernel, NormSquaredIsWeightedZetaPartial) {
  for (const char* name : {"constant", "divisor", "mangoldt_over_log"}) {
    const auto& w = weights(name, {}, 100'000);
    for (double sigma : {0.6, 1.0, 2.0}) {
      for (double t : {0.0, 17.0}) {
        const double n2 = std::pow(hw_norm(hw_kernel(w, {sigma, t}, w.limit()), w), 2.0);
        EXPECT_NEAR(n2 / weighted_zeta(w, sigma).partial, 1.0, 1e-12) << name << " " << sigma;
      }
    }
  }
}

TEST(Kernel, CauchySchwarzPointBound) {
  std::mt19937_64 rng(7);
  const auto& w = weights("divisor", {}, 10'000);
  for (int i = 0; i < 30; ++i) {
    const auto F = random_polynomial(rng, 10'000, w);
    for (double sigma : {0.55, 0.8, 1.5}) {
      const ComplexPoint s{sigma, 3.0 * i};
      const double bound = hw_norm(F, w) * std::sqrt(weighted_zeta(w, sigma).total());
      EXPECT_LE(std::abs(evaluate(F, s)), bound);
    }
  }
}

TEST(Bohr, LiftExamples) {
  const auto& t = sieve(1000);
  DirichletPolynomial F(30);
  F.set(12, cplx(2.0, -1.0));
  F.set(1, 5.0);
  const auto G = bohr_lift(F, t);
  ASSERT_EQ(G.terms.size(), 2u);
  EXPECT_EQ(G.terms.at({2, 1}), cplx(2.0, -1.0));
  EXPECT_EQ(G.terms.at({}), cplx(5.0, 0.0));
}

TEST(Bohr, InverseExamples) {
  const auto& t = sieve(1000);
  MultiIndexSeries c;
  c.add({}, 3.0);
  const auto F = bohr_inverse(c, t, 5);
  EXPECT_EQ(F[1], cplx(3.0, 0.0));
  for (std::uint64_t n = 2; n <= 5; ++n) EXPECT_EQ(F[n], cplx(0.0, 0.0));
  MultiIndexSeries m;
  m.add({1, 1, 1}, 1.0);
  EXPECT_EQ(bohr_inverse(m, t, 30)[30], cplx(1.0, 0.0));
  EXPECT_THROW(bohr_inverse(m, t, 29), OverflowError);
}

TEST(Bohr, RoundTripAndIsometry) {
  const auto& t = sieve(10'000);
  const auto& w = weights("constant", {}, 10'000);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 5; ++i) {
    const auto F = random_polynomial(rng, 10'000, w);
    const auto G = bohr_lift(F, t);
    EXPECT_EQ(bohr_inverse(G, t, 10'000), F);
    double s = 0.0;
    for (const auto& [e, c] : G.terms) s += std::norm(c);
    EXPECT_NEAR(std::sqrt(s) / hw_norm(F, w), 1.0, 1e-12);
  }
}

TEST(Bohr, EvaluationAtPrimePowers) {
  const auto& t = sieve(10'000);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  MultiIndexSeries G;
  for (int i = 0; i < 200; ++i) {
    MultiIndexSeries::Exponents e(4);
    std::uint64_t n = 1;
    for (std::size_t j = 0; j < 4; ++j) {
      e[j] = static_cast<std::uint32_t>(rng() % 3);
      for (std::uint32_t r = 0; r < e[j]; ++r) n *= t.primes()[j];
    }
    if (n <= 10'000) G.add(e, {g(rng), g(rng)});
  }
  const auto F = bohr_inverse(G, t, 10'000);
  for (ComplexPoint s : {ComplexPoint{2.0, 0.0}, ComplexPoint{2.0, 5.0}, ComplexPoint{0.7, -3.0}}) {
    EXPECT_LE(std::abs(evaluate(G, t, s) - evaluate(F, s)), 1e-12);
  }
}
