#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "common.hpp"

using namespace dlab;
using dlab::testkit::weights;

TEST(Profile, ConstantWeightsFollowZeta) {
  const auto& w = weights("constant", {}, 1'000'000);
  const auto prof = mellin_profile(w, {1.01, 1.1, 1.5, 2.0, 3.0});
  for (const auto& p : prof) {
    EXPECT_NEAR(p.value, zeta(p.sigma), 1e-6 * zeta(p.sigma) + p.tail_uncertainty) << p.sigma;
    EXPECT_DOUBLE_EQ(p.value, p.partial + p.tail);
  }
}

TEST(Profile, DivisorWeightsFollowZetaSquared) {
  const auto& w = weights("divisor", {}, 10'000'000);
  for (const auto& p : mellin_profile(w, {1.5, 2.0, 3.0})) {
    const double z = zeta(p.sigma);
    EXPECT_NEAR(p.value, z * z, 1e-4) << p.sigma;
  }
}

TEST(Profile, FirstTermFarRight) {
  for (const char* name : {"constant", "divisor", "prime_indicator"}) {
    const auto& w = weights(name, {}, 100'000);
    const auto p = mellin_profile(w, {60.0}).front();
    EXPECT_NEAR(p.value, w[1] + w[2] * std::pow(2.0, -60.0), 1e-17) << name;
  }
}

TEST(Profile, StrictlyDecreasing) {
  for (const char* name : {"constant", "divisor", "mangoldt", "prime_indicator", "inv_divisor_pow"}) {
    const auto& w = weights(name, {{"alpha", 1.0}}, 1'000'000);
    auto grid = profile_grid(1.0);
    grid.push_back(2.0);
    grid.push_back(5.0);
    const auto prof = mellin_profile(w, grid);
    for (std::size_t i = 1; i < prof.size(); ++i) EXPECT_LT(prof[i].value, prof[i - 1].value) << name << " " << i;
  }
}

TEST(Profile, DivergenceError) {
  const auto& w = weights("constant", {}, 1000);
  EXPECT_THROW(mellin_profile(w, {1.0}), DomainError);
  EXPECT_THROW(mellin_profile(w, {2.0, 0.9}), DomainError);
}

TEST(Singularity, SimplePoleForConstantWeights) {
  const auto& w = weights("constant", {}, 1'000'000);
  const auto fit = fit_singularity(mellin_profile(w, profile_grid(1.0)), 1.0);
  EXPECT_GE(fit.beta_hat, -0.1);
  EXPECT_LE(fit.beta_hat, 0.1);
  EXPECT_FALSE(fit.log_singularity);
  EXPECT_GT(fit.fit_window.first, 0.0);
  // the same fit on exact zeta values; the constant term of zeta bends g above 1
  std::vector<ProfilePoint> exact;
  for (double s : profile_grid(1.0)) exact.push_back({s, zeta(s), zeta(s), 0.0, 0.0});
  const auto ref = fit_singularity(exact, 1.0);
  EXPECT_NEAR(ref.g_at_sigma0, 1.0606437640344282, 1e-6);
  EXPECT_NEAR(fit.g_at_sigma0, ref.g_at_sigma0, 1e-3);
  EXPECT_NEAR(fit.beta_hat, ref.beta_hat, 1e-3);
}

TEST(Singularity, DoublePoleForDivisorWeights) {
  const auto& w = weights("divisor", {}, 10'000'000);
  const auto fit = fit_singularity(mellin_profile(w, profile_grid(1.0)), 1.0);
  EXPECT_GE(fit.beta_hat, -1.15);
  EXPECT_LE(fit.beta_hat, -0.85);
}

TEST(Singularity, LogarithmicForPrimes) {
  const auto& w = weights("prime_indicator", {}, 10'000'000);
  const auto fit = fit_singularity(mellin_profile(w, profile_grid(1.0)), 1.0);
  EXPECT_TRUE(fit.log_singularity);
  EXPECT_EQ(fit.beta_hat, 1.0);
  EXPECT_LT(fit.log_rms, fit.power_rms);
}

TEST(Singularity, Preconditions) {
  const auto& w = weights("constant", {}, 1'000'000);
  const auto narrow = mellin_profile(w, {1.01, 1.02, 1.03, 1.04, 1.05});
  EXPECT_THROW(fit_singularity(narrow, 1.0), InvalidArgument);
  const auto few = mellin_profile(w, {1.001, 1.01, 1.1});
  EXPECT_THROW(fit_singularity(few, 1.0), InvalidArgument);
  auto loose = mellin_profile(w, profile_grid(1.0));
  loose[3].tail_uncertainty = 0.02 * loose[3].value;
  EXPECT_THROW(fit_singularity(loose, 1.0), DomainError);
}

TEST(Singularity, AgreesWithChebyshevExponent) {
  const std::vector<std::pair<std::string, Params>> entries = {
      {"constant", {}},          {"divisor", {}},           {"mangoldt", {}},
      {"mangoldt_over_log", {}}, {"prime_indicator", {}},   {"inv_divisor_pow", {{"alpha", 1.0}}},
      {"dgamma", {{"gamma", 0.5}}}, {"mccarthy_log", {{"alpha", 0.5}}}, {"bergman", {{"beta", 1.0}}}};
  for (const auto& [name, p] : entries) {
    const auto& w = weights(name, p, 10'000'000);
    const double a = fit_alpha(w, default_grid(1e4, 1e7)).alpha_hat;
    const double b = fit_singularity(mellin_profile(w, profile_grid(1.0)), 1.0).beta_hat;
    EXPECT_NEAR(b, a, 0.25) << name;
  }
}

TEST(Prediction, Examples) {
  const auto& one = weights("constant", {}, 10'000'000);
  const auto fit1 = fit_singularity(mellin_profile(one, profile_grid(1.0)), 1.0);
  for (const auto& row : predict_and_compare(fit1, one, default_grid(1e4, 1e7))) {
    EXPECT_GE(row.ratio, 0.99) << row.x;
    EXPECT_LE(row.ratio, 1.01) << row.x;
  }
  const auto& lam = weights("mangoldt", {}, 10'000'000);
  const auto fitl = fit_singularity(mellin_profile(lam, profile_grid(1.0)), 1.0);
  for (const auto& row : predict_and_compare(fitl, lam, default_grid(1e6, 1e7))) {
    EXPECT_GE(row.ratio, 0.95) << row.x;
    EXPECT_LE(row.ratio, 1.05) << row.x;
  }
  const auto& pr = weights("prime_indicator", {}, 10'000'000);
  SingularityFit fitp;
  fitp.sigma0 = 1.0;
  fitp.beta_hat = 1.0;
  const auto rows = predict_and_compare(fitp, pr, default_grid(1e4, 1e7));
  EXPECT_GE(rows.back().ratio, 0.9);
  EXPECT_LE(rows.back().ratio, 1.1);
  EXPECT_EQ(rows.back().measured, 664579.0);
  EXPECT_THROW(predict_and_compare(fitp, pr, {2e7}), RangeError);
}

TEST(Abscissa, ShiftedWeightsMoveToOne) {
  const auto& w = weights("besov_sobolev", {{"gamma", 1.0}}, 10'000'000);
  const auto grid = default_grid(1e4, 1e7);
  EXPECT_NEAR(estimate_abscissa(w, grid), rho_prime_zeta(), 0.01);
  EXPECT_NEAR(estimate_abscissa(shift_weights(w), grid), 1.0, 0.01);
  EXPECT_NEAR(estimate_abscissa(weights("constant", {}, 10'000'000), grid), 1.0, 0.01);
}

TEST(Abscissa, SimpleZeroOfOneMinusPrimeZeta) {
  const double d = prime_zeta_derivative_at_rho();
  EXPECT_LT(d, -1.0);
  EXPECT_TRUE(std::isfinite(d));
}
