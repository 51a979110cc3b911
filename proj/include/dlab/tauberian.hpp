#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlab/detail/error.hpp"
#include "dlab/weights.hpp"
#include "dlab/zeta.hpp"

namespace dlab {

struct ProfilePoint {
  double sigma = 0.0;
  double value = 0.0;             // partial sum plus modeled tail
  double partial = 0.0;           // sum over n <= N
  double tail = 0.0;              // modeled sum over n > N
  double tail_uncertainty = 0.0;  // upper-envelope tail minus modeled tail
};

/// F(sigma) = sum_n w_n n^{-sigma} on the grid. The tail beyond N uses the
/// Chebyshev envelope with the exponent fitted on the last two decades of S(x),
/// so the profile never borrows the catalog's expected exponent.
inline std::vector<ProfilePoint> mellin_profile(const WeightSequence& w, const std::vector<double>& sigma_grid) {
  for (double s : sigma_grid) {
    if (!(s > w.sigma0())) {
      throw DomainError("mellin_profile: sigma = " + std::to_string(s) + " at or below the abscissa " +
                        std::to_string(w.sigma0()));
    }
  }
  const double N = static_cast<double>(w.limit());
  std::vector<double> grid;
  for (int j = 0; j <= 8; ++j) grid.push_back(std::floor(N / 100.0 * std::pow(10.0, j / 4.0)));
  grid.back() = N;
  const TailModel model = fit_tail_model(w, fit_alpha(w, grid).alpha_hat);
  std::vector<ProfilePoint> out;
  for (double s : sigma_grid) {
    const TruncatedSum t = dirichlet_sum_with_tail(w, model, s);
    out.push_back({s, t.total(), t.partial, t.tail, std::abs(t.tail_bound - t.tail)});
  }
  return out;
}

/// sigma0 + 10^{-3 + 2j/steps}, j = 0..steps: the fitting window [1e-3, 1e-1].
inline std::vector<double> profile_grid(double sigma0, int steps = 16) {
  std::vector<double> g;
  for (int j = 0; j <= steps; ++j) g.push_back(sigma0 + std::pow(10.0, -3.0 + 2.0 * j / steps));
  return g;
}

struct SingularityFit {
  double sigma0 = 1.0;
  double beta_hat = 0.0;
  double g_at_sigma0 = 0.0;
  std::pair<double, double> fit_window{0.0, 0.0};
  double residual_rms = 0.0;
  bool log_singularity = false;
  double power_rms = 0.0;  // relative residual of the power model
  double log_rms = 0.0;    // relative residual of the log model
};

namespace detail {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

inline Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("least squares: degenerate abscissae");
  const double b = sxy / sxx;
  return {b, my - b * mx};
}

}  // namespace detail

/// Fits F(sigma) ~ g (sigma - sigma0)^{-1+beta} on sigma - sigma0 in the window,
/// and the alternative F ~ g log(1/(sigma - sigma0)) + h. The log singularity is
/// reported (with beta = 1) when the log model has the smaller relative residual.
inline SingularityFit fit_singularity(const std::vector<ProfilePoint>& profile, double sigma0,
                                      std::pair<double, double> window = {1e-3, 1e-1}) {
  std::vector<double> ld;
  std::vector<double> lf;
  std::vector<double> lg;
  std::vector<double> F;
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& p : profile) {
    const double d = p.sigma - sigma0;
    if (d < window.first * (1.0 - 1e-12) || d > window.second * (1.0 + 1e-12)) continue;
    if (!(p.value > 0.0)) throw DomainError("fit_singularity: nonpositive profile value");
    if (p.tail_uncertainty > 0.01 * p.value) {
      throw DomainError("fit_singularity: tail uncertainty exceeds 1% of F at sigma = " + std::to_string(p.sigma));
    }
    if (ld.empty()) lo = d;
    hi = d;
    ld.push_back(std::log(d));
    lf.push_back(std::log(p.value));
    lg.push_back(std::log(1.0 / d));
    F.push_back(p.value);
  }
  if (ld.size() < 4) throw InvalidArgument("fit_singularity: insufficient window (need 4 points in range)");
  if (hi / lo < 10.0) throw InvalidArgument("fit_singularity: window spans less than a decade");

  SingularityFit fit;
  fit.sigma0 = sigma0;
  fit.fit_window = {lo, hi};
  const detail::Line pw = detail::least_squares(ld, lf);
  const detail::Line lm = detail::least_squares(lg, F);
  double pr = 0.0;
  double lr = 0.0;
  for (std::size_t i = 0; i < ld.size(); ++i) {
    const double a = lf[i] - (pw.slope * ld[i] + pw.intercept);
    const double b = (F[i] - (lm.slope * lg[i] + lm.intercept)) / F[i];
    pr += a * a;
    lr += b * b;
  }
  const double n = static_cast<double>(ld.size());
  fit.power_rms = std::sqrt(pr / n);
  fit.log_rms = std::sqrt(lr / n);
  fit.log_singularity = lm.slope > 0.0 && fit.log_rms < fit.power_rms;
  if (fit.log_singularity) {
    fit.beta_hat = 1.0;
    fit.g_at_sigma0 = lm.slope;
    fit.residual_rms = fit.log_rms;
  } else {
    fit.beta_hat = pw.slope + 1.0;
    fit.g_at_sigma0 = std::exp(pw.intercept);
    fit.residual_rms = fit.power_rms;
  }
  return fit;
}

struct ComparisonRow {
  double x = 0.0;
  double predicted = 0.0;
  double measured = 0.0;
  double ratio = 0.0;
};

/// Compares S(x) with c x^{sigma0} / (log x)^beta, c calibrated at the grid midpoint.
inline std::vector<ComparisonRow> predict_and_compare(const SingularityFit& fit, const WeightSequence& w,
                                                      const std::vector<double>& x_grid) {
  if (x_grid.empty()) throw InvalidArgument("predict_and_compare: empty grid");
  auto shape = [&](double x) { return std::pow(x, fit.sigma0) / std::pow(std::log(x), fit.beta_hat); };
  for (double x : x_grid) {
    if (!(x >= 2.0) || x > static_cast<double>(w.limit())) throw RangeError("predict_and_compare: x outside [2, N]");
  }
  const double xm = x_grid[x_grid.size() / 2];
  const double c = w.sum_upto(xm) / shape(xm);
  std::vector<ComparisonRow> rows;
  for (double x : x_grid) {
    const double p = c * shape(x);
    const double m = w.sum_upto(x);
    rows.push_back({x, p, m, m / p});
  }
  return rows;
}

/// Joint fit log S(x) = c + sigma log x - alpha log log x; returns the sigma
/// coefficient, an estimate of the convergence abscissa.
inline double estimate_abscissa(const WeightSequence& w, const std::vector<double>& x_grid) {
  if (x_grid.size() < 4) throw InvalidArgument("estimate_abscissa: need at least 4 grid points");
  // normal equations for three unknowns
  double A[3][3] = {};
  double b[3] = {};
  for (double x : x_grid) {
    const double S = w.sum_upto(x);
    if (!(S > 0.0)) throw DomainError("estimate_abscissa: S(x) = 0");
    const double r[3] = {1.0, std::log(x), std::log(std::log(x))};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) A[i][j] += r[i] * r[j];
      b[i] += r[i] * std::log(S);
    }
  }
  // Gaussian elimination with partial pivoting
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    }
    for (int j = 0; j < 3; ++j) std::swap(A[c][j], A[piv][j]);
    std::swap(b[c], b[piv]);
    if (A[c][c] == 0.0) throw InvalidArgument("estimate_abscissa: singular design");
    for (int r = c + 1; r < 3; ++r) {
      const double f = A[r][c] / A[c][c];
      for (int j = c; j < 3; ++j) A[r][j] -= f * A[c][j];
      b[r] -= f * b[c];
    }
  }
  double x[3];
  for (int i = 2; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < 3; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x[1];
}

/// zeta_P'(rho) by central differences of the Mobius-log series; nonzero means
/// 1 - zeta_P has a simple zero at rho.
inline double prime_zeta_derivative_at_rho(double h = 1e-5) {
  const double r = rho_prime_zeta();
  return (prime_zeta(r + h) - prime_zeta(r - h)) / (2.0 * h);
}

}  // namespace dlab
