#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlab/arithmetic.hpp"
#include "dlab/detail/error.hpp"
#include "dlab/detail/quadrature.hpp"
#include "dlab/detail/summation.hpp"
#include "dlab/zeta.hpp"

namespace dlab {

using Params = std::map<std::string, double>;

/// A named nonnegative sequence w_1..w_N. Slot 0 of the storage is unused.
/// Partial sums are computed once, with compensated summation, at construction.
///
/// `sigma0` is the convergence abscissa of sum w_n n^{-s}; when `expected_alpha`
/// is set the weights are expected to satisfy S(x) ~ C x^{sigma0} / (log x)^alpha.
class WeightSequence {
 public:
  WeightSequence(std::string name, Params params, std::vector<double> values,
                 std::optional<double> expected_alpha = std::nullopt, double sigma0 = 1.0)
      : name_(std::move(name)),
        params_(std::move(params)),
        w_(std::move(values)),
        expected_alpha_(expected_alpha),
        sigma0_(sigma0) {
    if (w_.size() < 2) throw InvalidArgument("WeightSequence: need at least w_1");
    w_[0] = 0.0;
    sums_.assign(w_.size(), 0.0);
    detail::CompensatedSum acc;
    for (std::size_t n = 1; n < w_.size(); ++n) {
      if (!(w_[n] >= 0.0) || std::isinf(w_[n])) {
        throw InvalidArgument("WeightSequence " + name_ + ": w_" + std::to_string(n) + " is not a finite nonnegative number");
      }
      acc += w_[n];
      sums_[n] = acc.value();
    }
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const Params& params() const { return params_; }
  [[nodiscard]] std::uint64_t limit() const { return w_.size() - 1; }
  [[nodiscard]] double operator[](std::uint64_t n) const { return w_[n]; }
  [[nodiscard]] std::span<const double> values() const { return w_; }
  [[nodiscard]] std::optional<double> expected_alpha() const { return expected_alpha_; }
  [[nodiscard]] double sigma0() const { return sigma0_; }

  /// S(k) = sum_{n <= k} w_n for k = 0..N.
  [[nodiscard]] std::span<const double> sums() const { return sums_; }

  /// S(floor(x)), clamped to [0, N].
  [[nodiscard]] double sum_upto(double x) const {
    if (x < 1.0) return 0.0;
    const auto k = static_cast<std::uint64_t>(std::floor(x));
    if (k > limit()) throw RangeError("sum_upto: x = " + std::to_string(x) + " beyond N = " + std::to_string(limit()));
    return sums_[k];
  }

 private:
  std::string name_;
  Params params_;
  std::vector<double> w_;
  std::vector<double> sums_;
  std::optional<double> expected_alpha_;
  double sigma0_;
};

/// n_k: the integer whose logarithm is nearest to k (log n_k lies within 1/5 of k
/// for every k >= 1). Exact while e^{k+1/5} fits in 64 bits.
inline std::uint64_t kadec_point(int k) {
  if (k < 1) throw InvalidArgument("kadec_point: k must be >= 1");
  if (k > 43) throw RangeError("kadec_point: e^k exceeds 64-bit range");
  const long double target = std::exp(static_cast<long double>(k));
  const auto lo = static_cast<std::uint64_t>(std::floor(target));
  const std::uint64_t hi = lo + 1;
  const long double dlo = std::abs(std::log(static_cast<long double>(lo)) - k);
  const long double dhi = std::abs(std::log(static_cast<long double>(hi)) - k);
  const std::uint64_t best = dlo <= dhi ? lo : hi;
  if (std::abs(std::log(static_cast<long double>(best)) - k) >= 0.2L) {
    throw DomainError("kadec_point: no integer with log in (k - 1/5, k + 1/5)");
  }
  return best;
}

namespace detail {

inline double require_param(const Params& p, const std::string& key, const std::string& name) {
  const auto it = p.find(key);
  if (it == p.end()) throw InvalidArgument("catalog " + name + ": missing parameter '" + key + "'");
  return it->second;
}

template <class F>
std::vector<double> tabulate(std::uint64_t N, const SieveTable& table, F&& f) {
  std::vector<double> w(N + 1, 0.0);
  for (std::uint64_t n = 1; n <= N; ++n) w[n] = f(factorize(table, n), n);
  return w;
}

}  // namespace detail

/// Names understood by `catalog`.
inline std::vector<std::string> catalog_names() {
  return {"constant",      "mccarthy_log",          "bergman",           "dgamma",
          "divisor",       "mangoldt_over_log",     "mangoldt",          "inv_divisor_pow",
          "prime_indicator", "besov_sobolev",       "ordered_factorizations",
          "inv_ordered_factorizations", "kadec",   "kadec_spiked"};
}

/// Weight sequences of the example catalog, evaluated exactly from their
/// defining formulas for n = 1..N.
inline WeightSequence catalog(const std::string& name, const Params& params, std::uint64_t N,
                              const SieveTable& table) {
  if (N < 1) throw InvalidArgument("catalog: N must be positive");
  if (N > table.limit()) {
    throw RangeError("catalog: N = " + std::to_string(N) + " exceeds sieve limit " + std::to_string(table.limit()));
  }
  if (name == "constant") {
    std::vector<double> w(N + 1, 1.0);
    return {name, params, std::move(w), 0.0};
  }
  if (name == "mccarthy_log") {
    const double a = detail::require_param(params, "alpha", name);
    std::vector<double> w(N + 1, 0.0);
    for (std::uint64_t n = 1; n <= N; ++n) w[n] = std::pow(1.0 + std::log(static_cast<double>(n)), a);
    return {name, params, std::move(w), -a};
  }
  if (name == "bergman" || name == "dgamma") {
    const double gamma = name == "bergman" ? detail::require_param(params, "beta", name) + 1.0
                                           : detail::require_param(params, "gamma", name);
    if (!(gamma > 0.0)) throw InvalidArgument("catalog " + name + ": requires gamma = beta + 1 > 0");
    auto w = detail::tabulate(N, table, [gamma](const Factorization& f, std::uint64_t) {
      return generalized_divisor(gamma, f);
    });
    return {name, params, std::move(w), 1.0 - gamma};
  }
  if (name == "divisor") {
    auto w = detail::tabulate(N, table, [](const Factorization& f, std::uint64_t) {
      return static_cast<double>(divisor_count(f));
    });
    return {name, params, std::move(w), -1.0};
  }
  if (name == "mangoldt_over_log") {
    auto w = detail::tabulate(N, table, [](const Factorization& f, std::uint64_t) {
      return f.pairs.size() == 1 ? 1.0 / f.pairs.front().exponent : 0.0;
    });
    return {name, params, std::move(w), 1.0};
  }
  if (name == "mangoldt") {
    auto w = detail::tabulate(N, table, [](const Factorization& f, std::uint64_t) { return von_mangoldt(f); });
    return {name, params, std::move(w), 0.0};
  }
  if (name == "inv_divisor_pow") {
    const double a = detail::require_param(params, "alpha", name);
    auto w = detail::tabulate(N, table, [a](const Factorization& f, std::uint64_t) {
      return std::pow(static_cast<double>(divisor_count(f)), -a);
    });
    return {name, params, std::move(w), 1.0 - std::exp2(-a)};
  }
  if (name == "prime_indicator") {
    std::vector<double> w(N + 1, 0.0);
    for (std::uint32_t p : table.primes()) {
      if (p > N) break;
      w[p] = 1.0;
    }
    return {name, params, std::move(w), 1.0};
  }
  if (name == "besov_sobolev") {
    const double gamma = detail::require_param(params, "gamma", name);
    if (gamma < 0.0) throw InvalidArgument("catalog besov_sobolev: requires gamma >= 0");
    auto w = detail::tabulate(N, table, [gamma](const Factorization& f, std::uint64_t) {
      return besov_multinomial(gamma, f);
    });
    return {name, params, std::move(w), 1.0 - gamma, rho_prime_zeta()};
  }
  if (name == "ordered_factorizations" || name == "inv_ordered_factorizations") {
    const std::vector<u128> F = ordered_factorization_table(N);
    std::vector<double> w(N + 1, 0.0);
    const bool inverse = name == "inv_ordered_factorizations";
    for (std::uint64_t n = 1; n <= N; ++n) {
      const auto f = static_cast<double>(F[n]);
      w[n] = inverse ? 1.0 / f : f;
    }
    if (inverse) return {name, params, std::move(w), std::nullopt};
    return {name, params, std::move(w), 0.0, rho_zeta_two()};
  }
  if (name == "kadec" || name == "kadec_spiked") {
    const bool spiked = name == "kadec_spiked";
    if (spiked && N > 709) {
      throw InvalidArgument("catalog kadec_spiked: e^n overflows double precision beyond N = 709");
    }
    std::vector<double> w(N + 1, 0.0);
    if (spiked) {
      for (std::uint64_t n = 1; n <= N; ++n) w[n] = std::exp(static_cast<double>(n));
    }
    for (int k = 1; k <= 43; ++k) {
      const double bound = std::exp(k - 0.2);
      if (bound > static_cast<double>(N)) break;
      const std::uint64_t nk = kadec_point(k);
      if (nk > N) break;
      w[nk] = static_cast<double>(nk);
    }
    return {name, params, std::move(w), std::nullopt};
  }
  throw InvalidArgument("catalog: unknown weight name '" + name + "'");
}

/// Prefix sums S(1..N) (slot 0 holds S(0) = 0).
inline std::vector<double> partial_sums(const WeightSequence& w) {
  return {w.sums().begin(), w.sums().end()};
}

namespace detail {

inline void require_in_range(const WeightSequence& w, double x, const char* where) {
  if (!(x >= 2.0) || x > static_cast<double>(w.limit())) {
    throw RangeError(std::string(where) + ": x = " + std::to_string(x) + " outside [2, " + std::to_string(w.limit()) + "]");
  }
}

}  // namespace detail

/// S(x) (log x)^alpha / x^{sigma0} at each x.
inline std::vector<double> chebyshev_ratios(const WeightSequence& w, double alpha, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    detail::require_in_range(w, x, "chebyshev_ratios");
    out.push_back(w.sum_upto(x) * std::pow(std::log(x), alpha) / std::pow(x, w.sigma0()));
  }
  return out;
}

/// Geometric grid x = 10^{3 + j/4} restricted to [lo, hi].
inline std::vector<double> default_grid(double lo, double hi) {
  std::vector<double> xs;
  for (int j = 0;; ++j) {
    const double x = std::pow(10.0, 3.0 + j / 4.0);
    if (x > hi * (1.0 + 1e-12)) break;
    if (x >= lo * (1.0 - 1e-12)) xs.push_back(std::min(x, hi));
  }
  return xs;
}

struct AsymptoticFit {
  double alpha_hat = 0.0;
  double C_hat = 0.0;
  double residual_rms = 0.0;
  std::vector<double> grid;
};

/// Least-squares fit of log(x^{sigma0} / S(x)) = alpha log log x - log C.
inline AsymptoticFit fit_alpha(const WeightSequence& w, std::span<const double> grid) {
  if (grid.size() < 3) throw InvalidArgument("fit_alpha: degenerate grid (fewer than 3 points)");
  std::vector<double> u;
  std::vector<double> y;
  for (double x : grid) {
    detail::require_in_range(w, x, "fit_alpha");
    const double S = w.sum_upto(x);
    if (!(S > 0.0)) throw DomainError("fit_alpha: S(x) = 0 at x = " + std::to_string(x));
    u.push_back(std::log(std::log(x)));
    y.push_back(w.sigma0() * std::log(x) - std::log(S));
  }
  const double n = static_cast<double>(u.size());
  double mu = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    my += y[i];
  }
  mu /= n;
  my /= n;
  double suu = 0.0;
  double suy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (y[i] - my);
  }
  if (!(suu > 0.0)) throw InvalidArgument("fit_alpha: degenerate grid (no spread in log log x)");
  AsymptoticFit fit;
  fit.alpha_hat = suy / suu;
  const double intercept = my - fit.alpha_hat * mu;
  fit.C_hat = std::exp(-intercept);
  double rss = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = y[i] - (fit.alpha_hat * u[i] + intercept);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  fit.grid.assign(grid.begin(), grid.end());
  return fit;
}

/// sum over n in (eta x, x] of w_n, for each x.
inline std::vector<double> block_sums(const WeightSequence& w, double eta, std::span<const double> xs) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("block_sums: eta must lie in (0, 1)");
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (x > static_cast<double>(w.limit())) throw RangeError("block_sums: x beyond N");
    out.push_back(w.sum_upto(x) - w.sum_upto(eta * x));
  }
  return out;
}

/// Extrapolation of the weights beyond N by the Chebyshev shape
/// S(x) ~ C x^{sigma0} (log x)^{-alpha}, calibrated on the last decade [N/10, N].
struct TailModel {
  double sigma0 = 1.0;
  double alpha = 0.0;
  double constant = 0.0;        // C from the whole last decade
  double upper_constant = 0.0;  // largest C over four sub-blocks of the decade
  double spread = 0.0;          // max |C_i / C - 1| over the sub-blocks
  std::uint64_t N = 0;
};

inline TailModel fit_tail_model(const WeightSequence& w, double alpha) {
  const std::uint64_t N = w.limit();
  if (N < 20) throw InvalidArgument("fit_tail_model: N too small for calibration");
  auto shape = [&](double x) { return std::pow(x, w.sigma0()) * std::pow(std::log(x), -alpha); };
  const double lo = std::max(2.0, std::floor(static_cast<double>(N) / 10.0));
  const double hi = static_cast<double>(N);
  TailModel m;
  m.sigma0 = w.sigma0();
  m.alpha = alpha;
  m.N = N;
  m.constant = (w.sum_upto(hi) - w.sum_upto(lo)) / (shape(hi) - shape(lo));
  m.upper_constant = m.constant;
  constexpr int kBlocks = 4;
  for (int b = 0; b < kBlocks; ++b) {
    const double a = std::floor(lo * std::pow(hi / lo, static_cast<double>(b) / kBlocks));
    const double c = std::floor(lo * std::pow(hi / lo, static_cast<double>(b + 1) / kBlocks));
    const double ci = (w.sum_upto(c) - w.sum_upto(a)) / (shape(c) - shape(a));
    m.upper_constant = std::max(m.upper_constant, ci);
    if (m.constant > 0.0) m.spread = std::max(m.spread, std::abs(ci / m.constant - 1.0));
  }
  return m;
}

/// Tail model with alpha taken from the weights' expected exponent, or from a
/// Chebyshev fit over the last two decades when none is recorded.
inline TailModel fit_tail_model(const WeightSequence& w) {
  if (w.expected_alpha()) return fit_tail_model(w, *w.expected_alpha());
  const double N = static_cast<double>(w.limit());
  std::vector<double> grid;
  for (int j = 0; j <= 8; ++j) grid.push_back(std::floor(N / 100.0 * std::pow(10.0, j / 4.0)));
  grid.back() = N;
  return fit_tail_model(w, fit_alpha(w, grid).alpha_hat);
}

/// The shape integral  int_N^inf x^{-s} d(x^{sigma0} (log x)^{-alpha}), for s > sigma0.
inline double tail_shape_integral(double sigma0, double alpha, double N, double s) {
  const double c = s - sigma0;
  if (!(c > 0.0)) throw DomainError("tail integral diverges: exponent must exceed the abscissa");
  const double L = std::log(N);
  static const detail::QuadratureRule unit = detail::gauss_legendre(16);
  double total = 0.0;
  if (c * L > 1.0) {
    // v = c (u - L): e^{-cL}/c int_0^inf e^{-v} g(L + v/c) dv
    const double scale = std::exp(-c * L) / c;
    const auto rule = detail::composite_gauss_legendre(0.0, 60.0, 30, 16);
    total = scale * detail::integrate(rule, [&](double v) {
      const double u = L + v / c;
      return std::exp(-v) * std::pow(u, -alpha) * (sigma0 - alpha / u);
    });
  } else {
    // u = L e^y: int_0^inf e^{-cLe^y} (L e^y)^{1-alpha} (sigma0 - alpha/(L e^y)) dy
    const double ymax = std::log(80.0 / (c * L));
    const int panels = std::max(4, static_cast<int>(std::ceil(ymax / 0.25)));
    const auto rule = detail::composite_gauss_legendre(0.0, ymax, panels, 16);
    total = detail::integrate(rule, [&](double y) {
      const double u = L * std::exp(y);
      return std::exp(-c * u) * std::pow(u, 1.0 - alpha) * (sigma0 - alpha / u);
    });
  }
  return total;
}

/// A sum over n <= N plus the modeled contribution of n > N.
struct TruncatedSum {
  double partial = 0.0;
  double tail = 0.0;        // tail from the calibrated constant
  double tail_bound = 0.0;  // tail from the upper envelope constant
  [[nodiscard]] double total() const { return partial + tail; }
};

/// sum_{n <= N} w_n n^{-s} (real s) with the envelope tail for n > N.
inline TruncatedSum dirichlet_sum_with_tail(const WeightSequence& w, const TailModel& model, double s) {
  detail::CompensatedSum acc;
  const auto vals = w.values();
  for (std::uint64_t n = 1; n <= w.limit(); ++n) {
    if (vals[n] != 0.0) acc += vals[n] * std::exp(-s * std::log(static_cast<double>(n)));
  }
  TruncatedSum out;
  out.partial = acc.value();
  const double shape = tail_shape_integral(model.sigma0, model.alpha, static_cast<double>(model.N), s);
  out.tail = model.constant * shape;
  out.tail_bound = model.upper_constant * shape;
  return out;
}

}  // namespace dlab
