#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dlab/detail/error.hpp"
#include "dlab/detail/quadrature.hpp"
#include "dlab/detail/summation.hpp"
#include "dlab/hspace.hpp"
#include "dlab/weights.hpp"

namespace dlab {

/// Omega_I = (1/2, sigma_cap] x I with I = (a, b).
struct LocalWindow {
  double a = 0.0;
  double b = 1.0;
  double sigma_cap = 1.0;

  LocalWindow() = default;
  LocalWindow(double lo, double hi, double cap = 1.0) : a(lo), b(hi), sigma_cap(cap) { validate(); }

  void validate() const {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) throw InvalidArgument("LocalWindow: need a < b");
    if (!(sigma_cap > 0.5)) throw InvalidArgument("LocalWindow: sigma_cap must exceed 1/2");
  }
  [[nodiscard]] double length() const { return b - a; }
  [[nodiscard]] bool contains(const LocalWindow& o) const { return a <= o.a && o.b <= b; }
};

struct QuadratureOptions {
  int t_nodes_per_unit = 32;  // Gauss-Legendre nodes per unit of t, before the log N scaling
  int sigma_nodes = 64;       // Gauss-Jacobi nodes in sigma
  int sup_levels = 20;        // sigma - 1/2 = 2^{-j}, j = 1..sup_levels, for the alpha = 0 sup
  bool error_estimate = true; // rerun with half the nodes and report the difference
  bool extended_range = false; // admit 1 < alpha < 2 in the derivative form
};

struct LocalNorm {
  double value = 0.0;
  double error_estimate = 0.0;
};

namespace detail {

// Sparse view of the coefficients entering the quadrature.
struct Terms {
  std::vector<double> log_n;
  std::vector<cplx> coeff;
};

inline Terms nonzero_terms(const DirichletPolynomial& F, bool derivative) {
  Terms T;
  for (std::uint64_t n = 1; n <= F.limit(); ++n) {
    const cplx a = F[n];
    if (a == cplx{0.0, 0.0}) continue;
    const double L = std::log(static_cast<double>(n));
    if (derivative && n == 1) continue;
    T.log_n.push_back(L);
    T.coeff.push_back(derivative ? -L * a : a);
  }
  return T;
}

// sum over (sigma_j, t_k) of ws_j wt_k |sum_n c_n n^{-sigma_j - i t_k}|^2, or
// with `sup_rows` the max over j of sum_k wt_k |...|^2 (ws_j ignored).
inline double tensor_quadrature(const Terms& T, const std::vector<double>& sig, const std::vector<double>& ws,
                                const std::vector<double>& tn, const std::vector<double>& wt, bool sup_rows) {
  const std::size_t J = sig.size();
  const std::size_t K = tn.size();
  std::vector<cplx> S(J * K, cplx{0.0, 0.0});
  std::vector<double> p(J);
  std::vector<cplx> e(K);
  for (std::size_t i = 0; i < T.log_n.size(); ++i) {
    const double L = T.log_n[i];
    for (std::size_t j = 0; j < J; ++j) p[j] = std::exp(-sig[j] * L);
    for (std::size_t k = 0; k < K; ++k) e[k] = T.coeff[i] * cplx{std::cos(tn[k] * L), -std::sin(tn[k] * L)};
    for (std::size_t j = 0; j < J; ++j) {
      cplx* row = &S[j * K];
      const double pj = p[j];
      for (std::size_t k = 0; k < K; ++k) row[k] += pj * e[k];
    }
  }
  double total = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    double row = 0.0;
    for (std::size_t k = 0; k < K; ++k) row += wt[k] * std::norm(S[j * K + k]);
    total = sup_rows ? std::max(total, row) : total + ws[j] * row;
  }
  return total;
}

inline int t_panels(const LocalWindow& win, std::uint64_t N, const QuadratureOptions& opt) {
  const double scale = std::max(1.0, std::log(static_cast<double>(std::max<std::uint64_t>(N, 2))) / 8.0);
  return std::max(1, static_cast<int>(std::ceil(win.length() * opt.t_nodes_per_unit / 16.0 * scale)));
}

}  // namespace detail

/// Quadrature tables for one (alpha, window, N), shared across many polynomials.
class LocalNormEvaluator {
 public:
  LocalNormEvaluator(double alpha, LocalWindow win, std::uint64_t N, QuadratureOptions opt = {})
      : alpha_(alpha), win_(win), N_(N), opt_(opt) {
    win_.validate();
    if (!std::isfinite(alpha)) throw InvalidArgument("local norm: alpha must be finite");
    if (alpha > 1.0 && !(opt.extended_range && alpha < 2.0)) {
      throw InvalidArgument("local norm: alpha = " + std::to_string(alpha) + " is unsupported (alpha <= 1)");
    }
    const int panels = detail::t_panels(win_, N_, opt_);
    full_t_ = detail::composite_gauss_legendre(win_.a, win_.b, panels, 16);
    half_t_ = detail::composite_gauss_legendre(win_.a, win_.b, panels, 8);
    if (alpha_ == 0.0) {
      for (int j = 1; j <= opt_.sup_levels; ++j) {
        const double s = 0.5 + std::ldexp(1.0, -j);
        if (s <= win_.sigma_cap) sup_sigma_.push_back(s);
      }
      if (win_.sigma_cap < 1.0) sup_sigma_.insert(sup_sigma_.begin(), win_.sigma_cap);
    } else {
      // (sigma - 1/2)^p with p = -alpha - 1 (alpha < 0) or 1 - alpha (derivative form)
      const double p = alpha_ < 0.0 ? -alpha_ - 1.0 : 1.0 - alpha_;
      full_s_ = jacobi_rule(opt_.sigma_nodes, p);
      half_s_ = jacobi_rule(std::max(4, opt_.sigma_nodes / 2), p);
    }
  }

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] const LocalWindow& window() const { return win_; }

  [[nodiscard]] LocalNorm operator()(const DirichletPolynomial& F) const {
    const bool derivative = alpha_ > 0.0;
    const detail::Terms T = detail::nonzero_terms(F, derivative);
    LocalNorm out;
    if (alpha_ == 0.0) {
      out.value = detail::tensor_quadrature(T, sup_sigma_, {}, full_t_.nodes, full_t_.weights, true);
      if (opt_.error_estimate) {
        out.error_estimate =
            std::abs(out.value - detail::tensor_quadrature(T, sup_sigma_, {}, half_t_.nodes, half_t_.weights, true));
      }
      return out;
    }
    out.value = detail::tensor_quadrature(T, full_s_.nodes, full_s_.weights, full_t_.nodes, full_t_.weights, false);
    if (opt_.error_estimate) {
      out.error_estimate = std::abs(
          out.value - detail::tensor_quadrature(T, half_s_.nodes, half_s_.weights, half_t_.nodes, half_t_.weights, false));
    }
    return out;
  }

 private:
  [[nodiscard]] detail::QuadratureRule jacobi_rule(int n, double p) const {
    const detail::QuadratureRule base = detail::gauss_jacobi(n, p);
    const double h = win_.sigma_cap - 0.5;
    detail::QuadratureRule r;
    const double scale = std::pow(h / 2.0, p) * (h / 2.0);
    for (std::size_t i = 0; i < base.size(); ++i) {
      r.nodes.push_back(0.5 + h * (1.0 + base.nodes[i]) / 2.0);
      r.weights.push_back(base.weights[i] * scale);
    }
    return r;
  }

  double alpha_;
  LocalWindow win_;
  std::uint64_t N_;
  QuadratureOptions opt_;
  detail::QuadratureRule full_t_;
  detail::QuadratureRule half_t_;
  detail::QuadratureRule full_s_;
  detail::QuadratureRule half_s_;
  std::vector<double> sup_sigma_;
};

/// max over the sigma grid of int_I |F(sigma + it)|^2 dt. The grid is
/// sigma - 1/2 = 2^{-j}; the true supremum can only be larger.
inline LocalNorm local_sup_l2(const DirichletPolynomial& F, const LocalWindow& win, QuadratureOptions opt = {}) {
  return LocalNormEvaluator(0.0, win, F.limit(), opt)(F);
}

/// int_{Omega_I} |F|^2 (sigma - 1/2)^{-alpha-1} for alpha < 0,
/// int_{Omega_I} |F'|^2 (sigma - 1/2)^{1-alpha} for 0 < alpha <= 1,
/// and the alpha = 0 sup form.
inline LocalNorm dalpha_local_norm(const DirichletPolynomial& F, double alpha, const LocalWindow& win,
                                   QuadratureOptions opt = {}) {
  return LocalNormEvaluator(alpha, win, F.limit(), opt)(F);
}

/// Normalized bump exp(-1/(1-u^2)), u = (x - center)/halfwidth, with unit L^2
/// norm. Its transform ghat(xi) = (2 pi)^{-1/2} int g(x) e^{-i x xi} dx is
/// tabulated once and interpolated.
class TestBump {
 public:
  TestBump(const LocalWindow& win, double center, double halfwidth, double xi_max = 25.0)
      : win_(win), center_(center), halfwidth_(halfwidth), xi_max_(xi_max) {
    win_.validate();
    if (!(halfwidth > 0.0)) throw InvalidArgument("TestBump: halfwidth must be positive");
    if (!(center - halfwidth > win.a && center + halfwidth < win.b)) {
      throw InvalidArgument("TestBump: support must lie strictly inside I");
    }
    const double sq = detail::integrate_adaptive([](double u) { return std::exp(-2.0 / (1.0 - u * u)); }, -1.0, 1.0, 1e-15);
    amplitude_ = 1.0 / std::sqrt(halfwidth * sq);
    const double eta_max = halfwidth * xi_max + 4.0 * kStep;
    const auto count = static_cast<std::size_t>(std::ceil(eta_max / kStep)) + 3;
    table_.resize(count);
    for (std::size_t i = 0; i < count; ++i) table_[i] = unit_transform(static_cast<double>(i) * kStep);
  }

  [[nodiscard]] const LocalWindow& window() const { return win_; }
  [[nodiscard]] double center() const { return center_; }
  [[nodiscard]] double halfwidth() const { return halfwidth_; }
  [[nodiscard]] double xi_max() const { return xi_max_; }

  [[nodiscard]] double operator()(double x) const {
    const double u = (x - center_) / halfwidth_;
    if (std::abs(u) >= 1.0) return 0.0;
    return amplitude_ * std::exp(-1.0 / (1.0 - u * u));
  }

  /// Values at `count` equally spaced points of the support.
  [[nodiscard]] std::vector<double> samples(int count) const {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back((*this)(center_ - halfwidth_ + 2.0 * halfwidth_ * (i + 0.5) / count));
    return v;
  }

  [[nodiscard]] cplx fourier(double xi) const {
    if (std::abs(xi) > xi_max_) throw RangeError("TestBump: transform requested beyond xi_max");
    const double G = interpolate(std::abs(xi) * halfwidth_);
    const double mag = amplitude_ * halfwidth_ * G / std::sqrt(2.0 * std::numbers::pi);
    return mag * cplx{std::cos(xi * center_), -std::sin(xi * center_)};
  }

  /// Direct quadrature of the transform, bypassing the table.
  [[nodiscard]] cplx fourier_direct(double xi) const {
    const double G = unit_transform(std::abs(xi) * halfwidth_);
    const double mag = amplitude_ * halfwidth_ * G / std::sqrt(2.0 * std::numbers::pi);
    return mag * cplx{std::cos(xi * center_), -std::sin(xi * center_)};
  }

 private:
  static constexpr double kStep = 1.0 / 64.0;

  static double unit_transform(double eta) {
    return 2.0 * detail::integrate_adaptive([eta](double u) { return std::exp(-1.0 / (1.0 - u * u)) * std::cos(eta * u); },
                                            0.0, 1.0, 1e-14);
  }

  [[nodiscard]] double interpolate(double eta) const {
    const double x = eta / kStep;
    auto i = static_cast<std::ptrdiff_t>(std::floor(x));
    i = std::clamp<std::ptrdiff_t>(i - 1, 0, static_cast<std::ptrdiff_t>(table_.size()) - 4);
    // four-point Lagrange through i .. i+3
    double r = 0.0;
    for (int a = 0; a < 4; ++a) {
      double l = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (b != a) l *= (x - static_cast<double>(i + b)) / static_cast<double>(a - b);
      }
      r += l * table_[static_cast<std::size_t>(i + a)];
    }
    return r;
  }

  LocalWindow win_;
  double center_;
  double halfwidth_;
  double xi_max_;
  double amplitude_ = 1.0;
  std::vector<double> table_;
};

/// sum_{n <= N} |ghat(log n)|^2 (log n)^alpha w_n / n. For alpha != 0 the
/// n = 1 term, where log n = 0, is left out.
inline double duality_sum(const WeightSequence& w, double alpha, const TestBump& g, std::uint64_t N) {
  if (N > w.limit()) throw RangeError("duality_sum: N exceeds weight limit");
  if (std::log(static_cast<double>(N)) > g.xi_max()) throw RangeError("duality_sum: log N beyond the tabulated transform");
  detail::CompensatedSum acc;
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (w[n] == 0.0) continue;
    const double L = std::log(static_cast<double>(n));
    if (alpha != 0.0 && n == 1) continue;
    const double factor = alpha == 0.0 ? 1.0 : std::pow(L, alpha);
    acc += std::norm(g.fourier(L)) * factor * w[n] / static_cast<double>(n);
  }
  return acc.value();
}

/// Upper bound for the alpha = 0 embedding constant of polynomials of length N:
/// 2 pi times the top eigenvalue of the form g -> sum_n |ghat(log n)|^2 w_n / n
/// on L^2(I), by Nystrom discretization.
inline double duality_bound(const WeightSequence& w, const LocalWindow& win, std::uint64_t N, int nodes = 0) {
  win.validate();
  if (N > w.limit()) throw RangeError("duality_bound: N exceeds weight limit");
  const double logN = std::log(static_cast<double>(std::max<std::uint64_t>(N, 2)));
  if (nodes <= 0) nodes = 32 + static_cast<int>(std::ceil(4.0 * win.length() * logN));
  const auto rule = detail::composite_gauss_legendre(win.a, win.b, 1, nodes);
  const auto M = static_cast<Eigen::Index>(rule.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(M, M);
  Eigen::VectorXcd e(M);
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (w[n] == 0.0) continue;
    const double L = std::log(static_cast<double>(n));
    const double c = w[n] / static_cast<double>(n) / (2.0 * std::numbers::pi);
    for (Eigen::Index i = 0; i < M; ++i) {
      const double x = rule.nodes[static_cast<std::size_t>(i)];
      e(i) = std::sqrt(rule.weights[static_cast<std::size_t>(i)]) * cplx{std::cos(L * x), -std::sin(L * x)};
    }
    A.noalias() += c * (e * e.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  return 2.0 * std::numbers::pi * es.eigenvalues().maxCoeff();
}

/// g_k = sum over n in (e^k, e^{k+1}) of w_n n^{-s}, as a polynomial of length N.
inline DirichletPolynomial block_test_function(const WeightSequence& w, int k, std::uint64_t N) {
  if (k < 0) throw InvalidArgument("block_test_function: k must be nonnegative");
  if (N > w.limit()) throw RangeError("block_test_function: N exceeds weight limit");
  if (std::exp(k + 1.0) > static_cast<double>(N)) {
    throw RangeError("block_test_function: block (e^" + std::to_string(k) + ", e^" + std::to_string(k + 1) +
                     ") exceeds the truncation N = " + std::to_string(N));
  }
  DirichletPolynomial g(N);
  const auto lo = static_cast<std::uint64_t>(std::floor(std::exp(static_cast<double>(k)))) + 1;
  const auto hi = static_cast<std::uint64_t>(std::floor(std::exp(k + 1.0)));
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (w[n] > 0.0) g.set(n, w[n]);
  }
  return g;
}

inline DirichletPolynomial block_test_function(const WeightSequence& w, int k) {
  return block_test_function(w, k, w.limit());
}

/// I.i.d. complex Gaussian coefficients scaled by sqrt(w_n), so E ||F||^2 = #{n : w_n > 0}.
inline std::vector<DirichletPolynomial> random_family(const WeightSequence& w, std::uint64_t N, int count,
                                                      std::uint64_t seed) {
  if (N > w.limit()) throw RangeError("random_family: N exceeds weight limit");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<DirichletPolynomial> out;
  for (int i = 0; i < count; ++i) {
    DirichletPolynomial F(N);
    for (std::uint64_t n = 1; n <= N; ++n) {
      const double re = normal(rng);
      const double im = normal(rng);
      if (w[n] > 0.0) F.set(n, std::sqrt(w[n]) * cplx{re, im});
    }
    out.push_back(std::move(F));
  }
  return out;
}

/// Block functions g_k for every k with e^{k+1} <= N.
inline std::vector<DirichletPolynomial> block_family(const WeightSequence& w, std::uint64_t N) {
  std::vector<DirichletPolynomial> out;
  for (int k = 0; std::exp(k + 1.0) <= static_cast<double>(N); ++k) {
    DirichletPolynomial g = block_test_function(w, k, N);
    bool nonzero = false;
    for (std::uint64_t n = 1; n <= N && !nonzero; ++n) nonzero = g[n] != cplx{0.0, 0.0};
    if (nonzero) out.push_back(std::move(g));
  }
  return out;
}

struct EmbeddingEstimate {
  double constant = 0.0;           // max ratio over the family
  std::size_t argmax = 0;          // index of the maximizing member
  std::size_t family_size = 0;
  double quadrature_error = 0.0;   // relative error estimate at the maximizer
  std::vector<double> ratios;
};

/// Empirical lower bound for the local embedding constant:
/// max over the family of (local norm of F) / ||F||_{H_w}^2.
inline EmbeddingEstimate embedding_constant(const WeightSequence& w, double alpha, const LocalWindow& win,
                                            const std::vector<DirichletPolynomial>& family,
                                            QuadratureOptions opt = {}) {
  if (family.empty()) throw InvalidArgument("embedding_constant: empty family");
  std::uint64_t N = 1;
  for (const auto& F : family) N = std::max(N, F.limit());
  const LocalNormEvaluator eval(alpha, win, N, opt);
  EmbeddingEstimate est;
  est.family_size = family.size();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double norm = hw_norm(family[i], w);
    if (!(norm > 0.0)) throw InvalidArgument("embedding_constant: family member " + std::to_string(i) + " is zero");
    const LocalNorm ln = eval(family[i]);
    const double r = ln.value / (norm * norm);
    est.ratios.push_back(r);
    if (i == 0 || r > est.constant) {
      est.constant = r;
      est.argmax = i;
      est.quadrature_error = ln.value > 0.0 ? ln.error_estimate / ln.value : 0.0;
    }
  }
  return est;
}

}  // namespace dlab
