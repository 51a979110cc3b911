#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace dlab::detail {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    // recompute derivative at the converged node
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Composite Gauss-Legendre rule on [a, b] with `panels` equal sub-intervals.
inline QuadratureRule composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be positive");
  const QuadratureRule base = gauss_legendre(nodes_per_panel);
  QuadratureRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * base.size());
  out.weights.reserve(out.nodes.capacity());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < base.size(); ++i) {
      out.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      out.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return out;
}

// Gauss-Jacobi rule on [-1, 1] for the weight (1 + x)^b, b > -1, by the
// Golub-Welsch eigenvalue method.
inline QuadratureRule gauss_jacobi(int n, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be positive");
  if (!(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponent must exceed -1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + b;
    J(k, k) = k == 0 ? b / (b + 2.0) : (b * b) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double m = k + 1.0;
      const double t = 2.0 * m + b;
      const double beta = 4.0 * m * m * (m + b) * (m + b) / (t * t * (t + 1.0) * (t - 1.0));
      J(k, k + 1) = J(k + 1, k) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp2(b + 1.0) / (b + 1.0);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v * v;
  }
  return rule;
}

template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

// Adaptive Gauss-Kronrod-free bisection using two Gauss-Legendre orders as the
// error estimate. Good enough for smooth integrands on bounded intervals.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol, int depth = 0) {
  static const QuadratureRule lo = gauss_legendre(10);
  static const QuadratureRule hi = gauss_legendre(20);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s_lo = 0.0;
  double s_hi = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) s_lo += lo.weights[i] * f(mid + half * lo.nodes[i]);
  for (std::size_t i = 0; i < hi.size(); ++i) s_hi += hi.weights[i] * f(mid + half * hi.nodes[i]);
  s_lo *= half;
  s_hi *= half;
  if (std::abs(s_hi - s_lo) <= tol || depth >= 40) return s_hi;
  return integrate_adaptive(f, a, mid, 0.5 * tol, depth + 1) +
         integrate_adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace dlab::detail
