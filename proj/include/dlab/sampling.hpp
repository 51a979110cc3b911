#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlab/arithmetic.hpp"
#include "dlab/detail/error.hpp"
#include "dlab/detail/summation.hpp"
#include "dlab/weights.hpp"

namespace dlab {

struct Atom {
  double position;
  double mass;
};

/// Finite atomic measure on [lower_bound, domain_bound]. Intervals are half-open
/// [a, b); asking about mass beyond the horizon is an error, not zero.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  AtomicMeasure(std::vector<Atom> atoms, double domain_bound, double lower_bound = 0.0)
      : atoms_(std::move(atoms)), upper_(domain_bound), lower_(lower_bound) {
    if (!(lower_ <= upper_)) throw InvalidArgument("AtomicMeasure: empty domain");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (!(atoms_[i].mass > 0.0) || !std::isfinite(atoms_[i].mass)) throw InvalidArgument("AtomicMeasure: masses must be positive");
      if (i > 0 && !(atoms_[i].position > atoms_[i - 1].position)) {
        throw InvalidArgument("AtomicMeasure: positions must be strictly increasing");
      }
      if (atoms_[i].position < lower_ || atoms_[i].position > upper_) throw InvalidArgument("AtomicMeasure: atom outside its domain");
    }
    prefix_.assign(atoms_.size() + 1, 0.0);
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      acc += atoms_[i].mass;
      prefix_[i + 1] = acc.value();
    }
  }

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] double domain_bound() const { return upper_; }
  [[nodiscard]] double lower_bound() const { return lower_; }
  [[nodiscard]] std::vector<double> positions() const {
    std::vector<double> p;
    p.reserve(atoms_.size());
    for (const auto& a : atoms_) p.push_back(a.position);
    return p;
  }

  /// Index of the first atom with position >= x.
  [[nodiscard]] std::size_t first_at_or_after(double x) const {
    return static_cast<std::size_t>(
        std::lower_bound(atoms_.begin(), atoms_.end(), x, [](const Atom& a, double v) { return a.position < v; }) -
        atoms_.begin());
  }
  /// Index of the first atom with position > x.
  [[nodiscard]] std::size_t first_after(double x) const {
    return static_cast<std::size_t>(
        std::upper_bound(atoms_.begin(), atoms_.end(), x, [](double v, const Atom& a) { return v < a.position; }) -
        atoms_.begin());
  }

  /// Mass of atoms in [i, j) by index.
  [[nodiscard]] double mass_between(std::size_t i, std::size_t j) const { return j > i ? prefix_[j] - prefix_[i] : 0.0; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> prefix_;
  double upper_ = 0.0;
  double lower_ = 0.0;
};

/// nu = sum_n delta_{log n} w_n / n; the symmetric variant adds delta_{-log n},
/// so the atom at 0 carries 2 w_1. Zero-mass entries are dropped.
inline AtomicMeasure measure_from_weights(const WeightSequence& w, bool symmetric = false) {
  const double top = std::log(static_cast<double>(w.limit()));
  std::vector<Atom> right;
  for (std::uint64_t n = 1; n <= w.limit(); ++n) {
    if (w[n] > 0.0) right.push_back({std::log(static_cast<double>(n)), w[n] / static_cast<double>(n)});
  }
  if (!symmetric) return {std::move(right), top, 0.0};
  std::vector<Atom> all;
  all.reserve(2 * right.size());
  for (auto it = right.rbegin(); it != right.rend(); ++it) {
    if (it->position > 0.0) all.push_back({-it->position, it->mass});
  }
  for (const auto& a : right) all.push_back(a.position == 0.0 ? Atom{0.0, 2.0 * a.mass} : a);
  return {std::move(all), top, -top};
}

/// nu[a, b).
inline double interval_mass(const AtomicMeasure& nu, double a, double b) {
  if (b > nu.domain_bound()) {
    throw HorizonError("interval_mass: b = " + std::to_string(b) + " beyond the horizon " + std::to_string(nu.domain_bound()));
  }
  if (a < nu.lower_bound() && nu.lower_bound() < 0.0) {
    throw HorizonError("interval_mass: a = " + std::to_string(a) + " below the horizon " + std::to_string(nu.lower_bound()));
  }
  if (!(a < b)) return 0.0;
  return nu.mass_between(nu.first_at_or_after(a), nu.first_at_or_after(b));
}

struct CarlesonResult {
  double C_hat = 0.0;
  double worst_xi = 0.0;
};

/// max over the grid of nu[xi, xi+1) / (1 + xi^2)^beta.
inline CarlesonResult carleson_check(const AtomicMeasure& nu, double beta, const std::vector<double>& xi_grid) {
  CarlesonResult r;
  bool first = true;
  for (double xi : xi_grid) {
    const double v = interval_mass(nu, xi, xi + 1.0) / std::pow(1.0 + xi * xi, beta);
    if (first || v > r.C_hat) {
      r.C_hat = v;
      r.worst_xi = xi;
      first = false;
    }
  }
  return r;
}

/// Equally spaced xi in [lo, hi] with the given step.
inline std::vector<double> xi_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw InvalidArgument("xi_grid: step must be positive");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double x = lo + i * step;
    if (x > hi + 1e-12) break;
    g.push_back(x);
  }
  return g;
}

/// The points r k for which nu[rk, r(k+1)) >= delta (1 + (rk)^2)^beta, over
/// all blocks inside the domain.
inline std::vector<double> lambda_set(const AtomicMeasure& nu, double beta, double r, double delta) {
  if (!(r > 0.0) || !(delta > 0.0)) throw InvalidArgument("lambda_set: r and delta must be positive");
  std::vector<double> out;
  const auto k0 = static_cast<long long>(std::ceil(nu.lower_bound() / r));
  for (long long k = k0;; ++k) {
    const double a = r * static_cast<double>(k);
    const double b = r * static_cast<double>(k + 1);
    if (b > nu.domain_bound()) break;
    if (interval_mass(nu, a, b) >= delta * std::pow(1.0 + a * a, beta)) out.push_back(a);
  }
  return out;
}

struct DensityReport {
  std::vector<double> window_lengths;
  std::vector<double> inf_counts;  // min over (xi, xi + r) inside [0, T] of count / r
  std::vector<double> error_bars;  // 2 / r: finite-window resolution
  std::optional<double> extrapolated;
};

/// Exact finite-window Beurling density: for each r, the infimum of
/// |(xi, xi + r) ∩ points| / r over xi in [0, T - r]. The count is piecewise
/// constant in xi, so the minimum is attained at an endpoint or where a
/// point enters or leaves the window.
inline DensityReport beurling_lower_density(std::vector<double> points, const std::vector<double>& r_list, double T) {
  if (!(T > 0.0)) throw InvalidArgument("beurling_lower_density: window length must be positive");
  std::sort(points.begin(), points.end());
  if (!points.empty() && (points.front() < 0.0 || points.back() > T)) {
    throw RangeError("beurling_lower_density: points outside the window [0, T]");
  }
  auto count_open = [&](double lo, double hi) {
    const auto a = std::upper_bound(points.begin(), points.end(), lo);
    const auto b = std::lower_bound(points.begin(), points.end(), hi);
    return b > a ? static_cast<double>(b - a) : 0.0;
  };
  DensityReport rep;
  for (double r : r_list) {
    if (!(r > 0.0) || r > T / 5.0) {
      throw InvalidArgument("beurling_lower_density: r = " + std::to_string(r) + " too large for the window (need r <= T/5)");
    }
    std::vector<double> cand{0.0, T - r};
    for (double p : points) {
      cand.push_back(p);
      cand.push_back(p - r);
    }
    double best = std::numeric_limits<double>::infinity();
    for (double xi : cand) {
      if (xi < 0.0 || xi > T - r) continue;
      best = std::min(best, count_open(xi, xi + r));
    }
    rep.window_lengths.push_back(r);
    rep.inf_counts.push_back(best / r);
    rep.error_bars.push_back(2.0 / r);
  }
  if (!rep.inf_counts.empty()) rep.extrapolated = rep.inf_counts.back();
  return rep;
}

struct ContinuityResult {
  bool success = false;
  double R = 0.0;
  double h = 0.0;
  double blocking_x = 0.0;  // on failure: the violation with the largest |x| at the smallest h tried
};

/// Looks for R, h with nu[x, x+h] <= eps (1 + x^2)^beta whenever |x| >= R, for
/// h = 1, 1/2, ..., 2^{-levels}. For each h the smallest admissible R is found
/// exactly from the candidate windows; a witness must leave at least half the
/// horizon to the right of R.
inline ContinuityResult continuity_at_infinity(const AtomicMeasure& nu, double beta, double eps, int levels = 20) {
  if (!(eps > 0.0)) throw InvalidArgument("continuity_at_infinity: eps must be positive");
  const auto& atoms = nu.atoms();
  const double top = nu.domain_bound();
  const double bottom = nu.lower_bound();
  ContinuityResult res;
  for (int j = 0; j <= levels; ++j) {
    const double h = std::ldexp(1.0, -j);
    // closed window [x, x + h]
    auto ratio = [&](double x) {
      const double m = nu.mass_between(nu.first_at_or_after(x), nu.first_after(x + h));
      return m / std::pow(1.0 + x * x, beta);
    };
    double worst = -1.0;  // largest |x| of a violating window
    double worst_x = 0.0;
    auto consider = [&](double x) {
      if (x < bottom || x + h > top) return;
      if (ratio(x) > eps && std::abs(x) > worst) {
        worst = std::abs(x);
        worst_x = x;
      }
    };
    for (const auto& a : atoms) {
      consider(a.position);
      consider(a.position - h);
    }
    if (worst < 0.0) {
      res = {true, 0.0, h, 0.0};
      return res;
    }
    const double R = std::nextafter(worst, std::numeric_limits<double>::infinity());
    if (R <= 0.5 * top) {
      res = {true, R, h, 0.0};
      return res;
    }
    res = {false, R, h, worst_x};
  }
  return res;
}

/// Weights of the Kadec example with blocks k = 1..K: w_{n_k} = n_k, else 0.
inline WeightSequence kadec_example(int K, const SieveTable& table) {
  if (K < 1) throw InvalidArgument("kadec_example: K must be positive");
  const double top = std::exp(K + 0.2);
  if (top > static_cast<double>(table.limit())) {
    throw RangeError("kadec_example: e^{K+1/5} exceeds the sieve limit " + std::to_string(table.limit()));
  }
  const auto N = static_cast<std::uint64_t>(std::floor(top));
  Params p{{"K", static_cast<double>(K)}};
  WeightSequence base = catalog("kadec", {}, N, table);
  return {"kadec", p, {base.values().begin(), base.values().end()}, std::nullopt};
}

/// The measure of the Kadec example without materializing the weights: unit
/// atoms at log n_k, k = 1..K, on the horizon [0, K + 1/5]. Beyond 64-bit n_k
/// the nearest integer to e^k has log within 1e-18 of k, so the atom sits at k.
inline AtomicMeasure kadec_measure(int K) {
  if (K < 1) throw InvalidArgument("kadec_measure: K must be positive");
  std::vector<Atom> atoms;
  for (int k = 1; k <= K; ++k) {
    const double pos = k <= 43 ? static_cast<double>(std::log(static_cast<long double>(kadec_point(k)))) : static_cast<double>(k);
    atoms.push_back({pos, 1.0});
  }
  return {std::move(atoms), K + 0.2, 0.0};
}

struct LowerMassResult {
  bool success = false;
  double L = 0.0;
  double inf_value = 0.0;
  double worst_xi = 0.0;
};

/// Smallest integer L <= L_max with inf over xi in [xi_min, horizon - L] of
/// nu[xi - L, xi] (1 + xi^2)^{alpha/2} > 0. The infimum is taken over the
/// breakpoints where an atom enters or leaves the window.
inline LowerMassResult lower_mass_check(const AtomicMeasure& nu, double alpha, int L_max = 10, double xi_min = 5.0) {
  const auto& atoms = nu.atoms();
  LowerMassResult best;
  for (int L = 1; L <= L_max; ++L) {
    const double hi = nu.domain_bound() - L;
    if (hi < xi_min) break;
    std::vector<double> cand{xi_min, hi};
    for (const auto& a : atoms) {
      cand.push_back(std::nextafter(a.position, -std::numeric_limits<double>::infinity()));
      cand.push_back(std::nextafter(a.position + L, std::numeric_limits<double>::infinity()));
    }
    double inf = std::numeric_limits<double>::infinity();
    double at = xi_min;
    for (double xi : cand) {
      if (xi < xi_min || xi > hi) continue;
      const double m = nu.mass_between(nu.first_at_or_after(xi - L), nu.first_after(xi));
      const double v = m * std::pow(1.0 + xi * xi, alpha / 2.0);
      if (v < inf) {
        inf = v;
        at = xi;
      }
    }
    best = {inf > 0.0, static_cast<double>(L), inf, at};
    if (best.success) return best;
  }
  return best;
}

}  // namespace dlab
