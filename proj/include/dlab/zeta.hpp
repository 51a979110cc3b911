#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "dlab/detail/error.hpp"
#include "dlab/detail/summation.hpp"

namespace dlab {

using cplx = std::complex<double>;

/// s = sigma + i t.
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  [[nodiscard]] cplx value() const { return {sigma, t}; }
  [[nodiscard]] ComplexPoint conj() const { return {sigma, -t}; }

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;
};

/// A truncated series value together with a bound on the discarded tail.
struct SeriesValue {
  cplx value;
  double tail_bound = 0.0;
};

namespace detail {

inline void require_finite(ComplexPoint s, const char* where) {
  if (!std::isfinite(s.sigma) || !std::isfinite(s.t)) {
    throw DomainError(std::string(where) + ": non-finite argument");
  }
}

// exp(z) - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
  if (std::abs(z) < 1e-2) {
    cplx term = z;
    cplx sum = z;
    for (int k = 2; k <= 8; ++k) {
      term *= z / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  return std::exp(z) - 1.0;
}

// n^{-s} = exp(-s log n)
inline cplx power_minus(double log_n, cplx s) { return std::exp(-s * log_n); }

inline constexpr std::array<double, 15> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Number of Borwein terms needed for ~1e-13 absolute accuracy at height t.
inline int borwein_terms(double t) {
  const double at = std::abs(t);
  const double need = 32.0 + std::numbers::pi * at + std::log(3.0 * (1.0 + 2.0 * at));
  return static_cast<int>(std::ceil(need / std::log(3.0 + std::sqrt(8.0)))) + 4;
}

inline int small_mobius(int k) {
  int result = 1;
  for (int p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      k /= p;
      if (k % p == 0) return 0;
      result = -result;
    }
  }
  if (k > 1) result = -result;
  return result;
}

}  // namespace detail

/// Riemann zeta by Euler-Maclaurin summation. Valid on the whole plane minus
/// s = 1; serves as the independent check for `zeta`.
inline cplx zeta_euler_maclaurin(ComplexPoint sp) {
  detail::require_finite(sp, "zeta_euler_maclaurin");
  const cplx s = sp.value();
  if (sp.sigma == 1.0 && sp.t == 0.0) throw DomainError("zeta: pole at s = 1");
  const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
  detail::CompensatedComplexSum sum;
  for (int n = 1; n < N; ++n) sum += detail::power_minus(std::log(static_cast<double>(n)), s);
  const double logN = std::log(static_cast<double>(N));
  const cplx Ns = detail::power_minus(logN, s);  // N^{-s}
  sum += Ns * static_cast<double>(N) / (s - 1.0);
  sum += 0.5 * Ns;
  // B_{2k}/(2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
  cplx rising = s;                                // (s)_{1}
  cplx npow = Ns / static_cast<double>(N);        // N^{-s-1}
  double factorial = 2.0;                         // (2k)!
  for (std::size_t k = 1; k <= detail::kBernoulliEven.size(); ++k) {
    const cplx term = detail::kBernoulliEven[k - 1] / factorial * rising * npow;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum.value())) break;
    const double kk = static_cast<double>(k);
    rising *= (s + (2.0 * kk - 1.0)) * (s + 2.0 * kk);
    npow /= static_cast<double>(N) * static_cast<double>(N);
    factorial *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
  }
  return sum.value();
}

/// Riemann zeta for Re s > 0, s != 1, through the alternating eta series with
/// Borwein's (Cohen-Villegas-Zagier type) acceleration: zeta = eta / (1 - 2^{1-s}).
/// Accurate to about 1e-12 absolute for sigma >= 1/2, |t| <= 100.
inline cplx zeta(ComplexPoint sp) {
  detail::require_finite(sp, "zeta");
  if (sp.sigma == 1.0 && sp.t == 0.0) throw DomainError("zeta: pole at s = 1");
  if (sp.sigma <= 0.0) throw DomainError("zeta: unsupported region sigma <= 0");
  const cplx s = sp.value();
  const cplx denom = -detail::expm1((1.0 - s) * std::numbers::ln2);  // 1 - 2^{1-s}
  const int n = detail::borwein_terms(sp.t);
  // Near the zeros of 1 - 2^{1-s} on sigma = 1, or beyond the overflow-safe
  // coefficient range, the eta route loses accuracy.
  if (std::abs(denom) < 1e-3 || n > 380) return zeta_euler_maclaurin(sp);

  // d_k / d_n with d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0;
  double acc = 1.0;
  d[0] = acc;
  for (int i = 0; i < n; ++i) {
    term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
    acc += term;
    d[static_cast<std::size_t>(i) + 1] = acc;
  }
  const double dn = d[static_cast<std::size_t>(n)];
  detail::CompensatedComplexSum eta;
  for (int k = 0; k < n; ++k) {
    const double c = (d[static_cast<std::size_t>(k)] - dn) / dn;
    const cplx v = c * detail::power_minus(std::log(static_cast<double>(k + 1)), s);
    eta += (k % 2 == 0) ? v : -v;
  }
  return -eta.value() / denom;
}

inline double zeta(double sigma) { return zeta(ComplexPoint{sigma, 0.0}).real(); }

/// Principal branch of log zeta(s).
inline cplx log_zeta(ComplexPoint s) {
  const cplx z = zeta(s);
  if (s.t == 0.0 && s.sigma > 1.0) return std::log1p(z.real() - 1.0);
  return std::log(z);
}

/// zeta(s) - 1 for large sigma without cancellation beyond what zeta carries.
inline cplx zeta_minus_one(ComplexPoint s) { return zeta(s) - 1.0; }

/// Prime zeta zeta_P(s) = sum_p p^{-s} via the Möbius-log expansion
/// sum_k mu(k)/k log zeta(k s). Terms with k sigma > 50 are dropped and bounded.
inline SeriesValue prime_zeta_series(ComplexPoint sp) {
  detail::require_finite(sp, "prime_zeta");
  if (sp.sigma <= 1.0) throw DomainError("prime_zeta: requires sigma > 1");
  detail::CompensatedComplexSum sum;
  int k = 1;
  for (; k * sp.sigma <= 50.0; ++k) {
    const int mu = detail::small_mobius(k);
    if (mu == 0) continue;
    const ComplexPoint ks{k * sp.sigma, k * sp.t};
    const cplx lz = std::abs(zeta_minus_one(ks)) < 0.5 ? std::log(1.0 + zeta_minus_one(ks)) : log_zeta(ks);
    sum += static_cast<double>(mu) / k * lz;
  }
  // |log zeta(k s)| <= 2 * 2^{-k sigma} once k sigma > 50.
  const double r = std::exp2(-sp.sigma);
  const double tail = 2.0 * std::pow(r, static_cast<double>(k)) / (static_cast<double>(k) * (1.0 - r));
  return {sum.value(), tail};
}

inline cplx prime_zeta(ComplexPoint s) { return prime_zeta_series(s).value; }
inline double prime_zeta(double sigma) { return prime_zeta(ComplexPoint{sigma, 0.0}).real(); }

/// Direct summation over primes p <= prime_limit (own Eratosthenes sieve) plus the
/// integral tail E1((sigma-1) log P). Real sigma > 1 only; independent of the
/// Möbius-log route.
inline SeriesValue prime_zeta_direct(double sigma, std::uint64_t prime_limit = 20'000'000) {
  if (sigma <= 1.0) throw DomainError("prime_zeta_direct: requires sigma > 1");
  std::vector<bool> composite(prime_limit + 1, false);
  detail::CompensatedSum sum;
  for (std::uint64_t i = 2; i <= prime_limit; ++i) {
    if (composite[i]) continue;
    sum += std::exp(-sigma * std::log(static_cast<double>(i)));
    for (std::uint64_t j = i * i; j <= prime_limit; j += i) composite[j] = true;
  }
  const double x = (sigma - 1.0) * std::log(static_cast<double>(prime_limit));
  const double tail = -std::expint(-x);  // E1(x)
  return {cplx(sum.value() + tail, 0.0), tail};
}

enum class AbscissaEquation {
  PrimeZetaEqualsOne,  // zeta_P(rho) = 1
  ZetaEqualsTwo,       // zeta(rho_1) = 2
};

/// Unique real root > 1 of the chosen equation; bisection then Newton.
inline double solve_abscissa(AbscissaEquation eq) {
  auto f = [eq](double x) {
    return eq == AbscissaEquation::PrimeZetaEqualsOne ? prime_zeta(x) - 1.0 : zeta(x) - 2.0;
  };
  double lo = 1.05;
  double hi = 3.0;
  double flo = f(lo);
  if (flo <= 0.0 || f(hi) >= 0.0) throw DomainError("solve_abscissa: bracket failure");
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 20; ++iter) {
    const double h = 1e-6;
    const double deriv = (f(x + h) - f(x - h)) / (2.0 * h);
    const double step = f(x) / deriv;
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return x;
}

inline double rho_prime_zeta() {
  static const double value = solve_abscissa(AbscissaEquation::PrimeZetaEqualsOne);
  return value;
}

inline double rho_zeta_two() {
  static const double value = solve_abscissa(AbscissaEquation::ZetaEqualsTwo);
  return value;
}

enum class KernelFamily {
  Dalpha,        // c_alpha (s + conj(xi) - 1)^{alpha - 1}; log form at alpha = 1
  ZetaPower,     // zeta(s + conj(xi))^gamma
  LogZeta,       // log zeta(s + conj(xi))
  McCarthyPick,  // 1 / (2 - zeta(s + conj(xi)))
  Besov,         // (1 - zeta_P(s + conj(xi)))^{-gamma}, or -log(1 - zeta_P) at gamma = 0
};

inline std::string to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::Dalpha: return "dalpha";
    case KernelFamily::ZetaPower: return "zeta_power";
    case KernelFamily::LogZeta: return "log_zeta";
    case KernelFamily::McCarthyPick: return "mccarthy_pick";
    case KernelFamily::Besov: return "besov";
  }
  return "unknown";
}

inline KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "dalpha") return KernelFamily::Dalpha;
  if (name == "zeta_power") return KernelFamily::ZetaPower;
  if (name == "log_zeta") return KernelFamily::LogZeta;
  if (name == "mccarthy_pick") return KernelFamily::McCarthyPick;
  if (name == "besov") return KernelFamily::Besov;
  throw InvalidArgument("unknown kernel family: " + name);
}

struct KernelSpec {
  KernelFamily family = KernelFamily::Dalpha;
  double parameter = 0.0;  // alpha for dalpha, gamma for zeta_power / besov
  ComplexPoint anchor;
};

/// c_alpha for the half-plane D_alpha kernels; 1 for the Szegő case alpha = 0.
inline double dalpha_constant(double alpha) {
  if (alpha < 0.0) return -alpha * std::exp2(-alpha - 1.0);
  if (alpha == 0.0) return 1.0;
  if (alpha < 1.0) return std::exp2(alpha - 1.0) / (1.0 - alpha);
  return 1.0 / std::numbers::pi;
}

inline constexpr double kRegionMargin = 1e-9;

/// Reproducing kernel of the chosen family at anchor xi, evaluated at s.
/// Principal branches throughout.
inline cplx kernel_eval(const KernelSpec& spec, ComplexPoint s) {
  detail::require_finite(s, "kernel_eval");
  const ComplexPoint z{s.sigma + spec.anchor.sigma, s.t - spec.anchor.t};
  const cplx zc = z.value();
  auto guard = [&](double abscissa) {
    if (!(z.sigma > abscissa + kRegionMargin)) {
      throw DomainError("kernel_eval[" + to_string(spec.family) + "]: Re(s + conj(xi)) = " +
                        std::to_string(z.sigma) + " is not above " + std::to_string(abscissa));
    }
  };
  switch (spec.family) {
    case KernelFamily::Dalpha: {
      const double alpha = spec.parameter;
      if (alpha > 1.0) throw InvalidArgument("kernel_eval[dalpha]: alpha must be <= 1");
      guard(1.0);
      const cplx w = zc - 1.0;
      if (alpha == 1.0) return std::log(1.0 / w) / std::numbers::pi;
      if (alpha == 0.0) return 1.0 / w;
      return dalpha_constant(alpha) * std::pow(w, alpha - 1.0);
    }
    case KernelFamily::ZetaPower: {
      const double gamma = spec.parameter;
      if (!(gamma > 0.0)) throw InvalidArgument("kernel_eval[zeta_power]: gamma must be positive");
      guard(1.0);
      const cplx zv = zeta(z);
      if (gamma == std::floor(gamma) && gamma <= 64.0) {
        cplx r = 1.0;
        for (int i = 0; i < static_cast<int>(gamma); ++i) r *= zv;
        return r;
      }
      return std::exp(gamma * std::log(zv));
    }
    case KernelFamily::LogZeta:
      guard(1.0);
      return log_zeta(z);
    case KernelFamily::McCarthyPick:
      guard(rho_zeta_two());
      return 1.0 / (2.0 - zeta(z));
    case KernelFamily::Besov: {
      const double gamma = spec.parameter;
      if (gamma < 0.0) throw InvalidArgument("kernel_eval[besov]: gamma must be nonnegative");
      guard(rho_prime_zeta());
      const cplx one_minus = 1.0 - prime_zeta(z);
      if (gamma == 0.0) return -std::log(one_minus);
      return std::exp(-gamma * std::log(one_minus));
    }
  }
  throw InvalidArgument("kernel_eval: unknown family");
}

namespace detail {

template <class T>
T ring_mul(const T& a, const T& b) {
  if constexpr (std::is_integral_v<T>) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("Dirichlet convolution overflow");
    return r;
  } else {
    return a * b;
  }
}

template <class T>
T ring_add(const T& a, const T& b) {
  if constexpr (std::is_integral_v<T>) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("Dirichlet convolution overflow");
    return r;
  } else {
    return a + b;
  }
}

}  // namespace detail

/// Dirichlet convolution (a * b)(n) = sum_{d | n} a(d) b(n/d) for n <= N.
/// Arrays are indexed by n; slot 0 is unused and left zero.
template <class T>
std::vector<T> dirichlet_convolve(std::span<const T> a, std::span<const T> b) {
  const std::size_t N = std::min(a.size(), b.size()) - 1;
  std::vector<T> c(N + 1, T{});
  for (std::size_t d = 1; d <= N; ++d) {
    if (a[d] == T{}) continue;
    for (std::size_t m = d, q = 1; m <= N; m += d, ++q) c[m] = detail::ring_add(c[m], detail::ring_mul(a[d], b[q]));
  }
  return c;
}

/// Coefficients b with a * b = identity up to N. Integral types stay exact and
/// require a_1 = +-1.
template <class T>
std::vector<T> dirichlet_inverse(std::span<const T> a) {
  if (a.size() < 2) throw InvalidArgument("dirichlet_inverse: need at least a_1");
  const std::size_t N = a.size() - 1;
  const T a1 = a[1];
  if (a1 == T{}) throw DomainError("dirichlet_inverse: a_1 = 0, series is not invertible");
  if constexpr (std::is_integral_v<T>) {
    if (a1 != T{1} && a1 != T{-1}) {
      throw DomainError("dirichlet_inverse: a_1 must be a unit for exact integer inversion");
    }
  }
  std::vector<T> acc(N + 1, T{});  // sum over proper divisors d of a(n/d) b(d)
  std::vector<T> b(N + 1, T{});
  for (std::size_t d = 1; d <= N; ++d) {
    if (d == 1) {
      b[1] = T{1} / a1;
    } else {
      if constexpr (std::is_integral_v<T>) {
        b[d] = a1 == T{1} ? T{0} - acc[d] : acc[d];
      } else {
        b[d] = -acc[d] / a1;
      }
    }
    if (b[d] == T{}) continue;
    for (std::size_t m = 2 * d, q = 2; m <= N; m += d, ++q) {
      acc[m] = detail::ring_add(acc[m], detail::ring_mul(a[q], b[d]));
    }
  }
  return b;
}

}  // namespace dlab
