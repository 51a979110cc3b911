#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dlab/arithmetic.hpp"
#include "dlab/detail/error.hpp"
#include "dlab/detail/summation.hpp"
#include "dlab/weights.hpp"
#include "dlab/zeta.hpp"

namespace dlab {

/// sum_{n=1}^{N} a_n n^{-s}. Coefficients are indexed by n; slot 0 is unused.
class DirichletPolynomial {
 public:
  DirichletPolynomial() : a_(2, cplx{0.0, 0.0}) {}
  explicit DirichletPolynomial(std::uint64_t N) : a_(N + 1, cplx{0.0, 0.0}) {
    if (N < 1) throw InvalidArgument("DirichletPolynomial: N must be positive");
  }
  /// From a_1..a_N (no leading slot).
  static DirichletPolynomial from_coefficients(const std::vector<cplx>& a) {
    DirichletPolynomial F(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) F.set(i + 1, a[i]);
    return F;
  }

  [[nodiscard]] std::uint64_t limit() const { return a_.size() - 1; }
  [[nodiscard]] cplx operator[](std::uint64_t n) const { return a_.at(n); }
  void set(std::uint64_t n, cplx v) {
    if (n < 1 || n > limit()) throw RangeError("DirichletPolynomial: index " + std::to_string(n) + " outside 1..N");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidArgument("DirichletPolynomial: non-finite coefficient");
    a_[n] = v;
  }

  DirichletPolynomial& operator*=(cplx c) {
    for (auto& v : a_) v *= c;
    return *this;
  }

  friend bool operator==(const DirichletPolynomial&, const DirichletPolynomial&) = default;

 private:
  std::vector<cplx> a_;
};

namespace detail {

inline void check_membership(const DirichletPolynomial& F, const WeightSequence& w) {
  if (F.limit() > w.limit()) {
    throw RangeError("H_w: polynomial length " + std::to_string(F.limit()) + " exceeds weight limit " +
                     std::to_string(w.limit()));
  }
  for (std::uint64_t n = 1; n <= F.limit(); ++n) {
    if (w[n] == 0.0 && F[n] != cplx{0.0, 0.0}) {
      throw MembershipError("H_w: a_" + std::to_string(n) + " is nonzero but w_" + std::to_string(n) +
                            " = 0 (excluded basis direction)");
    }
  }
}

}  // namespace detail

/// <F, G>_{H_w} = sum a_n conj(b_n) / w_n over n with w_n > 0.
inline cplx inner_product(const DirichletPolynomial& F, const DirichletPolynomial& G, const WeightSequence& w) {
  detail::check_membership(F, w);
  detail::check_membership(G, w);
  detail::CompensatedComplexSum acc;
  const std::uint64_t M = std::min(F.limit(), G.limit());
  for (std::uint64_t n = 1; n <= M; ++n) {
    if (w[n] > 0.0) acc += F[n] * std::conj(G[n]) / w[n];
  }
  return acc.value();
}

inline double hw_norm(const DirichletPolynomial& F, const WeightSequence& w) {
  detail::check_membership(F, w);
  detail::CompensatedSum acc;
  for (std::uint64_t n = 1; n <= F.limit(); ++n) {
    if (w[n] > 0.0) acc += std::norm(F[n]) / w[n];
  }
  return std::sqrt(acc.value());
}

inline cplx evaluate(const DirichletPolynomial& F, ComplexPoint s) {
  detail::require_finite(s, "evaluate");
  const cplx z = s.value();
  detail::CompensatedComplexSum acc;
  for (std::uint64_t n = 1; n <= F.limit(); ++n) {
    if (F[n] != cplx{0.0, 0.0}) acc += F[n] * std::exp(-z * std::log(static_cast<double>(n)));
  }
  return acc.value();
}

/// Truncated reproducing kernel of H_w at xi: coefficients w_n n^{-conj(xi)}.
inline DirichletPolynomial hw_kernel(const WeightSequence& w, ComplexPoint xi, std::uint64_t N) {
  if (N > w.limit()) throw RangeError("hw_kernel: N exceeds weight limit");
  detail::require_finite(xi, "hw_kernel");
  const cplx zb = std::conj(xi.value());
  DirichletPolynomial k(N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (w[n] > 0.0) k.set(n, w[n] * std::exp(-zb * std::log(static_cast<double>(n))));
  }
  return k;
}

/// Power-series side of the Bohr lift. Exponent vectors are indexed by prime
/// position (z_1 <-> 2, z_2 <-> 3, ...) and stored without trailing zeros.
struct MultiIndexSeries {
  using Exponents = std::vector<std::uint32_t>;
  std::map<Exponents, cplx> terms;

  static Exponents normalized(Exponents e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
  }
  void add(Exponents e, cplx c) { terms[normalized(std::move(e))] += c; }

  friend bool operator==(const MultiIndexSeries&, const MultiIndexSeries&) = default;
};

namespace detail {

inline std::size_t prime_index(const SieveTable& table, std::uint64_t p) {
  const auto& P = table.primes();
  const auto it = std::lower_bound(P.begin(), P.end(), p);
  if (it == P.end() || *it != p) throw InvalidArgument("prime_index: " + std::to_string(p) + " is not a tabulated prime");
  return static_cast<std::size_t>(it - P.begin());
}

}  // namespace detail

inline MultiIndexSeries bohr_lift(const DirichletPolynomial& F, const SieveTable& table) {
  if (F.limit() > table.limit()) throw RangeError("bohr_lift: N exceeds sieve limit");
  MultiIndexSeries G;
  for (std::uint64_t n = 1; n <= F.limit(); ++n) {
    if (F[n] == cplx{0.0, 0.0}) continue;
    MultiIndexSeries::Exponents e;
    for (const auto& [p, k] : factorize(table, n).pairs) {
      const std::size_t i = detail::prime_index(table, p);
      if (e.size() <= i) e.resize(i + 1, 0);
      e[i] = k;
    }
    G.terms.emplace(std::move(e), F[n]);
  }
  return G;
}

inline DirichletPolynomial bohr_inverse(const MultiIndexSeries& G, const SieveTable& table, std::uint64_t N) {
  DirichletPolynomial F(N);
  const auto& P = table.primes();
  for (const auto& [e, c] : G.terms) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= P.size()) throw RangeError("bohr_inverse: prime index " + std::to_string(i) + " beyond the sieve");
      for (std::uint32_t r = 0; r < e[i]; ++r) {
        if (n > N / P[i]) throw OverflowError("bohr_inverse: monomial reconstructs an integer beyond N = " + std::to_string(N));
        n *= P[i];
      }
    }
    F.set(n, F[n] + c);
  }
  return F;
}

/// sum_nu c_nu prod z_i^{nu_i} at z_i = p_i^{-s}.
inline cplx evaluate(const MultiIndexSeries& G, const SieveTable& table, ComplexPoint s) {
  detail::require_finite(s, "evaluate");
  const cplx z = s.value();
  const auto& P = table.primes();
  detail::CompensatedComplexSum acc;
  for (const auto& [e, c] : G.terms) {
    cplx m{1.0, 0.0};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= P.size()) throw RangeError("evaluate: prime index beyond the sieve");
      m *= std::pow(std::exp(-z * std::log(static_cast<double>(P[i]))), static_cast<int>(e[i]));
    }
    acc += c * m;
  }
  return acc.value();
}

}  // namespace dlab
