#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dlab/detail/error.hpp"

namespace dlab {

using u128 = unsigned __int128;

inline constexpr std::uint64_t kDefaultSieveCeiling = 100'000'000;

/// Smallest-prime-factor table for 2..limit, built by a linear sieve.
/// Immutable after construction; concurrent reads are safe.
class SieveTable {
 public:
  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  [[nodiscard]] const std::vector<std::uint32_t>& primes() const { return primes_; }

  /// Smallest prime factor of n, 2 <= n <= limit.
  [[nodiscard]] std::uint32_t spf(std::uint64_t n) const {
    check(n);
    return spf_[n];
  }

  [[nodiscard]] bool is_prime(std::uint64_t n) const {
    check(n);
    return n >= 2 && spf_[n] == n;
  }

 private:
  friend SieveTable build_sieve(std::uint64_t, std::uint64_t);

  void check(std::uint64_t n) const {
    if (n > limit_) {
      throw RangeError("sieve query " + std::to_string(n) + " exceeds limit " + std::to_string(limit_));
    }
  }

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Linear sieve in O(N). Throws ResourceError if N exceeds `ceiling`.
inline SieveTable build_sieve(std::uint64_t N, std::uint64_t ceiling = kDefaultSieveCeiling) {
  if (N < 2) throw InvalidArgument("build_sieve: N must be at least 2");
  if (N > ceiling) {
    throw ResourceError("build_sieve: N = " + std::to_string(N) + " exceeds the memory budget of " +
                        std::to_string(ceiling));
  }
  SieveTable t;
  t.limit_ = N;
  t.spf_.assign(N + 1, 0);
  t.primes_.reserve(static_cast<std::size_t>(1.26 * static_cast<double>(N) / std::log(static_cast<double>(N))) + 16);
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<std::uint32_t>(i);
      t.primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = t.spf_[i];
    for (std::uint32_t p : t.primes_) {
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (p > si || m > N) break;
      t.spf_[m] = p;
    }
  }
  return t;
}

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition with strictly ascending primes; empty for n = 1.
struct Factorization {
  std::vector<PrimePower> pairs;

  [[nodiscard]] std::uint64_t value() const {
    std::uint64_t n = 1;
    for (const auto& [p, e] : pairs) {
      for (std::uint32_t i = 0; i < e; ++i) n *= p;
    }
    return n;
  }

  /// Total number of prime factors counted with multiplicity.
  [[nodiscard]] std::uint32_t big_omega() const {
    std::uint32_t s = 0;
    for (const auto& pp : pairs) s += pp.exponent;
    return s;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline Factorization factorize(const SieveTable& table, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("factorize: n must be positive");
  if (n > table.limit()) {
    throw RangeError("factorize: n = " + std::to_string(n) + " exceeds sieve limit " +
                     std::to_string(table.limit()));
  }
  Factorization f;
  while (n > 1) {
    const std::uint32_t p = table.spf(n);
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.pairs.push_back({p, e});
  }
  return f;
}

inline std::uint64_t divisor_count(const Factorization& f) {
  std::uint64_t d = 1;
  for (const auto& pp : f.pairs) d *= (pp.exponent + 1);
  return d;
}

inline double von_mangoldt(const Factorization& f) {
  if (f.pairs.size() != 1) return 0.0;
  return std::log(static_cast<double>(f.pairs.front().prime));
}

/// Möbius function.
inline int mobius(const Factorization& f) {
  for (const auto& pp : f.pairs) {
    if (pp.exponent > 1) return 0;
  }
  return f.pairs.size() % 2 == 0 ? 1 : -1;
}

/// Coefficients of zeta^gamma: d_gamma(p^v) = gamma (gamma+1) ... (gamma+v-1) / v!,
/// extended multiplicatively.
inline double generalized_divisor(double gamma, const Factorization& f) {
  if (!(gamma > 0.0)) throw InvalidArgument("generalized_divisor: gamma must be positive");
  double result = 1.0;
  for (const auto& pp : f.pairs) {
    double term = 1.0;
    for (std::uint32_t v = 1; v <= pp.exponent; ++v) term *= (gamma + v - 1.0) / v;
    result *= term;
  }
  return result;
}

/// Multinomial weight of the Besov-Sobolev kernel (1 - zeta_P)^{-gamma} at n:
/// gamma (gamma+1) ... (gamma+|v|-1) / prod v_i!, with (|v|-1)! in the numerator
/// when gamma = 0 (the kernel -log(1 - zeta_P), which has no constant term).
inline double besov_multinomial(double gamma, const Factorization& f) {
  if (gamma < 0.0) throw InvalidArgument("besov_multinomial: gamma must be nonnegative");
  const std::uint32_t total = f.big_omega();
  if (total == 0) return gamma > 0.0 ? 1.0 : 0.0;
  // Interleave numerator and denominator factors to stay in range.
  std::vector<double> denom;
  for (const auto& pp : f.pairs) {
    for (std::uint32_t v = 2; v <= pp.exponent; ++v) denom.push_back(static_cast<double>(v));
  }
  double result = 1.0;
  std::size_t di = 0;
  for (std::uint32_t k = 0; k < total; ++k) {
    const double num = gamma > 0.0 ? gamma + k : static_cast<double>(k);
    if (gamma == 0.0 && k == 0) continue;  // (|v|-1)! = 1 * 2 * ... * (|v|-1)
    result *= num;
    if (di < denom.size()) result /= denom[di++];
  }
  for (; di < denom.size(); ++di) result /= denom[di];
  return result;
}

namespace detail {

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("ordered factorization count exceeds 128 bits");
  return r;
}

inline void collect_divisors(const Factorization& f, std::size_t idx, std::uint64_t acc,
                             std::vector<std::uint64_t>& out) {
  if (idx == f.pairs.size()) {
    out.push_back(acc);
    return;
  }
  std::uint64_t pk = 1;
  for (std::uint32_t e = 0; e <= f.pairs[idx].exponent; ++e) {
    collect_divisors(f, idx + 1, acc * pk, out);
    pk *= f.pairs[idx].prime;
  }
}

}  // namespace detail

/// All positive divisors of the factorized integer, ascending.
inline std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out;
  detail::collect_divisors(f, 0, 1, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// F(n): the number of ordered factorizations of n into parts >= 2, with F(1) = 1.
/// Memoized over the divisor lattice of n; exact in 128-bit arithmetic.
inline u128 ordered_factorizations(std::uint64_t n, const SieveTable& table) {
  const Factorization f = factorize(table, n);
  const std::vector<std::uint64_t> divs = divisors(f);
  // F(d) = sum over proper divisors e of d of F(e); all divisors of d divide n.
  std::map<std::uint64_t, u128> memo;
  for (std::uint64_t d : divs) {
    if (d == 1) {
      memo[d] = 1;
      continue;
    }
    u128 acc = 0;
    for (std::uint64_t e : divs) {
      if (e >= d) break;
      if (d % e == 0) acc = detail::checked_add(acc, memo[e]);
    }
    memo[d] = acc;
  }
  return memo[n];
}

/// F(1..N) in one pass: every n pushes F(n) onto its proper multiples.
inline std::vector<u128> ordered_factorization_table(std::uint64_t N) {
  std::vector<u128> F(N + 1, 0);
  if (N >= 1) F[1] = 1;
  for (std::uint64_t d = 1; d <= N; ++d) {
    const u128 fd = F[d];
    for (std::uint64_t m = 2 * d; m <= N; m += d) F[m] = detail::checked_add(F[m], fd);
  }
  return F;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

}  // namespace dlab
