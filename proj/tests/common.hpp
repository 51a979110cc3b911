#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dlab/dlab.hpp"

namespace dlab::testkit {

/// Sieve tables shared across tests in one binary; built on first use.
inline const SieveTable& sieve(std::uint64_t N) {
  static std::map<std::uint64_t, std::unique_ptr<SieveTable>> cache;
  auto& slot = cache[N];
  if (!slot) slot = std::make_unique<SieveTable>(build_sieve(N));
  return *slot;
}

/// Catalog weights shared across tests (they are immutable).
inline const WeightSequence& weights(const std::string& name, const Params& p, std::uint64_t N) {
  static std::map<std::string, std::unique_ptr<WeightSequence>> cache;
  std::string key = name + "/" + std::to_string(N);
  for (const auto& [k, v] : p) key += "/" + k + "=" + std::to_string(v);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<WeightSequence>(catalog(name, p, N, sieve(std::max<std::uint64_t>(N, 2))));
  return *slot;
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_trial(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    std::uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace dlab::testkit
