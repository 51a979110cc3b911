#pragma once

#include <cmath>
#include <string>

#include "dlab/detail/error.hpp"
#include "dlab/weights.hpp"

namespace dlab {

/// sum_n w_n n^{-2 sigma}: the squared norm of the kernel at a real point sigma
/// in H_w. The partial sum runs over n <= N; `tail` extends it with the
/// Chebyshev envelope calibrated on the last decade of the weights.
inline TruncatedSum weighted_zeta(const WeightSequence& w, double sigma, const TailModel& model) {
  if (!(2.0 * sigma > w.sigma0())) {
    throw DomainError("weighted_zeta: series diverges at sigma = " + std::to_string(sigma) +
                      " (need 2 sigma > " + std::to_string(w.sigma0()) + ")");
  }
  return dirichlet_sum_with_tail(w, model, 2.0 * sigma);
}

inline TruncatedSum weighted_zeta(const WeightSequence& w, double sigma) {
  if (!(2.0 * sigma > w.sigma0())) {
    throw DomainError("weighted_zeta: series diverges at sigma = " + std::to_string(sigma) +
                      " (need 2 sigma > " + std::to_string(w.sigma0()) + ")");
  }
  return weighted_zeta(w, sigma, fit_tail_model(w));
}

/// n^{1 - sigma0} w_n: moves the convergence abscissa of sum w_n n^{-s} from
/// sigma0 to 1 and keeps the logarithmic exponent.
inline WeightSequence shift_weights(const WeightSequence& w) {
  std::vector<double> v(w.values().begin(), w.values().end());
  const double e = 1.0 - w.sigma0();
  for (std::uint64_t n = 2; n <= w.limit(); ++n) v[n] *= std::exp(e * std::log(static_cast<double>(n)));
  Params p = w.params();
  p["shift_from_sigma0"] = w.sigma0();
  return {w.name() + "_shifted", std::move(p), std::move(v), w.expected_alpha(), 1.0};
}

}  // namespace dlab
