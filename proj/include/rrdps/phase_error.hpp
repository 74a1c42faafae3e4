#pragma once

#include <cstdint>

namespace rrdps {

/// Worst-case phase error rate of an n-photon train: min(n/(L-1), 1/2).
/// The cap reflects that the phase error is a binary-outcome probability.
double syk_bound(std::int64_t n, std::int64_t pulses);

/// Phase error rate when the n photons stay independent across the train:
/// (1 - (1 - 2/L)^n) / 2. Diagnostic bound only; never used in the
/// security-facing estimators.
double independent_bound(std::int64_t n, std::int64_t pulses);

/// Brute-force check of independent_bound: sum over odd numbers of photons
/// landing in a fixed pulse, C(n,k) p^k (1-p)^{n-k} with p = 1/L.
/// Restricted to n <= 30. Lives here so tests and diagnostics share it.
double independent_bound_oracle(std::int64_t n, std::int64_t pulses);

/// Small-n approximation of the reciprocal phase error: 1 + L/n.
double small_n_reciprocal_approx(std::int64_t n, std::int64_t pulses);

}  // namespace rrdps
