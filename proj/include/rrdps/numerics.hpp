#pragma once

#include <cstdint>
#include <vector>

namespace rrdps {

/// Binary Shannon entropy H(x) = -x log2 x - (1-x) log2(1-x) in bits,
/// with the convention 0 log 0 = 0. Throws std::domain_error outside [0, 1].
double binary_entropy(double x);

/// Unique x in [0, 1/2] with binary_entropy(x) == y, found by bracketing
/// bisection on the monotone branch. Throws std::domain_error outside [0, 1].
double inverse_binary_entropy(double y);

/// log of the Poisson probability mass e^{-lambda} lambda^n / n!, via lgamma.
double poisson_log_pmf(double lambda, std::int64_t n);

/// Poisson probability mass, stable for n up to 1e6 and large lambda.
double poisson_pmf(double lambda, std::int64_t n);

/// P[N > n_th] for N ~ Poisson(lambda), by term summation with relative
/// truncation 1e-18. Result clamped to [0, 1].
double poisson_tail_above(double lambda, std::int64_t n_th);

/// Contiguous block of Poisson probabilities holding all but a negligible
/// share of the distribution. `truncated_mass` is the probability outside
/// [first_n, last_n()]; modules that must stay upper bounds assign it the
/// worst-case entropy of one bit.
struct PoissonWindow {
    std::int64_t first_n = 0;
    std::vector<double> pmf;
    double truncated_mass = 0.0;

    std::int64_t last_n() const { return first_n + static_cast<std::int64_t>(pmf.size()) - 1; }
    double at(std::int64_t n) const {
        if (n < first_n || n > last_n()) return 0.0;
        return pmf[static_cast<std::size_t>(n - first_n)];
    }
    /// Mass strictly above n, window part only (truncated_mass not included).
    double tail_above_in_window(std::int64_t n) const;
};

/// Window wide enough that every dropped term is below term_epsilon relative
/// to the peak. Probabilities are generated multiplicatively from the mode so
/// a window of width w costs one lgamma and O(w) multiplies.
PoissonWindow poisson_window(double lambda, double term_epsilon = 1e-18);

}  // namespace rrdps
