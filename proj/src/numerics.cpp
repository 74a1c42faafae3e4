#include "rrdps/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rrdps {

namespace {
const double kLn2 = std::log(2.0);
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("binary_entropy: argument outside [0, 1]");
    }
    if (x == 0.0 || x == 1.0) return 0.0;
    return -(x * std::log(x) + (1.0 - x) * std::log1p(-x)) / kLn2;
}

double inverse_binary_entropy(double y) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw std::domain_error("inverse_binary_entropy: argument outside [0, 1]");
    }
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 0.5;
    double lo = 0.0;
    double hi = 0.5;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double poisson_log_pmf(double lambda, std::int64_t n) {
    if (lambda < 0.0 || std::isnan(lambda)) {
        throw std::domain_error("poisson_log_pmf: negative lambda");
    }
    if (n < 0) throw std::domain_error("poisson_log_pmf: negative n");
    if (lambda == 0.0) {
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    const double dn = static_cast<double>(n);
    return -lambda + dn * std::log(lambda) - std::lgamma(dn + 1.0);
}

double poisson_pmf(double lambda, std::int64_t n) {
    if (lambda == 0.0) {
        if (n < 0) throw std::domain_error("poisson_pmf: negative n");
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(poisson_log_pmf(lambda, n));
}

double poisson_tail_above(double lambda, std::int64_t n_th) {
    if (lambda < 0.0 || std::isnan(lambda)) {
        throw std::domain_error("poisson_tail_above: negative lambda");
    }
    if (lambda == 0.0) return 0.0;
    if (n_th < 0) n_th = -1;  // the whole distribution lies above

    // Forward summation from n_th + 1. Terms below the mode still grow, so
    // the relative cutoff only applies once past lambda.
    const std::int64_t n_start = n_th + 1;
    const std::int64_t n_cap =
        n_start + static_cast<std::int64_t>(lambda + 12.0 * std::sqrt(lambda) + 200.0);
    double term = poisson_pmf(lambda, n_start);
    double sum = term;
    for (std::int64_t n = n_start + 1; n <= n_cap; ++n) {
        term *= lambda / static_cast<double>(n);
        sum += term;
        if (static_cast<double>(n) > lambda && term < sum * 1e-18) break;
    }
    if (sum == 0.0 && static_cast<double>(n_start) < lambda) {
        // Start point so deep in the lower tail that its pmf underflows:
        // essentially the entire distribution lies above n_th.
        const PoissonWindow w = poisson_window(lambda);
        sum = w.tail_above_in_window(n_th) + w.truncated_mass;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double PoissonWindow::tail_above_in_window(std::int64_t n) const {
    double sum = 0.0;
    const std::int64_t start = std::max(n + 1, first_n);
    for (std::int64_t k = last_n(); k >= start; --k) {
        sum += at(k);
    }
    return sum;
}

PoissonWindow poisson_window(double lambda, double term_epsilon) {
    if (lambda < 0.0 || std::isnan(lambda)) {
        throw std::domain_error("poisson_window: negative lambda");
    }
    PoissonWindow w;
    if (lambda == 0.0) {
        w.first_n = 0;
        w.pmf = {1.0};
        w.truncated_mass = 0.0;
        return w;
    }
    const double log_eps = -std::log(std::max(term_epsilon, 1e-300));
    // Gaussian half-width sqrt(2 lambda log(1/eps)) plus slack for the
    // sub-Gaussian upper tail and for small lambda.
    const double spread = std::sqrt(2.0 * lambda * log_eps) + 0.5 * log_eps + 10.0;
    const std::int64_t mode = static_cast<std::int64_t>(lambda);
    w.first_n = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(lambda - spread)));
    const std::int64_t last = static_cast<std::int64_t>(std::ceil(lambda + spread));
    w.pmf.assign(static_cast<std::size_t>(last - w.first_n + 1), 0.0);

    const double p_mode = std::exp(poisson_log_pmf(lambda, mode));
    w.pmf[static_cast<std::size_t>(mode - w.first_n)] = p_mode;
    double p = p_mode;
    for (std::int64_t n = mode; n > w.first_n; --n) {
        p *= static_cast<double>(n) / lambda;
        w.pmf[static_cast<std::size_t>(n - 1 - w.first_n)] = p;
    }
    p = p_mode;
    for (std::int64_t n = mode + 1; n <= last; ++n) {
        p *= lambda / static_cast<double>(n);
        w.pmf[static_cast<std::size_t>(n - w.first_n)] = p;
    }

    double mass = 0.0;
    for (std::int64_t i = static_cast<std::int64_t>(w.pmf.size()) - 1; i >= 0; --i) {
        mass += w.pmf[static_cast<std::size_t>(i)];
    }
    w.truncated_mass = std::max(0.0, 1.0 - mass);
    return w;
}

}  // namespace rrdps
