#include "rrdps/phase_error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rrdps {

namespace {
void check_args(std::int64_t n, std::int64_t pulses, const char* who) {
    if (n < 0) throw std::domain_error(std::string(who) + ": negative photon number");
    if (pulses < 2) throw std::domain_error(std::string(who) + ": pulses must be >= 2");
}
}  // namespace

double syk_bound(std::int64_t n, std::int64_t pulses) {
    check_args(n, pulses, "syk_bound");
    return std::min(static_cast<double>(n) / static_cast<double>(pulses - 1), 0.5);
}

double independent_bound(std::int64_t n, std::int64_t pulses) {
    check_args(n, pulses, "independent_bound");
    if (n == 0) return 0.0;
    if (pulses == 2) return 0.5;
    return 0.5 * (-std::expm1(static_cast<double>(n) * std::log1p(-2.0 / static_cast<double>(pulses))));
}

double independent_bound_oracle(std::int64_t n, std::int64_t pulses) {
    check_args(n, pulses, "independent_bound_oracle");
    if (n > 30) {
        throw std::domain_error("independent_bound_oracle: n > 30 exceeds combinatorial scale");
    }
    const double p = 1.0 / static_cast<double>(pulses);
    double term = std::pow(1.0 - p, static_cast<double>(n));  // k = 0
    double sum = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        // C(n,k+1)/C(n,k) = (n-k)/(k+1)
        term *= static_cast<double>(n - k) / static_cast<double>(k + 1) * p / (1.0 - p);
        if ((k + 1) % 2 == 1) sum += term;
    }
    return sum;
}

double small_n_reciprocal_approx(std::int64_t n, std::int64_t pulses) {
    if (n < 1) throw std::domain_error("small_n_reciprocal_approx: n must be >= 1");
    if (pulses <= n) throw std::domain_error("small_n_reciprocal_approx: requires n < pulses");
    return 1.0 + static_cast<double>(pulses) / static_cast<double>(n);
}

}  // namespace rrdps
