#include "rrdps/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrdps/common.hpp"
#include "rrdps/numerics.hpp"
#include "rrdps/phase_error.hpp"

namespace rrdps {

namespace {

// Suffix sums over a Poisson window: tail(n) = P[N > n] restricted to the
// window, plus the truncated mass counted as if it all sat above.
struct WindowTails {
    PoissonWindow window;
    std::vector<double> suffix;  // suffix[i] = sum of pmf[i..]

    explicit WindowTails(double lambda, double term_epsilon)
        : window(poisson_window(lambda, term_epsilon)) {
        suffix.assign(window.pmf.size() + 1, 0.0);
        for (std::size_t i = window.pmf.size(); i-- > 0;) {
            suffix[i] = suffix[i + 1] + window.pmf[i];
        }
    }

    double tail_above(std::int64_t n) const {
        if (n < window.first_n) return suffix[0] + window.truncated_mass;
        if (n >= window.last_n()) return window.truncated_mass;
        return suffix[static_cast<std::size_t>(n + 1 - window.first_n)] + window.truncated_mass;
    }
};

void check_hpa_args(double l_mu, double q, std::int64_t pulses, const char* who) {
    if (!(l_mu >= 0.0)) throw std::domain_error(std::string(who) + ": negative intensity");
    if (pulses < 2) throw std::domain_error(std::string(who) + ": pulses must be >= 2");
    if (!(q > 0.0)) throw infeasible_error(std::string(who) + ": gain must be positive");
}

}  // namespace

PrivacyAmplification hpa_syk(double l_mu, double q, std::int64_t pulses, double term_epsilon) {
    check_hpa_args(l_mu, q, pulses, "hpa_syk");
    const WindowTails tails(l_mu, term_epsilon);

    PrivacyAmplification best{2.0, -1};
    const std::int64_t last = tails.window.last_n();
    for (std::int64_t n_th = 0; n_th <= last; ++n_th) {
        const double tail = tails.tail_above(n_th);
        if (tail > q) continue;
        const double e_ph = syk_bound(n_th, pulses);
        const double value = ((q - tail) * binary_entropy(e_ph) + tail) / q;
        if (value < best.h_pa) {
            best.h_pa = value;
            best.n_th = n_th;
        }
        // Once the bound saturates at 1/2 the objective can only grow.
        if (e_ph >= 0.5) break;
    }
    if (best.n_th < 0) {
        throw infeasible_error("hpa_syk: no threshold with Poisson tail below the gain");
    }
    best.h_pa = std::clamp(best.h_pa, 0.0, 1.0);
    return best;
}

PrivacyAmplification hpa_tagging(double l_mu, double q, std::int64_t pulses, double term_epsilon) {
    check_hpa_args(l_mu, q, pulses, "hpa_tagging");
    const WindowTails tails(l_mu, term_epsilon);

    // Smallest threshold whose above-threshold mass fits under the gain, so
    // the below-threshold weight q - tail is nonnegative.
    std::int64_t n_th = -1;
    double tail_at_th = 0.0;
    const std::int64_t last = tails.window.last_n();
    for (std::int64_t n = 0; n <= last + 1; ++n) {
        const double tail = tails.tail_above(n);
        if (tail <= q) {
            n_th = n;
            tail_at_th = tail;
            break;
        }
    }
    if (n_th < 0) {
        throw infeasible_error("hpa_tagging: no threshold with Poisson tail below the gain");
    }

    double cost = (q - tail_at_th) * binary_entropy(syk_bound(n_th, pulses));
    for (std::int64_t n = std::max(n_th + 1, tails.window.first_n); n <= last; ++n) {
        cost += tails.window.at(n) * binary_entropy(syk_bound(n, pulses));
    }
    cost += tails.window.truncated_mass;  // worst case for everything dropped
    return {std::clamp(cost / q, 0.0, 1.0), n_th};
}

double hpa_decoy(double l_mu, std::int64_t pulses, double eta, double y0_total,
                 double term_epsilon) {
    if (!(l_mu >= 0.0)) throw std::domain_error("hpa_decoy: negative intensity");
    if (pulses < 2) throw std::domain_error("hpa_decoy: pulses must be >= 2");
    const double q = gain(l_mu, eta, y0_total);
    if (!(q > 0.0)) throw std::domain_error("hpa_decoy: gain is zero");

    const PoissonWindow window = poisson_window(l_mu, term_epsilon);
    double cost = 0.0;
    for (std::int64_t n = std::max<std::int64_t>(1, window.first_n); n <= window.last_n(); ++n) {
        cost += window.at(n) * yield_n(n, eta, y0_total) * binary_entropy(syk_bound(n, pulses));
    }
    cost += window.truncated_mass;
    return std::clamp(cost / q, 0.0, 1.0);
}

void ProtocolConfig::validate() const {
    if (pulses < 2) throw std::domain_error("ProtocolConfig: pulses must be >= 2");
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw std::domain_error("ProtocolConfig: mu must be finite and >= 0");
    }
}

RateBreakdown rrdps_rate(const ProtocolConfig& config, double distance_km,
                         const ChannelParams& params, EstimatorKind estimator) {
    config.validate();
    const ChannelPoint point = channel_point(distance_km, config.pulses, config.scenario, params);
    const double l_mu = static_cast<double>(config.pulses) * config.mu;

    RateBreakdown out;
    out.q = gain(l_mu, point.eta, point.y0_total);
    out.e = qber(l_mu, point.eta, point.y0_total, params.e_d, params.e_0);
    out.e_bit = out.e;

    try {
        switch (estimator) {
            case EstimatorKind::Syk: {
                const PrivacyAmplification pa = hpa_syk(l_mu, out.q, config.pulses);
                out.h_pa = pa.h_pa;
                out.n_th = pa.n_th;
                break;
            }
            case EstimatorKind::TaggingNoDecoy: {
                const PrivacyAmplification pa = hpa_tagging(l_mu, out.q, config.pulses);
                out.h_pa = pa.h_pa;
                out.n_th = pa.n_th;
                break;
            }
            case EstimatorKind::Decoy:
                out.h_pa = hpa_decoy(l_mu, config.pulses, point.eta, point.y0_total);
                break;
        }
    } catch (const infeasible_error&) {
        out.h_pa = 1.0;
        out.net_per_pulse = -1.0;
        out.status = RateStatus::EstimatorInfeasible;
        return out;
    }

    const double net_train = out.q * (1.0 - binary_entropy(out.e_bit) - out.h_pa);
    out.net_per_pulse = net_train / static_cast<double>(config.pulses);
    out.rate_per_train = std::max(0.0, net_train);
    out.rate_per_pulse = out.rate_per_train / static_cast<double>(config.pulses);
    out.status = out.rate_per_train > 0.0 ? RateStatus::Positive : RateStatus::ZeroRate;
    return out;
}

Bb84Point bb84_decoy_point(double mu, double distance_km, const ChannelParams& params,
                           double f_ec) {
    if (!(mu > 0.0)) throw std::domain_error("bb84_decoy_point: mu must be positive");
    params.validate();
    const double eta = transmittance(distance_km, params);
    const double y0 = params.y_0;  // single pulse, background independent of L

    Bb84Point point;
    point.q_mu = gain(mu, eta, y0);
    point.e_mu = qber(mu, eta, y0, params.e_d, params.e_0);
    const double y1 = yield_n(1, eta, y0);
    point.q_1 = mu * std::exp(-mu) * y1;
    point.e_1 = error_n(1, eta, y0, params.e_d, params.e_0);
    point.net = point.q_1 * (1.0 - binary_entropy(point.e_1)) -
                f_ec * point.q_mu * binary_entropy(point.e_mu);
    point.rate = std::max(0.0, point.net);
    return point;
}

double bb84_decoy_rate(double mu, double distance_km, const ChannelParams& params, double f_ec) {
    return bb84_decoy_point(mu, distance_km, params, f_ec).rate;
}

}  // namespace rrdps
