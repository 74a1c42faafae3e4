#include "rrdps/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace rrdps {

void ChannelParams::validate() const {
    if (!(eta_d > 0.0 && eta_d <= 1.0)) {
        throw std::domain_error("ChannelParams: eta_d must be in (0, 1]");
    }
    if (!(alpha >= 0.0)) throw std::domain_error("ChannelParams: alpha must be >= 0");
    if (!(e_d >= 0.0 && e_d <= 1.0)) throw std::domain_error("ChannelParams: e_d must be in [0, 1]");
    if (!(y_0 >= 0.0 && y_0 <= 1.0)) throw std::domain_error("ChannelParams: y0 must be in [0, 1]");
    if (!(e_0 >= 0.0 && e_0 <= 1.0)) throw std::domain_error("ChannelParams: e0 must be in [0, 1]");
}

double transmittance(double distance_km, const ChannelParams& params) {
    if (!(distance_km >= 0.0)) {
        throw std::domain_error("transmittance: negative distance");
    }
    return params.eta_d * std::pow(10.0, -params.alpha * distance_km / 10.0);
}

double distance_for_transmittance(double eta, const ChannelParams& params) {
    if (!(eta > 0.0)) throw std::domain_error("distance_for_transmittance: eta must be positive");
    if (params.alpha == 0.0) throw std::domain_error("distance_for_transmittance: alpha is zero");
    return 10.0 / params.alpha * std::log10(params.eta_d / eta);
}

double background_total(std::int64_t pulses, BackgroundScenario scenario, double y_0) {
    if (pulses < 1) throw std::domain_error("background_total: pulses must be >= 1");
    if (!(y_0 >= 0.0 && y_0 <= 1.0)) throw std::domain_error("background_total: y0 outside [0, 1]");
    if (scenario == BackgroundScenario::LIndependent) return y_0;
    if (y_0 == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(pulses) * std::log1p(-y_0));
}

double yield_n(std::int64_t n, double eta, double y0_total) {
    if (n < 0) throw std::domain_error("yield_n: negative n");
    if (n == 0) return y0_total;
    if (eta >= 1.0) return 1.0;
    return -std::expm1(std::log1p(-y0_total) + static_cast<double>(n) * std::log1p(-eta));
}

double error_n(std::int64_t n, double eta, double y0_total, double e_d, double e_0) {
    const double yn = yield_n(n, eta, y0_total);
    if (yn <= 0.0) {
        throw std::domain_error("error_n: yield is zero, error rate undefined");
    }
    return (e_0 * y0_total + e_d * (yn - y0_total)) / yn;
}

double gain(double l_mu, double eta, double y0_total) {
    if (!(l_mu >= 0.0)) throw std::domain_error("gain: negative intensity");
    return y0_total + (1.0 - y0_total) * (-std::expm1(-eta * l_mu));
}

double qber(double l_mu, double eta, double y0_total, double e_d, double e_0) {
    const double q = gain(l_mu, eta, y0_total);
    if (q <= 0.0) {
        throw std::domain_error("qber: gain is zero, QBER undefined");
    }
    const double detected = (1.0 - y0_total) * (-std::expm1(-eta * l_mu));
    return (e_0 * y0_total + e_d * detected) / q;
}

ChannelPoint channel_point(double distance_km, std::int64_t pulses, BackgroundScenario scenario,
                           const ChannelParams& params) {
    params.validate();
    ChannelPoint point;
    point.distance_km = distance_km;
    point.eta = transmittance(distance_km, params);
    point.y0_total = background_total(pulses, scenario, params.y_0);
    return point;
}

}  // namespace rrdps
