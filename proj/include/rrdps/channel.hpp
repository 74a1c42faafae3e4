#pragma once

#include <cstdint>

namespace rrdps {

/// Detector and fiber parameters of the simulated system.
struct ChannelParams {
    double eta_d = 0.045;  // detector efficiency, (0, 1]
    double alpha = 0.2;    // fiber loss, dB/km
    double e_d = 0.033;    // misalignment error rate
    double y_0 = 1.7e-6;   // background rate per pulse
    double e_0 = 0.5;      // error rate of background clicks

    /// The GYS reference system; the default-constructed value.
    static ChannelParams gys() { return {}; }

    /// Throws std::domain_error when a field is outside its range.
    void validate() const;
};

/// How the total background rate of an L-pulse train scales with L.
enum class BackgroundScenario {
    LIndependent,  // Y0 = y0
    LDependent,    // Y0 = 1 - (1 - y0)^L
};

/// Overall transmittance eta_d 10^(-alpha d / 10) at a given distance.
double transmittance(double distance_km, const ChannelParams& params);

/// Distance at which `transmittance` equals eta (inverse of the above).
double distance_for_transmittance(double eta, const ChannelParams& params);

/// Total background rate of an L-pulse train under the given scenario.
double background_total(std::int64_t pulses, BackgroundScenario scenario, double y_0);

/// Detection probability for an n-photon input: 1 - (1 - Y0)(1 - eta)^n.
double yield_n(std::int64_t n, double eta, double y0_total);

/// Error rate of n-photon detections. Throws std::domain_error when the
/// yield vanishes (vacuum input with no background).
double error_n(std::int64_t n, double eta, double y0_total, double e_d, double e_0);

/// Overall gain of a Poissonian source of intensity l_mu:
/// Y0 + (1 - Y0)(1 - e^{-eta l_mu}).
double gain(double l_mu, double eta, double y0_total);

/// Overall QBER of the same source. Throws std::domain_error when the gain
/// vanishes.
double qber(double l_mu, double eta, double y0_total, double e_d, double e_0);

/// Transmittance and train background at one operating point.
struct ChannelPoint {
    double eta = 0.0;
    double y0_total = 0.0;
    double distance_km = 0.0;
};

ChannelPoint channel_point(double distance_km, std::int64_t pulses, BackgroundScenario scenario,
                           const ChannelParams& params);

}  // namespace rrdps
