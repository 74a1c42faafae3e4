#pragma once

#include <cstdint>
#include <optional>

#include "rrdps/channel.hpp"

namespace rrdps {

/// Which privacy-amplification analysis prices the leaked information.
enum class EstimatorKind {
    Syk,             // threshold bound, worst-case losses below n_th
    TaggingNoDecoy,  // per-photon-number tagging with worst-case yields
    Decoy,           // per-photon-number costs with decoy-pinned yields
};

/// Privacy-amplification cost and, for the threshold-style estimators, the
/// photon-number threshold that produced it.
struct PrivacyAmplification {
    double h_pa = 0.0;
    std::int64_t n_th = 0;
};

/// Threshold analysis: over all thresholds whose Poisson tail fits under the
/// observed gain, minimize [(Q - tail) H(e_ph(n_th)) + tail] / Q.
/// Throws infeasible_error when q <= 0.
PrivacyAmplification hpa_syk(double l_mu, double q, std::int64_t pulses,
                             double term_epsilon = 1e-18);

/// Tagging analysis: n_th is the smallest threshold whose Poisson tail fits
/// under the gain; photon numbers above it are priced individually, the
/// remaining gain at the threshold value. Throws infeasible_error when q <= 0.
PrivacyAmplification hpa_tagging(double l_mu, double q, std::int64_t pulses,
                                 double term_epsilon = 1e-18);

/// Decoy analysis: every photon number priced at its own cost, weighted by
/// the channel-model yields. Throws std::domain_error when the gain vanishes.
double hpa_decoy(double l_mu, std::int64_t pulses, double eta, double y0_total,
                 double term_epsilon = 1e-18);

/// Source and train settings for one protocol evaluation.
struct ProtocolConfig {
    std::int64_t pulses = 32;  // L
    double mu = 0.06;          // intensity per pulse; the train carries L*mu
    BackgroundScenario scenario = BackgroundScenario::LDependent;

    void validate() const;
};

enum class RateStatus {
    Positive,
    ZeroRate,             // entropy budget exhausted, rate clamped to 0
    EstimatorInfeasible,  // the chosen estimator had no feasible configuration
};

/// Full evaluation record of one operating point.
struct RateBreakdown {
    double q = 0.0;          // overall gain
    double e = 0.0;          // overall QBER
    double e_bit = 0.0;      // bit error rate entering the key formula (== e)
    double h_pa = 0.0;       // privacy-amplification cost
    std::optional<std::int64_t> n_th;  // threshold, when the estimator has one
    double rate_per_train = 0.0;       // L R, clamped at 0
    double rate_per_pulse = 0.0;       // R, clamped at 0
    double net_per_pulse = 0.0;        // unclamped Q (1 - H(e_bit) - H_PA) / L
    RateStatus status = RateStatus::ZeroRate;
};

/// Key rate of the protocol at one operating point:
/// L R = Q [1 - H(e_bit) - H_PA], clamped at zero with a reason code.
RateBreakdown rrdps_rate(const ProtocolConfig& config, double distance_km,
                         const ChannelParams& params, EstimatorKind estimator);

/// Standard error-correction inefficiency used by the baseline protocol.
inline constexpr double kBb84ErrorCorrectionEfficiency = 1.22;

/// One evaluation of the asymptotic infinite-decoy BB84 baseline.
struct Bb84Point {
    double q_mu = 0.0;
    double e_mu = 0.0;
    double q_1 = 0.0;
    double e_1 = 0.0;
    double net = 0.0;   // unclamped Q1 (1 - H(e1)) - f Qmu H(Emu)
    double rate = 0.0;  // clamped at 0
};

/// Infinite-decoy BB84 rate with single-pulse background y0 and the same
/// channel model, per-pulse intensity mu.
Bb84Point bb84_decoy_point(double mu, double distance_km, const ChannelParams& params,
                           double f_ec = kBb84ErrorCorrectionEfficiency);

/// Convenience wrapper returning just the clamped rate.
double bb84_decoy_rate(double mu, double distance_km, const ChannelParams& params,
                       double f_ec = kBb84ErrorCorrectionEfficiency);

}  // namespace rrdps
