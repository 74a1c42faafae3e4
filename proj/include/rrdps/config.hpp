#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rrdps/channel.hpp"
#include "rrdps/keyrate.hpp"

namespace rrdps {

/// Effective configuration of a CLI invocation. Files use flat JSON keys
/// named after the channel symbols; every key can also be set by the
/// same-named command-line flag, and flags win over the file.
struct CliConfig {
    ChannelParams channel = ChannelParams::gys();
    std::optional<std::int64_t> pulses;  // L
    std::optional<double> mu;            // per-pulse intensity
    std::optional<double> l_mu;          // train intensity; exactly one of mu/l_mu
    BackgroundScenario scenario = BackgroundScenario::LDependent;
    EstimatorKind estimator = EstimatorKind::Decoy;
    std::optional<double> distance_km;
    std::string format = "text";  // text | csv
    std::string output;           // empty = stdout
    int threads = 0;              // 0 = all cores

    /// Throws std::domain_error / std::invalid_argument on bad values.
    void validate() const;

    /// Intensity per pulse, derived from whichever of mu / l_mu is set.
    /// Requires pulses when only l_mu is given.
    double effective_mu() const;

    /// Serialized flat JSON document, reparseable by from_json_text.
    std::string to_json_text() const;
    static CliConfig from_json_text(const std::string& text);
    static CliConfig from_json_file(const std::string& path);
};

std::string to_string(BackgroundScenario scenario);
std::string to_string(EstimatorKind estimator);
BackgroundScenario parse_scenario(const std::string& name);
EstimatorKind parse_estimator(const std::string& name);

}  // namespace rrdps
