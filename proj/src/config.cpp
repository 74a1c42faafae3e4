#include "rrdps/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rrdps {

using nlohmann::json;

std::string to_string(BackgroundScenario scenario) {
    return scenario == BackgroundScenario::LIndependent ? "l-independent" : "l-dependent";
}

std::string to_string(EstimatorKind estimator) {
    switch (estimator) {
        case EstimatorKind::Syk: return "syk";
        case EstimatorKind::TaggingNoDecoy: return "tagging";
        case EstimatorKind::Decoy: return "decoy";
    }
    return "?";
}

BackgroundScenario parse_scenario(const std::string& name) {
    if (name == "l-independent") return BackgroundScenario::LIndependent;
    if (name == "l-dependent") return BackgroundScenario::LDependent;
    throw std::invalid_argument("unknown scenario: " + name +
                                " (expected l-independent or l-dependent)");
}

EstimatorKind parse_estimator(const std::string& name) {
    if (name == "syk") return EstimatorKind::Syk;
    if (name == "tagging") return EstimatorKind::TaggingNoDecoy;
    if (name == "decoy") return EstimatorKind::Decoy;
    throw std::invalid_argument("unknown estimator: " + name +
                                " (expected syk, tagging or decoy)");
}

void CliConfig::validate() const {
    channel.validate();
    if (mu && l_mu) {
        throw std::invalid_argument("config: give exactly one of mu / L_mu, not both");
    }
    if (pulses && *pulses < 2) throw std::domain_error("config: L must be >= 2");
    if (mu && !(*mu >= 0.0)) throw std::domain_error("config: mu must be >= 0");
    if (l_mu && !(*l_mu >= 0.0)) throw std::domain_error("config: L_mu must be >= 0");
    if (distance_km && !(*distance_km >= 0.0)) {
        throw std::domain_error("config: distance_km must be >= 0");
    }
    if (format != "text" && format != "csv") {
        throw std::invalid_argument("config: format must be text or csv");
    }
    if (threads < 0) throw std::domain_error("config: threads must be >= 0");
}

double CliConfig::effective_mu() const {
    if (mu) return *mu;
    if (l_mu) {
        if (!pulses) throw std::invalid_argument("config: L_mu given without L");
        return *l_mu / static_cast<double>(*pulses);
    }
    throw std::invalid_argument("config: one of mu / L_mu is required");
}

std::string CliConfig::to_json_text() const {
    json j;
    j["eta_d"] = channel.eta_d;
    j["alpha"] = channel.alpha;
    j["e_d"] = channel.e_d;
    j["y0"] = channel.y_0;
    j["e0"] = channel.e_0;
    j["scenario"] = to_string(scenario);
    j["estimator"] = to_string(estimator);
    j["format"] = format;
    j["threads"] = threads;
    if (pulses) j["L"] = *pulses;
    if (mu) j["mu"] = *mu;
    if (l_mu) j["L_mu"] = *l_mu;
    if (distance_km) j["distance_km"] = *distance_km;
    if (!output.empty()) j["output"] = output;
    return j.dump(2) + "\n";
}

CliConfig CliConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    CliConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "eta_d") config.channel.eta_d = value.get<double>();
        else if (key == "alpha") config.channel.alpha = value.get<double>();
        else if (key == "e_d") config.channel.e_d = value.get<double>();
        else if (key == "y0") config.channel.y_0 = value.get<double>();
        else if (key == "e0") config.channel.e_0 = value.get<double>();
        else if (key == "scenario") config.scenario = parse_scenario(value.get<std::string>());
        else if (key == "estimator") config.estimator = parse_estimator(value.get<std::string>());
        else if (key == "format") config.format = value.get<std::string>();
        else if (key == "threads") config.threads = value.get<int>();
        else if (key == "L") config.pulses = value.get<std::int64_t>();
        else if (key == "mu") config.mu = value.get<double>();
        else if (key == "L_mu") config.l_mu = value.get<double>();
        else if (key == "distance_km") config.distance_km = value.get<double>();
        else if (key == "output") config.output = value.get<std::string>();
        else throw std::invalid_argument("config: unknown key: " + key);
    }
    return config;
}

CliConfig CliConfig::from_json_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

}  // namespace rrdps
