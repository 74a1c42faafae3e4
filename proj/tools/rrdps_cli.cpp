// Command-line front end: single-point evaluation, sweeps, optimization,
// reach solving and reproduction of the bundled reference experiments.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrdps/common.hpp"
#include "rrdps/config.hpp"
#include "rrdps/csv.hpp"
#include "rrdps/experiments.hpp"
#include "rrdps/keyrate.hpp"
#include "rrdps/optimizer.hpp"
#include "rrdps/parallel.hpp"
#include "rrdps/phase_error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitCheckFailure = 3;

using rrdps::CliConfig;

struct CommonFlags {
    std::string config_path;
    std::optional<double> eta_d, alpha, e_d, y0, e0;
    std::optional<double> mu, l_mu, distance_km;
    std::optional<std::int64_t> pulses;
    std::optional<std::string> scenario, estimator, format, output;
    std::optional<int> threads;
    bool dump_config = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override file keys");
    cmd->add_option("--eta-d", f.eta_d, "detector efficiency");
    cmd->add_option("--alpha", f.alpha, "fiber loss in dB/km");
    cmd->add_option("--e-d", f.e_d, "misalignment error rate");
    cmd->add_option("--y0", f.y0, "background rate per pulse");
    cmd->add_option("--e0", f.e0, "error rate of background clicks");
    cmd->add_option("--L", f.pulses, "pulses per train");
    cmd->add_option("--mu", f.mu, "intensity per pulse");
    cmd->add_option("--L-mu", f.l_mu, "intensity per train (alternative to --mu)");
    cmd->add_option("--distance-km", f.distance_km, "transmission distance in km");
    cmd->add_option("--scenario", f.scenario, "background scenario: l-independent | l-dependent");
    cmd->add_option("--estimator", f.estimator, "privacy analysis: syk | tagging | decoy");
    cmd->add_option("--format", f.format, "output format: text | csv");
    cmd->add_option("--output", f.output, "output path (default: stdout)");
    cmd->add_option("--threads", f.threads, "worker threads for sweeps (0 = all cores)");
    cmd->add_flag("--dump-config", f.dump_config, "print the effective configuration and exit");
}

CliConfig resolve_config(const CommonFlags& f) {
    CliConfig c;
    if (!f.config_path.empty()) c = CliConfig::from_json_file(f.config_path);
    if (f.eta_d) c.channel.eta_d = *f.eta_d;
    if (f.alpha) c.channel.alpha = *f.alpha;
    if (f.e_d) c.channel.e_d = *f.e_d;
    if (f.y0) c.channel.y_0 = *f.y0;
    if (f.e0) c.channel.e_0 = *f.e0;
    if (f.pulses) c.pulses = *f.pulses;
    if (f.mu) {
        c.mu = *f.mu;
        c.l_mu.reset();
    }
    if (f.l_mu) {
        c.l_mu = *f.l_mu;
        if (f.mu) c.mu = *f.mu;  // keep both so validation reports the conflict
        else c.mu.reset();
    }
    if (f.distance_km) c.distance_km = *f.distance_km;
    if (f.scenario) c.scenario = rrdps::parse_scenario(*f.scenario);
    if (f.estimator) c.estimator = rrdps::parse_estimator(*f.estimator);
    if (f.format) c.format = *f.format;
    if (f.output) c.output = *f.output;
    if (f.threads) c.threads = *f.threads;
    c.validate();
    rrdps::set_thread_count(c.threads);
    return c;
}

bool handle_dump(const CommonFlags& flags, const CliConfig& config) {
    if (!flags.dump_config) return false;
    std::fputs(config.to_json_text().c_str(), stdout);
    return true;
}

void emit(const rrdps::CsvTable& table, const std::string& output) {
    if (output.empty()) {
        std::fputs(table.to_string().c_str(), stdout);
    } else {
        table.write(output);
    }
}

std::string fmt(double v) { return rrdps::format_csv_number(v); }

// ---------------------------------------------------------------------------

int cmd_rate(const CommonFlags& flags) {
    const CliConfig config = resolve_config(flags);
    if (handle_dump(flags, config)) return kExitOk;
    if (!config.pulses) throw std::invalid_argument("rate: --L is required");
    rrdps::ProtocolConfig protocol{*config.pulses, config.effective_mu(), config.scenario};
    const double distance = config.distance_km.value_or(0.0);
    const rrdps::RateBreakdown br =
        rrdps::rrdps_rate(protocol, distance, config.channel, config.estimator);

    if (config.format == "csv") {
        rrdps::CsvTable table;
        table.columns = {"distance_km", "estimator", "pulses", "mu", "l_mu", "q_gain",
                         "e_bit", "h_pa", "n_th", "rate_per_pulse", "rate_per_train", "status"};
        table.rows.push_back({fmt(distance), rrdps::to_string(config.estimator),
                              rrdps::format_csv_integer(*config.pulses), fmt(protocol.mu),
                              fmt(protocol.mu * static_cast<double>(*config.pulses)), fmt(br.q),
                              fmt(br.e_bit), fmt(br.h_pa),
                              br.n_th ? rrdps::format_csv_integer(*br.n_th) : "",
                              fmt(br.rate_per_pulse), fmt(br.rate_per_train),
                              br.status == rrdps::RateStatus::Positive ? "positive" : "zero"});
        emit(table, config.output);
    } else {
        std::printf("Q      = %s\n", fmt(br.q).c_str());
        std::printf("E      = %s\n", fmt(br.e).c_str());
        std::printf("e_bit  = %s\n", fmt(br.e_bit).c_str());
        std::printf("H_PA   = %s\n", fmt(br.h_pa).c_str());
        if (br.n_th) std::printf("n_th   = %lld\n", static_cast<long long>(*br.n_th));
        std::printf("R      = %s\n", fmt(br.rate_per_pulse).c_str());
        std::printf("LR     = %s\n", fmt(br.rate_per_train).c_str());
        std::printf("status = %s\n",
                    br.status == rrdps::RateStatus::Positive ? "positive" : "zero-rate");
    }
    return br.rate_per_pulse > 0.0 ? kExitOk : kExitInfeasible;
}

// ---------------------------------------------------------------------------

int cmd_optimize(const CommonFlags& flags, std::string objective, bool keep_trace) {
    const CliConfig config = resolve_config(flags);
    if (handle_dump(flags, config)) return kExitOk;

    for (char& c : objective) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (objective == "leta") {
        const rrdps::OptimizationResult r = rrdps::optimize_mu_for_l_eta(config.channel);
        if (config.format == "csv") {
            rrdps::CsvTable table;
            table.columns = {"objective", "best_mu", "l_eta_min", "evaluations"};
            table.rows.push_back({"leta", fmt(r.best_mu), fmt(r.best_rate),
                                  rrdps::format_csv_integer(r.evaluations)});
            emit(table, config.output);
        } else {
            std::printf("objective   = L*eta at threshold\n");
            std::printf("best_mu     = %s\n", fmt(r.best_mu).c_str());
            std::printf("L*eta_min   = %s\n", fmt(r.best_rate).c_str());
            std::printf("evaluations = %ld\n", r.evaluations);
        }
        return r.feasible ? kExitOk : kExitInfeasible;
    }
    if (objective != "rate") {
        throw std::invalid_argument("optimize: --objective must be rate or leta");
    }
    if (!config.pulses) throw std::invalid_argument("optimize: --L is required");
    if (!config.distance_km) throw std::invalid_argument("optimize: --distance-km is required");

    rrdps::MuSearchOptions options;
    options.keep_trace = keep_trace;
    const rrdps::OptimizationResult r =
        rrdps::optimize_mu(*config.pulses, *config.distance_km, config.channel, config.estimator,
                           config.scenario, options);
    if (config.format == "csv") {
        rrdps::CsvTable table;
        table.columns = {"distance_km", "estimator", "pulses", "best_mu", "best_rate",
                         "feasible", "evaluations"};
        table.rows.push_back({fmt(*config.distance_km), rrdps::to_string(config.estimator),
                              rrdps::format_csv_integer(*config.pulses), fmt(r.best_mu),
                              fmt(r.best_rate), r.feasible ? "true" : "false",
                              rrdps::format_csv_integer(r.evaluations)});
        emit(table, config.output);
    } else {
        std::printf("best_mu     = %s\n", fmt(r.best_mu).c_str());
        std::printf("best_rate   = %s\n", fmt(r.best_rate).c_str());
        std::printf("feasible    = %s\n", r.feasible ? "true" : "false");
        std::printf("evaluations = %ld\n", r.evaluations);
        if (keep_trace) {
            for (const auto& [mu, net] : r.trace) {
                std::printf("trace %s %s\n", fmt(mu).c_str(), fmt(net).c_str());
            }
        }
    }
    return r.feasible ? kExitOk : kExitInfeasible;
}

// ---------------------------------------------------------------------------

int cmd_max_distance(const CommonFlags& flags, const std::string& protocol, bool optimize_pulses,
                     double distance_cap, double step_km) {
    const CliConfig config = resolve_config(flags);
    if (handle_dump(flags, config)) return kExitOk;

    rrdps::DistanceSearchOptions options;
    options.distance_cap_km = distance_cap;
    options.step_km = step_km;

    rrdps::DistanceSolution sol;
    try {
        if (protocol == "bb84") {
            sol = rrdps::bb84_max_distance(config.channel, options);
        } else if (optimize_pulses) {
            sol = rrdps::max_distance_optimized_pulses(config.channel, config.estimator,
                                                       config.scenario,
                                                       rrdps::default_pulse_grid(), options);
        } else {
            if (!config.pulses) throw std::invalid_argument("max-distance: --L is required");
            sol = rrdps::max_distance(config.channel, config.estimator, config.scenario,
                                      *config.pulses, options);
        }
    } catch (const rrdps::infeasible_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitInfeasible;
    }

    if (config.format == "csv") {
        rrdps::CsvTable table;
        table.columns = {"protocol", "max_distance_km", "unbounded", "pulses", "mu_at_max",
                         "eta_at_max", "threshold_c", "step_km"};
        table.rows.push_back({protocol, fmt(sol.max_distance_km),
                              sol.unbounded ? "true" : "false",
                              rrdps::format_csv_integer(sol.pulses), fmt(sol.best_mu_at_max),
                              fmt(sol.eta_at_max), fmt(sol.threshold_c), fmt(sol.step_km)});
        emit(table, config.output);
    } else {
        std::printf("max_distance_km = %s\n", fmt(sol.max_distance_km).c_str());
        if (sol.unbounded) std::printf("note            = unbounded within search range\n");
        std::printf("pulses          = %lld\n", static_cast<long long>(sol.pulses));
        std::printf("mu_at_max       = %s\n", fmt(sol.best_mu_at_max).c_str());
        std::printf("eta_at_max      = %s\n", fmt(sol.eta_at_max).c_str());
        if (protocol != "bb84") std::printf("threshold_c     = %s\n", fmt(sol.threshold_c).c_str());
        std::printf("step_km         = %s\n", fmt(sol.step_km).c_str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_phase_error(const CommonFlags& flags, std::int64_t n, std::optional<std::int64_t> n_max) {
    const CliConfig config = resolve_config(flags);
    if (handle_dump(flags, config)) return kExitOk;
    if (!config.pulses) throw std::invalid_argument("phase-error: --L is required");
    const std::int64_t pulses = *config.pulses;

    rrdps::CsvTable table;
    table.columns = {"photon_number", "pulses", "syk_bound", "independent_bound",
                     "binomial_oracle", "reciprocal_approx"};
    const std::int64_t first = n_max ? 0 : n;
    const std::int64_t last = n_max ? *n_max : n;
    for (std::int64_t k = first; k <= last; ++k) {
        table.rows.push_back(
            {rrdps::format_csv_integer(k), rrdps::format_csv_integer(pulses),
             fmt(rrdps::syk_bound(k, pulses)), fmt(rrdps::independent_bound(k, pulses)),
             k <= 30 ? fmt(rrdps::independent_bound_oracle(k, pulses)) : "",
             k >= 1 && k < pulses ? fmt(rrdps::small_n_reciprocal_approx(k, pulses)) : ""});
    }
    emit(table, config.output);
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_sweep(const CommonFlags& flags, const std::string& var, double from, double to,
              double step, bool optimize_mu_per_point) {
    const CliConfig config = resolve_config(flags);
    if (handle_dump(flags, config)) return kExitOk;
    if (!(step > 0.0) || to < from) throw std::invalid_argument("sweep: invalid grid");
    if (var != "distance" && var != "mu" && var != "e_d" && var != "L") {
        throw std::invalid_argument("sweep: --var must be one of distance, mu, e_d, L");
    }
    if (!config.pulses && var != "L") throw std::invalid_argument("sweep: --L is required");

    const auto count = static_cast<std::int64_t>(std::floor((to - from) / step + 0.5)) + 1;
    struct Row {
        double value = 0.0;
        double mu = 0.0;
        rrdps::RateBreakdown breakdown;
    };
    std::vector<Row> rows(static_cast<std::size_t>(count));

    rrdps::parallel_for_index(count, rrdps::ExecMode::Parallel, [&](std::int64_t i) {
        const double value = from + static_cast<double>(i) * step;
        rrdps::ChannelParams params = config.channel;
        double distance = config.distance_km.value_or(0.0);
        std::int64_t pulses = config.pulses.value_or(32);
        double mu = config.mu || config.l_mu ? config.effective_mu() : 0.06;
        if (var == "distance") distance = value;
        if (var == "e_d") params.e_d = value;
        if (var == "L") pulses = static_cast<std::int64_t>(value);
        if (var == "mu") mu = value;
        if (optimize_mu_per_point && var != "mu") {
            mu = rrdps::optimize_mu(pulses, distance, params, config.estimator, config.scenario)
                     .best_mu;
        }
        Row& row = rows[static_cast<std::size_t>(i)];
        row.value = value;
        row.mu = mu;
        row.breakdown = rrdps::rrdps_rate(rrdps::ProtocolConfig{pulses, mu, config.scenario},
                                          distance, params, config.estimator);
    });

    rrdps::CsvTable table;
    table.columns = {var,      "mu",   "q_gain", "e_bit",          "h_pa",
                     "n_th",   "rate_per_pulse", "rate_per_train", "status"};
    for (const Row& row : rows) {
        table.rows.push_back(
            {fmt(row.value), fmt(row.mu), fmt(row.breakdown.q), fmt(row.breakdown.e_bit),
             fmt(row.breakdown.h_pa),
             row.breakdown.n_th ? rrdps::format_csv_integer(*row.breakdown.n_th) : "",
             fmt(row.breakdown.rate_per_pulse), fmt(row.breakdown.rate_per_train),
             row.breakdown.status == rrdps::RateStatus::Positive ? "positive" : "zero"});
    }
    emit(table, config.output);
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_reproduce(const CommonFlags& flags, const std::string& experiment,
                  const std::vector<std::string>& override_args) {
    const CliConfig config = resolve_config(flags);
    if (handle_dump(flags, config)) return kExitOk;

    rrdps::ExperimentId id = rrdps::parse_experiment(experiment);  // throws on unknown id
    rrdps::ExperimentOptions options;
    options.params = config.channel;
    for (const std::string& arg : override_args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("override must be key=value: " + arg);
        }
        options.overrides[arg.substr(0, eq)] = std::stod(arg.substr(eq + 1));
    }

    const rrdps::ExperimentResult result = rrdps::run_experiment(id, options);
    const std::string path =
        config.output.empty() ? rrdps::experiment_name(id) + ".csv" : config.output;
    result.table.write(path);
    std::printf("wrote %s (%zu rows)\n", path.c_str(), result.table.rows.size());
    for (const rrdps::CheckResult& check : result.checks) {
        const char* tag = check.skipped ? "SKIP" : (check.pass ? "PASS" : "FAIL");
        std::printf("[%s] %s: %s\n", tag, check.name.c_str(), check.detail.c_str());
    }
    return result.all_pass() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Key-rate analysis for round-robin differential-phase-shift QKD"};
    app.require_subcommand(1);

    CommonFlags rate_flags;
    CLI::App* rate = app.add_subcommand("rate", "evaluate the key rate at one operating point");
    add_common_flags(rate, rate_flags);

    CommonFlags sweep_flags;
    std::string sweep_var = "distance";
    double sweep_from = 0.0, sweep_to = 0.0, sweep_step = 1.0;
    bool sweep_optimize = false;
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate the key rate over a parameter grid");
    add_common_flags(sweep, sweep_flags);
    sweep->add_option("--var", sweep_var, "swept variable: distance | mu | e_d | L");
    sweep->add_option("--from", sweep_from, "first grid value")->required();
    sweep->add_option("--to", sweep_to, "last grid value")->required();
    sweep->add_option("--step", sweep_step, "grid step")->required();
    sweep->add_flag("--optimize-mu", sweep_optimize, "optimize mu at every grid point");

    CommonFlags opt_flags;
    std::string objective = "rate";
    bool opt_trace = false;
    CLI::App* optimize = app.add_subcommand("optimize", "optimize the intensity mu");
    add_common_flags(optimize, opt_flags);
    optimize->add_option("--objective", objective, "rate | leta (reach objective L*eta)");
    optimize->add_flag("--trace", opt_trace, "print the coarse scan trace");

    CommonFlags dist_flags;
    std::string protocol = "rrdps";
    bool optimize_pulses = false;
    double distance_cap = 500.0, step_km = 1e-3;
    CLI::App* maxdist = app.add_subcommand("max-distance", "largest distance with a positive rate");
    add_common_flags(maxdist, dist_flags);
    maxdist->add_option("--protocol", protocol, "rrdps | bb84");
    maxdist->add_flag("--optimize-L", optimize_pulses, "optimize L over the default grid");
    maxdist->add_option("--distance-cap", distance_cap, "search cap in km");
    maxdist->add_option("--step-km", step_km, "bisection resolution in km");

    CommonFlags phase_flags;
    std::int64_t phase_n = 1;
    std::optional<std::int64_t> phase_n_max;
    CLI::App* phase = app.add_subcommand("phase-error", "per-photon-number phase error bounds");
    add_common_flags(phase, phase_flags);
    phase->add_option("--n", phase_n, "photon number");
    phase->add_option("--n-max", phase_n_max, "tabulate n = 0..n-max instead");

    CommonFlags repro_flags;
    std::string experiment;
    std::vector<std::string> override_args;
    CLI::App* reproduce = app.add_subcommand("reproduce", "regenerate a bundled experiment table");
    add_common_flags(reproduce, repro_flags);
    reproduce->add_option("experiment", experiment,
                          "one of: fig3, fig4, figb1, figb2, table2, appc")->required();
    reproduce->add_option("--override", override_args, "recipe override, key=value");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rate->parsed()) return cmd_rate(rate_flags);
        if (sweep->parsed()) {
            return cmd_sweep(sweep_flags, sweep_var, sweep_from, sweep_to, sweep_step,
                             sweep_optimize);
        }
        if (optimize->parsed()) return cmd_optimize(opt_flags, objective, opt_trace);
        if (maxdist->parsed()) {
            return cmd_max_distance(dist_flags, protocol, optimize_pulses, distance_cap, step_km);
        }
        if (phase->parsed()) return cmd_phase_error(phase_flags, phase_n, phase_n_max);
        if (reproduce->parsed()) return cmd_reproduce(repro_flags, experiment, override_args);
    } catch (const rrdps::infeasible_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitInputError;
}
