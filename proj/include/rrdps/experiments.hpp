#pragma once

#include <map>
#include <string>
#include <vector>

#include "rrdps/channel.hpp"
#include "rrdps/csv.hpp"
#include "rrdps/parallel.hpp"

namespace rrdps {

/// Named, reproducible experiment recipes. Each regenerates one reference
/// table at fixed defaults and reports its built-in consistency checks.
enum class ExperimentId {
    Fig3RateVsDistance,
    Fig4Misalignment,
    FigB1PhaseError,
    FigB2ReciprocalPhaseError,
    Table2HighEbit,
    AppCScalingChecks,
};

std::string experiment_name(ExperimentId id);
/// Accepts fig3, fig4, figb1, figb2, table2, appc (case-insensitive).
/// Throws std::invalid_argument for unknown names.
ExperimentId parse_experiment(const std::string& name);
std::vector<ExperimentId> all_experiments();

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

struct ExperimentResult {
    CsvTable table;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

/// Numeric parameter overrides; unknown keys are rejected. Recognized keys
/// per experiment are listed in docs/output_schema.md.
using Overrides = std::map<std::string, double>;

struct ExperimentOptions {
    ChannelParams params = ChannelParams::gys();
    ExecMode mode = ExecMode::Parallel;
    Overrides overrides;
};

ExperimentResult run_experiment(ExperimentId id, const ExperimentOptions& options = {});

// Individual recipes, exposed for tests.
ExperimentResult run_fig3(const ExperimentOptions& options = {});
ExperimentResult run_fig4(const ExperimentOptions& options = {});
ExperimentResult run_figb1(const ExperimentOptions& options = {});
ExperimentResult run_figb2(const ExperimentOptions& options = {});
ExperimentResult run_table2(const ExperimentOptions& options = {});
ExperimentResult run_appc(const ExperimentOptions& options = {});

}  // namespace rrdps
