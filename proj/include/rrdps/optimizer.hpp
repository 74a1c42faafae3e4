#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rrdps/channel.hpp"
#include "rrdps/keyrate.hpp"

namespace rrdps {

/// Result of a golden-section maximization over one bracket.
struct GoldenResult {
    double x = 0.0;
    double value = 0.0;
    long evaluations = 0;
};

/// Maximizes f on [a, b] to relative x-tolerance rel_tol. Deterministic.
GoldenResult golden_section_max(const std::function<double(double)>& f, double a, double b,
                                double rel_tol = 1e-4, int max_iter = 200);

struct MuSearchOptions {
    double mu_min = 1e-6;
    double mu_max = 0.5;
    int grid_points = 64;    // coarse log-spaced scan
    double rel_tol = 1e-4;   // golden-section refinement tolerance in mu
    bool keep_trace = false;
};

struct OptimizationResult {
    double best_mu = 0.0;
    std::int64_t best_pulses = 0;  // set by the (L, mu) search
    double best_rate = 0.0;        // clamped objective at the optimum
    double best_net = 0.0;         // unclamped objective at the optimum
    bool feasible = false;         // best_net > 0
    long evaluations = 0;
    std::vector<std::pair<double, double>> trace;  // (mu, net) of the coarse scan
};

/// Maximizes an unclamped objective over mu: coarse log grid, then
/// golden-section refinement around every local maximum of the scan. The
/// refinement of all local maxima matters near feasibility boundaries, where
/// the positive region gets narrower than the coarse spacing. Ties break
/// toward smaller mu.
OptimizationResult maximize_over_mu(const std::function<double(double)>& net_objective,
                                    const MuSearchOptions& options = {});

/// Key-rate maximization over mu at a fixed operating point.
OptimizationResult optimize_mu(std::int64_t pulses, double distance_km,
                               const ChannelParams& params, EstimatorKind estimator,
                               BackgroundScenario scenario, const MuSearchOptions& options = {});

/// Default train-length grid {2^2, ..., 2^20}.
std::vector<std::int64_t> default_pulse_grid();

/// Runs optimize_mu for every L in the grid and returns the argmax; ties
/// break toward smaller mu, then smaller L. Deterministic regardless of
/// evaluation order.
OptimizationResult optimize_pulses_mu(double distance_km, const ChannelParams& params,
                                      EstimatorKind estimator, BackgroundScenario scenario,
                                      const std::vector<std::int64_t>& pulse_grid,
                                      const MuSearchOptions& options = {});

/// Largest tolerable bit error rate c at intensity mu:
/// c = H^{-1}[1 - H(e_ph)] with e_ph = L mu / (L - 1), or e_ph = mu when
/// use_mu_approximation is set. Throws infeasible_error when 1 - H(e_ph) <= 0.
double threshold_ebit(double mu, std::int64_t pulses, bool use_mu_approximation = false);

/// Smallest transmittance with a positive asymptotic rate.
struct EtaMinResult {
    double threshold_c = 0.0;
    double eta_min_exact = 0.0;   // root of 1 - e^{-eta L mu} = rhs
    double eta_min_approx = 0.0;  // small-eta linearization rhs / (L mu)
    bool finite = true;           // false when no transmittance suffices
};

/// Analytic minimal transmittance under either background scenario.
/// Throws infeasible_error when the misalignment alone exceeds the threshold.
EtaMinResult analytic_eta_min(double mu, std::int64_t pulses, const ChannelParams& params,
                              BackgroundScenario scenario, bool use_mu_approximation = false);

/// Asymptotic per-pulse net rate Q [1 - H(e_bit) - H(e_ph)] / L with the
/// photon number concentrated at L mu. Unclamped.
double asymptotic_rate(double mu, std::int64_t pulses, double distance_km,
                       const ChannelParams& params, BackgroundScenario scenario);

/// Objective L * eta_min(mu) of the idealized scenario, constant in L;
/// +infinity where infeasible. Used to pick the intensity that maximizes
/// reach.
double l_eta_objective(double mu, const ChannelParams& params);

/// Minimizes l_eta_objective over mu.
OptimizationResult optimize_mu_for_l_eta(const ChannelParams& params,
                                         const MuSearchOptions& options = {});

struct DistanceSolution {
    double max_distance_km = 0.0;
    double eta_at_max = 0.0;
    double threshold_c = 0.0;  // tolerable e_bit at the optimal mu
    BackgroundScenario scenario = BackgroundScenario::LDependent;
    std::int64_t pulses = 0;
    double best_mu_at_max = 0.0;
    double rate_at_max = 0.0;
    bool feasible_at_zero = true;
    bool unbounded = false;  // positive rate at the search cap
    double step_km = 0.0;
};

struct DistanceSearchOptions {
    double distance_cap_km = 500.0;
    double step_km = 1e-3;
    MuSearchOptions mu;
};

/// Bisection for the largest distance with a positive mu-optimized rate.
/// Throws infeasible_error when the rate is zero already at distance 0.
DistanceSolution max_distance(const ChannelParams& params, EstimatorKind estimator,
                              BackgroundScenario scenario, std::int64_t pulses,
                              const DistanceSearchOptions& options = {});

/// Same solver with L optimized over a grid at every probed distance.
DistanceSolution max_distance_optimized_pulses(const ChannelParams& params,
                                               EstimatorKind estimator,
                                               BackgroundScenario scenario,
                                               const std::vector<std::int64_t>& pulse_grid,
                                               const DistanceSearchOptions& options = {});

/// Maximal distance of the BB84 baseline, mu searched over (0, 1].
DistanceSolution bb84_max_distance(const ChannelParams& params,
                                   const DistanceSearchOptions& options = {});

}  // namespace rrdps
