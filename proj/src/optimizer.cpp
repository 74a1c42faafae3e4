#include "rrdps/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rrdps/common.hpp"
#include "rrdps/numerics.hpp"

namespace rrdps {

GoldenResult golden_section_max(const std::function<double(double)>& f, double a, double b,
                                double rel_tol, int max_iter) {
    if (!(a <= b)) std::swap(a, b);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    long evals = 2;
    for (int iter = 0; iter < max_iter; ++iter) {
        const double mid = 0.5 * (a + b);
        if (b - a <= rel_tol * std::max(std::abs(mid), 1e-300)) break;
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    GoldenResult out;
    out.x = 0.5 * (a + b);
    out.value = f(out.x);
    out.evaluations = evals + 1;
    if (fc > out.value) { out.x = c; out.value = fc; }
    if (fd > out.value) { out.x = d; out.value = fd; }
    return out;
}

OptimizationResult maximize_over_mu(const std::function<double(double)>& net_objective,
                                    const MuSearchOptions& options) {
    if (!(options.mu_min > 0.0) || !(options.mu_max > options.mu_min)) {
        throw std::domain_error("maximize_over_mu: invalid mu range");
    }
    const int n = std::max(options.grid_points, 4);
    const double log_lo = std::log(options.mu_min);
    const double log_hi = std::log(options.mu_max);

    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> vs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[i] = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
        vs[i] = net_objective(xs[i]);
    }

    OptimizationResult out;
    out.evaluations = n;
    if (options.keep_trace) {
        out.trace.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.trace.emplace_back(xs[i], vs[i]);
    }

    out.best_net = -std::numeric_limits<double>::infinity();
    out.best_mu = std::numeric_limits<double>::infinity();
    auto consider = [&out](double mu, double net) {
        if (net > out.best_net || (net == out.best_net && mu < out.best_mu)) {
            out.best_net = net;
            out.best_mu = mu;
        }
    };
    for (int i = 0; i < n; ++i) consider(xs[i], vs[i]);

    // Refine every local maximum of the coarse profile. Near the reach limit
    // the objective has a second, narrow hump whose value may still be below
    // the mu -> 0 edge on the grid, so refining only the global scan winner
    // would miss it.
    for (int i = 0; i < n; ++i) {
        const bool left_ok = i == 0 || vs[i] >= vs[i - 1];
        const bool right_ok = i == n - 1 || vs[i] >= vs[i + 1];
        const bool strict = (i > 0 && vs[i] > vs[i - 1]) || (i < n - 1 && vs[i] > vs[i + 1]) ||
                            n == 1;
        if (!(left_ok && right_ok && strict)) continue;
        const double a = xs[static_cast<std::size_t>(std::max(0, i - 1))];
        const double b = xs[static_cast<std::size_t>(std::min(n - 1, i + 1))];
        const GoldenResult refined = golden_section_max(net_objective, a, b, options.rel_tol);
        out.evaluations += refined.evaluations;
        consider(refined.x, refined.value);
    }

    out.best_rate = std::max(0.0, out.best_net);
    out.feasible = out.best_net > 0.0;
    return out;
}

OptimizationResult optimize_mu(std::int64_t pulses, double distance_km,
                               const ChannelParams& params, EstimatorKind estimator,
                               BackgroundScenario scenario, const MuSearchOptions& options) {
    if (pulses < 2) throw std::domain_error("optimize_mu: pulses must be >= 2");
    auto net = [&](double mu) {
        ProtocolConfig config{pulses, mu, scenario};
        return rrdps_rate(config, distance_km, params, estimator).net_per_pulse;
    };
    OptimizationResult out = maximize_over_mu(net, options);
    out.best_pulses = pulses;
    return out;
}

std::vector<std::int64_t> default_pulse_grid() {
    std::vector<std::int64_t> grid;
    for (int k = 2; k <= 20; ++k) grid.push_back(std::int64_t{1} << k);
    return grid;
}

OptimizationResult optimize_pulses_mu(double distance_km, const ChannelParams& params,
                                      EstimatorKind estimator, BackgroundScenario scenario,
                                      const std::vector<std::int64_t>& pulse_grid,
                                      const MuSearchOptions& options) {
    if (pulse_grid.empty()) throw std::domain_error("optimize_pulses_mu: empty pulse grid");
    std::vector<OptimizationResult> results(pulse_grid.size());
    for (std::size_t i = 0; i < pulse_grid.size(); ++i) {
        results[i] = optimize_mu(pulse_grid[i], distance_km, params, estimator, scenario, options);
    }
    // Deterministic reduction: higher net wins, ties toward smaller mu, then
    // smaller L.
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        const OptimizationResult& a = results[i];
        const OptimizationResult& b = results[best];
        const bool better = a.best_net > b.best_net ||
                            (a.best_net == b.best_net &&
                             (a.best_mu < b.best_mu ||
                              (a.best_mu == b.best_mu && pulse_grid[i] < pulse_grid[best])));
        if (better) best = i;
    }
    OptimizationResult out = results[best];
    out.best_pulses = pulse_grid[best];
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i != best) out.evaluations += results[i].evaluations;
    }
    return out;
}

double threshold_ebit(double mu, std::int64_t pulses, bool use_mu_approximation) {
    if (pulses < 2) throw std::domain_error("threshold_ebit: pulses must be >= 2");
    if (!(mu >= 0.0)) throw std::domain_error("threshold_ebit: negative mu");
    const double e_ph = use_mu_approximation
                            ? mu
                            : mu * static_cast<double>(pulses) / static_cast<double>(pulses - 1);
    if (e_ph >= 0.5) {
        throw infeasible_error("threshold_ebit: phase error at 1/2, no positive rate exists");
    }
    return inverse_binary_entropy(1.0 - binary_entropy(e_ph));
}

EtaMinResult analytic_eta_min(double mu, std::int64_t pulses, const ChannelParams& params,
                              BackgroundScenario scenario, bool use_mu_approximation) {
    params.validate();
    if (!(mu > 0.0)) throw std::domain_error("analytic_eta_min: mu must be positive");
    EtaMinResult out;
    out.threshold_c = threshold_ebit(mu, pulses, use_mu_approximation);
    if (out.threshold_c <= params.e_d) {
        throw infeasible_error("analytic_eta_min: misalignment alone exceeds the threshold");
    }
    const double y0_total = background_total(pulses, scenario, params.y_0);
    if (y0_total >= 1.0) {
        out.finite = false;
        out.eta_min_exact = std::numeric_limits<double>::infinity();
        out.eta_min_approx = std::numeric_limits<double>::infinity();
        return out;
    }
    const double rhs = ((0.5 - params.e_d) / (out.threshold_c - params.e_d) - 1.0) * y0_total /
                       (1.0 - y0_total);
    const double l_mu = static_cast<double>(pulses) * mu;
    out.eta_min_approx = rhs / l_mu;
    if (rhs == 0.0) {
        out.eta_min_exact = 0.0;
        return out;
    }
    if (rhs >= 1.0) {
        // 1 - e^{-eta L mu} saturates below rhs: no transmittance suffices.
        out.finite = false;
        out.eta_min_exact = std::numeric_limits<double>::infinity();
        return out;
    }
    // Root of g(eta) = (1 - e^{-eta L mu}) - rhs, bracketed then bisected.
    auto g = [&](double eta) { return -std::expm1(-eta * l_mu) - rhs; };
    double hi = std::max(out.eta_min_approx * 2.0, 1e-300);
    while (g(hi) < 0.0 && hi < 1e12) hi *= 2.0;
    double lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid; else hi = mid;
    }
    out.eta_min_exact = 0.5 * (lo + hi);
    return out;
}

double asymptotic_rate(double mu, std::int64_t pulses, double distance_km,
                       const ChannelParams& params, BackgroundScenario scenario) {
    if (pulses < 2) throw std::domain_error("asymptotic_rate: pulses must be >= 2");
    const ChannelPoint point = channel_point(distance_km, pulses, scenario, params);
    const double l_mu = static_cast<double>(pulses) * mu;
    const double q = gain(l_mu, point.eta, point.y0_total);
    const double e_bit = qber(l_mu, point.eta, point.y0_total, params.e_d, params.e_0);
    const double e_ph =
        std::min(mu * static_cast<double>(pulses) / static_cast<double>(pulses - 1), 0.5);
    return q * (1.0 - binary_entropy(e_bit) - binary_entropy(e_ph)) /
           static_cast<double>(pulses);
}

double l_eta_objective(double mu, const ChannelParams& params) {
    double c;
    try {
        c = threshold_ebit(mu, 1000000, true);
    } catch (const infeasible_error&) {
        return std::numeric_limits<double>::infinity();
    }
    if (c <= params.e_d) return std::numeric_limits<double>::infinity();
    const double y0 = params.y_0;
    return ((0.5 - params.e_d) / (c - params.e_d) - 1.0) / mu * y0 / (1.0 - y0);
}

OptimizationResult optimize_mu_for_l_eta(const ChannelParams& params,
                                         const MuSearchOptions& options) {
    auto negated = [&](double mu) {
        const double v = l_eta_objective(mu, params);
        return std::isfinite(v) ? -v : -std::numeric_limits<double>::max();
    };
    OptimizationResult out = maximize_over_mu(negated, options);
    out.best_rate = -out.best_net;  // the minimized objective value
    out.feasible = std::isfinite(out.best_rate) && out.best_rate > 0.0;
    return out;
}

namespace {

DistanceSolution solve_max_distance(
    const std::function<OptimizationResult(double)>& optimize_at,
    const DistanceSearchOptions& options) {
    DistanceSolution sol;
    sol.step_km = options.step_km;

    OptimizationResult at_zero = optimize_at(0.0);
    if (!at_zero.feasible) {
        throw infeasible_error("max_distance: rate is zero already at distance 0");
    }
    OptimizationResult at_cap = optimize_at(options.distance_cap_km);
    if (at_cap.feasible) {
        sol.unbounded = true;
        sol.max_distance_km = options.distance_cap_km;
        sol.best_mu_at_max = at_cap.best_mu;
        sol.rate_at_max = at_cap.best_rate;
        sol.pulses = at_cap.best_pulses;
        return sol;
    }

    double lo = 0.0;
    double hi = options.distance_cap_km;
    OptimizationResult at_lo = at_zero;
    while (hi - lo > options.step_km) {
        const double mid = 0.5 * (lo + hi);
        OptimizationResult at_mid = optimize_at(mid);
        if (at_mid.feasible) {
            lo = mid;
            at_lo = at_mid;
        } else {
            hi = mid;
        }
    }
    sol.max_distance_km = lo;
    sol.best_mu_at_max = at_lo.best_mu;
    sol.rate_at_max = at_lo.best_rate;
    sol.pulses = at_lo.best_pulses;
    return sol;
}

}  // namespace

DistanceSolution max_distance(const ChannelParams& params, EstimatorKind estimator,
                              BackgroundScenario scenario, std::int64_t pulses,
                              const DistanceSearchOptions& options) {
    DistanceSolution sol = solve_max_distance(
        [&](double d) { return optimize_mu(pulses, d, params, estimator, scenario, options.mu); },
        options);
    sol.scenario = scenario;
    sol.pulses = pulses;
    sol.eta_at_max = transmittance(sol.max_distance_km, params);
    try {
        sol.threshold_c = threshold_ebit(sol.best_mu_at_max, pulses);
    } catch (const infeasible_error&) {
        sol.threshold_c = 0.0;
    }
    return sol;
}

DistanceSolution max_distance_optimized_pulses(const ChannelParams& params,
                                               EstimatorKind estimator,
                                               BackgroundScenario scenario,
                                               const std::vector<std::int64_t>& pulse_grid,
                                               const DistanceSearchOptions& options) {
    DistanceSolution sol = solve_max_distance(
        [&](double d) {
            return optimize_pulses_mu(d, params, estimator, scenario, pulse_grid, options.mu);
        },
        options);
    sol.scenario = scenario;
    sol.eta_at_max = transmittance(sol.max_distance_km, params);
    if (sol.pulses >= 2) {
        try {
            sol.threshold_c = threshold_ebit(sol.best_mu_at_max, sol.pulses);
        } catch (const infeasible_error&) {
            sol.threshold_c = 0.0;
        }
    }
    return sol;
}

DistanceSolution bb84_max_distance(const ChannelParams& params,
                                   const DistanceSearchOptions& options) {
    MuSearchOptions mu_options = options.mu;
    mu_options.mu_max = 1.0;  // the baseline's optimum sits near 0.5
    DistanceSolution sol = solve_max_distance(
        [&](double d) {
            return maximize_over_mu(
                [&](double mu) { return bb84_decoy_point(mu, d, params).net; }, mu_options);
        },
        options);
    sol.scenario = BackgroundScenario::LIndependent;
    sol.pulses = 1;
    sol.eta_at_max = transmittance(sol.max_distance_km, params);
    return sol;
}

}  // namespace rrdps
