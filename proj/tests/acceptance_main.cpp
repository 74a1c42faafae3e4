// Acceptance suite: every release criterion evaluated end to end, one
// PASS/FAIL line each. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rrdps/channel.hpp"
#include "rrdps/experiments.hpp"
#include "rrdps/keyrate.hpp"
#include "rrdps/numerics.hpp"
#include "rrdps/optimizer.hpp"
#include "rrdps/phase_error.hpp"

using namespace rrdps;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& label, bool pass, const std::string& detail,
            double seconds, double budget_seconds) {
    const bool in_budget = seconds < budget_seconds;
    if (!pass || !in_budget) ++g_failures;
    std::printf("CRITERION %d %-4s %s: %s [%.1f s, budget %.0f s]\n", criterion,
                pass && in_budget ? "PASS" : "FAIL", label.c_str(), detail.c_str(), seconds,
                budget_seconds);
    std::fflush(stdout);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// 1. High-error reference point.
void criterion_1() {
    Timer timer;
    ChannelParams params = ChannelParams::gys();
    params.eta_d = 0.90;
    params.e_d = 0.485;
    ProtocolConfig config{220000, 0.77 / 220000.0, BackgroundScenario::LDependent};
    const RateBreakdown br = rrdps_rate(config, 1.0, params, EstimatorKind::Decoy);
    const bool e_bit_ok = std::abs(br.e_bit - 0.4923) <= 1e-4;
    const bool rate_ok = std::abs(br.rate_per_pulse - 2.265e-10) <= 0.20 * 2.265e-10;
    std::ostringstream oss;
    oss << "e_bit=" << br.e_bit << " (ref 0.4923 +- 1e-4), R=" << br.rate_per_pulse
        << " (ref 2.265e-10 +- 20%)";
    report(1, "high-error reference point", e_bit_ok && rate_ok, oss.str(), timer.seconds(), 5.0);
}

// 2. Maximal distance of the decoy analysis at L = 32.
void criterion_2() {
    Timer timer;
    const DistanceSolution sol =
        max_distance(ChannelParams::gys(), EstimatorKind::Decoy, BackgroundScenario::LDependent, 32);
    std::ostringstream oss;
    oss << "max distance " << sol.max_distance_km << " km (expect 140 +- 5)";
    report(2, "decoy reach at L=32", std::abs(sol.max_distance_km - 140.0) <= 5.0, oss.str(),
           timer.seconds(), 60.0);
}

// 3. Baseline protocol calibration.
void criterion_3() {
    Timer timer;
    const DistanceSolution sol = bb84_max_distance(ChannelParams::gys());
    std::ostringstream oss;
    oss << "max distance " << sol.max_distance_km << " km (expect 140 +- 10)";
    report(3, "baseline reach", std::abs(sol.max_distance_km - 140.0) <= 10.0, oss.str(),
           timer.seconds(), 30.0);
}

// 4. Misalignment sweep claims.
void criterion_4() {
    Timer timer;
    const ExperimentResult fig4 = run_fig4({});
    bool pass = true;
    std::ostringstream oss;
    for (const CheckResult& check : fig4.checks) {
        pass = pass && check.pass && !check.skipped;
        oss << check.name << "=" << (check.skipped ? "skip" : check.pass ? "ok" : "FAIL") << " ";
    }
    report(4, "misalignment sweep claims", pass, oss.str(), timer.seconds(), 120.0);
}

// 5. Estimator ordering across the distance sweep.
void criterion_5() {
    Timer timer;
    const ExperimentResult fig3 = run_fig3({});
    bool ordering = false, superset = false;
    std::string detail;
    for (const CheckResult& check : fig3.checks) {
        if (check.name == "estimator_ordering") {
            ordering = check.pass;
            if (!check.pass) detail = check.detail;
        }
        if (check.name == "positive_range_superset") {
            superset = check.pass;
            if (detail.empty()) detail = check.detail;
        }
    }
    report(5, "estimator ordering on the distance grid", ordering && superset, detail,
           timer.seconds(), 120.0);
}

// 6. Phase-error bound properties.
void criterion_6() {
    Timer timer;
    bool tighter = true;
    for (std::int64_t pulses : {2, 3, 8, 32, 1024}) {
        for (std::int64_t n = 0; n <= 64; ++n) {
            tighter = tighter && independent_bound(n, pulses) <= syk_bound(n, pulses) + 1e-16;
        }
    }
    bool oracle_ok = true;
    for (std::int64_t pulses : {2, 3, 8, 32, 1024}) {
        for (std::int64_t n = 0; n <= 20; ++n) {
            oracle_ok = oracle_ok &&
                        std::abs(independent_bound(n, pulses) -
                                 independent_bound_oracle(n, pulses)) < 1e-14;
        }
    }
    // reciprocal approximation: photon pairs and up from ratio 10, single
    // photons from ratio 20
    bool approx_ok = true;
    for (std::int64_t ratio = 10; ratio <= 100; ratio += 2) {
        for (std::int64_t n = 2; n <= 64; n *= 2) {
            const double exact = 1.0 / independent_bound(n, ratio * n);
            const double approx = 1.0 + static_cast<double>(ratio);
            approx_ok = approx_ok && std::abs(exact - approx) / approx < 0.05;
        }
    }
    for (std::int64_t ratio = 20; ratio <= 100; ratio += 2) {
        const double exact = 1.0 / independent_bound(1, ratio);
        approx_ok = approx_ok && std::abs(exact - (1.0 + ratio)) / (1.0 + ratio) < 0.05;
    }
    const double syk_recip = 1.0 / syk_bound(32, 640);  // ratio 20 at n = 32
    const double ind_recip = 1.0 / independent_bound(32, 640);
    const bool anchors = std::abs(syk_recip - (20.0 - 1.0 / 32.0)) < 1e-9 &&
                         std::abs(ind_recip - 21.0) / 21.0 < 0.01;
    std::ostringstream oss;
    oss << "tighter=" << tighter << " oracle=" << oracle_ok << " approx=" << approx_ok
        << " reciprocals(20)=" << syk_recip << "/" << ind_recip;
    report(6, "phase-error bound properties", tighter && oracle_ok && approx_ok && anchors,
           oss.str(), timer.seconds(), 5.0);
}

// 7. Scaling of the analytic reach limit.
void criterion_7() {
    Timer timer;
    const ExperimentResult appc = run_appc({});
    bool pass = true;
    std::ostringstream oss;
    for (const CheckResult& check : appc.checks) {
        pass = pass && check.pass;
        oss << check.name << "=" << (check.pass ? "ok" : "FAIL") << " ";
    }
    report(7, "reach-limit scaling checks", pass, oss.str(), timer.seconds(), 60.0);
}

// 8. Numerical oracles.
void criterion_8() {
    Timer timer;
    bool series_ok = true;
    int points = 0;
    for (double l_mu : {0.05, 0.3, 0.77, 1.92, 10.0}) {
        for (double eta : {1.0, 0.1, 4.5e-3, 7.1e-5}) {
            for (double y0 : {0.0, 1.7e-6, 5.44e-5, 0.05, 0.31}) {
                ++points;
                const PoissonWindow w = poisson_window(l_mu);
                double q_series = 0.0, eq_series = 0.0;
                for (std::int64_t n = w.first_n; n <= w.last_n(); ++n) {
                    const double yn = yield_n(n, eta, y0);
                    q_series += w.at(n) * yn;
                    eq_series += w.at(n) * (0.5 * y0 + 0.033 * (yn - y0));
                }
                const double q = gain(l_mu, eta, y0);
                series_ok = series_ok && std::abs(q - q_series) < 1e-10;
                if (q > 0.0) {
                    series_ok = series_ok &&
                                std::abs(qber(l_mu, eta, y0, 0.033, 0.5) * q - eq_series) < 1e-10;
                }
            }
        }
    }
    bool roundtrip_ok = true;
    for (int i = 0; i <= 1000; ++i) {
        const double y = i / 1000.0;
        roundtrip_ok =
            roundtrip_ok && std::abs(binary_entropy(inverse_binary_entropy(y)) - y) < 1e-10;
    }
    double tail_oracle = 0.0;
    for (std::int64_t n = 200; n >= 6; --n) tail_oracle += poisson_pmf(1.92, n);
    const bool tail_ok = std::abs(poisson_tail_above(1.92, 5) - tail_oracle) < 1e-14;
    std::ostringstream oss;
    oss << points << " series points, entropy roundtrip and Poisson tail oracles";
    report(8, "numerical oracles", series_ok && roundtrip_ok && tail_ok, oss.str(),
           timer.seconds(), 5.0);
}

// 9. Byte-identical reproduction across runs and thread counts.
void criterion_9() {
    Timer timer;
#ifdef RRDPS_CLI_PATH
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rrdps_determinism";
    fs::create_directories(dir);
    const fs::path out1 = dir / "fig3_t1_run1.csv";
    const fs::path out2 = dir / "fig3_t1_run2.csv";
    const fs::path out3 = dir / "fig3_t8.csv";

    auto run = [&](const fs::path& out, int threads) {
        std::ostringstream cmd;
        cmd << '"' << RRDPS_CLI_PATH << '"' << " reproduce fig3 --threads " << threads
            << " --output " << out << " > " << (dir / "stdout.txt") << " 2>&1";
        return std::system(cmd.str().c_str());
    };
    const int rc1 = run(out1, 1);
    const int rc2 = run(out2, 1);
    const int rc3 = run(out3, 8);
    const std::string a = read_file(out1);
    const std::string b = read_file(out2);
    const std::string c = read_file(out3);
    const bool ran = rc1 == 0 && rc2 == 0 && rc3 == 0;
    const bool identical = !a.empty() && a == b && a == c;
    std::ostringstream oss;
    oss << "exit codes " << rc1 << "/" << rc2 << "/" << rc3 << ", " << a.size()
        << " bytes, runs identical=" << (identical ? "yes" : "NO");
    report(9, "byte-identical reproduction (threads 1 and 8)", ran && identical, oss.str(),
           timer.seconds(), 300.0);
    fs::remove_all(dir);
#else
    report(9, "byte-identical reproduction", false, "CLI path not configured", timer.seconds(),
           300.0);
#endif
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures == 0) {
        std::printf("ALL ACCEPTANCE CRITERIA PASS\n");
    } else {
        std::printf("%d ACCEPTANCE CRITERIA FAILED\n", g_failures);
    }
    return g_failures;
}
