#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rrdps/phase_error.hpp"

using namespace rrdps;

TEST_CASE("syk_bound values and cap") {
    CHECK(syk_bound(0, 32) == 0.0);
    CHECK(syk_bound(1, 33) == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
    CHECK(syk_bound(20, 33) == 0.5);
    CHECK_THROWS_AS((void)syk_bound(1, 1), std::domain_error);
    CHECK_THROWS_AS((void)syk_bound(-1, 32), std::domain_error);
}

TEST_CASE("syk_bound saturates exactly at (L-1)/2") {
    for (std::int64_t pulses : {3, 8, 32, 101}) {
        for (std::int64_t n = 0; n <= pulses; ++n) {
            const bool below_half = syk_bound(n, pulses) < 0.5;
            CHECK(below_half == (2 * n < pulses - 1));
        }
    }
}

TEST_CASE("independent_bound values") {
    CHECK(independent_bound(0, 32) == 0.0);
    for (std::int64_t pulses : {2, 5, 32, 1000}) {
        CHECK(independent_bound(1, pulses) ==
              doctest::Approx(1.0 / static_cast<double>(pulses)).epsilon(1e-14));
    }
    CHECK(independent_bound(2, 4) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK_THROWS_AS((void)independent_bound(1, 0), std::domain_error);
}

TEST_CASE("independent_bound is monotone and saturates at one half") {
    for (std::int64_t n = 1; n <= 128; ++n) {
        CHECK(independent_bound(n, 32) > independent_bound(n - 1, 32));
        CHECK(independent_bound(n, 32) < 0.5);
        CHECK(independent_bound(n, 32) >= 0.5 - std::exp(-2.0 * n / 32.0));
    }
    for (std::int64_t pulses = 3; pulses <= 64; ++pulses) {
        CHECK(independent_bound(5, pulses) < independent_bound(5, pulses - 1));
    }
    // exponential approach to 1/2
    CHECK(0.5 - independent_bound(256, 32) < 1e-7);
}

TEST_CASE("independent_bound never exceeds syk_bound") {
    for (std::int64_t pulses : {2, 3, 8, 32, 1024}) {
        for (std::int64_t n = 0; n <= 64; ++n) {
            CHECK(independent_bound(n, pulses) <= syk_bound(n, pulses) + 1e-16);
        }
    }
}

TEST_CASE("independent_bound agrees with the binomial oracle") {
    CHECK(independent_bound_oracle(0, 8) == 0.0);
    CHECK(independent_bound_oracle(1, 8) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(independent_bound_oracle(5, 16) ==
          doctest::Approx(independent_bound(5, 16)).epsilon(1e-14));
    for (std::int64_t pulses : {2, 3, 8, 32}) {
        for (std::int64_t n = 0; n <= 20; ++n) {
            CHECK(std::abs(independent_bound(n, pulses) - independent_bound_oracle(n, pulses)) <
                  1e-14);
        }
    }
    CHECK_THROWS_AS((void)independent_bound_oracle(31, 8), std::domain_error);
}

TEST_CASE("small_n_reciprocal_approx values") {
    CHECK(small_n_reciprocal_approx(1, 32) == 33.0);
    CHECK(small_n_reciprocal_approx(2, 40) == 21.0);
    CHECK_THROWS_AS((void)small_n_reciprocal_approx(0, 32), std::domain_error);
}

TEST_CASE("reciprocal approximation is within 5% for photon pairs and up") {
    for (std::int64_t ratio = 10; ratio <= 100; ratio += 5) {
        for (std::int64_t n = 2; n <= 64; n *= 2) {
            const std::int64_t pulses = ratio * n;
            const double exact = 1.0 / independent_bound(n, pulses);
            const double approx = small_n_reciprocal_approx(n, pulses);
            CHECK(std::abs(exact - approx) / approx < 0.05);
        }
    }
    // single photons need a wider ratio before the +1 becomes negligible:
    // at L/n = 10 the deviation is 1/(1+L) ~ 9%, inside 5% only from ~20 up
    CHECK(std::abs(1.0 / independent_bound(1, 10) - 11.0) / 11.0 > 0.05);
    CHECK(std::abs(1.0 / independent_bound(1, 20) - 21.0) / 21.0 < 0.05);
}
