// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo properties that need a few thousand slots.

#include "swipt/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace swipt;

namespace {

constexpr std::uint64_t kSlots = 2000;

const std::vector<SlotData>& slots()
{
    static const std::vector<SlotData> s = build_slots(NetworkConfig{}, 5, kSlots, IaOptions{}, ParallelPolicy::openmp);
    return s;
}

}  // namespace

TEST_CASE("calibrated SNR holds on fresh slots")
{
    const Calibration c = calibrate_power(NetworkConfig{}, 10.0, 5, kSlots);
    const double measured = 10.0 * std::log10(c.p_t * mean_effective_gain(slots()));
    // standard error of the difference is about 0.07 dB here
    CHECK(std::abs(measured - 10.0) <= 0.2);
}

Table profile_table()
{
    ExperimentSpec spec;
    spec.slots = kSlots;
    spec.seed = 5;
    spec.cfg.p_t = calibrate_power(slots(), 10.0).p_t;
    return run_pa_profile(spec, slots());
}

const Table& profile()
{
    static const Table t = profile_table();
    return t;
}

double at(const Table& t, std::size_t row, const char* col)
{
    return std::get<double>(t.rows[row][t.column(col)]);
}

TEST_CASE("allocated powers respect the budget and rho grows with alpha")
{
    const Table& t = profile();
    double total = 0.0;
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        total += at(t, k, "mean_power_allocated");
        if (k > 0)
            CHECK(at(t, k, "mean_rho") >= at(t, k - 1, "mean_rho"));
    }
    CHECK(total == doctest::Approx(5.0 * calibrate_power(slots(), 10.0).p_t).epsilon(1e-9));
}

// Expected to hold if power follows the rate weight. With this profile every
// alpha sits below the zero-rate threshold on most slots, so the rate term
// rarely matters and this check is currently red; see the README.
TEST_CASE("users asking for more rate get more transmit power")
{
    const Table& t = profile();
    for (std::size_t k = 1; k < t.rows.size(); ++k)
        CHECK(at(t, k, "mean_power_allocated") >= at(t, k - 1, "mean_power_allocated"));
}
