// SPDX-License-Identifier: Apache-2.0

#include "swipt/error.hpp"
#include "swipt/experiments.hpp"

#include <doctest.h>

#include <omp.h>

#include <atomic>
#include <cmath>
#include <sstream>

using namespace swipt;

namespace {

std::string csv(const Table& t)
{
    std::ostringstream out;
    write_csv(out, t);
    return out.str();
}

double cell(const Table& t, std::size_t row, const std::string& col)
{
    return std::get<double>(t.rows.at(row).at(t.column(col)));
}

ExperimentSpec small_spec(std::uint64_t slots)
{
    ExperimentSpec spec;
    spec.slots = slots;
    spec.seed = 77;
    spec.cfg.p_t = 98.0;
    spec.alphas = {0.0, 0.5, 0.9, 1.0};
    spec.pa.restarts = 3;
    return spec;
}

const std::vector<SlotData>& shared_slots()
{
    static const std::vector<SlotData> slots =
        build_slots(small_spec(24).cfg, 77, 24, IaOptions{}, ParallelPolicy::openmp);
    return slots;
}

}  // namespace

TEST_CASE("slot loop visits every index once and rethrows failures")
{
    omp_set_num_threads(4);
    for (ParallelPolicy policy : {ParallelPolicy::serial, ParallelPolicy::openmp}) {
        std::vector<int> hits(1000, 0);
        for_each_slot(hits.size(), policy, [&](std::size_t i) { ++hits[i]; });
        for (int h : hits)
            CHECK(h == 1);
        CHECK_THROWS_AS(for_each_slot(100, policy,
                                      [](std::size_t i) {
                                          if (i == 37)
                                              throw NumericError("boom");
                                      }),
                        NumericError);
    }
    CHECK(worker_count(ParallelPolicy::serial) == 1);
    CHECK(worker_count(ParallelPolicy::openmp) >= 1);
}

TEST_CASE("parallel kernels reproduce the serial reference bit for bit")
{
    omp_set_num_threads(4);
    ExperimentSpec spec = small_spec(24);
    const auto par = shared_slots();
    const auto ser = build_slots(spec.cfg, spec.seed, spec.slots, spec.ia, ParallelPolicy::serial);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].sol.iterations == ser[i].sol.iterations);
        for (int k = 0; k < 5; ++k) {
            CHECK(par[i].sol.v[k] == ser[i].sol.v[k]);
            CHECK(par[i].sol.u[k] == ser[i].sol.u[k]);
        }
    }
    ExperimentSpec serial = spec;
    serial.policy = ParallelPolicy::serial;
    CHECK(csv(run_bounds_experiment(spec, par)) == csv(run_bounds_experiment(serial, ser)));
    CHECK(csv(run_selection_sweep(spec, par)) == csv(run_selection_sweep(serial, ser)));
    CHECK(csv(run_pso_alpha_sweep(spec, par)) == csv(run_pso_alpha_sweep(serial, ser)));
    CHECK(csv(run_pso_user_profile(spec, par)) == csv(run_pso_user_profile(serial, ser)));
    CHECK(csv(run_power_rate_region(spec, par)) == csv(run_power_rate_region(serial, ser)));
    CHECK(csv(run_pa_profile(spec, par)) == csv(run_pa_profile(serial, ser)));
}

TEST_CASE("CSV cells use nine significant digits")
{
    Table t;
    t.header = {"name", "n", "x"};
    t.rows.push_back({std::string("a"), 3LL, 1.0 / 3.0});
    t.rows.push_back({std::string(), -1LL, std::numeric_limits<double>::infinity()});
    CHECK(csv(t) == "name,n,x\na,3,0.333333333\n,-1,inf\n");
    CHECK(format_cell(123456789012.0) == "1.23456789e+11");
    CHECK(t.column("x") == 2);
    CHECK_THROWS_AS(t.column("y"), ConfigError);
}

TEST_CASE("calibration scales log-linearly with the target SNR")
{
    const auto& slots = shared_slots();
    const Calibration zero = calibrate_power(slots, 0.0);
    CHECK(zero.p_t * zero.mean_gain == doctest::Approx(1.0).epsilon(1e-14));
    const Calibration ten = calibrate_power(slots, 10.0);
    CHECK(ten.p_t * ten.mean_gain == doctest::Approx(10.0).epsilon(1e-14));
    const Calibration up = calibrate_power(slots, 10.0 + 10.0 * std::log10(2.0));
    CHECK(up.p_t == doctest::Approx(2.0 * ten.p_t).epsilon(1e-14));
    CHECK(calibration_seed(77) != 77);
    CHECK_THROWS_AS(calibrate_power(slots, std::nan("")), ConfigError);
}

TEST_CASE("selection sweep extremes")
{
    const ExperimentSpec spec = small_spec(24);
    const Table t = run_selection_sweep(spec, shared_slots());
    REQUIRE(t.rows.size() == 12);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const long long id = std::get<long long>(t.rows[r][t.column("id_users")]);
        if (id == 0)
            CHECK(cell(t, r, "mean_sum_rate") == 0.0);
        if (id == 5)
            CHECK(cell(t, r, "mean_sum_power") == 0.0);
        CHECK(cell(t, r, "power_over_pt") == doctest::Approx(cell(t, r, "mean_sum_power") / spec.cfg.p_t));
    }
    // with everyone on the same side the schedulers coincide
    CHECK(cell(t, 0, "mean_sum_power") == cell(t, 6, "mean_sum_power"));
    CHECK(cell(t, 5, "mean_sum_rate") == cell(t, 11, "mean_sum_rate"));
}

TEST_CASE("splitting sweep extremes")
{
    const ExperimentSpec spec = small_spec(24);
    const Table t = run_pso_alpha_sweep(spec, shared_slots());
    REQUIRE(t.rows.size() == 4);
    CHECK(cell(t, 0, "mean_rho") == 0.0);
    CHECK(cell(t, 0, "mean_sum_rate") == 0.0);
    CHECK(cell(t, 3, "mean_rho") == 1.0);
    CHECK(cell(t, 3, "mean_sum_power") == 0.0);

    const Table u = run_pso_user_profile(spec, shared_slots());
    REQUIRE(u.rows.size() == 5);
    CHECK(cell(u, 0, "alpha_k") == 0.6);
}

TEST_CASE("bounds rows stay inside the bound")
{
    ExperimentSpec spec = small_spec(24);
    spec.bound_user = 3;
    const Table t = run_bounds_experiment(spec, shared_slots());
    REQUIRE(t.rows.size() == 24);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(cell(t, r, "Q") >= 0.0);
        CHECK(cell(t, r, "Q") <= cell(t, r, "Q_upper"));
        CHECK(std::get<long long>(t.rows[r][1]) == 3);
    }
}

TEST_CASE("region endpoints meet the analytic extremes")
{
    const ExperimentSpec spec = small_spec(24);
    const Table t = run_power_rate_region(spec, shared_slots());
    REQUIRE(t.rows.size() == 4 + 4 + 6 + 6);
    // rows: pso_pa alphas, pso alphas, prrs ids, rrs ids
    CHECK(cell(t, 4, "mean_sum_power") == doctest::Approx(cell(t, 8, "mean_sum_power")));
    CHECK(cell(t, 7, "mean_sum_rate") == doctest::Approx(cell(t, 13, "mean_sum_rate")));
    CHECK(cell(t, 3, "mean_sum_rate") >= cell(t, 7, "mean_sum_rate"));
    CHECK(cell(t, 0, "mean_sum_power") >= cell(t, 4, "mean_sum_power"));
    CHECK(cell(t, 4, "snr_db") == doctest::Approx(10.0 * std::log10(spec.cfg.p_t * mean_effective_gain(shared_slots()))));

    // the all-ID PA point is water-filling
    double rate = 0.0;
    for (const auto& s : shared_slots()) {
        std::vector<double> g;
        for (int k = 0; k < 5; ++k)
            g.push_back(std::norm(effective_channel(s.ch, s.sol, k)));
        const PowerProfile wf = water_filling(g, 5 * spec.cfg.p_t);
        for (int k = 0; k < 5; ++k)
            rate += std::log2(1.0 + wf.p[k] * g[k]);
    }
    CHECK(cell(t, 3, "mean_sum_rate") == doctest::Approx(rate / 24).epsilon(1e-7));
}

TEST_CASE("frontier interpolation")
{
    Table t;
    t.header = {"method", "mean_sum_power", "mean_sum_rate"};
    t.rows = {{std::string("a"), 10.0, 0.0}, {std::string("a"), 0.0, 10.0}, {std::string("a"), 6.0, 4.0},
              {std::string("b"), 1.0, 1.0}};
    CHECK(frontier_power_at_rate(t, "a", 2.0) == doctest::Approx(8.0));
    CHECK(frontier_power_at_rate(t, "a", 7.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(frontier_power_at_rate(t, "a", 11.0), DomainError);
    CHECK_THROWS_AS(frontier_power_at_rate(t, "b", 1.0), DomainError);
}

TEST_CASE("ExperimentSpec validation")
{
    ExperimentSpec spec = small_spec(10);
    CHECK_NOTHROW(spec.validate());
    spec.id_users = {6};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec(10);
    spec.alphas = {1.2};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec(0);
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec(10);
    spec.user_alpha = {0.5, 0.5};
    CHECK_THROWS_AS(run_pa_profile(spec, shared_slots()), ConfigError);
    spec = small_spec(10);
    spec.bound_user = 5;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
