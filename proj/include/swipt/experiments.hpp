// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_EXPERIMENTS_HPP
#define SWIPT_EXPERIMENTS_HPP

#include "swipt/allocation.hpp"
#include "swipt/channel.hpp"
#include "swipt/ia_solver.hpp"
#include "swipt/metrics.hpp"
#include "swipt/parallel.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace swipt {

struct ExperimentSpec {
    std::string name;
    NetworkConfig cfg;
    std::uint64_t slots = 5000;
    std::uint64_t seed = 1;
    double snr_db = 10.0;
    PowerMode mode = PowerMode::instantaneous;
    // Sweep grids. Empty grids take the defaults of each runner.
    std::vector<double> alphas;      // uniform alpha values
    std::vector<double> user_alpha;  // one alpha per user
    std::vector<int> id_users;       // dedicated ID receiver counts, 0..K
    int bound_user = 0;              // receiver reported by the bounds run
    std::uint64_t calibration_slots = 5000;
    IaOptions ia;
    PaOptions pa;
    ParallelPolicy policy = ParallelPolicy::openmp;

    // Throws ConfigError.
    void validate() const;
};

// Everything later stages need from one block-fading slot. The IA solution
// is computed at unit power; MinIL's fixed points do not depend on P_t.
struct SlotData {
    ChannelSet ch;
    IaSolution sol;
    SymbolVector xi;
};

// Slots 0..slots-1 drawn from `seed`.
std::vector<SlotData> build_slots(const NetworkConfig& cfg, std::uint64_t seed, std::uint64_t slots,
                                  const IaOptions& ia, ParallelPolicy policy);

// Mean of |u^H H v|^2 over all users of the given slots.
double mean_effective_gain(const std::vector<SlotData>& slots);

struct Calibration {
    double p_t = 0.0;
    double mean_gain = 0.0;  // E|u^H H v|^2
    std::uint64_t slots = 0;
    std::uint64_t unconverged = 0;
};

// Seed of the calibration slots; distinct from the experiment slots of `seed`.
std::uint64_t calibration_seed(std::uint64_t seed);

// P_t = 10^(snr_db / 10) / E|u^H H v|^2, estimated on `slots` slots of
// calibration_seed(seed).
Calibration calibrate_power(const NetworkConfig& cfg, double snr_db, std::uint64_t seed, std::uint64_t slots,
                            const IaOptions& ia = {}, ParallelPolicy policy = ParallelPolicy::openmp);

// Same estimate on slots the caller already holds.
Calibration calibrate_power(const std::vector<SlotData>& slots, double snr_db);

// A CSV table. Doubles are written with 9 significant digits; an empty
// string is an empty field.
using Cell = std::variant<std::string, long long, double>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    // Index of a header column; throws ConfigError when absent.
    std::size_t column(const std::string& name) const;
};

void write_csv(std::ostream& out, const Table& table);
std::string format_cell(const Cell& cell);

// The runners below take the calibrated P_t from cfg.p_t of `slots`-sized
// caches the caller built with build_slots(spec.cfg, spec.seed, ...).

// slot, k, Q, Q_upper: Q at rho = 0 for spec.bound_user.
Table run_bounds_experiment(const ExperimentSpec& spec, const std::vector<SlotData>& slots);

// algorithm, eh_users, mean_sum_rate, mean_sum_power, id_users, power_over_pt.
// Both schedulers for every ID count in spec.id_users (default 0..K).
Table run_selection_sweep(const ExperimentSpec& spec, const std::vector<SlotData>& slots);

// alpha, mean_sum_rate, mean_sum_power, mean_rho for every uniform alpha
// (default 21 points on [0, 1]).
Table run_pso_alpha_sweep(const ExperimentSpec& spec, const std::vector<SlotData>& slots);

// k, alpha_k, mean_rate, mean_power, mean_rho under the per-user profile
// spec.user_alpha (default 0.6, 0.8, 0.95, 0.975, 0.99).
Table run_pso_user_profile(const ExperimentSpec& spec, const std::vector<SlotData>& slots);

// method, alpha, eh_users, mean_sum_power, mean_sum_rate, snr_db. Methods
// pso_pa and pso sweep spec.alphas, prrs and rrs sweep the ID counts.
// snr_db is 10 lg E(sum_k p_k |u^H H v|^2 / K) at the allocated powers.
Table run_power_rate_region(const ExperimentSpec& spec, const std::vector<SlotData>& slots);

// k, alpha_k, mean_power_allocated, mean_rate, mean_harvested, mean_rho under
// solve_pso_pa with spec.user_alpha (default 0.05, 0.2, 0.35, 0.5, 0.65).
Table run_pa_profile(const ExperimentSpec& spec, const std::vector<SlotData>& slots);

std::vector<double> default_alpha_grid(int points = 21);

// Piecewise-linear mean_sum_power of one method's curve at a given
// mean_sum_rate, read from a run_power_rate_region() table. Throws
// DomainError outside the curve's rate range.
double frontier_power_at_rate(const Table& region, const std::string& method, double rate);

}  // namespace swipt

#endif  // SWIPT_EXPERIMENTS_HPP
