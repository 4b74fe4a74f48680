// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_ALLOCATION_HPP
#define SWIPT_ALLOCATION_HPP

#include "swipt/channel.hpp"
#include "swipt/ia_solver.hpp"
#include "swipt/metrics.hpp"
#include "swipt/splitting.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace swipt {

// Transmit powers under the sum constraint sum_k p[k] <= budget.
struct PowerProfile {
    std::vector<double> p;
    double budget = 0.0;
    // water level of water_filling(); NaN for other solvers
    double water_level = 0.0;

    double total() const;
};

struct PaOptions {
    int max_iters = 10000;  // Newton iterations per start
    double tol = 1e-9;
    int restarts = 8;
    std::uint64_t seed = 0;
    PowerMode mode = PowerMode::instantaneous;
};

// Everything the joint splitting/allocation problem needs from one slot.
// With s = sqrt(p), user k harvests zeta s^T field_gram[k] s, where
// field_gram[k](j, l) = Re((h[k][j] v[j] xi[j])^H (h[k][l] v[l] xi[l])).
// In expected mode field_gram[k] is diagonal.
struct PaProblem {
    std::vector<double> gain;                  // |u^H h v|^2
    std::vector<Eigen::MatrixXd> field_gram;   // K x K, symmetric PSD
    std::vector<double> alpha;
    std::vector<double> beta;
    double zeta = 0.5;
    double budget = 0.0;

    int users() const { return static_cast<int>(gain.size()); }
};

PaProblem make_pa_problem(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                          const RequirementWeights& weights, const NetworkConfig& cfg,
                          PowerMode mode = PowerMode::instantaneous);

// sum_k alpha_k log2(1 + rho_k p_k g_k) + beta_k (1 - rho_k) zeta s^T G_k s
double pa_objective(const PaProblem& problem, std::span<const double> rho, std::span<const double> p);

// Harvested power of user k at transmit powers p, without the (1 - rho) factor.
double pa_harvest(const PaProblem& problem, int k, std::span<const double> p);

struct PaResult {
    SplitProfile split;
    PowerProfile power;
    double objective = 0.0;
    double baseline_objective = 0.0;  // equal power, closed-form rho
    bool converged = false;
    int iterations = 0;
};

// Equal power with the per-user closed-form splitting.
PaResult equal_power_baseline(const PaProblem& problem);

// Joint maximization over rho in [0,1]^K and the power simplex. rho is
// eliminated through its closed form and the powers are found by a
// log-barrier Newton ascent on the budget face, from several starts (equal
// power, water-filling, EH-only, then seeded random points). Never returns
// less than equal_power_baseline().
PaResult solve_pso_pa(const PaProblem& problem, const PaOptions& opts = {});

PaResult solve_pso_pa(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                      const RequirementWeights& weights, const NetworkConfig& cfg,
                      const PaOptions& opts = {});

// p[k] = max(V - 1/gain[k], 0) with sum p = budget. The level V is bracketed
// by bisection and then solved exactly on the active set.
PowerProfile water_filling(std::span<const double> gains, double budget);

// Maximizes sum_k || sum_j sqrt(p_j) h[k][j] v[j] xi[j] ||^2 over the power
// simplex by projected ascent on s = sqrt(p) from several starts.
PowerProfile solve_eh_only_pa(const PaProblem& problem, const PaOptions& opts = {});

PowerProfile solve_eh_only_pa(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                              const NetworkConfig& cfg, const PaOptions& opts = {});

// sum_k s^T G_k s with s = sqrt(p); the EH-only objective without zeta.
double eh_only_objective(const PaProblem& problem, std::span<const double> p);

}  // namespace swipt

#endif  // SWIPT_ALLOCATION_HPP
