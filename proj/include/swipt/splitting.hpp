// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_SPLITTING_HPP
#define SWIPT_SPLITTING_HPP

#include "swipt/channel.hpp"
#include "swipt/metrics.hpp"

#include <vector>

namespace swipt {

// Rate weight alpha[k] and energy weight beta[k], alpha + beta = 1.
struct RequirementWeights {
    std::vector<double> alpha;
    std::vector<double> beta;

    static RequirementWeights uniform(int users, double alpha);
    static RequirementWeights from_alpha(std::vector<double> alpha);

    int users() const { return static_cast<int>(alpha.size()); }
    // Throws ConfigError unless alpha, beta in [0,1] and alpha + beta = 1.
    void validate() const;
};

struct WeightPair {
    double alpha = 0.0;
    double beta = 0.0;
};

// alpha = upsilon R_req / (upsilon R_req + phi Q_req), beta = 1 - alpha.
// Throws DegenerateError when the denominator is zero.
WeightPair weights_from_requirements(double rate_req, double power_req, double upsilon = 1.0,
                                     double phi = 1.0);

// Fraction of received power routed to information decoding, per user.
struct SplitProfile {
    std::vector<double> rho;
    // users whose rho came from a limiting argument (zero gain or field)
    std::vector<bool> degenerate;
};

// What the splitting problem needs to know about one user in one slot.
struct UserSignal {
    double gain = 0.0;   // |u^H h v|^2
    double field = 0.0;  // received_field()
};

// alpha log2(1 + rho p_t gain) + beta (1 - rho) zeta p_t field
double pso_user_objective(double rho, const UserSignal& s, double alpha, double beta, double zeta,
                          double p_t);

// Weighted rate plus weighted harvested power summed over users.
double pso_objective(const SplitProfile& profile, const SlotMetrics& metrics,
                     const RequirementWeights& weights, const NetworkConfig& cfg);

struct ClosedFormRho {
    double rho = 0.0;
    double psi = 0.0;  // unclamped stationary point; +-inf in the limits
    bool degenerate = false;
};

// Maximizer of pso_user_objective over rho in [0, 1]:
//   psi = alpha / (beta zeta p_t field ln 2) - 1 / (p_t gain),
//   rho* = min(max(psi, 0), 1).
ClosedFormRho pso_closed_form(const UserSignal& s, double alpha, double beta, double zeta, double p_t);

// Per-user closed form. A user's rho depends only on its own weights.
SplitProfile pso_solve(const SlotMetrics& metrics, const RequirementWeights& weights,
                       const NetworkConfig& cfg);

}  // namespace swipt

#endif  // SWIPT_SPLITTING_HPP
