// SPDX-License-Identifier: Apache-2.0

#include "swipt/splitting.hpp"

#include "swipt/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace swipt {

RequirementWeights RequirementWeights::uniform(int users, double alpha)
{
    return from_alpha(std::vector<double>(static_cast<std::size_t>(users), alpha));
}

RequirementWeights RequirementWeights::from_alpha(std::vector<double> alpha)
{
    RequirementWeights w;
    w.beta.reserve(alpha.size());
    for (double a : alpha)
        w.beta.push_back(1.0 - a);
    w.alpha = std::move(alpha);
    w.validate();
    return w;
}

void RequirementWeights::validate() const
{
    if (alpha.size() != beta.size())
        throw DimensionError("alpha and beta lengths differ");
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (!(alpha[k] >= 0.0 && alpha[k] <= 1.0) || !(beta[k] >= 0.0 && beta[k] <= 1.0))
            throw ConfigError("weights must lie in [0, 1]");
        if (std::abs(alpha[k] + beta[k] - 1.0) > 1e-12)
            throw ConfigError("alpha + beta must equal 1");
    }
}

WeightPair weights_from_requirements(double rate_req, double power_req, double upsilon, double phi)
{
    if (rate_req < 0.0 || power_req < 0.0 || upsilon < 0.0 || phi < 0.0)
        throw DomainError("requirements and scaling constants must be nonnegative");
    const double rate_part = upsilon * rate_req;
    const double power_part = phi * power_req;
    const double total = rate_part + power_part;
    if (!(total > 0.0))
        throw DegenerateError("rate and power requirements are both zero");
    WeightPair w;
    w.alpha = rate_part / total;
    w.beta = 1.0 - w.alpha;
    return w;
}

double pso_user_objective(double rho, const UserSignal& s, double alpha, double beta, double zeta,
                          double p_t)
{
    return alpha * std::log2(1.0 + rho * p_t * s.gain) + beta * (1.0 - rho) * zeta * p_t * s.field;
}

double pso_objective(const SplitProfile& profile, const SlotMetrics& metrics,
                     const RequirementWeights& weights, const NetworkConfig& cfg)
{
    const int users = metrics.users();
    if (static_cast<int>(profile.rho.size()) != users || weights.users() != users)
        throw DimensionError("profile, metrics and weights disagree on user count");
    double total = 0.0;
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double rho = profile.rho[i];
        if (!(rho >= 0.0 && rho <= 1.0))
            throw DomainError("rho must lie in [0, 1]");
        total += pso_user_objective(rho, {metrics.gain[i], metrics.field[i]}, weights.alpha[i],
                                    weights.beta[i], cfg.zeta, cfg.p_t);
    }
    return total;
}

ClosedFormRho pso_closed_form(const UserSignal& s, double alpha, double beta, double zeta, double p_t)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!std::isfinite(s.gain) || !std::isfinite(s.field))
        throw NumericError("non-finite signal metrics");
    if (alpha == 0.0)
        return {0.0, -inf, false};
    if (beta == 0.0)
        return {1.0, inf, false};
    if (!(s.gain > 0.0))
        return {0.0, -inf, true};
    if (!(s.field > 0.0))
        return {1.0, inf, true};

    ClosedFormRho out;
    out.psi = alpha / (beta * zeta * p_t * s.field * std::numbers::ln2) - 1.0 / (p_t * s.gain);
    out.rho = std::min(std::max(out.psi, 0.0), 1.0);
    return out;
}

SplitProfile pso_solve(const SlotMetrics& metrics, const RequirementWeights& weights,
                       const NetworkConfig& cfg)
{
    weights.validate();
    const int users = metrics.users();
    if (weights.users() != users)
        throw DimensionError("weights and metrics disagree on user count");
    SplitProfile profile;
    profile.rho.resize(static_cast<std::size_t>(users));
    profile.degenerate.resize(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const ClosedFormRho r = pso_closed_form({metrics.gain[i], metrics.field[i]}, weights.alpha[i],
                                                weights.beta[i], cfg.zeta, cfg.p_t);
        profile.rho[i] = r.rho;
        profile.degenerate[i] = r.degenerate;
    }
    return profile;
}

}  // namespace swipt
