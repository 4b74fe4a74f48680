// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_IA_SOLVER_HPP
#define SWIPT_IA_SOLVER_HPP

#include "swipt/channel.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace swipt {

struct IaOptions {
    int max_iters = 5000;
    double leak_tol = 1e-8;
    std::uint64_t seed = 0;
    // Keep the per-iteration leakage sequence in IaSolution::history.
    bool record_history = false;
};

// Single-stream IA solution: unit-norm precoder v[k] (M) and combiner u[k] (N)
// per user, plus convergence diagnostics.
struct IaSolution {
    std::vector<Eigen::VectorXcd> v;
    std::vector<Eigen::VectorXcd> u;
    double leakage = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

// M + N >= K + 1. Throws UnsupportedConfigError for d != 1.
bool check_feasibility(const NetworkConfig& cfg);

// Reciprocity-based alternating leakage minimization. Each full iteration
// picks every combiner as the minimum eigenvector of its receive
// interference covariance, then every precoder the same way on the
// reciprocal network, and stops once the forward leakage is <= leak_tol.
IaSolution solve_minil(const ChannelSet& ch, const NetworkConfig& cfg, const IaOptions& opts = {});

// sum_k sum_{j != k} P_t |u[k]^H h[k][j] v[j]|^2
double interference_leakage(const ChannelSet& ch, const IaSolution& sol, const NetworkConfig& cfg);

// u[k]^H h[k][k] v[k]
std::complex<double> effective_channel(const ChannelSet& ch, const IaSolution& sol, int k);

}  // namespace swipt

#endif  // SWIPT_IA_SOLVER_HPP
