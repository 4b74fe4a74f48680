// SPDX-License-Identifier: Apache-2.0

#include "swipt/ia_solver.hpp"

#include "swipt/error.hpp"
#include "swipt/random.hpp"

#include <Eigen/Eigenvalues>

namespace swipt {

namespace {

void require_single_stream(const NetworkConfig& cfg)
{
    if (cfg.streams != 1)
        throw UnsupportedConfigError("only single-stream users (d = 1) are supported");
}

void check_shapes(const ChannelSet& ch, const NetworkConfig& cfg)
{
    if (ch.users() != cfg.users || ch.rx_antennas() != cfg.rx_antennas ||
        ch.tx_antennas() != cfg.tx_antennas)
        throw DimensionError("channel set does not match network configuration");
}

void check_solution_shapes(const ChannelSet& ch, const IaSolution& sol)
{
    const auto users = static_cast<std::size_t>(ch.users());
    if (sol.v.size() != users || sol.u.size() != users)
        throw DimensionError("IA solution has wrong user count");
    for (std::size_t k = 0; k < users; ++k)
        if (sol.v[k].size() != ch.tx_antennas() || sol.u[k].size() != ch.rx_antennas())
            throw DimensionError("IA solution vector has wrong length");
}

using EigenSolver = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>;

// Unit eigenvector of the smallest eigenvalue. Eigen sorts eigenvalues in
// ascending order, so column 0 is the canonical choice under ties.
Eigen::VectorXcd min_eigenvector(EigenSolver& es, const Eigen::MatrixXcd& cov)
{
    es.compute(cov);
    if (es.info() != Eigen::Success)
        throw NumericError("eigendecomposition failed");
    Eigen::VectorXcd e = es.eigenvectors().col(0);
    return e / e.norm();
}

}  // namespace

bool check_feasibility(const NetworkConfig& cfg)
{
    cfg.validate();
    require_single_stream(cfg);
    return cfg.tx_antennas + cfg.rx_antennas >= cfg.users + 1;
}

IaSolution solve_minil(const ChannelSet& ch, const NetworkConfig& cfg, const IaOptions& opts)
{
    if (!check_feasibility(cfg))
        throw FeasibilityError("IA infeasible: M + N < K + 1");
    check_shapes(ch, cfg);
    if (!ch.all_finite())
        throw NumericError("channel contains non-finite entries");
    if (opts.max_iters < 1)
        throw ConfigError("max_iters must be >= 1");

    const int users = cfg.users;
    const double power = cfg.p_t / cfg.streams;

    IaSolution sol;
    sol.v.resize(users);
    sol.u.resize(users);

    Rng rng = make_rng(opts.seed, ch.slot(), Stream::ia_init);
    ComplexGaussian draw(1.0);
    for (int k = 0; k < users; ++k) {
        Eigen::VectorXcd v(cfg.tx_antennas);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = draw(rng);
        sol.v[k] = v / v.norm();
    }

    Eigen::MatrixXcd rx_cov(cfg.rx_antennas, cfg.rx_antennas);
    Eigen::MatrixXcd tx_cov(cfg.tx_antennas, cfg.tx_antennas);
    Eigen::VectorXcd rx_w(cfg.rx_antennas);
    Eigen::VectorXcd tx_w(cfg.tx_antennas);
    EigenSolver rx_es(cfg.rx_antennas);
    EigenSolver tx_es(cfg.tx_antennas);
    for (int it = 1; it <= opts.max_iters; ++it) {
        // forward network: combiners
        for (int k = 0; k < users; ++k) {
            rx_cov.setZero();
            for (int j = 0; j < users; ++j) {
                if (j == k)
                    continue;
                rx_w.noalias() = ch.h(k, j) * sol.v[j];
                rx_cov.noalias() += power * rx_w * rx_w.adjoint();
            }
            sol.u[k] = min_eigenvector(rx_es, rx_cov);
        }
        // reciprocal network: h[k][j]^H carries u[k] back to transmitter j
        for (int j = 0; j < users; ++j) {
            tx_cov.setZero();
            for (int k = 0; k < users; ++k) {
                if (k == j)
                    continue;
                tx_w.noalias() = ch.h(k, j).adjoint() * sol.u[k];
                tx_cov.noalias() += power * tx_w * tx_w.adjoint();
            }
            sol.v[j] = min_eigenvector(tx_es, tx_cov);
        }

        sol.leakage = interference_leakage(ch, sol, cfg);
        sol.iterations = it;
        if (opts.record_history)
            sol.history.push_back(sol.leakage);
        if (sol.leakage <= opts.leak_tol) {
            sol.converged = true;
            break;
        }
    }
    return sol;
}

double interference_leakage(const ChannelSet& ch, const IaSolution& sol, const NetworkConfig& cfg)
{
    check_shapes(ch, cfg);
    check_solution_shapes(ch, sol);
    const double power = cfg.p_t / cfg.streams;
    double total = 0.0;
    for (int k = 0; k < ch.users(); ++k)
        for (int j = 0; j < ch.users(); ++j) {
            if (j == k)
                continue;
            const std::complex<double> z = sol.u[k].dot(ch.h(k, j) * sol.v[j]);
            total += power * std::norm(z);
        }
    return total;
}

std::complex<double> effective_channel(const ChannelSet& ch, const IaSolution& sol, int k)
{
    if (k < 0 || k >= ch.users())
        throw DimensionError("user index out of range");
    check_solution_shapes(ch, sol);
    // Eigen's dot() conjugates the left operand: u^H (H v)
    return sol.u[k].dot(ch.h(k, k) * sol.v[k]);
}

}  // namespace swipt
