// SPDX-License-Identifier: Apache-2.0

#include "swipt/metrics.hpp"

#include "swipt/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace swipt {

namespace {

void check_user(const ChannelSet& ch, int k)
{
    if (k < 0 || k >= ch.users())
        throw DimensionError("user index out of range");
}

void check_rho(double rho)
{
    if (!(rho >= 0.0 && rho <= 1.0))
        throw DomainError("rho must lie in [0, 1]");
}

void check_symbols(const ChannelSet& ch, const SymbolVector& xi)
{
    if (xi.size() != ch.users())
        throw DimensionError("symbol vector length differs from user count");
}

Eigen::VectorXcd field_vector(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                              int k)
{
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(ch.rx_antennas());
    for (int j = 0; j < ch.users(); ++j)
        y.noalias() += (ch.h(k, j) * sol.v[j]) * xi(j);
    return y;
}

}  // namespace

double rate_id(const ChannelSet& ch, const IaSolution& sol, int k, double p_t, double rho)
{
    check_rho(rho);
    const double gain = std::norm(effective_channel(ch, sol, k));
    return std::log2(1.0 + rho * p_t * gain);
}

double received_field(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi, int k,
                      PowerMode mode)
{
    check_user(ch, k);
    if (sol.v.size() != static_cast<std::size_t>(ch.users()))
        throw DimensionError("IA solution has wrong user count");
    if (mode == PowerMode::expected) {
        double sum = 0.0;
        for (int j = 0; j < ch.users(); ++j)
            sum += (ch.h(k, j) * sol.v[j]).squaredNorm();
        return sum;
    }
    check_symbols(ch, xi);
    return field_vector(ch, sol, xi, k).squaredNorm();
}

double harvested_power(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi, int k,
                       double p_t, double rho, double zeta)
{
    check_rho(rho);
    return (1.0 - rho) * zeta * p_t * received_field(ch, sol, xi, k, PowerMode::instantaneous);
}

double harvested_power_expected(const ChannelSet& ch, const IaSolution& sol, int k, double p_t,
                                double rho, double zeta)
{
    check_rho(rho);
    return (1.0 - rho) * zeta * p_t * received_field(ch, sol, SymbolVector(), k, PowerMode::expected);
}

PrrValue prr(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi, int k, double p_t,
             double zeta)
{
    const double q = harvested_power(ch, sol, xi, k, p_t, 0.0, zeta);
    const double r = rate_id(ch, sol, k, p_t, 1.0);
    if (r > 0.0)
        return {q / r, false};
    return {std::numeric_limits<double>::infinity(), true};
}

double max_gram_eigenvalue(const Eigen::MatrixXcd& h)
{
    if (!h.allFinite())
        throw NumericError("channel contains non-finite entries");
    const Eigen::MatrixXcd gram = h.cols() <= h.rows() ? Eigen::MatrixXcd(h.adjoint() * h)
                                                       : Eigen::MatrixXcd(h * h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("eigendecomposition failed");
    return std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1));
}

double q_upper_bound(const ChannelSet& ch, int k, double p_t, double zeta)
{
    check_user(ch, k);
    double amplitude = 0.0;
    for (int j = 0; j < ch.users(); ++j)
        amplitude += std::sqrt(max_gram_eigenvalue(ch.h(k, j)));
    return zeta * p_t * amplitude * amplitude;
}

SignalGeometry signal_geometry(const ChannelSet& ch, const IaSolution& sol, int k)
{
    check_user(ch, k);
    const Eigen::VectorXcd desired = ch.h(k, k) * sol.v[k];
    SignalGeometry g;
    g.length = desired.norm();
    if (g.length > 0.0)
        g.cos_delta = std::min(1.0, std::abs(sol.u[k].dot(desired)) / (g.length * sol.u[k].norm()));
    return g;
}

SlotMetrics compute_slot_metrics(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                                 const NetworkConfig& cfg, PowerMode mode)
{
    const int users = ch.users();
    const auto n = static_cast<std::size_t>(users);
    SlotMetrics m;
    m.gain.resize(n);
    m.field.resize(n);
    m.rate_full.resize(n);
    m.power_full.resize(n);
    m.prr.resize(n);
    m.q_upper.resize(n);
    m.c.resize(n);
    m.cos_delta.resize(n);
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        m.gain[i] = std::norm(effective_channel(ch, sol, k));
        m.field[i] = received_field(ch, sol, xi, k, mode);
        m.rate_full[i] = std::log2(1.0 + cfg.p_t * m.gain[i]);
        m.power_full[i] = cfg.zeta * cfg.p_t * m.field[i];
        m.prr[i] = m.rate_full[i] > 0.0 ? m.power_full[i] / m.rate_full[i]
                                        : std::numeric_limits<double>::infinity();
        m.q_upper[i] = q_upper_bound(ch, k, cfg.p_t, cfg.zeta);
        const SignalGeometry geo = signal_geometry(ch, sol, k);
        m.c[i] = geo.length;
        m.cos_delta[i] = geo.cos_delta;
    }
    return m;
}

}  // namespace swipt
