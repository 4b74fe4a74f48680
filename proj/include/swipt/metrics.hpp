// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_METRICS_HPP
#define SWIPT_METRICS_HPP

#include "swipt/channel.hpp"
#include "swipt/ia_solver.hpp"

#include <vector>

namespace swipt {

// How the harvested-power numerator treats the transmit symbols: the drawn
// realization xi, or its average over xi (cross terms vanish).
enum class PowerMode { instantaneous, expected };

// log2(1 + rho P_t |u^H h v|^2)
double rate_id(const ChannelSet& ch, const IaSolution& sol, int k, double p_t, double rho);

// (1 - rho) zeta P_t || sum_j h[k][j] v[j] xi[j] ||^2. Receiver noise is
// not harvested.
double harvested_power(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi, int k,
                       double p_t, double rho, double zeta);

// (1 - rho) zeta P_t sum_j || h[k][j] v[j] ||^2
double harvested_power_expected(const ChannelSet& ch, const IaSolution& sol, int k, double p_t,
                                double rho, double zeta);

struct PrrValue {
    double value = 0.0;
    // rate at rho = 1 was zero; value is +infinity
    bool degenerate = false;
};

// Harvested power at rho = 0 divided by the rate at rho = 1.
PrrValue prr(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi, int k, double p_t,
             double zeta);

// zeta P_t (sum_j sqrt(lambda_max(h[k][j]^H h[k][j])))^2, the largest power
// receiver k can harvest for any unit-norm precoders and symbols with
// |xi| <= 1.
double q_upper_bound(const ChannelSet& ch, int k, double p_t, double zeta);

// Largest eigenvalue of h^H h, taken from the smaller Gram matrix.
double max_gram_eigenvalue(const Eigen::MatrixXcd& h);

struct SignalGeometry {
    double length = 0.0;     // c = || h[k][k] v[k] ||
    double cos_delta = 0.0;  // |u^H h v| / c, 0 when c == 0
};

SignalGeometry signal_geometry(const ChannelSet& ch, const IaSolution& sol, int k);

// || sum_j h[k][j] v[j] xi[j] ||^2 (instantaneous) or sum_j || h[k][j] v[j] ||^2
// (expected), without the zeta P_t factor.
double received_field(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi, int k,
                      PowerMode mode);

// Per-user quantities of one slot at equal transmit power cfg.p_t.
struct SlotMetrics {
    std::vector<double> gain;        // |u^H h v|^2
    std::vector<double> field;       // received_field()
    std::vector<double> rate_full;   // bits/s/Hz at rho = 1
    std::vector<double> power_full;  // W at rho = 0
    std::vector<double> prr;         // +inf where rate_full == 0
    std::vector<double> q_upper;     // W
    std::vector<double> c;
    std::vector<double> cos_delta;

    int users() const { return static_cast<int>(gain.size()); }
};

SlotMetrics compute_slot_metrics(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                                 const NetworkConfig& cfg, PowerMode mode = PowerMode::instantaneous);

}  // namespace swipt

#endif  // SWIPT_METRICS_HPP
