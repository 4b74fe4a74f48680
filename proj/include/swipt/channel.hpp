// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_CHANNEL_HPP
#define SWIPT_CHANNEL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace swipt {

// Static parameters of a symmetric K-user MIMO interference network.
// User indices are 0-based throughout the library.
struct NetworkConfig {
    int users = 5;          // K
    int tx_antennas = 3;    // M
    int rx_antennas = 3;    // N
    int streams = 1;        // d
    double path_gain = 0.1; // a_p, variance of each channel entry
    double zeta = 0.5;      // energy-conversion efficiency
    double p_t = 1.0;       // average per-user transmit power [W]

    // Throws ConfigError when any invariant is violated.
    void validate() const;
};

// One block-fading realization. h(k, j) is the N x M channel from
// transmitter j to receiver k.
class ChannelSet {
public:
    ChannelSet() = default;
    ChannelSet(int users, int rx_antennas, int tx_antennas, std::uint64_t slot = 0);

    int users() const { return users_; }
    int rx_antennas() const { return rx_; }
    int tx_antennas() const { return tx_; }
    std::uint64_t slot() const { return slot_; }

    Eigen::MatrixXcd& h(int k, int j) { return h_[index(k, j)]; }
    const Eigen::MatrixXcd& h(int k, int j) const { return h_[index(k, j)]; }

    bool all_finite() const;

private:
    std::size_t index(int k, int j) const;

    int users_ = 0;
    int rx_ = 0;
    int tx_ = 0;
    std::uint64_t slot_ = 0;
    std::vector<Eigen::MatrixXcd> h_;
};

// Normalized transmit symbols xi[j] = x[j] / sqrt(P_t), E|xi|^2 = 1.
using SymbolVector = Eigen::VectorXcd;

ChannelSet draw_channel_set(const NetworkConfig& cfg, std::uint64_t seed, std::uint64_t slot);

SymbolVector draw_symbols(const NetworkConfig& cfg, std::uint64_t seed, std::uint64_t slot);

}  // namespace swipt

#endif  // SWIPT_CHANNEL_HPP
