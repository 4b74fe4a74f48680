// SPDX-License-Identifier: Apache-2.0

#include "swipt/channel.hpp"

#include "swipt/error.hpp"
#include "swipt/random.hpp"

#include <cmath>
#include <string>

namespace swipt {

void NetworkConfig::validate() const
{
    if (users < 1)
        throw ConfigError("users must be >= 1, got " + std::to_string(users));
    if (tx_antennas < 1 || rx_antennas < 1)
        throw ConfigError("antenna counts must be >= 1");
    if (streams < 1)
        throw ConfigError("streams must be >= 1");
    if (!(path_gain > 0.0 && path_gain <= 1.0))
        throw ConfigError("path_gain must lie in (0, 1]");
    if (!(zeta > 0.0 && zeta < 1.0))
        throw ConfigError("zeta must lie in (0, 1)");
    if (!(p_t > 0.0) || !std::isfinite(p_t))
        throw ConfigError("p_t must be positive and finite");
}

ChannelSet::ChannelSet(int users, int rx_antennas, int tx_antennas, std::uint64_t slot)
    : users_(users), rx_(rx_antennas), tx_(tx_antennas), slot_(slot)
{
    if (users < 1 || rx_antennas < 1 || tx_antennas < 1)
        throw DimensionError("ChannelSet dimensions must be positive");
    h_.assign(static_cast<std::size_t>(users) * users, Eigen::MatrixXcd::Zero(rx_, tx_));
}

std::size_t ChannelSet::index(int k, int j) const
{
    if (k < 0 || k >= users_ || j < 0 || j >= users_)
        throw DimensionError("channel index out of range");
    return static_cast<std::size_t>(k) * users_ + j;
}

bool ChannelSet::all_finite() const
{
    for (const auto& m : h_)
        if (!m.allFinite())
            return false;
    return true;
}

ChannelSet draw_channel_set(const NetworkConfig& cfg, std::uint64_t seed, std::uint64_t slot)
{
    cfg.validate();
    ChannelSet ch(cfg.users, cfg.rx_antennas, cfg.tx_antennas, slot);
    Rng rng = make_rng(seed, slot, Stream::channel);
    ComplexGaussian draw(cfg.path_gain);
    for (int k = 0; k < cfg.users; ++k)
        for (int j = 0; j < cfg.users; ++j) {
            auto& h = ch.h(k, j);
            // column-major fill order is part of the reproducibility contract
            for (Eigen::Index c = 0; c < h.cols(); ++c)
                for (Eigen::Index r = 0; r < h.rows(); ++r)
                    h(r, c) = draw(rng);
        }
    return ch;
}

SymbolVector draw_symbols(const NetworkConfig& cfg, std::uint64_t seed, std::uint64_t slot)
{
    cfg.validate();
    Rng rng = make_rng(seed, slot, Stream::symbols);
    ComplexGaussian draw(1.0);
    SymbolVector xi(cfg.users);
    for (int j = 0; j < cfg.users; ++j)
        xi(j) = draw(rng);
    return xi;
}

}  // namespace swipt
