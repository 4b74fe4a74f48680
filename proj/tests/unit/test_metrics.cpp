// SPDX-License-Identifier: Apache-2.0

#include "swipt/error.hpp"
#include "swipt/metrics.hpp"
#include "swipt/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace swipt;

namespace {

struct Slot {
    ChannelSet ch;
    IaSolution sol;
    SymbolVector xi;
};

Slot make_slot(std::uint64_t seed, std::uint64_t slot, const NetworkConfig& cfg = {})
{
    Slot s;
    s.ch = draw_channel_set(cfg, seed, slot);
    IaOptions opts;
    opts.seed = seed;
    s.sol = solve_minil(s.ch, cfg, opts);
    s.xi = draw_symbols(cfg, seed, slot);
    return s;
}

Eigen::VectorXcd random_unit(Rng& rng, Eigen::Index n)
{
    ComplexGaussian g(1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = g(rng);
    return v / v.norm();
}

}  // namespace

TEST_CASE("rate and harvested power at the splitter extremes")
{
    const Slot s = make_slot(2, 0);
    for (int k = 0; k < 5; ++k) {
        CHECK(rate_id(s.ch, s.sol, k, 50.0, 0.0) == 0.0);
        CHECK(harvested_power(s.ch, s.sol, s.xi, k, 50.0, 1.0, 0.5) == 0.0);
        const double g = std::norm(effective_channel(s.ch, s.sol, k));
        CHECK(rate_id(s.ch, s.sol, k, 50.0, 0.25) == doctest::Approx(std::log2(1.0 + 12.5 * g)));
        CHECK(harvested_power(s.ch, s.sol, s.xi, k, 50.0, 0.25, 0.5) ==
              doctest::Approx(0.75 * harvested_power(s.ch, s.sol, s.xi, k, 50.0, 0.0, 0.5)));
    }
    CHECK_THROWS_AS(rate_id(s.ch, s.sol, 0, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(harvested_power(s.ch, s.sol, s.xi, 0, 1.0, -0.1, 0.5), DomainError);
    CHECK_THROWS_AS(harvested_power(s.ch, s.sol, SymbolVector(3), 0, 1.0, 0.0, 0.5), DimensionError);
    CHECK_THROWS_AS(received_field(s.ch, s.sol, s.xi, 7, PowerMode::expected), DimensionError);
}

TEST_CASE("expected harvested power is the symbol average of the instantaneous one")
{
    NetworkConfig cfg;
    const Slot s = make_slot(3, 1);
    const double expected = harvested_power_expected(s.ch, s.sol, 2, 10.0, 0.0, 0.5);
    double sum = 0.0;
    const int draws = 40000;
    for (int i = 0; i < draws; ++i)
        sum += harvested_power(s.ch, s.sol, draw_symbols(cfg, 99, static_cast<std::uint64_t>(i)), 2, 10.0, 0.0, 0.5);
    CHECK(sum / draws == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("effective gain equals squared signal length times cos^2 delta")
{
    for (std::uint64_t slot = 0; slot < 10; ++slot) {
        const Slot s = make_slot(4, slot);
        for (int k = 0; k < 5; ++k) {
            const SignalGeometry geo = signal_geometry(s.ch, s.sol, k);
            const double direct = std::norm(effective_channel(s.ch, s.sol, k));
            CHECK(std::abs(direct - geo.length * geo.length * geo.cos_delta * geo.cos_delta) <= 1e-12);
            CHECK(geo.cos_delta >= 0.0);
            CHECK(geo.cos_delta <= 1.0);
        }
    }
}

TEST_CASE("largest Gram eigenvalue matches the top singular value")
{
    Rng rng = make_rng(7, 0, Stream::channel);
    ComplexGaussian g(1.0);
    for (auto [r, c] : {std::pair{3, 3}, {2, 4}, {4, 2}, {1, 3}}) {
        Eigen::MatrixXcd h(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                h(i, j) = g(rng);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        const double sigma = svd.singularValues()(0);
        CHECK(max_gram_eigenvalue(h) == doctest::Approx(sigma * sigma).epsilon(1e-12));
    }
    CHECK(max_gram_eigenvalue(Eigen::MatrixXcd::Zero(3, 3)) == 0.0);
}

TEST_CASE("bound covers any unit precoders with symbols of modulus at most one")
{
    NetworkConfig cfg;
    Rng rng = make_rng(8, 0, Stream::ia_init);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    for (std::uint64_t slot = 0; slot < 20; ++slot) {
        const ChannelSet ch = draw_channel_set(cfg, 8, slot);
        const double bound = q_upper_bound(ch, 0, 3.0, 0.5);
        for (int trial = 0; trial < 200; ++trial) {
            IaSolution sol;
            SymbolVector xi(cfg.users);
            for (int j = 0; j < cfg.users; ++j) {
                sol.v.push_back(random_unit(rng, cfg.tx_antennas));
                sol.u.push_back(random_unit(rng, cfg.rx_antennas));
                xi(j) = std::polar(trial % 2 ? 1.0 : mag(rng), phase(rng));
            }
            CHECK(harvested_power(ch, sol, xi, 0, 3.0, 0.0, 0.5) <= bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("bound is tight for aligned rank-one links")
{
    ChannelSet ch(2, 2, 2);
    Eigen::VectorXcd a(2), b(2);
    a << 1.0, std::complex<double>(0.0, 1.0);
    b << 0.5, -1.0;
    ch.h(0, 0) = a * b.adjoint();
    ch.h(0, 1) = 2.0 * a * b.adjoint();
    ch.h(1, 0) = ch.h(0, 0);
    ch.h(1, 1) = ch.h(0, 0);
    IaSolution sol;
    sol.v = {b / b.norm(), b / b.norm()};
    sol.u = {a / a.norm(), a / a.norm()};
    SymbolVector xi = SymbolVector::Ones(2);
    CHECK(harvested_power(ch, sol, xi, 0, 1.0, 0.0, 0.5) == doctest::Approx(q_upper_bound(ch, 0, 1.0, 0.5)));
}

TEST_CASE("power-to-rate ratio and its zero-rate limit")
{
    const Slot s = make_slot(5, 3);
    const PrrValue v = prr(s.ch, s.sol, s.xi, 1, 20.0, 0.5);
    CHECK_FALSE(v.degenerate);
    CHECK(v.value == doctest::Approx(harvested_power(s.ch, s.sol, s.xi, 1, 20.0, 0.0, 0.5) /
                                     rate_id(s.ch, s.sol, 1, 20.0, 1.0)));

    ChannelSet dead = s.ch;
    dead.h(1, 1).setZero();
    const PrrValue inf = prr(dead, s.sol, s.xi, 1, 20.0, 0.5);
    CHECK(inf.degenerate);
    CHECK(std::isinf(inf.value));
}

TEST_CASE("slot metrics agree with the single-user functions")
{
    NetworkConfig cfg;
    cfg.p_t = 40.0;
    const Slot s = make_slot(6, 2);
    const SlotMetrics m = compute_slot_metrics(s.ch, s.sol, s.xi, cfg);
    const SlotMetrics e = compute_slot_metrics(s.ch, s.sol, s.xi, cfg, PowerMode::expected);
    REQUIRE(m.users() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(m.rate_full[k] == doctest::Approx(rate_id(s.ch, s.sol, k, cfg.p_t, 1.0)));
        CHECK(m.power_full[k] == doctest::Approx(harvested_power(s.ch, s.sol, s.xi, k, cfg.p_t, 0.0, cfg.zeta)));
        CHECK(e.power_full[k] == doctest::Approx(harvested_power_expected(s.ch, s.sol, k, cfg.p_t, 0.0, cfg.zeta)));
        CHECK(m.prr[k] == doctest::Approx(m.power_full[k] / m.rate_full[k]));
        CHECK(m.q_upper[k] == doctest::Approx(q_upper_bound(s.ch, k, cfg.p_t, cfg.zeta)));
    }
}
