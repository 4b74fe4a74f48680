// SPDX-License-Identifier: Apache-2.0

#include "swipt/experiments.hpp"

#include "swipt/error.hpp"
#include "swipt/random.hpp"
#include "swipt/selection.hpp"
#include "swipt/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace swipt {

namespace {

std::vector<int> id_counts(const ExperimentSpec& spec)
{
    if (!spec.id_users.empty())
        return spec.id_users;
    std::vector<int> ids;
    for (int id = 0; id <= spec.cfg.users; ++id)
        ids.push_back(id);
    return ids;
}

std::vector<double> alpha_grid(const ExperimentSpec& spec)
{
    return spec.alphas.empty() ? default_alpha_grid() : spec.alphas;
}

std::vector<double> user_profile(const ExperimentSpec& spec, std::vector<double> fallback)
{
    std::vector<double> a = spec.user_alpha.empty() ? std::move(fallback) : spec.user_alpha;
    if (static_cast<int>(a.size()) != spec.cfg.users)
        throw ConfigError("per-user alpha profile needs one value per user");
    return a;
}

void check_cache(const ExperimentSpec& spec, const std::vector<SlotData>& slots)
{
    spec.validate();
    if (slots.empty())
        throw ConfigError("no slots to evaluate");
    for (const auto& s : slots)
        if (s.ch.users() != spec.cfg.users)
            throw DimensionError("slot cache was built for a different user count");
}

// EH receivers of one scheduler at one ID count. L = K routes every user to
// EH, which the schedulers themselves do not accept.
std::vector<int> eh_set_for(bool prrs, const SlotMetrics& m, int eh_users, std::uint64_t slot)
{
    const int users = m.users();
    if (eh_users == users) {
        std::vector<int> all(static_cast<std::size_t>(users));
        for (int k = 0; k < users; ++k)
            all[static_cast<std::size_t>(k)] = k;
        return all;
    }
    if (prrs)
        return prrs_select(m.prr, eh_users);
    return rrs_select(rrs_state_after(users, eh_users, slot), users, eh_users).eh_set;
}

// Per-slot sums of several quantities, reduced in slot order so the result
// does not depend on the thread schedule.
std::vector<double> reduce_mean(const std::vector<std::vector<double>>& per_slot)
{
    std::vector<double> mean(per_slot.front().size(), 0.0);
    for (const auto& row : per_slot)
        for (std::size_t i = 0; i < mean.size(); ++i)
            mean[i] += row[i];
    for (auto& x : mean)
        x /= static_cast<double>(per_slot.size());
    return mean;
}

std::uint64_t pa_seed(std::uint64_t seed, std::uint64_t slot)
{
    Rng rng = make_rng(seed, slot, Stream::pa_restarts);
    return rng();
}

struct PaSlot {
    double sum_rate = 0.0;
    double sum_power = 0.0;
    double snr = 0.0;  // sum_k p_k g_k / K
    std::vector<double> p, rate, harvested, rho;
};

PaSlot evaluate_pa(const ExperimentSpec& spec, const SlotData& s, std::uint64_t slot,
                   const RequirementWeights& weights)
{
    const PaProblem pb = make_pa_problem(s.ch, s.sol, s.xi, weights, spec.cfg, spec.mode);
    PaOptions opts = spec.pa;
    opts.mode = spec.mode;
    opts.seed = pa_seed(spec.seed, slot);
    const PaResult r = solve_pso_pa(pb, opts);
    const int users = pb.users();
    PaSlot out;
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double p = r.power.p[i];
        const double rho = r.split.rho[i];
        const double rate = std::log2(1.0 + rho * p * pb.gain[i]);
        const double harvested = (1.0 - rho) * pa_harvest(pb, k, r.power.p);
        out.p.push_back(p);
        out.rate.push_back(rate);
        out.harvested.push_back(harvested);
        out.rho.push_back(rho);
        out.sum_rate += rate;
        out.sum_power += harvested;
        out.snr += p * pb.gain[i];
    }
    out.snr /= users;
    return out;
}

double to_db(double x)
{
    return 10.0 * std::log10(x);
}

}  // namespace

void ExperimentSpec::validate() const
{
    cfg.validate();
    if (slots < 1)
        throw ConfigError("slots must be >= 1");
    if (calibration_slots < 1)
        throw ConfigError("calibration slots must be >= 1");
    if (!std::isfinite(snr_db))
        throw ConfigError("snr_db must be finite");
    if (bound_user < 0 || bound_user >= cfg.users)
        throw ConfigError("bound user out of range");
    for (double a : alphas)
        if (!(a >= 0.0 && a <= 1.0))
            throw ConfigError("alpha values must lie in [0, 1]");
    for (double a : user_alpha)
        if (!(a >= 0.0 && a <= 1.0))
            throw ConfigError("alpha values must lie in [0, 1]");
    for (int id : id_users)
        if (id < 0 || id > cfg.users)
            throw ConfigError("ID user count must lie in [0, K]");
    if (pa.restarts < 1)
        throw ConfigError("restarts must be >= 1");
    if (!(ia.leak_tol > 0.0))
        throw ConfigError("leakage tolerance must be positive");
}

std::vector<SlotData> build_slots(const NetworkConfig& cfg, std::uint64_t seed, std::uint64_t slots,
                                  const IaOptions& ia, ParallelPolicy policy)
{
    cfg.validate();
    check_feasibility(cfg);
    NetworkConfig unit = cfg;
    unit.p_t = 1.0;
    IaOptions opts = ia;
    opts.seed = seed;
    std::vector<SlotData> out(slots);
    for_each_slot(slots, policy, [&](std::size_t i) {
        SlotData& d = out[i];
        d.ch = draw_channel_set(cfg, seed, i);
        d.sol = solve_minil(d.ch, unit, opts);
        d.xi = draw_symbols(cfg, seed, i);
    });
    return out;
}

double mean_effective_gain(const std::vector<SlotData>& slots)
{
    if (slots.empty())
        throw ConfigError("no slots to average");
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& s : slots) {
        for (int k = 0; k < s.ch.users(); ++k)
            sum += std::norm(effective_channel(s.ch, s.sol, k));
        count += static_cast<std::size_t>(s.ch.users());
    }
    return sum / static_cast<double>(count);
}

std::uint64_t calibration_seed(std::uint64_t seed)
{
    Rng rng = make_rng(seed, 0, Stream::calibration);
    return rng();
}

Calibration calibrate_power(const std::vector<SlotData>& slots, double snr_db)
{
    if (!std::isfinite(snr_db))
        throw ConfigError("snr_db must be finite");
    Calibration c;
    c.mean_gain = mean_effective_gain(slots);
    if (!(c.mean_gain > 0.0))
        throw DegenerateError("mean effective gain is zero");
    c.p_t = std::pow(10.0, snr_db / 10.0) / c.mean_gain;
    c.slots = slots.size();
    for (const auto& s : slots)
        c.unconverged += s.sol.converged ? 0 : 1;
    return c;
}

Calibration calibrate_power(const NetworkConfig& cfg, double snr_db, std::uint64_t seed, std::uint64_t slots,
                            const IaOptions& ia, ParallelPolicy policy)
{
    if (slots < 1)
        throw ConfigError("calibration needs at least one slot");
    return calibrate_power(build_slots(cfg, calibration_seed(seed), slots, ia, policy), snr_db);
}

std::size_t Table::column(const std::string& name) const
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ConfigError("no column named " + name);
    return static_cast<std::size_t>(it - header.begin());
}

std::string format_cell(const Cell& cell)
{
    if (const auto* s = std::get_if<std::string>(&cell))
        return *s;
    char buf[64];
    if (const auto* i = std::get_if<long long>(&cell)) {
        std::snprintf(buf, sizeof buf, "%lld", *i);
        return buf;
    }
    const double x = std::get<double>(cell);
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (std::isnan(x))
        return "nan";
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

void write_csv(std::ostream& out, const Table& table)
{
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_cell(row[i]);
        out << '\n';
    }
}

std::vector<double> default_alpha_grid(int points)
{
    if (points < 2)
        throw ConfigError("alpha grid needs at least two points");
    std::vector<double> a(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        a[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
    return a;
}

Table run_bounds_experiment(const ExperimentSpec& spec, const std::vector<SlotData>& slots)
{
    check_cache(spec, slots);
    const int k = spec.bound_user;
    std::vector<std::vector<double>> q(slots.size());
    for_each_slot(slots.size(), spec.policy, [&](std::size_t i) {
        const SlotData& s = slots[i];
        const double field = received_field(s.ch, s.sol, s.xi, k, spec.mode);
        q[i] = {spec.cfg.zeta * spec.cfg.p_t * field, q_upper_bound(s.ch, k, spec.cfg.p_t, spec.cfg.zeta)};
    });
    Table t;
    t.header = {"slot", "k", "Q", "Q_upper"};
    for (std::size_t i = 0; i < slots.size(); ++i)
        t.rows.push_back({static_cast<long long>(i), static_cast<long long>(k), q[i][0], q[i][1]});
    return t;
}

Table run_selection_sweep(const ExperimentSpec& spec, const std::vector<SlotData>& slots)
{
    check_cache(spec, slots);
    const int users = spec.cfg.users;
    const std::vector<int> ids = id_counts(spec);
    const std::size_t n_ids = ids.size();
    // layout: [scheduler][id][rate, power]
    std::vector<std::vector<double>> per_slot(slots.size());
    for_each_slot(slots.size(), spec.policy, [&](std::size_t i) {
        const SlotData& s = slots[i];
        const SlotMetrics m = compute_slot_metrics(s.ch, s.sol, s.xi, spec.cfg, spec.mode);
        std::vector<double> row(4 * n_ids);
        for (int prrs = 0; prrs < 2; ++prrs) {
            for (std::size_t j = 0; j < n_ids; ++j) {
                const auto eh = eh_set_for(prrs != 0, m, users - ids[j], i);
                const SlotOutcome o = run_selection_slot(m, eh);
                row[(static_cast<std::size_t>(prrs) * n_ids + j) * 2] = o.sum_rate;
                row[(static_cast<std::size_t>(prrs) * n_ids + j) * 2 + 1] = o.sum_power;
            }
        }
        per_slot[i] = std::move(row);
    });
    const std::vector<double> mean = reduce_mean(per_slot);
    Table t;
    t.header = {"algorithm", "L", "mean_sum_rate", "mean_sum_power", "id_users", "power_over_pt"};
    for (int prrs = 0; prrs < 2; ++prrs) {
        for (std::size_t j = 0; j < n_ids; ++j) {
            const std::size_t at = (static_cast<std::size_t>(prrs) * n_ids + j) * 2;
            t.rows.push_back({std::string(prrs ? "PRRS" : "RRS"), static_cast<long long>(users - ids[j]),
                              mean[at], mean[at + 1], static_cast<long long>(ids[j]),
                              mean[at + 1] / spec.cfg.p_t});
        }
    }
    return t;
}

Table run_pso_alpha_sweep(const ExperimentSpec& spec, const std::vector<SlotData>& slots)
{
    check_cache(spec, slots);
    const int users = spec.cfg.users;
    const std::vector<double> alphas = alpha_grid(spec);
    std::vector<std::vector<double>> per_slot(slots.size());
    for_each_slot(slots.size(), spec.policy, [&](std::size_t i) {
        const SlotData& s = slots[i];
        const SlotMetrics m = compute_slot_metrics(s.ch, s.sol, s.xi, spec.cfg, spec.mode);
        std::vector<double> row;
        row.reserve(3 * alphas.size());
        for (double a : alphas) {
            const auto w = RequirementWeights::uniform(users, a);
            const SplitProfile sp = pso_solve(m, w, spec.cfg);
            double rate = 0.0, power = 0.0, rho = 0.0;
            for (int k = 0; k < users; ++k) {
                const auto u = static_cast<std::size_t>(k);
                rate += std::log2(1.0 + sp.rho[u] * spec.cfg.p_t * m.gain[u]);
                power += (1.0 - sp.rho[u]) * m.power_full[u];
                rho += sp.rho[u];
            }
            row.insert(row.end(), {rate, power, rho / users});
        }
        per_slot[i] = std::move(row);
    });
    const std::vector<double> mean = reduce_mean(per_slot);
    Table t;
    t.header = {"alpha", "mean_sum_rate", "mean_sum_power", "mean_rho"};
    for (std::size_t j = 0; j < alphas.size(); ++j)
        t.rows.push_back({alphas[j], mean[3 * j], mean[3 * j + 1], mean[3 * j + 2]});
    return t;
}

Table run_pso_user_profile(const ExperimentSpec& spec, const std::vector<SlotData>& slots)
{
    check_cache(spec, slots);
    const int users = spec.cfg.users;
    const auto weights = RequirementWeights::from_alpha(user_profile(spec, {0.6, 0.8, 0.95, 0.975, 0.99}));
    std::vector<std::vector<double>> per_slot(slots.size());
    for_each_slot(slots.size(), spec.policy, [&](std::size_t i) {
        const SlotData& s = slots[i];
        const SlotMetrics m = compute_slot_metrics(s.ch, s.sol, s.xi, spec.cfg, spec.mode);
        const SplitProfile sp = pso_solve(m, weights, spec.cfg);
        std::vector<double> row;
        for (int k = 0; k < users; ++k) {
            const auto u = static_cast<std::size_t>(k);
            row.insert(row.end(), {std::log2(1.0 + sp.rho[u] * spec.cfg.p_t * m.gain[u]),
                                   (1.0 - sp.rho[u]) * m.power_full[u], sp.rho[u]});
        }
        per_slot[i] = std::move(row);
    });
    const std::vector<double> mean = reduce_mean(per_slot);
    Table t;
    t.header = {"k", "alpha_k", "mean_rate", "mean_power", "mean_rho"};
    for (int k = 0; k < users; ++k) {
        const auto u = static_cast<std::size_t>(k);
        t.rows.push_back({static_cast<long long>(k), weights.alpha[u], mean[3 * u], mean[3 * u + 1],
                          mean[3 * u + 2]});
    }
    return t;
}

Table run_power_rate_region(const ExperimentSpec& spec, const std::vector<SlotData>& slots)
{
    check_cache(spec, slots);
    const int users = spec.cfg.users;
    const std::vector<double> alphas = alpha_grid(spec);
    const std::vector<int> ids = id_counts(spec);
    const std::size_t na = alphas.size();
    const std::size_t ni = ids.size();
    // layout: pso_pa then pso over alphas, then prrs and rrs over ids;
    // each entry holds rate, power, per-user SNR
    std::vector<std::vector<double>> per_slot(slots.size());
    for_each_slot(slots.size(), spec.policy, [&](std::size_t i) {
        const SlotData& s = slots[i];
        const SlotMetrics m = compute_slot_metrics(s.ch, s.sol, s.xi, spec.cfg, spec.mode);
        double equal_snr = 0.0;
        for (double g : m.gain)
            equal_snr += spec.cfg.p_t * g;
        equal_snr /= users;

        std::vector<double> row;
        row.reserve(3 * (2 * na + 2 * ni));
        for (double a : alphas) {
            const PaSlot r = evaluate_pa(spec, s, i, RequirementWeights::uniform(users, a));
            row.insert(row.end(), {r.sum_rate, r.sum_power, r.snr});
        }
        for (double a : alphas) {
            const SplitProfile sp = pso_solve(m, RequirementWeights::uniform(users, a), spec.cfg);
            double rate = 0.0, power = 0.0;
            for (int k = 0; k < users; ++k) {
                const auto u = static_cast<std::size_t>(k);
                rate += std::log2(1.0 + sp.rho[u] * spec.cfg.p_t * m.gain[u]);
                power += (1.0 - sp.rho[u]) * m.power_full[u];
            }
            row.insert(row.end(), {rate, power, equal_snr});
        }
        for (int prrs = 1; prrs >= 0; --prrs) {
            for (int id : ids) {
                const SlotOutcome o = run_selection_slot(m, eh_set_for(prrs != 0, m, users - id, i));
                row.insert(row.end(), {o.sum_rate, o.sum_power, equal_snr});
            }
        }
        per_slot[i] = std::move(row);
    });
    const std::vector<double> mean = reduce_mean(per_slot);

    Table t;
    t.header = {"method", "alpha", "eh_users", "mean_sum_power", "mean_sum_rate", "snr_db"};
    std::size_t at = 0;
    for (const char* method : {"pso_pa", "pso"}) {
        for (double a : alphas) {
            t.rows.push_back({std::string(method), a, std::string(), mean[at + 1], mean[at], to_db(mean[at + 2])});
            at += 3;
        }
    }
    for (const char* method : {"prrs", "rrs"}) {
        for (int id : ids) {
            t.rows.push_back({std::string(method), std::string(), static_cast<long long>(users - id), mean[at + 1],
                              mean[at], to_db(mean[at + 2])});
            at += 3;
        }
    }
    return t;
}

Table run_pa_profile(const ExperimentSpec& spec, const std::vector<SlotData>& slots)
{
    check_cache(spec, slots);
    const int users = spec.cfg.users;
    const auto weights = RequirementWeights::from_alpha(user_profile(spec, {0.05, 0.2, 0.35, 0.5, 0.65}));
    std::vector<std::vector<double>> per_slot(slots.size());
    for_each_slot(slots.size(), spec.policy, [&](std::size_t i) {
        const PaSlot r = evaluate_pa(spec, slots[i], i, weights);
        std::vector<double> row;
        for (int k = 0; k < users; ++k) {
            const auto u = static_cast<std::size_t>(k);
            row.insert(row.end(), {r.p[u], r.rate[u], r.harvested[u], r.rho[u]});
        }
        per_slot[i] = std::move(row);
    });
    const std::vector<double> mean = reduce_mean(per_slot);
    Table t;
    t.header = {"k", "alpha_k", "mean_power_allocated", "mean_rate", "mean_harvested", "mean_rho"};
    for (int k = 0; k < users; ++k) {
        const auto u = static_cast<std::size_t>(k);
        t.rows.push_back({static_cast<long long>(k), weights.alpha[u], mean[4 * u], mean[4 * u + 1],
                          mean[4 * u + 2], mean[4 * u + 3]});
    }
    return t;
}

double frontier_power_at_rate(const Table& region, const std::string& method, double rate)
{
    const std::size_t mc = region.column("method");
    const std::size_t rc = region.column("mean_sum_rate");
    const std::size_t pc = region.column("mean_sum_power");
    std::vector<std::pair<double, double>> curve;
    for (const auto& row : region.rows)
        if (std::get<std::string>(row[mc]) == method)
            curve.emplace_back(std::get<double>(row[rc]), std::get<double>(row[pc]));
    if (curve.size() < 2)
        throw DomainError("method " + method + " has fewer than two points");
    std::sort(curve.begin(), curve.end());
    if (rate < curve.front().first || rate > curve.back().first)
        throw DomainError("rate outside the range of " + method);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const auto& [r0, p0] = curve[i - 1];
        const auto& [r1, p1] = curve[i];
        if (rate <= r1) {
            if (r1 == r0)
                return std::max(p0, p1);
            return p0 + (p1 - p0) * (rate - r0) / (r1 - r0);
        }
    }
    return curve.back().second;
}

}  // namespace swipt
