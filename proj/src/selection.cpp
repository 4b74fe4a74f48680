// SPDX-License-Identifier: Apache-2.0

#include "swipt/selection.hpp"

#include "swipt/error.hpp"

#include <algorithm>
#include <numeric>

namespace swipt {

namespace {

void check_eh_count(int users, int eh_users)
{
    if (eh_users < 0 || eh_users >= users)
        throw SelectionError("EH user count must satisfy 0 <= L < K");
}

std::vector<bool> membership(int users, std::span<const int> eh_set)
{
    std::vector<bool> is_eh(static_cast<std::size_t>(users), false);
    for (int k : eh_set) {
        if (k < 0 || k >= users)
            throw DimensionError("EH user index out of range");
        is_eh[static_cast<std::size_t>(k)] = true;
    }
    return is_eh;
}

}  // namespace

SelectionState initial_selection_state(int users)
{
    if (users < 1)
        throw ConfigError("users must be >= 1");
    return {users - 1};
}

SelectionState rrs_state_after(int users, int eh_users, std::uint64_t slots)
{
    check_eh_count(users, eh_users);
    const auto k = static_cast<std::uint64_t>(users);
    const std::uint64_t start = static_cast<std::uint64_t>(initial_selection_state(users).last_user);
    const std::uint64_t step = (slots % k) * static_cast<std::uint64_t>(eh_users) % k;
    return {static_cast<int>((start + step) % k)};
}

RrsSelection rrs_select(SelectionState state, int users, int eh_users)
{
    check_eh_count(users, eh_users);
    if (state.last_user < 0 || state.last_user >= users)
        throw SelectionError("round-robin pointer out of range");
    RrsSelection out;
    out.eh_set.reserve(static_cast<std::size_t>(eh_users));
    for (int i = 1; i <= eh_users; ++i)
        out.eh_set.push_back((state.last_user + i) % users);
    std::sort(out.eh_set.begin(), out.eh_set.end());
    out.next.last_user = (state.last_user + eh_users) % users;
    return out;
}

std::vector<int> prrs_select(std::span<const double> prr, int eh_users)
{
    const int users = static_cast<int>(prr.size());
    check_eh_count(users, eh_users);
    std::vector<int> order(prr.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return prr[static_cast<std::size_t>(a)] > prr[static_cast<std::size_t>(b)];
    });
    std::vector<int> eh(order.begin(), order.begin() + eh_users);
    std::sort(eh.begin(), eh.end());
    return eh;
}

SlotOutcome run_selection_slot(const SlotMetrics& metrics, std::span<const int> eh_set)
{
    const int users = metrics.users();
    const std::vector<bool> is_eh = membership(users, eh_set);
    SlotOutcome out;
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (is_eh[i]) {
            out.eh_set.push_back(k);
            out.sum_power += metrics.power_full[i];
        } else {
            out.sum_rate += metrics.rate_full[i];
        }
    }
    return out;
}

SlotOutcome run_selection_slot(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                               const NetworkConfig& cfg, std::span<const int> eh_set)
{
    const std::vector<bool> is_eh = membership(ch.users(), eh_set);
    SlotOutcome out;
    for (int k = 0; k < ch.users(); ++k) {
        if (is_eh[static_cast<std::size_t>(k)]) {
            out.eh_set.push_back(k);
            out.sum_power += harvested_power(ch, sol, xi, k, cfg.p_t, 0.0, cfg.zeta);
        } else {
            out.sum_rate += rate_id(ch, sol, k, cfg.p_t, 1.0);
        }
    }
    return out;
}

}  // namespace swipt
