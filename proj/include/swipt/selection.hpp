// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_SELECTION_HPP
#define SWIPT_SELECTION_HPP

#include "swipt/metrics.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace swipt {

// Round-robin pointer: the highest-numbered user dedicated to EH in the
// previous slot (0-based). Starts at K - 1 so the first slot picks 0..L-1.
struct SelectionState {
    int last_user = 0;
};

SelectionState initial_selection_state(int users);

// Pointer after `slots` round-robin steps of size L from the initial state.
SelectionState rrs_state_after(int users, int eh_users, std::uint64_t slots);

struct RrsSelection {
    std::vector<int> eh_set;  // ascending user indices
    SelectionState next;
};

// Users last+1, ..., last+L (mod K) become EH receivers.
// Throws SelectionError unless 0 <= L < K.
RrsSelection rrs_select(SelectionState state, int users, int eh_users);

// The L users with the largest power-to-rate ratio; ties go to the lower index.
std::vector<int> prrs_select(std::span<const double> prr, int eh_users);

struct SlotOutcome {
    std::vector<int> eh_set;
    double sum_rate = 0.0;   // over ID users, rho = 1
    double sum_power = 0.0;  // over EH users, rho = 0
};

SlotOutcome run_selection_slot(const SlotMetrics& metrics, std::span<const int> eh_set);

SlotOutcome run_selection_slot(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                               const NetworkConfig& cfg, std::span<const int> eh_set);

}  // namespace swipt

#endif  // SWIPT_SELECTION_HPP
