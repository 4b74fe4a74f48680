// SPDX-License-Identifier: Apache-2.0

#include "swipt/parallel.hpp"

#include <atomic>
#include <cstdint>
#include <exception>

#include <omp.h>

namespace swipt {

void for_each_slot(std::size_t n, ParallelPolicy policy, const std::function<void(std::size_t)>& body)
{
    if (policy == ParallelPolicy::serial) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
        if (failed.load(std::memory_order_relaxed))
            continue;
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(swipt_slot_failure)
            {
                if (!failure)
                    failure = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

int worker_count(ParallelPolicy policy)
{
    return policy == ParallelPolicy::serial ? 1 : omp_get_max_threads();
}

}  // namespace swipt
