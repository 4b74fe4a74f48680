// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_PARALLEL_HPP
#define SWIPT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace swipt {

enum class ParallelPolicy { serial, openmp };

// Calls body(i) once for every i in [0, n). The serial policy runs in index
// order and is the reference the OpenMP policy is tested against. Bodies
// must only write to per-index storage. The first exception thrown by any
// body is rethrown after the loop.
void for_each_slot(std::size_t n, ParallelPolicy policy, const std::function<void(std::size_t)>& body);

// Worker count the OpenMP policy will use; 1 under the serial policy.
int worker_count(ParallelPolicy policy);

}  // namespace swipt

#endif  // SWIPT_PARALLEL_HPP
