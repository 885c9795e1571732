/*
    Copyright (c) 2026 The dgtmg authors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace dgtmg {

/// Loops shorter than this many indices per thread run on fewer threads.
inline constexpr std::size_t parallel_grain = 64;

/// Runs body(i) for i in [0, n) on up to `workers` threads with a static
/// partition. Every index is processed exactly once by exactly one thread, so
/// the result of a body that only writes slot i is independent of the worker
/// count.
template <class Body>
void parallel_for(int workers, std::size_t n, Body&& body)
{
#if defined(_OPENMP)
    const auto by_size = static_cast<int>(std::min<std::size_t>(n / parallel_grain, 1u << 20));
    const int threads = std::min(workers, by_size);
    if (threads > 1) {
        const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for num_threads(threads) schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)workers;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
}

/// Pairwise (tree) summation in a fixed order.
inline double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

[[nodiscard]] inline int hardware_workers() noexcept
{
#if defined(_OPENMP)
    return omp_get_num_procs();
#else
    return 1;
#endif
}

}  // namespace dgtmg
