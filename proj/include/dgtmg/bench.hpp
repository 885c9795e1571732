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

#include "dgtmg/mg_solver.hpp"
#include "dgtmg/parallel.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace dgtmg {

enum class ScalingMode { Strong, Weak };

/// Strong mode solves one problem of total_steps on every worker count; weak
/// mode solves workers * steps_per_worker steps.
struct ScalingPlan {
    ScalingMode mode = ScalingMode::Strong;
    std::vector<int> workers{1, 2, 4, 8, 16};
    std::size_t steps_per_worker = std::size_t{1} << 15;
    std::size_t total_steps = std::size_t{1} << 20;
    std::vector<int> p_ts{0};
    double tau = 1e-6;
    double eps = 1e-8;
    int repetitions = 3;
    int nu1 = 1;
    int nu2 = 1;
    int max_iters = 250;
    std::uint64_t seed = 42;

    void validate() const
    {
        if (workers.empty()) {
            throw std::invalid_argument("ScalingPlan: no worker counts");
        }
        for (std::size_t i = 0; i < workers.size(); ++i) {
            if (workers[i] < 1 || !is_power_of_two(static_cast<std::size_t>(workers[i]))) {
                throw std::invalid_argument("ScalingPlan: worker counts must be powers of two");
            }
            if (i > 0 && workers[i] < workers[i - 1]) {
                throw std::invalid_argument("ScalingPlan: worker counts must be nondecreasing");
            }
        }
        if (repetitions < 3) {
            throw std::invalid_argument("ScalingPlan: at least three repetitions are required");
        }
        if (p_ts.empty()) {
            throw std::invalid_argument("ScalingPlan: no polynomial degrees");
        }
        if (mode == ScalingMode::Strong && total_steps % static_cast<std::size_t>(workers.back()) != 0) {
            throw std::invalid_argument("ScalingPlan: total steps must be divisible by the largest worker count");
        }
        if (!(tau > 0.0)) {
            throw std::invalid_argument("ScalingPlan: tau must be positive");
        }
    }
};

struct ScalingRow {
    int workers = 1;
    std::size_t steps = 0;
    int p_t = 0;
    double median_seconds = 0.0;
    std::vector<double> samples;
    /// baseline median / median (baseline = first worker count of the plan)
    double speedup = 1.0;
    /// median / baseline median
    double time_ratio = 1.0;
    int iterations = 0;
    bool converged = false;
};

struct ScalingTable {
    ScalingMode mode = ScalingMode::Strong;
    std::vector<ScalingRow> rows;
    std::vector<std::string> warnings;
};

[[nodiscard]] inline double median(std::vector<double> values)
{
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace detail {

inline ScalingTable run_scaling(const ScalingPlan& plan)
{
    plan.validate();
    ScalingTable table;
    table.mode = plan.mode;
    const int available = hardware_workers();
    for (int w : plan.workers) {
        if (w > available) {
            table.warnings.push_back("plan uses " + std::to_string(w) + " workers but the host reports "
                                     + std::to_string(available) + " hardware threads");
        }
    }
    for (int p_t : plan.p_ts) {
        const BasisSpec basis{p_t, NodeRule::LagrangeAtRadauPoints};
        const std::size_t first_row = table.rows.size();
        for (int w : plan.workers) {
            const std::size_t steps = plan.mode == ScalingMode::Strong
                                          ? plan.total_steps
                                          : static_cast<std::size_t>(w) * plan.steps_per_worker;
            CycleConfig config;
            config.nu1 = plan.nu1;
            config.nu2 = plan.nu2;
            config.eps = plan.eps;
            config.max_iters = plan.max_iters;
            config.seed = plan.seed;
            config.workers = w;
            // assembly is excluded from the timings
            const auto hierarchy = make_hierarchy(basis, plan.tau, steps, config);
            const auto nt = static_cast<std::size_t>(basis.n_t());
            const BlockVector rhs(steps, nt);
            const BlockVector start = random_block_vector(steps, nt, plan.seed);

            ScalingRow row;
            row.workers = w;
            row.steps = steps;
            row.p_t = p_t;
            for (int rep = 0; rep < plan.repetitions; ++rep) {
                const auto result = solve(hierarchy, rhs, start, config);
                row.samples.push_back(result.stats.times.total);
                row.iterations = result.stats.iterations;
                row.converged = result.stats.converged;
            }
            row.median_seconds = median(row.samples);
            table.rows.push_back(std::move(row));
        }
        const ScalingRow& base = table.rows[first_row];
        for (std::size_t i = first_row; i < table.rows.size(); ++i) {
            auto& row = table.rows[i];
            row.speedup = base.median_seconds / row.median_seconds;
            row.time_ratio = row.median_seconds / base.median_seconds;
            if (plan.mode == ScalingMode::Strong && i > first_row) {
                if (row.iterations != table.rows[i - 1].iterations) {
                    table.warnings.push_back("iteration count changed with the worker count (p_t = "
                                             + std::to_string(p_t) + ")");
                }
                if (row.median_seconds > table.rows[i - 1].median_seconds) {
                    table.warnings.push_back("solve time increased from " + std::to_string(table.rows[i - 1].workers)
                                             + " to " + std::to_string(row.workers) + " workers (p_t = "
                                             + std::to_string(p_t) + ")");
                }
            }
        }
    }
    return table;
}

}  // namespace detail

[[nodiscard]] inline ScalingTable run_strong_scaling(ScalingPlan plan)
{
    plan.mode = ScalingMode::Strong;
    return detail::run_scaling(plan);
}

[[nodiscard]] inline ScalingTable run_weak_scaling(ScalingPlan plan)
{
    plan.mode = ScalingMode::Weak;
    return detail::run_scaling(plan);
}

}  // namespace dgtmg
