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

#include "catch_amalgamated.hpp"

#include "dgtmg/bench.hpp"

using namespace dgtmg;

namespace {

ScalingPlan small_plan(ScalingMode mode)
{
    ScalingPlan plan;
    plan.mode = mode;
    plan.workers = {1, 2, 4};
    plan.total_steps = std::size_t{1} << 11;
    plan.steps_per_worker = std::size_t{1} << 9;
    plan.p_ts = {0, 1};
    plan.repetitions = 3;
    return plan;
}

}  // namespace

TEST_CASE("median of samples")
{
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK(median({}) == 0.0);
}

TEST_CASE("scaling plan validation")
{
    ScalingPlan plan;
    CHECK_NOTHROW(plan.validate());
    plan.workers = {1, 3};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.workers = {4, 2};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.workers = {};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan = ScalingPlan{};
    plan.repetitions = 2;
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan = ScalingPlan{};
    plan.total_steps = 1000;
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.mode = ScalingMode::Weak;
    CHECK_NOTHROW(plan.validate());
    plan = ScalingPlan{};
    plan.tau = 0.0;
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan = ScalingPlan{};
    plan.p_ts = {};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("strong scaling table")
{
    const auto table = run_strong_scaling(small_plan(ScalingMode::Weak));
    CHECK(table.mode == ScalingMode::Strong);
    REQUIRE(table.rows.size() == 6);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        CHECK(row.steps == std::size_t{1} << 11);
        CHECK(row.samples.size() == 3);
        CHECK(row.converged);
        CHECK(row.median_seconds > 0.0);
        CHECK(row.p_t == (i < 3 ? 0 : 1));
        if (i % 3 == 0) {
            CHECK(row.speedup == 1.0);
            CHECK(row.time_ratio == 1.0);
        } else {
            // the algorithm does not depend on the worker count
            CHECK(row.iterations == table.rows[i - 1].iterations);
        }
    }
}

TEST_CASE("weak scaling table")
{
    const auto table = run_weak_scaling(small_plan(ScalingMode::Strong));
    CHECK(table.mode == ScalingMode::Weak);
    REQUIRE(table.rows.size() == 6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(table.rows[i].steps == (std::size_t{1} << 9) * static_cast<std::size_t>(1 << i));
        CHECK(table.rows[i].converged);
    }
    CHECK(table.rows[0].time_ratio == 1.0);
}

TEST_CASE("iteration counts barely grow in weak scaling")
{
    ScalingPlan plan;
    plan.workers = {1, 2, 4, 8};
    plan.steps_per_worker = std::size_t{1} << 15;
    plan.p_ts = {0};
    const auto table = run_weak_scaling(plan);
    REQUIRE(table.rows.size() == 4);
    for (const auto& row : table.rows) {
        CHECK(row.converged);
        CHECK(row.iterations - table.rows[0].iterations <= 2);
    }
}

TEST_CASE("oversubscribed plans warn and still run")
{
    ScalingPlan plan = small_plan(ScalingMode::Strong);
    int too_many = 2;
    while (too_many <= hardware_workers()) {
        too_many *= 2;
    }
    plan.workers = {1, too_many};
    plan.p_ts = {0};
    const auto table = run_strong_scaling(plan);
    CHECK(table.rows.size() == 2);
    bool warned = false;
    for (const auto& w : table.warnings) {
        warned = warned || w.find(std::to_string(too_many) + " workers") != std::string::npos;
    }
    CHECK(warned);
}
