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

// JSON and CSV output for reports, solver statistics and scaling tables.

#include "dgtmg/analysis.hpp"
#include "dgtmg/bench.hpp"
#include "dgtmg/mg_solver.hpp"
#include "dgtmg/stability.hpp"

#include "json.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace dgtmg {

inline std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void to_json(nlohmann::json& j, const SmoothingReport& r)
{
    j = {{"p_t", r.p_t},       {"tau", r.tau},         {"omega", r.omega},         {"alpha", r.alpha},
         {"mu_s", r.mu_s},     {"rho_all", r.rho_all}, {"theta_max", r.theta_max}};
}

inline void to_json(nlohmann::json& j, const AnalysisRow& r)
{
    j = {{"p_t", r.p_t},     {"nu1", r.nu1},         {"nu2", r.nu2},
         {"tau", r.tau},     {"alpha", r.alpha},     {"omega", r.omega},
         {"rho_theory", r.rho_theory}, {"theta_max", r.theta_max}, {"mu_s", r.mu_s}};
}

inline void to_json(nlohmann::json& j, const PhaseTimes& t)
{
    j = {{"smoothing", t.smoothing},
         {"transfer", t.transfer},
         {"coarse_solve", t.coarse_solve},
         {"residual", t.residual},
         {"total", t.total}};
}

inline void to_json(nlohmann::json& j, const SolveStats& s)
{
    j = {{"iterations", s.iterations},
         {"residual_norms", s.residual_norms},
         {"measured_factor", s.measured_factor},
         {"converged", s.converged},
         {"seed", s.seed},
         {"workers", s.workers},
         {"levels", s.levels},
         {"times", s.times},
         {"warnings", s.warnings}};
}

inline void to_json(nlohmann::json& j, const ScalingRow& r)
{
    j = {{"workers", r.workers},
         {"steps", r.steps},
         {"p_t", r.p_t},
         {"median_seconds", r.median_seconds},
         {"samples", r.samples},
         {"speedup", r.speedup},
         {"time_ratio", r.time_ratio},
         {"iterations", r.iterations},
         {"converged", r.converged}};
}

inline void to_json(nlohmann::json& j, const ScalingTable& t)
{
    j = {{"mode", t.mode == ScalingMode::Strong ? "strong" : "weak"}, {"rows", t.rows}, {"warnings", t.warnings}};
}

namespace csv {

inline constexpr const char* analysis_header = "p_t,nu1,nu2,tau,alpha,omega,rho_theory,mu_s,theta_max";
inline constexpr const char* residual_header = "iteration,residual_norm";
inline constexpr const char* scaling_header =
    "mode,p_t,workers,steps,median_seconds,speedup,time_ratio,iterations,samples";

inline void write(std::ostream& os, const std::vector<AnalysisRow>& rows)
{
    os << analysis_header << '\n';
    for (const auto& r : rows) {
        os << r.p_t << ',' << r.nu1 << ',' << r.nu2 << ',' << format_double(r.tau) << ','
           << format_double(r.alpha) << ',' << format_double(r.omega) << ',' << format_double(r.rho_theory) << ','
           << format_double(r.mu_s) << ',' << format_double(r.theta_max) << '\n';
    }
}

inline void write_residuals(std::ostream& os, const SolveStats& stats)
{
    os << residual_header << '\n';
    for (std::size_t k = 0; k < stats.residual_norms.size(); ++k) {
        os << k << ',' << format_double(stats.residual_norms[k]) << '\n';
    }
}

inline void write(std::ostream& os, const ScalingTable& table)
{
    os << scaling_header << '\n';
    const char* mode = table.mode == ScalingMode::Strong ? "strong" : "weak";
    for (const auto& r : table.rows) {
        os << mode << ',' << r.p_t << ',' << r.workers << ',' << r.steps << ',' << format_double(r.median_seconds)
           << ',' << format_double(r.speedup) << ',' << format_double(r.time_ratio) << ',' << r.iterations << ',';
        for (std::size_t i = 0; i < r.samples.size(); ++i) {
            os << (i ? ";" : "") << format_double(r.samples[i]);
        }
        os << '\n';
    }
}

}  // namespace csv

}  // namespace dgtmg
