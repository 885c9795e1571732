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

#include "dgtmg/fourier.hpp"
#include "dgtmg/stability.hpp"

#include <cmath>
#include <vector>

namespace dgtmg {

/// One point of a theory sweep over tau.
struct AnalysisRow {
    int p_t = 0;
    int nu1 = 1;
    int nu2 = 1;
    double tau = 0.0;
    double alpha = 0.0;
    double omega = 0.0;
    double rho_theory = 0.0;
    double theta_max = 0.0;
    double mu_s = 0.0;
};

/// `points` logarithmically spaced values from lo to hi (inclusive).
[[nodiscard]] inline std::vector<double> log_space(double lo, double hi, int points)
{
    if (!(lo > 0.0) || !(hi >= lo) || points < 1 || (points == 1 && hi != lo)) {
        throw std::invalid_argument("log_space: need 0 < lo <= hi and at least one point");
    }
    std::vector<double> out(static_cast<std::size_t>(points));
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < points; ++i) {
        const double e = points == 1 ? a : a + (b - a) * i / (points - 1);
        out[static_cast<std::size_t>(i)] = std::pow(10.0, e);
    }
    return out;
}

[[nodiscard]] inline AnalysisRow analyze_point(const BasisSpec& basis, double tau, std::size_t num_steps, int nu1,
                                               int nu2, const DampingChoice& damping, int workers = 1)
{
    const auto prediction = predicted_rho(basis, tau, num_steps, nu1, nu2, damping, workers);
    const auto smoothing = smoothing_factor(basis, tau, prediction.omega, num_steps);
    return AnalysisRow{basis.p_t, nu1, nu2, tau, prediction.alpha, prediction.omega, prediction.rho,
                       prediction.theta_max, smoothing.mu_s};
}

[[nodiscard]] inline std::vector<AnalysisRow> analysis_sweep(const BasisSpec& basis, const std::vector<double>& taus,
                                                             std::size_t num_steps, int nu1, int nu2,
                                                             const DampingChoice& damping, int workers = 1)
{
    std::vector<AnalysisRow> rows;
    rows.reserve(taus.size());
    for (double tau : taus) {
        rows.push_back(analyze_point(basis, tau, num_steps, nu1, nu2, damping, workers));
    }
    return rows;
}

}  // namespace dgtmg
