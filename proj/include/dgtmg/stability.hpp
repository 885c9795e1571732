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

#include "dgtmg/common.hpp"
#include "dgtmg/dg_core.hpp"
#include "dgtmg/frequencies.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace dgtmg {

/// Damping of the block Jacobi smoother: the optimal omega*(tau) of the
/// level it is applied on, or a fixed value in (0,2).
class DampingChoice {
public:
    enum class Mode { Optimal, Fixed };

    static DampingChoice optimal() noexcept { return DampingChoice(Mode::Optimal, 0.0); }
    static DampingChoice fixed(double omega)
    {
        if (!(omega > 0.0 && omega < 2.0)) {
            throw std::invalid_argument("DampingChoice: fixed omega must lie in (0,2)");
        }
        return DampingChoice(Mode::Fixed, omega);
    }

    [[nodiscard]] Mode mode() const noexcept { return mode_; }
    [[nodiscard]] bool is_optimal() const noexcept { return mode_ == Mode::Optimal; }
    [[nodiscard]] double fixed_value() const noexcept { return omega_; }

    /// Non-empty for omega in (1,2): convergent, but not a uniform smoother.
    [[nodiscard]] std::optional<std::string> warning() const
    {
        if (mode_ == Mode::Fixed && omega_ > 1.0) {
            return "damping parameter in (1,2): the smoother converges but does not smooth uniformly";
        }
        return std::nullopt;
    }

private:
    DampingChoice(Mode mode, double omega) : mode_(mode), omega_(omega) {}

    Mode mode_;
    double omega_;
};

/// alpha(tau) = R(-tau), the nonzero eigenvalue of (K+M)^{-1} N.
[[nodiscard]] inline double alpha(const BasisSpec& spec, double tau)
{
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("alpha: tau must be >= 0");
    }
    return stability_function(spec, Complex(-tau, 0.0)).real();
}

/// omega* = 1/(1+alpha^2) for alpha >= 0, else 1.
[[nodiscard]] inline double optimal_omega(double a) noexcept
{
    return a >= 0.0 ? 1.0 / (1.0 + a * a) : 1.0;
}

[[nodiscard]] inline double resolve_omega(const DampingChoice& damping, double a) noexcept
{
    return damping.is_optimal() ? optimal_omega(a) : damping.fixed_value();
}

/// Modulus of the nontrivial eigenvalue 1 - omega + e^{-i theta} omega alpha.
[[nodiscard]] inline double smoothing_symbol_modulus(double omega, double a, double theta) noexcept
{
    const double sq = (1.0 - omega) * (1.0 - omega) + 2.0 * omega * (1.0 - omega) * a * std::cos(theta)
                      + a * a * omega * omega;
    return std::sqrt(std::max(sq, 0.0));
}

struct SmoothingReport {
    int p_t = 0;
    double tau = 0.0;
    double omega = 0.0;
    double alpha = 0.0;
    /// max over high frequencies of the local spectral radius
    double mu_s = 0.0;
    /// same maximum over all frequencies
    double rho_all = 0.0;
    double theta_max = 0.0;
};

[[nodiscard]] inline SmoothingReport smoothing_factor(const BasisSpec& spec, double tau, double omega,
                                                      std::size_t num_steps)
{
    const FrequencySet set(num_steps);
    SmoothingReport report;
    report.p_t = spec.p_t;
    report.tau = tau;
    report.omega = omega;
    report.alpha = alpha(spec, tau);
    const double trivial = std::abs(1.0 - omega);
    report.mu_s = trivial;
    report.rho_all = trivial;
    report.theta_max = set.theta(set.high().back());
    for (long k : set.all()) {
        const double theta = set.theta(k);
        const double r = std::max(trivial, smoothing_symbol_modulus(omega, report.alpha, theta));
        report.rho_all = std::max(report.rho_all, r);
        if (!set.is_low(k) && r > report.mu_s) {
            report.mu_s = r;
            report.theta_max = theta;
        }
    }
    return report;
}

}  // namespace dgtmg
