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

// Theory-versus-numerics checks behind `dgtmg verify`.

#pragma once

#include "dgtmg/dense.hpp"
#include "dgtmg/dgtmg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace dgtmg::tool {

struct Check {
    std::string label;
    bool pass = false;
    std::string detail;
};

inline std::string format(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

inline std::string triple(int p, double tau, int nu)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "p_t=%d tau=%g nu=%d", p, tau, nu);
    return buf;
}

inline std::vector<Complex> eigenvalues(const ComplexMatrix& a)
{
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(a, false);
    return {eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size()};
}

/// Greedy one-to-one matching distance between two eigenvalue multisets.
inline double match_distance(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (Complex x : a) {
        double best = INFINITY;
        std::size_t at = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!used[i] && std::abs(b[i] - x) < best) {
                best = std::abs(b[i] - x);
                at = i;
            }
        }
        if (at < used.size()) {
            used[at] = true;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

/// Dense periodic operators against their symbols, and the dense two-grid
/// spectrum against the union of the harmonic-pair spectra.
inline std::vector<Check> verify_symbols(const std::vector<int>& p_ts, std::size_t steps)
{
    std::vector<Check> out;
    const FrequencySet set(steps);
    for (int p : p_ts) {
        const int nt = p + 1;
        for (double tau : {1e-2, 1.0, 1e2}) {
            const BasisSpec spec{p};
            const auto fine = assemble_local(spec, tau);
            const auto coarse = assemble_local(spec, 2.0 * tau);
            const auto t = build_transfers(spec, tau);
            const double omega = optimal_omega(alpha(spec, tau));
            const ComplexMatrix l = dense::system(fine, steps, true).cast<Complex>();
            const ComplexMatrix s = dense::smoother(fine, steps, omega, true).cast<Complex>();
            double err = 0.0;
            for (long k : set.all()) {
                const double theta = set.theta(k);
                for (int i = 0; i < nt; ++i) {
                    ComplexVector c = ComplexVector::Zero(nt);
                    c(i) = 1.0;
                    const auto mode = fourier_mode(steps, theta, c);
                    const ComplexVector v = Eigen::Map<const ComplexVector>(mode.data().data(),
                                                                            static_cast<Eigen::Index>(mode.size()));
                    const auto lm = fourier_mode(steps, theta, symbol_system(fine, theta) * c);
                    const auto sm = fourier_mode(steps, theta, symbol_smoother(fine, theta, omega, 1) * c);
                    const ComplexVector lv = Eigen::Map<const ComplexVector>(lm.data().data(), v.size());
                    const ComplexVector sv = Eigen::Map<const ComplexVector>(sm.data().data(), v.size());
                    err = std::max({err, (l * v - lv).norm(), (s * v - sv).norm()});
                }
            }
            out.push_back({triple(p, tau, 1) + " symbols", err <= 1e-12, format("deviation %.3e (tol %.0e)", err, 1e-12)});
            for (int nu : {1, 2}) {
                const Matrix m = dense::two_grid(fine, coarse, t, steps, nu, nu, omega, true);
                const auto dense_ev = eigenvalues(m.cast<Complex>());
                std::vector<Complex> union_ev;
                for (long k : set.low()) {
                    const auto ev = eigenvalues(twogrid_symbol(fine, coarse, t, set.theta(k), nu, nu, omega));
                    union_ev.insert(union_ev.end(), ev.begin(), ev.end());
                }
                const double d = std::max(match_distance(dense_ev, union_ev), match_distance(union_ev, dense_ev));
                out.push_back({triple(p, tau, nu) + " two-grid spectrum", d <= 1e-9,
                               format("deviation %.3e (tol %.0e)", d, 1e-9)});
            }
        }
    }
    return out;
}

/// Closed form for p_t = 0 and measured-versus-predicted factors.
inline std::vector<Check> verify_rho(const std::vector<int>& p_ts, std::size_t steps)
{
    std::vector<Check> out;
    for (double tau : log_space(1e-6, 1e6, 49)) {
        const double rho = predicted_rho(BasisSpec{0}, tau, steps, 1, 1, DampingChoice::optimal()).rho;
        const double closed = 1.0 / (2.0 + 2.0 * tau + tau * tau);
        const double rel = std::abs(rho - closed) / closed;
        out.push_back({triple(0, tau, 1) + " closed form", rel <= 1e-9, format("relative %.3e (tol %.0e)", rel, 1e-9)});
    }
    for (int p : p_ts) {
        for (int nu : {1, 2, 5}) {
            for (double tau : {1e-4, 1e-2, 1.0, 1e2}) {
                CycleConfig cfg;
                cfg.nu1 = nu;
                cfg.nu2 = nu;
                cfg.levels = 2;
                cfg.eps = 1e-100;
                const auto h = make_hierarchy(BasisSpec{p}, tau, steps, cfg);
                const double measured = measure_convergence_factor(h, cfg);
                const double predicted =
                    predicted_rho(BasisSpec{p}, tau, steps, nu, nu, DampingChoice::optimal()).rho;
                const double rel = std::abs(measured - predicted) / predicted;
                out.push_back({triple(p, tau, nu) + " measured", rel <= 0.1,
                               format("measured %.4g predicted %.4g", measured, predicted)});
            }
        }
    }
    return out;
}

inline std::vector<Check> verify_smoothing(const std::vector<int>& p_ts, std::size_t steps)
{
    std::vector<Check> out;
    const double floor = (5.0 - 3.0 * std::sqrt(3.0)) / 2.0;
    for (int p : p_ts) {
        for (double tau : log_space(1e-6, 1e6, 49)) {
            const double a = alpha(BasisSpec{p}, tau);
            const double mu = smoothing_factor(BasisSpec{p}, tau, optimal_omega(a), steps).mu_s;
            const bool pass = mu <= 1.0 / std::sqrt(2.0) + 1e-12 && a >= floor - 1e-9 && a <= 1.0;
            out.push_back({triple(p, tau, 1) + " smoothing", pass, format("mu_S %.6f alpha %.6f", mu, a)});
        }
    }
    return out;
}

inline double cos_forced_error(int p, std::size_t steps)
{
    const BasisSpec spec{p};
    const double tau = 1.0 / static_cast<double>(steps);
    const GlobalSystem sys{assemble_local(spec, tau), steps, false};
    auto rhs = rhs_moments([](double t) { return std::cos(t); }, TimeGrid{0.0, tau, steps}, spec);
    rhs.map(0) += initial_value_load(sys.ops, 1.0);
    const auto u = forward_solve(sys, rhs);
    const double exact = 0.5 * (std::cos(1.0) + std::sin(1.0)) + 0.5 * std::exp(-1.0);
    return std::abs(endpoint_value(u, sys.ops, steps - 1) - exact);
}

/// Endpoint error slope for u' + u = cos t, u(0) = 1 on [0,1].
inline std::vector<Check> verify_order(const std::vector<int>& p_ts)
{
    std::vector<Check> out;
    for (int p : p_ts) {
        const double slope = std::log2(cos_forced_error(p, 8) / cos_forced_error(p, 16));
        const double expected = 2 * p + 1;
        out.push_back({triple(p, 1.0 / 16.0, 0) + " order", std::abs(slope - expected) <= 0.2,
                       format("slope %.3f (expected %.0f +- 0.2)", slope, expected)});
    }
    return out;
}

}  // namespace dgtmg::tool
