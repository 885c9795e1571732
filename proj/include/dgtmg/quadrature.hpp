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

#include <cmath>
#include <utility>
#include <vector>

namespace dgtmg {

/// Quadrature rule on the reference interval [0,1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    [[nodiscard]] auto integrate(F&& f) const
    {
        decltype(f(0.0)) sum{};
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            sum += weights[k] * f(nodes[k]);
        }
        return sum;
    }
};

/// Left-Radau rules have c_1 = 0 and are exact up to degree 2s-2.
using RadauRule = QuadratureRule;

namespace detail {

/// Legendre P_n(x) and P_{n-1}(x) by the three-term recurrence.
inline std::pair<double, double> legendre_pair(int n, double x)
{
    double p_prev = 1.0;
    if (n == 0) {
        return {1.0, 0.0};
    }
    double p = x;
    for (int k = 2; k <= n; ++k) {
        const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = p_next;
    }
    return {p, p_prev};
}

inline double legendre_derivative(int n, double x, double pn, double pnm1)
{
    // valid for |x| < 1
    return n * (x * pn - pnm1) / (x * x - 1.0);
}

}  // namespace detail

/// Gauss-Legendre rule with n points mapped to [0,1]; exact for degree 2n-1.
inline QuadratureRule gauss_legendre(int n)
{
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: need at least one point");
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            const auto [p, pm1] = detail::legendre_pair(n, x);
            dp = detail::legendre_derivative(n, x, p, pm1);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const auto [p, pm1] = detail::legendre_pair(n, x);
        dp = detail::legendre_derivative(n, x, p, pm1);
        // descending x -> ascending t
        rule.nodes[n - 1 - i] = 0.5 * (x + 1.0);
        rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

/// Left-Radau rule with s points on [0,1]: c_1 = 0, exact for degree 2s-2.
///
/// The interior nodes are the zeros of the Jacobi polynomial P^{(0,1)}_{s-1},
/// i.e. of (P_{s-1} + P_s)/(1 + x) on [-1,1]. They are obtained from the
/// Golub-Welsch eigenvalue problem and then polished by Newton's method on
/// P_{s-1} + P_s.
inline RadauRule radau_rule(int s)
{
    if (s < 1) {
        throw std::invalid_argument("radau_rule: stage count must be >= 1");
    }
    std::vector<double> x(s);
    x[0] = -1.0;
    if (s > 1) {
        const int m = s - 1;
        Matrix jacobi = Matrix::Zero(m, m);
        for (int n = 0; n < m; ++n) {
            jacobi(n, n) = 1.0 / ((2.0 * n + 1.0) * (2.0 * n + 3.0));
            if (n + 1 < m) {
                const double k = n + 1.0;
                const double off = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
                jacobi(n, n + 1) = off;
                jacobi(n + 1, n) = off;
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(jacobi, Eigen::EigenvaluesOnly);
        for (int i = 0; i < m; ++i) {
            double xi = eig.eigenvalues()(i);
            for (int it = 0; it < 50; ++it) {
                const auto [ps, psm1] = detail::legendre_pair(s, xi);
                const auto [pm, pmm1] = detail::legendre_pair(s - 1, xi);
                const double f = ps + pm;
                const double df = detail::legendre_derivative(s, xi, ps, psm1)
                                  + (s - 1 > 0 ? detail::legendre_derivative(s - 1, xi, pm, pmm1) : 0.0);
                const double dx = f / df;
                xi -= dx;
                if (std::abs(dx) < 1e-16) {
                    break;
                }
            }
            x[i + 1] = xi;
        }
    }

    RadauRule rule;
    rule.nodes.resize(s);
    rule.weights.resize(s);
    const double s2 = static_cast<double>(s) * s;
    for (int i = 0; i < s; ++i) {
        rule.nodes[i] = 0.5 * (x[i] + 1.0);
        if (i == 0) {
            rule.weights[i] = 1.0 / s2;
        } else {
            const double pm = detail::legendre_pair(s - 1, x[i]).first;
            rule.weights[i] = 0.5 * (1.0 - x[i]) / (s2 * pm * pm);
        }
    }
    rule.nodes[0] = 0.0;
    return rule;
}

}  // namespace dgtmg
