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

// Reference constructions used only by the tests. Nothing here calls into the
// library's assembly code.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Coefficients (numerator p, denominator q, ascending powers) of the
/// [m/n] Pade approximant of e^z, from the Taylor-series linear conditions.
struct Pade {
    std::vector<double> p;
    std::vector<double> q;

    Complex operator()(Complex z) const
    {
        Complex num = 0.0;
        Complex den = 0.0;
        for (std::size_t i = p.size(); i-- > 0;) {
            num = num * z + p[i];
        }
        for (std::size_t i = q.size(); i-- > 0;) {
            den = den * z + q[i];
        }
        return num / den;
    }
};

inline Pade pade_exp(int m, int n)
{
    // the Toeplitz system in 1/k! is badly conditioned, so it is solved in
    // extended precision
    using Real = long double;
    using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    std::vector<Real> c(static_cast<std::size_t>(m + n + 1));
    c[0] = 1.0L;
    for (std::size_t k = 1; k < c.size(); ++k) {
        c[k] = c[k - 1] / static_cast<Real>(k);
    }
    auto coeff = [&](int k) { return k < 0 ? Real(0) : c[static_cast<std::size_t>(k)]; };
    // sum_{j=0..n} q_j c_{m+i-j} = 0 for i = 1..n, q_0 = 1
    RMatrix a(n, n);
    RVector b(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            a(i - 1, j - 1) = coeff(m + i - j);
        }
        b(i - 1) = -coeff(m + i);
    }
    const RVector qs = a.fullPivLu().solve(b);
    std::vector<Real> q{1.0L};
    for (int j = 0; j < n; ++j) {
        q.push_back(qs(j));
    }
    Pade out;
    for (Real x : q) {
        out.q.push_back(static_cast<double>(x));
    }
    for (int i = 0; i <= m; ++i) {
        Real s = 0.0L;
        for (int j = 0; j <= std::min(i, n); ++j) {
            s += q[static_cast<std::size_t>(j)] * coeff(i - j);
        }
        out.p.push_back(static_cast<double>(s));
    }
    return out;
}

/// DG matrices in the monomial basis x^k on [0,1], integrated exactly.
struct MonomialDG {
    Eigen::MatrixXd K;
    Eigen::MatrixXd M;
    Eigen::VectorXd left;
    Eigen::VectorXd right;
};

inline MonomialDG monomial_dg(int p_t)
{
    const int n = p_t + 1;
    MonomialDG out{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), Eigen::VectorXd::Zero(n),
                   Eigen::VectorXd::Ones(n)};
    out.left(0) = 1.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            // -int x^l d/dx x^k + 1
            const double deriv = k == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(k + l);
            out.K(k, l) = 1.0 - deriv;
            out.M(k, l) = 1.0 / static_cast<double>(k + l + 1);
        }
    }
    return out;
}

/// right^T (K - z M)^{-1} left in the monomial basis
inline Complex monomial_stability(int p_t, Complex z)
{
    const auto dg = monomial_dg(p_t);
    const Eigen::MatrixXcd a = dg.K.cast<Complex>() - z * dg.M.cast<Complex>();
    const Eigen::VectorXcd x = a.fullPivLu().solve(dg.left.cast<Complex>());
    return dg.right.cast<Complex>().dot(x);
}

/// exact solution of u' + u = cos t, u(0) = u0
inline double cos_forced_solution(double t, double u0)
{
    return 0.5 * (std::cos(t) + std::sin(t)) + (u0 - 0.5) * std::exp(-t);
}

inline double slope(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

/// Log-spaced grid with `points` values from 10^lo to 10^hi.
inline std::vector<double> decades(double lo, double hi, int points)
{
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        out.push_back(std::pow(10.0, lo + (hi - lo) * i / (points - 1)));
    }
    return out;
}

}  // namespace oracle
