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
#include "dgtmg/quadrature.hpp"

#include <cmath>
#include <vector>

namespace dgtmg {

enum class NodeRule { LagrangeAtRadauPoints, ScaledLegendre };

struct BasisSpec {
    int p_t = 0;
    NodeRule node_rule = NodeRule::LagrangeAtRadauPoints;

    [[nodiscard]] int n_t() const noexcept { return p_t + 1; }
};

/// Polynomial basis of degree p_t on the reference interval [0,1].
///
/// Local operators are assembled in the reference variable x = (t - t_{n-1})/tau,
/// so every time step shares the same basis object.
class Basis {
public:
    explicit Basis(BasisSpec spec) : spec_(spec)
    {
        if (spec.p_t < 0) {
            throw std::invalid_argument("Basis: polynomial degree must be >= 0");
        }
        if (spec.node_rule == NodeRule::LagrangeAtRadauPoints) {
            nodes_ = radau_rule(spec.n_t()).nodes;
        }
    }

    [[nodiscard]] const BasisSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] int size() const noexcept { return spec_.n_t(); }

    /// Lagrange nodes (empty for the Legendre basis).
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }

    [[nodiscard]] double value(int k, double x) const
    {
        if (spec_.node_rule == NodeRule::ScaledLegendre) {
            return std::sqrt(2.0 * k + 1.0) * legendre(k, 2.0 * x - 1.0).first;
        }
        double v = 1.0;
        for (int j = 0; j < size(); ++j) {
            if (j != k) {
                v *= (x - nodes_[j]) / (nodes_[k] - nodes_[j]);
            }
        }
        return v;
    }

    [[nodiscard]] double derivative(int k, double x) const
    {
        if (spec_.node_rule == NodeRule::ScaledLegendre) {
            return 2.0 * std::sqrt(2.0 * k + 1.0) * legendre(k, 2.0 * x - 1.0).second;
        }
        double d = 0.0;
        for (int m = 0; m < size(); ++m) {
            if (m == k) {
                continue;
            }
            double term = 1.0 / (nodes_[k] - nodes_[m]);
            for (int j = 0; j < size(); ++j) {
                if (j != k && j != m) {
                    term *= (x - nodes_[j]) / (nodes_[k] - nodes_[j]);
                }
            }
            d += term;
        }
        return d;
    }

    /// All basis values at x.
    [[nodiscard]] Vector values(double x) const
    {
        Vector v(size());
        for (int k = 0; k < size(); ++k) {
            v(k) = value(k, x);
        }
        return v;
    }

    /// Coefficients c with sum_k c_k phi_k == 1.
    [[nodiscard]] Vector constant_coefficients() const
    {
        if (spec_.node_rule == NodeRule::ScaledLegendre) {
            Vector c = Vector::Zero(size());
            c(0) = 1.0;
            return c;
        }
        return Vector::Ones(size());
    }

private:
    /// (P_k(y), P_k'(y)) for the standard Legendre polynomial.
    static std::pair<double, double> legendre(int k, double y)
    {
        double p0 = 1.0, d0 = 0.0;
        if (k == 0) {
            return {p0, d0};
        }
        double p1 = y, d1 = 1.0;
        for (int n = 1; n < k; ++n) {
            const double p2 = ((2.0 * n + 1.0) * y * p1 - n * p0) / (n + 1.0);
            const double d2 = d0 + (2.0 * n + 1.0) * p1;
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
        }
        return {p1, d1};
    }

    BasisSpec spec_;
    std::vector<double> nodes_;
};

}  // namespace dgtmg
