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

#include "dgtmg/basis.hpp"
#include "dgtmg/block_vector.hpp"
#include "dgtmg/common.hpp"
#include "dgtmg/parallel.hpp"
#include "dgtmg/quadrature.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace dgtmg {

/// Per-step matrices of the DG-in-time discretization of u' + u = f on a
/// step of length tau, together with a reusable factorization of K + M.
///
/// K[k,l] = -int psi_l psi_k' dt + psi_l(t_n) psi_k(t_n)
/// M[k,l] =  int psi_l psi_k dt
/// N[k,l] =  psi_l^{n-1}(t_{n-1}) psi_k^n(t_{n-1})
struct LocalOperators {
    BasisSpec basis;
    double tau = 0.0;
    Matrix K;
    Matrix M;
    Matrix N;
    /// psi_k at the left end of the step; N = left * right^T.
    Vector left;
    /// psi_k at the right end of the step.
    Vector right;
    Matrix km;
    Eigen::PartialPivLU<Matrix> km_lu;
    /// (K+M)^{-1} and (K+M)^{-1} N, formed once from km_lu for the smoother.
    Matrix km_inverse;
    Matrix km_inverse_n;

    [[nodiscard]] int n_t() const noexcept { return basis.n_t(); }
};

namespace detail {

/// Reference matrices on [0,1]: K (independent of tau) and the unit mass matrix.
struct ReferenceMatrices {
    Matrix K;
    Matrix M1;
    Vector left;
    Vector right;
};

inline ReferenceMatrices reference_matrices(const Basis& basis)
{
    const int nt = basis.size();
    const QuadratureRule gauss = gauss_legendre(nt);
    ReferenceMatrices ref{Matrix::Zero(nt, nt), Matrix::Zero(nt, nt), basis.values(0.0), basis.values(1.0)};
    for (std::size_t q = 0; q < gauss.size(); ++q) {
        const double x = gauss.nodes[q];
        const double w = gauss.weights[q];
        Vector phi(nt), dphi(nt);
        for (int k = 0; k < nt; ++k) {
            phi(k) = basis.value(k, x);
            dphi(k) = basis.derivative(k, x);
        }
        ref.K.noalias() -= w * dphi * phi.transpose();
        ref.M1.noalias() += w * phi * phi.transpose();
    }
    ref.K.noalias() += ref.right * ref.right.transpose();
    return ref;
}

}  // namespace detail

/// Assembles K, M, N for one step of size tau. Integrals use the Gauss rule
/// with p_t+1 points, which is exact for the degree-2p_t integrands.
inline LocalOperators assemble_local(const BasisSpec& spec, double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("assemble_local: step size must be positive");
    }
    const Basis basis(spec);
    auto ref = detail::reference_matrices(basis);

    LocalOperators ops;
    ops.basis = spec;
    ops.tau = tau;
    ops.K = std::move(ref.K);
    ops.M = tau * ref.M1;
    ops.left = std::move(ref.left);
    ops.right = std::move(ref.right);
    ops.N = ops.left * ops.right.transpose();
    ops.km = ops.K + ops.M;
    ops.km_lu.compute(ops.km);
    ops.km_inverse = ops.km_lu.inverse();
    ops.km_inverse_n = ops.km_lu.solve(ops.N);
    return ops;
}

/// Load vector that couples the initial value u_0 into the first step:
/// the previous "step" is the constant u_0, so N * (u_0 * 1) = u_0 * left.
[[nodiscard]] inline Vector initial_value_load(const LocalOperators& ops, double u0)
{
    return u0 * ops.left;
}

/// The block system I (x) (K+M) + U (x) N (or its circulant variant), kept
/// matrix-free as (operators, number of steps, periodic flag).
struct GlobalSystem {
    LocalOperators ops;
    std::size_t num_steps = 0;
    bool periodic = false;

    [[nodiscard]] int n_t() const noexcept { return ops.n_t(); }
};

inline void check_conforming(const GlobalSystem& sys, const BlockVector& u, const char* who)
{
    if (u.num_blocks() != sys.num_steps || u.block_size() != static_cast<std::size_t>(sys.n_t())) {
        throw std::invalid_argument(std::string(who) + ": block vector does not match the system dimensions");
    }
}

/// out_n = (K+M) u_n - N u_{n-1}; the first block couples to the last one
/// only for periodic systems.
inline void apply_global(const GlobalSystem& sys, const BlockVector& u, BlockVector& out, int workers = 1)
{
    check_conforming(sys, u, "apply_global");
    if (!out.same_shape(u)) {
        out = BlockVector(u.num_blocks(), u.block_size());
    }
    const auto& km = sys.ops.km;
    const auto& n_mat = sys.ops.N;
    const std::size_t steps = sys.num_steps;
    parallel_for(workers, steps, [&](std::size_t n) {
        auto o = out.map(n);
        o.noalias() = km * u.map(n);
        if (n > 0) {
            o.noalias() -= n_mat * u.map(n - 1);
        } else if (sys.periodic) {
            o.noalias() -= n_mat * u.map(steps - 1);
        }
    });
}

[[nodiscard]] inline BlockVector apply_global(const GlobalSystem& sys, const BlockVector& u, int workers = 1)
{
    BlockVector out(u.num_blocks(), u.block_size());
    apply_global(sys, u, out, workers);
    return out;
}

/// Uniform time grid t_n = t0 + n tau, n = 0..num_steps.
struct TimeGrid {
    double t0 = 0.0;
    double tau = 1.0;
    std::size_t num_steps = 0;

    [[nodiscard]] double t(std::size_t n) const noexcept { return t0 + static_cast<double>(n) * tau; }
    [[nodiscard]] double end() const noexcept { return t(num_steps); }
};

/// Right-hand side moments f_n[l] = int_{t_{n-1}}^{t_n} f psi_l dt, evaluated
/// with the (p_t+1)-point left-Radau rule (the RADAU IA equivalent choice).
template <class F>
[[nodiscard]] BlockVector rhs_moments(F&& f, const TimeGrid& grid, const BasisSpec& spec, int workers = 1)
{
    const Basis basis(spec);
    const RadauRule radau = radau_rule(spec.n_t());
    const int nt = spec.n_t();
    Matrix phi(nt, static_cast<Eigen::Index>(radau.size()));
    for (std::size_t q = 0; q < radau.size(); ++q) {
        phi.col(static_cast<Eigen::Index>(q)) = basis.values(radau.nodes[q]);
    }
    BlockVector out(grid.num_steps, static_cast<std::size_t>(nt));
    parallel_for(workers, grid.num_steps, [&](std::size_t n) {
        auto o = out.map(n);
        o.setZero();
        for (std::size_t q = 0; q < radau.size(); ++q) {
            const double t = grid.t(n) + radau.nodes[q] * grid.tau;
            o += (grid.tau * radau.weights[q] * f(t)) * phi.col(static_cast<Eigen::Index>(q));
        }
    });
    return out;
}

/// Block forward substitution u_n = (K+M)^{-1}(f_n + N u_{n-1}).
inline void forward_solve(const GlobalSystem& sys, const BlockVector& rhs, BlockVector& u)
{
    if (sys.periodic) {
        throw UnsupportedError("forward_solve: periodic systems have no block-triangular structure");
    }
    check_conforming(sys, rhs, "forward_solve");
    if (!u.same_shape(rhs)) {
        u = BlockVector(rhs.num_blocks(), rhs.block_size());
    }
    Vector b(sys.n_t());
    for (std::size_t n = 0; n < sys.num_steps; ++n) {
        b = rhs.map(n);
        if (n > 0) {
            b.noalias() += sys.ops.N * u.map(n - 1);
        }
        u.map(n) = sys.ops.km_lu.solve(b);
    }
}

[[nodiscard]] inline BlockVector forward_solve(const GlobalSystem& sys, const BlockVector& rhs)
{
    BlockVector u;
    forward_solve(sys, rhs, u);
    return u;
}

/// Value of the discrete solution at the right end of step n.
[[nodiscard]] inline double endpoint_value(const BlockVector& u, const LocalOperators& ops, std::size_t n)
{
    return ops.right.dot(u.map(n));
}

/// Stability function R(z) = right^T (K - z M)^{-1} left with tau = 1.
/// This is the single nonzero eigenvalue of (K - zM)^{-1} N.
inline Complex stability_function(const BasisSpec& spec, Complex z)
{
    const Basis basis(spec);
    const auto ref = detail::reference_matrices(basis);
    const ComplexMatrix a = ref.K.cast<Complex>() - z * ref.M1.cast<Complex>();
    Eigen::FullPivLU<ComplexMatrix> lu(a);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) {
        throw SingularError("stability_function: K - zM is singular (z is a pole of R)");
    }
    const ComplexVector x = lu.solve(ref.left.cast<Complex>());
    return ref.right.cast<Complex>().dot(x);
}

/// Jump |u^n(t_{n-1}) - u^{n-1}(t_{n-1})| per step; step one compares with u0.
[[nodiscard]] inline std::vector<double> jump_error_estimator(const BlockVector& u, double u0,
                                                              const BasisSpec& spec)
{
    const Basis basis(spec);
    const Vector left = basis.values(0.0);
    const Vector right = basis.values(1.0);
    std::vector<double> jumps(u.num_blocks());
    for (std::size_t n = 0; n < u.num_blocks(); ++n) {
        const double previous = n == 0 ? u0 : right.dot(u.map(n - 1));
        jumps[n] = std::abs(left.dot(u.map(n)) - previous);
    }
    return jumps;
}

}  // namespace dgtmg
