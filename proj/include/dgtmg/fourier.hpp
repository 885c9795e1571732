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

#include "dgtmg/block_vector.hpp"
#include "dgtmg/common.hpp"
#include "dgtmg/dg_core.hpp"
#include "dgtmg/frequencies.hpp"
#include "dgtmg/parallel.hpp"
#include "dgtmg/stability.hpp"
#include "dgtmg/transfer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace dgtmg {

/// Blockwise discrete Fourier coefficients of a block vector.
///
/// coefficient(k)[l] = (1/N_L) sum_{n=1}^{N_L} u_n[l] e^{-i n theta_k}, so that
/// u_n[l] = sum_k coefficient(k)[l] e^{i n theta_k}. For a low frequency the
/// pair (U1, U2) = (diag c(theta), diag c(gamma(theta))) spans its harmonics.
class HarmonicsDecomposition {
public:
    HarmonicsDecomposition(FrequencySet set, std::size_t block_size)
        : set_(std::move(set)), coefficients_(set_.num_steps(), ComplexVector::Zero(block_size))
    {
    }

    [[nodiscard]] const FrequencySet& frequencies() const noexcept { return set_; }
    [[nodiscard]] std::size_t block_size() const noexcept
    {
        return static_cast<std::size_t>(coefficients_.front().size());
    }

    [[nodiscard]] ComplexVector& coefficient(long k) { return coefficients_[set_.position(k)]; }
    [[nodiscard]] const ComplexVector& coefficient(long k) const { return coefficients_[set_.position(k)]; }

    [[nodiscard]] ComplexMatrix u1(long k_low) const { return coefficient(k_low).asDiagonal(); }
    [[nodiscard]] ComplexMatrix u2(long k_low) const
    {
        return coefficient(set_.partner(k_low)).asDiagonal();
    }

private:
    FrequencySet set_;
    std::vector<ComplexVector> coefficients_;
};

namespace detail {

/// e^{i 2 pi j / N}, j = 0..N-1, reduced exactly in integer arithmetic.
inline std::vector<Complex> roots_of_unity(std::size_t n)
{
    std::vector<Complex> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = std::polar(1.0, 2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
    }
    return w;
}

inline std::size_t phase_index(long k, std::size_t n, std::size_t steps)
{
    const long m = static_cast<long>(steps);
    long r = (k * static_cast<long>(n)) % m;
    if (r < 0) {
        r += m;
    }
    return static_cast<std::size_t>(r);
}

}  // namespace detail

template <class T>
[[nodiscard]] HarmonicsDecomposition block_dft(const BasicBlockVector<T>& u)
{
    const std::size_t steps = u.num_blocks();
    HarmonicsDecomposition out(FrequencySet(steps), u.block_size());
    const auto w = detail::roots_of_unity(steps);
    const double scale = 1.0 / static_cast<double>(steps);
    for (long k : out.frequencies().all()) {
        ComplexVector& c = out.coefficient(k);
        for (std::size_t n = 1; n <= steps; ++n) {
            // e^{-i n theta_k}
            const Complex phase = std::conj(w[detail::phase_index(k, n, steps)]);
            for (std::size_t l = 0; l < u.block_size(); ++l) {
                c(static_cast<Eigen::Index>(l)) += Complex(u(n - 1, l)) * phase;
            }
        }
        c *= scale;
    }
    return out;
}

[[nodiscard]] inline ComplexBlockVector block_idft(const HarmonicsDecomposition& h)
{
    const std::size_t steps = h.frequencies().num_steps();
    ComplexBlockVector u(steps, h.block_size());
    const auto w = detail::roots_of_unity(steps);
    for (std::size_t n = 1; n <= steps; ++n) {
        auto block = u.map(n - 1);
        for (long k : h.frequencies().all()) {
            block += w[detail::phase_index(k, n, steps)] * h.coefficient(k);
        }
    }
    return u;
}

/// Block Fourier mode psi_n = c e^{i n theta}, n = 1..N_L.
[[nodiscard]] inline ComplexBlockVector fourier_mode(std::size_t steps, double theta, const ComplexVector& c)
{
    ComplexBlockVector u(steps, static_cast<std::size_t>(c.size()));
    for (std::size_t n = 1; n <= steps; ++n) {
        u.map(n - 1) = std::polar(1.0, static_cast<double>(n) * theta) * c;
    }
    return u;
}

/// L(theta) = K + M - e^{-i theta} N
[[nodiscard]] inline ComplexMatrix symbol_system(const LocalOperators& ops, double theta)
{
    return ops.km.cast<Complex>() - std::polar(1.0, -theta) * ops.N.cast<Complex>();
}

/// S(theta)^nu with S(theta) = (1-omega) I + e^{-i theta} omega (K+M)^{-1} N
[[nodiscard]] inline ComplexMatrix symbol_smoother(const LocalOperators& ops, double theta, double omega, int nu)
{
    if (nu < 0) {
        throw std::invalid_argument("symbol_smoother: nu must be >= 0");
    }
    const int nt = ops.n_t();
    const ComplexMatrix s = (1.0 - omega) * ComplexMatrix::Identity(nt, nt)
                            + std::polar(omega, -theta) * ops.km_inverse_n.cast<Complex>();
    ComplexMatrix out = ComplexMatrix::Identity(nt, nt);
    for (int i = 0; i < nu; ++i) {
        out = s * out;
    }
    return out;
}

struct TransferSymbols {
    ComplexMatrix restriction;
    ComplexMatrix prolongation;
};

/// R(theta) = e^{-i theta} R1 + R2,  P(theta) = (e^{i theta} R1^T + R2^T) / 2
[[nodiscard]] inline TransferSymbols transfer_symbols(const Transfers& t, double theta)
{
    return {std::polar(1.0, -theta) * t.r1.cast<Complex>() + t.r2.cast<Complex>(),
            0.5 * (std::polar(1.0, theta) * t.r1.transpose().cast<Complex>() + t.r2.transpose().cast<Complex>())};
}

/// 2N_t x 2N_t symbol of the two-grid error propagation on the harmonics
/// {theta, gamma(theta)}, theta in (-pi/2, pi/2]; the coarse operator is the
/// rediscretization at 2 tau evaluated at 2 theta.
[[nodiscard]] inline ComplexMatrix twogrid_symbol(const LocalOperators& fine, const LocalOperators& coarse,
                                                  const Transfers& transfers, double theta, int nu1, int nu2,
                                                  double omega)
{
    if (!(theta > -pi / 2 && theta <= pi / 2 + 1e-14)) {
        throw std::invalid_argument("twogrid_symbol: theta must be a low frequency");
    }
    const int nt = fine.n_t();
    const double partner = alias_frequency(theta);

    const auto t_low = transfer_symbols(transfers, theta);
    const auto t_high = transfer_symbols(transfers, partner);

    ComplexMatrix prolong(2 * nt, nt);
    prolong << t_low.prolongation, t_high.prolongation;
    ComplexMatrix restrict_(nt, 2 * nt);
    restrict_ << t_low.restriction, t_high.restriction;

    ComplexMatrix system = ComplexMatrix::Zero(2 * nt, 2 * nt);
    system.topLeftCorner(nt, nt) = symbol_system(fine, theta);
    system.bottomRightCorner(nt, nt) = symbol_system(fine, partner);

    const ComplexMatrix coarse_symbol = symbol_system(coarse, 2.0 * theta);
    Eigen::FullPivLU<ComplexMatrix> coarse_lu(coarse_symbol);
    if (!coarse_lu.isInvertible()) {
        throw SingularError("twogrid_symbol: coarse symbol is singular");
    }
    const ComplexMatrix correction = ComplexMatrix::Identity(2 * nt, 2 * nt)
                                     - prolong * coarse_lu.solve(restrict_ * system);

    ComplexMatrix pre = ComplexMatrix::Zero(2 * nt, 2 * nt);
    pre.topLeftCorner(nt, nt) = symbol_smoother(fine, theta, omega, nu1);
    pre.bottomRightCorner(nt, nt) = symbol_smoother(fine, partner, omega, nu1);
    ComplexMatrix post = ComplexMatrix::Zero(2 * nt, 2 * nt);
    post.topLeftCorner(nt, nt) = symbol_smoother(fine, theta, omega, nu2);
    post.bottomRightCorner(nt, nt) = symbol_smoother(fine, partner, omega, nu2);
    return post * correction * pre;
}

[[nodiscard]] inline double spectral_radius(const ComplexMatrix& a)
{
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(a, false);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("spectral_radius: eigenvalue iteration did not converge");
    }
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

struct TwoGridPrediction {
    double rho = 0.0;
    /// low frequency where the maximum is attained
    double theta_max = 0.0;
    double omega = 0.0;
    double alpha = 0.0;
};

/// Asymptotic two-grid convergence factor: max over theta in the low set of
/// rho(M(theta)).
[[nodiscard]] inline TwoGridPrediction predicted_rho(const BasisSpec& spec, double tau, std::size_t num_steps,
                                                     int nu1, int nu2, const DampingChoice& damping,
                                                     int workers = 1)
{
    const FrequencySet set(num_steps);
    const auto fine = assemble_local(spec, tau);
    const auto coarse = assemble_local(spec, 2.0 * tau);
    const auto transfers = build_transfers(spec, tau);

    TwoGridPrediction out;
    out.alpha = alpha(spec, tau);
    out.omega = resolve_omega(damping, out.alpha);

    const auto& low = set.low();
    std::vector<double> radii(low.size());
    parallel_for(workers, low.size(), [&](std::size_t i) {
        const double theta = set.theta(low[i]);
        radii[i] = spectral_radius(twogrid_symbol(fine, coarse, transfers, theta, nu1, nu2, out.omega));
    });
    const auto it = std::max_element(radii.begin(), radii.end());
    out.rho = *it;
    out.theta_max = set.theta(low[static_cast<std::size_t>(it - radii.begin())]);
    return out;
}

}  // namespace dgtmg
