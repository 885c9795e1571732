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

// Dense assembly of the global operators. Only meant for small systems: the
// matrix-free kernels and the Fourier symbols are checked against these.

#include "dgtmg/common.hpp"
#include "dgtmg/dg_core.hpp"
#include "dgtmg/transfer.hpp"

namespace dgtmg::dense {

[[nodiscard]] inline Matrix system(const LocalOperators& ops, std::size_t steps, bool periodic)
{
    const Eigen::Index nt = ops.n_t();
    const auto n = static_cast<Eigen::Index>(steps);
    Matrix a = Matrix::Zero(n * nt, n * nt);
    for (Eigen::Index i = 0; i < n; ++i) {
        a.block(i * nt, i * nt, nt, nt) = ops.km;
        if (i > 0) {
            a.block(i * nt, (i - 1) * nt, nt, nt) = -ops.N;
        } else if (periodic) {
            a.block(0, (n - 1) * nt, nt, nt) = -ops.N;
        }
    }
    return a;
}

/// I - omega D^{-1} L
[[nodiscard]] inline Matrix smoother(const LocalOperators& ops, std::size_t steps, double omega, bool periodic)
{
    const Eigen::Index nt = ops.n_t();
    const auto n = static_cast<Eigen::Index>(steps);
    Matrix d_inv = Matrix::Zero(n * nt, n * nt);
    for (Eigen::Index i = 0; i < n; ++i) {
        d_inv.block(i * nt, i * nt, nt, nt) = ops.km.inverse();
    }
    return Matrix::Identity(n * nt, n * nt) - omega * d_inv * system(ops, steps, periodic);
}

/// Maps N_f fine blocks to N_f/2 coarse blocks.
[[nodiscard]] inline Matrix restriction(const Transfers& t, std::size_t fine_steps)
{
    const Eigen::Index nt = t.r1.rows();
    const auto nc = static_cast<Eigen::Index>(fine_steps / 2);
    Matrix r = Matrix::Zero(nc * nt, 2 * nc * nt);
    for (Eigen::Index m = 0; m < nc; ++m) {
        r.block(m * nt, 2 * m * nt, nt, nt) = t.r1;
        r.block(m * nt, (2 * m + 1) * nt, nt, nt) = t.r2;
    }
    return r;
}

[[nodiscard]] inline Matrix prolongation(const Transfers& t, std::size_t fine_steps)
{
    return restriction(t, fine_steps).transpose();
}

[[nodiscard]] inline Matrix power(const Matrix& a, int k)
{
    Matrix out = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) {
        out = a * out;
    }
    return out;
}

/// S^{nu2} (I - P L_c^{-1} R L_f) S^{nu1}
[[nodiscard]] inline Matrix two_grid(const LocalOperators& fine, const LocalOperators& coarse, const Transfers& t,
                                     std::size_t fine_steps, int nu1, int nu2, double omega, bool periodic)
{
    const Matrix lf = system(fine, fine_steps, periodic);
    const Matrix lc = system(coarse, fine_steps / 2, periodic);
    const Matrix r = restriction(t, fine_steps);
    const Matrix s = smoother(fine, fine_steps, omega, periodic);
    const Matrix correction =
        Matrix::Identity(lf.rows(), lf.cols()) - r.transpose() * lc.partialPivLu().solve(r * lf);
    return power(s, nu2) * correction * power(s, nu1);
}

}  // namespace dgtmg::dense
