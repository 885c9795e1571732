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

namespace dgtmg {

/// Local blocks of the restriction [R1 R2] between a fine level with step
/// tau and the coarse level with step 2 tau. The prolongation is the
/// transpose: fine block 2m gets R1^T e_m, fine block 2m+1 gets R2^T e_m.
struct Transfers {
    Matrix r1;
    Matrix r2;
};

/// R_i^T = M^{-1} Mt_i, where Mt_1 and Mt_2 project the coarse basis onto the
/// first and second fine sub-interval. Transfers are independent of tau
/// because both M and Mt_i scale linearly with it.
inline Transfers build_transfers(const BasisSpec& spec, double tau_fine)
{
    if (!(tau_fine > 0.0)) {
        throw std::invalid_argument("build_transfers: step size must be positive");
    }
    const Basis basis(spec);
    const int nt = basis.size();
    const QuadratureRule gauss = gauss_legendre(nt);
    Matrix mass = Matrix::Zero(nt, nt);
    Matrix first = Matrix::Zero(nt, nt);
    Matrix second = Matrix::Zero(nt, nt);
    for (std::size_t q = 0; q < gauss.size(); ++q) {
        const double x = gauss.nodes[q];
        const double w = tau_fine * gauss.weights[q];
        const Vector fine = basis.values(x);
        mass.noalias() += w * fine * fine.transpose();
        first.noalias() += w * fine * basis.values(0.5 * x).transpose();
        second.noalias() += w * fine * basis.values(0.5 * (1.0 + x)).transpose();
    }
    const Eigen::PartialPivLU<Matrix> lu(mass);
    return Transfers{lu.solve(first).transpose(), lu.solve(second).transpose()};
}

/// coarse_m = R1 fine_{2m} + R2 fine_{2m+1}
inline void restrict_blocks(const Transfers& t, const BlockVector& fine, BlockVector& coarse, int workers = 1)
{
    const std::size_t nc = fine.num_blocks() / 2;
    if (coarse.num_blocks() != nc || coarse.block_size() != fine.block_size()) {
        coarse = BlockVector(nc, fine.block_size());
    }
    parallel_for(workers, nc, [&](std::size_t m) {
        auto c = coarse.map(m);
        c.noalias() = t.r1 * fine.map(2 * m);
        c.noalias() += t.r2 * fine.map(2 * m + 1);
    });
}

/// fine += P coarse
inline void prolongate_add(const Transfers& t, const BlockVector& coarse, BlockVector& fine, int workers = 1)
{
    parallel_for(workers, coarse.num_blocks(), [&](std::size_t m) {
        fine.map(2 * m).noalias() += t.r1.transpose() * coarse.map(m);
        fine.map(2 * m + 1).noalias() += t.r2.transpose() * coarse.map(m);
    });
}

[[nodiscard]] inline BlockVector prolongate(const Transfers& t, const BlockVector& coarse, int workers = 1)
{
    BlockVector fine(2 * coarse.num_blocks(), coarse.block_size());
    prolongate_add(t, coarse, fine, workers);
    return fine;
}

}  // namespace dgtmg
