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
#include "dgtmg/parallel.hpp"
#include "dgtmg/stability.hpp"
#include "dgtmg/transfer.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace dgtmg {

// ---------------------------------------------------------------------------
// Smoother
// ---------------------------------------------------------------------------

/// Scratch buffers of the block Jacobi smoother.
struct SmootherScratch {
    BlockVector scaled_rhs;
    BlockVector next;
};

/// nu sweeps of u <- u + omega D^{-1} (f - L u) on a non-periodic level.
///
/// Written as u_n <- (1-omega) u_n + omega (K+M)^{-1} (f_n + N u_{n-1}), which
/// only reads blocks n and n-1 of the previous iterate, so all blocks of one
/// sweep are updated independently.
inline void block_jacobi_sweep(const GlobalSystem& level, BlockVector& u, const BlockVector& f, double omega,
                               int nu, int workers, SmootherScratch& scratch)
{
    check_conforming(level, u, "block_jacobi_sweep");
    check_conforming(level, f, "block_jacobi_sweep");
    if (nu <= 0) {
        return;
    }
    const std::size_t steps = level.num_steps;
    if (!scratch.scaled_rhs.same_shape(u)) {
        scratch.scaled_rhs = BlockVector(steps, u.block_size());
        scratch.next = BlockVector(steps, u.block_size());
    }
    const Matrix& d_inv = level.ops.km_inverse;
    const Matrix& d_inv_n = level.ops.km_inverse_n;
    BlockVector& g = scratch.scaled_rhs;
    parallel_for(workers, steps, [&](std::size_t n) { g.map(n).noalias() = d_inv * f.map(n); });

    for (int sweep = 0; sweep < nu; ++sweep) {
        const BlockVector& old = u;
        BlockVector& next = scratch.next;
        parallel_for(workers, steps, [&](std::size_t n) {
            auto out = next.map(n);
            out = g.map(n);
            if (n > 0) {
                out.noalias() += d_inv_n * old.map(n - 1);
            }
            out = (1.0 - omega) * old.map(n) + omega * out;
        });
        std::swap(u, next);
    }
}

inline void block_jacobi_sweep(const GlobalSystem& level, BlockVector& u, const BlockVector& f, double omega,
                               int nu, int workers = 1)
{
    SmootherScratch scratch;
    block_jacobi_sweep(level, u, f, omega, nu, workers, scratch);
}

// ---------------------------------------------------------------------------
// Hierarchy and configuration
// ---------------------------------------------------------------------------

/// Nested uniform time grids; index 0 is the finest level and every coarser
/// level halves the number of steps and doubles tau.
class TimeHierarchy {
public:
    /// levels == 0 coarsens until the step count is <= coarsest_threshold.
    static TimeHierarchy build(const BasisSpec& basis, double tau_fine, std::size_t num_steps, int levels = 0,
                               std::size_t coarsest_threshold = 8)
    {
        if (num_steps < 2) {
            throw std::invalid_argument("TimeHierarchy: need at least two time steps");
        }
        if (levels < 0 || levels == 1) {
            throw std::invalid_argument("TimeHierarchy: a hierarchy needs at least two levels");
        }
        TimeHierarchy h;
        h.basis_ = basis;
        double tau = tau_fine;
        std::size_t steps = num_steps;
        h.levels_.push_back(GlobalSystem{assemble_local(basis, tau), steps, false});
        auto more = [&]() {
            if (levels > 0) {
                return static_cast<int>(h.levels_.size()) < levels;
            }
            return steps > coarsest_threshold;
        };
        while (more()) {
            if (steps % 2 != 0 || steps / 2 < 2) {
                throw std::invalid_argument("TimeHierarchy: step count cannot be halved to the requested depth");
            }
            h.transfers_.push_back(build_transfers(basis, tau));
            tau *= 2.0;
            steps /= 2;
            h.levels_.push_back(GlobalSystem{assemble_local(basis, tau), steps, false});
        }
        if (h.levels_.size() < 2) {
            throw std::invalid_argument("TimeHierarchy: fine grid is already below the coarsest threshold");
        }
        for (const auto& level : h.levels_) {
            h.alphas_.push_back(dgtmg::alpha(basis, level.ops.tau));
        }
        return h;
    }

    [[nodiscard]] const BasisSpec& basis() const noexcept { return basis_; }
    [[nodiscard]] std::size_t num_levels() const noexcept { return levels_.size(); }
    [[nodiscard]] const GlobalSystem& level(std::size_t i) const { return levels_.at(i); }
    [[nodiscard]] const GlobalSystem& finest() const { return levels_.front(); }
    /// Transfers between level i and level i+1.
    [[nodiscard]] const Transfers& transfers(std::size_t i) const { return transfers_.at(i); }
    [[nodiscard]] double alpha(std::size_t i) const { return alphas_.at(i); }

private:
    TimeHierarchy() = default;

    BasisSpec basis_;
    std::vector<GlobalSystem> levels_;
    std::vector<Transfers> transfers_;
    std::vector<double> alphas_;
};

struct CycleConfig {
    int nu1 = 1;
    int nu2 = 1;
    DampingChoice damping = DampingChoice::optimal();
    /// 0 selects as many levels as the coarsest threshold allows
    int levels = 0;
    std::size_t coarsest_threshold = 8;
    double eps = 1e-8;
    int max_iters = 250;
    std::uint64_t seed = 42;
    int workers = 1;

    void validate() const
    {
        if (nu1 < 0 || nu2 < 0 || nu1 + nu2 < 1) {
            throw std::invalid_argument("CycleConfig: need nu1, nu2 >= 0 and nu1 + nu2 >= 1");
        }
        if (!(eps > 0.0 && eps < 1.0)) {
            throw std::invalid_argument("CycleConfig: eps must lie in (0,1)");
        }
        if (workers < 1) {
            throw std::invalid_argument("CycleConfig: workers must be >= 1");
        }
        if (max_iters < 1) {
            throw std::invalid_argument("CycleConfig: max_iters must be >= 1");
        }
    }
};

[[nodiscard]] inline TimeHierarchy make_hierarchy(const BasisSpec& basis, double tau_fine, std::size_t num_steps,
                                                  const CycleConfig& config)
{
    return TimeHierarchy::build(basis, tau_fine, num_steps, config.levels, config.coarsest_threshold);
}

struct PhaseTimes {
    double smoothing = 0.0;
    double transfer = 0.0;
    double coarse_solve = 0.0;
    double residual = 0.0;
    double total = 0.0;
};

struct SolveStats {
    int iterations = 0;
    /// ||r^k||_2 for k = 0..iterations
    std::vector<double> residual_norms;
    /// max_{k>=1} ||r^{k+1}|| / ||r^k||; the single ratio if only one cycle ran
    double measured_factor = 0.0;
    bool converged = false;
    std::uint64_t seed = 0;
    int workers = 1;
    int levels = 0;
    PhaseTimes times;
    std::vector<std::string> warnings;
};

struct SolveResult {
    BlockVector u;
    SolveStats stats;
};

/// Uniform [0,1) coefficients, generated sequentially from one seeded stream.
[[nodiscard]] inline BlockVector random_block_vector(std::size_t steps, std::size_t block_size, std::uint64_t seed)
{
    BlockVector u(steps, block_size);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (double& x : u.data()) {
        x = dist(rng);
    }
    return u;
}

// ---------------------------------------------------------------------------
// Cycles
// ---------------------------------------------------------------------------

namespace detail {

class ScopedTimer {
public:
    explicit ScopedTimer(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
    ~ScopedTimer()
    {
        sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    ScopedTimer(const ScopedTimer&) = delete;
    ScopedTimer& operator=(const ScopedTimer&) = delete;

private:
    double& sink_;
    std::chrono::steady_clock::time_point start_;
};

struct LevelWork {
    BlockVector u;
    BlockVector f;
    BlockVector residual;
    SmootherScratch scratch;
};

struct CycleContext {
    const TimeHierarchy& hierarchy;
    const CycleConfig& config;
    std::vector<LevelWork>& work;
    PhaseTimes& times;
};

inline std::vector<LevelWork> make_work(const TimeHierarchy& h)
{
    std::vector<LevelWork> work(h.num_levels());
    for (std::size_t i = 1; i < h.num_levels(); ++i) {
        const auto& level = h.level(i);
        work[i].u = BlockVector(level.num_steps, static_cast<std::size_t>(level.n_t()));
        work[i].f = BlockVector(level.num_steps, static_cast<std::size_t>(level.n_t()));
    }
    return work;
}

/// r = f - L u
inline void residual(const GlobalSystem& sys, const BlockVector& u, const BlockVector& f, BlockVector& r,
                     int workers)
{
    apply_global(sys, u, r, workers);
    parallel_for(workers, sys.num_steps, [&](std::size_t n) { r.map(n) = f.map(n) - r.map(n); });
}

/// ||v||_2 with a fixed summation order.
inline double norm(const BlockVector& v, int workers)
{
    std::vector<double> squares(v.num_blocks());
    parallel_for(workers, v.num_blocks(), [&](std::size_t n) { squares[n] = v.map(n).squaredNorm(); });
    return std::sqrt(pairwise_sum(squares));
}

/// One cycle on `level`; the problem on `direct_level` is solved exactly.
inline void cycle(CycleContext& ctx, std::size_t level, BlockVector& u, const BlockVector& f,
                  std::size_t direct_level)
{
    const auto& sys = ctx.hierarchy.level(level);
    const int workers = ctx.config.workers;
    if (level == direct_level) {
        ScopedTimer timer(ctx.times.coarse_solve);
        forward_solve(sys, f, u);
        return;
    }
    auto& work = ctx.work[level];
    const double omega = resolve_omega(ctx.config.damping, ctx.hierarchy.alpha(level));
    {
        ScopedTimer timer(ctx.times.smoothing);
        block_jacobi_sweep(sys, u, f, omega, ctx.config.nu1, workers, work.scratch);
    }
    auto& coarse = ctx.work[level + 1];
    {
        ScopedTimer timer(ctx.times.transfer);
        residual(sys, u, f, work.residual, workers);
        restrict_blocks(ctx.hierarchy.transfers(level), work.residual, coarse.f, workers);
        coarse.u.fill(0.0);
    }
    cycle(ctx, level + 1, coarse.u, coarse.f, direct_level);
    {
        ScopedTimer timer(ctx.times.transfer);
        prolongate_add(ctx.hierarchy.transfers(level), coarse.u, u, workers);
    }
    {
        ScopedTimer timer(ctx.times.smoothing);
        block_jacobi_sweep(sys, u, f, omega, ctx.config.nu2, workers, work.scratch);
    }
}

}  // namespace detail

/// Two-grid cycle on `level` with an exact (forward substitution) solve on level+1.
inline void two_grid_cycle(const TimeHierarchy& h, std::size_t level, BlockVector& u, const BlockVector& f,
                           const CycleConfig& config)
{
    if (level + 1 >= h.num_levels()) {
        throw std::invalid_argument("two_grid_cycle: level has no coarser neighbour");
    }
    auto work = detail::make_work(h);
    PhaseTimes times;
    detail::CycleContext ctx{h, config, work, times};
    detail::cycle(ctx, level, u, f, level + 1);
}

/// V-cycle over all levels, direct solve on the coarsest.
inline void v_cycle(const TimeHierarchy& h, BlockVector& u, const BlockVector& f, const CycleConfig& config)
{
    auto work = detail::make_work(h);
    PhaseTimes times;
    detail::CycleContext ctx{h, config, work, times};
    detail::cycle(ctx, 0, u, f, h.num_levels() - 1);
}

/// Iterates V-cycles until ||r^k|| <= eps ||r^0|| or max_iters.
///
/// An initial guess whose residual is already below eps ||f|| is accepted
/// without cycling. Non-convergence is reported through stats.converged.
inline SolveResult solve(const TimeHierarchy& h, const BlockVector& f, const BlockVector& u0,
                         const CycleConfig& config)
{
    config.validate();
    const auto& finest = h.finest();
    check_conforming(finest, f, "solve");
    check_conforming(finest, u0, "solve");

    SolveResult result{u0, {}};
    auto& stats = result.stats;
    stats.seed = config.seed;
    stats.workers = config.workers;
    stats.levels = static_cast<int>(h.num_levels());
    if (auto w = config.damping.warning()) {
        stats.warnings.push_back(*w);
    }
    const auto start = std::chrono::steady_clock::now();

    auto work = detail::make_work(h);
    detail::CycleContext ctx{h, config, work, stats.times};
    BlockVector& r = work[0].residual;
    double r_norm = 0.0;
    {
        detail::ScopedTimer timer(stats.times.residual);
        detail::residual(finest, result.u, f, r, config.workers);
        r_norm = detail::norm(r, config.workers);
    }
    stats.residual_norms.push_back(r_norm);
    const double r0 = r_norm;
    const double f_norm = detail::norm(f, config.workers);

    if (r0 == 0.0 || r0 <= config.eps * f_norm) {
        stats.converged = true;
    }
    while (!stats.converged && stats.iterations < config.max_iters) {
        detail::cycle(ctx, 0, result.u, f, h.num_levels() - 1);
        ++stats.iterations;
        {
            detail::ScopedTimer timer(stats.times.residual);
            detail::residual(finest, result.u, f, r, config.workers);
            r_norm = detail::norm(r, config.workers);
        }
        stats.residual_norms.push_back(r_norm);
        if (r_norm <= config.eps * r0) {
            stats.converged = true;
        }
    }

    const auto& norms = stats.residual_norms;
    if (norms.size() == 2) {
        stats.measured_factor = norms[0] > 0.0 ? norms[1] / norms[0] : 0.0;
    }
    for (std::size_t k = 1; k + 1 < norms.size(); ++k) {
        if (norms[k] > 0.0) {
            stats.measured_factor = std::max(stats.measured_factor, norms[k + 1] / norms[k]);
        }
    }
    stats.times.total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

/// Runs solve on f = 0 from a random start in [0,1) (seed from config) and
/// returns the statistics; config.eps is the target reduction (use e.g.
/// 1e-140 to reach the asymptotic regime).
[[nodiscard]] inline SolveStats measure_convergence(const TimeHierarchy& h, const CycleConfig& config)
{
    const auto& finest = h.finest();
    const auto nt = static_cast<std::size_t>(finest.n_t());
    const BlockVector zero(finest.num_steps, nt);
    const BlockVector start = random_block_vector(finest.num_steps, nt, config.seed);
    return solve(h, zero, start, config).stats;
}

[[nodiscard]] inline double measure_convergence_factor(const TimeHierarchy& h, const CycleConfig& config)
{
    return measure_convergence(h, config).measured_factor;
}

}  // namespace dgtmg
