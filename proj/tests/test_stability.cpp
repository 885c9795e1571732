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

#include "catch_amalgamated.hpp"

#include "oracles.hpp"

#include "dgtmg/dense.hpp"
#include "dgtmg/stability.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace dgtmg;

namespace {

const double alpha_floor = (5.0 - 3.0 * std::sqrt(3.0)) / 2.0;

ComplexMatrix local_iteration(const LocalOperators& ops, double theta, double omega)
{
    const int nt = ops.n_t();
    return (1.0 - omega) * ComplexMatrix::Identity(nt, nt)
           + std::polar(omega, -theta) * ops.km_inverse_n.cast<Complex>();
}

/// Largest distance from an expected eigenvalue to its closest unused computed one.
double multiset_distance(std::vector<Complex> expected, const ComplexVector& computed)
{
    std::vector<bool> used(static_cast<std::size_t>(computed.size()), false);
    double worst = 0.0;
    for (Complex e : expected) {
        double best = INFINITY;
        std::size_t at = 0;
        for (Eigen::Index i = 0; i < computed.size(); ++i) {
            const double d = std::abs(computed(i) - e);
            if (!used[static_cast<std::size_t>(i)] && d < best) {
                best = d;
                at = static_cast<std::size_t>(i);
            }
        }
        used[at] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("alpha values")
{
    CHECK(std::abs(alpha(BasisSpec{0}, 1.0) - 0.5) < 1e-15);
    for (int p = 0; p <= 5; ++p) {
        CHECK(std::abs(alpha(BasisSpec{p}, 0.0) - 1.0) < 1e-13);
    }
    CHECK(std::abs(alpha(BasisSpec{1}, 3.0)) < 1e-14);
    CHECK_THROWS_AS(alpha(BasisSpec{0}, -1.0), std::invalid_argument);
}

TEST_CASE("alpha stays in its bounds and reaches the lower one")
{
    double lowest = INFINITY;
    for (int p = 0; p <= 5; ++p) {
        for (double tau : oracle::decades(-6.0, 6.0, 241)) {
            const double a = alpha(BasisSpec{p}, tau);
            CHECK(a >= alpha_floor - 1e-9);
            CHECK(a <= 1.0);
            lowest = std::min(lowest, a);
        }
    }
    // the minimum of (1 - t/3)/(1 + 2t/3 + t^2/6) sits at t = 3 + 3 sqrt 3
    CHECK(std::abs(alpha(BasisSpec{1}, 3.0 + 3.0 * std::sqrt(3.0)) - alpha_floor) < 1e-12);
    CHECK(lowest < alpha_floor + 1e-3);
}

TEST_CASE("optimal damping")
{
    CHECK(optimal_omega(1.0) == 0.5);
    CHECK(std::abs(optimal_omega(0.5) - 0.8) < 1e-15);
    CHECK(optimal_omega(-0.05) == 1.0);
    CHECK(optimal_omega(0.0) == 1.0);
    CHECK(resolve_omega(DampingChoice::optimal(), 0.5) == optimal_omega(0.5));
    CHECK(resolve_omega(DampingChoice::fixed(0.7), 0.5) == 0.7);
}

TEST_CASE("damping choices outside (0,2) are rejected")
{
    CHECK_THROWS_AS(DampingChoice::fixed(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DampingChoice::fixed(2.0), std::invalid_argument);
    CHECK_THROWS_AS(DampingChoice::fixed(-0.1), std::invalid_argument);
    CHECK_FALSE(DampingChoice::fixed(1.0).warning());
    CHECK(DampingChoice::fixed(1.5).warning());
    CHECK_FALSE(DampingChoice::optimal().warning());
}

TEST_CASE("smoothing symbol modulus")
{
    for (double a : {-0.09, 0.0, 0.3, 1.0}) {
        CHECK(std::abs(smoothing_symbol_modulus(1.0, a, pi) - std::abs(a)) < 1e-15);
    }
    CHECK(std::abs(smoothing_symbol_modulus(0.5, 1.0, pi / 2) - std::sqrt(0.5)) < 1e-15);
    for (double theta : {-2.0, 0.0, 1.0, pi}) {
        CHECK(smoothing_symbol_modulus(1.0, 0.0, theta) == 0.0);
    }
}

TEST_CASE("smoothing factor examples")
{
    const auto r = smoothing_factor(BasisSpec{0}, 1.0, optimal_omega(0.5), 1024);
    CHECK(std::abs(r.mu_s - std::sqrt(0.2)) < 1e-12);
    CHECK(std::abs(std::abs(r.theta_max) - pi / 2) < 1e-12);
    CHECK(r.mu_s <= r.rho_all);

    for (double tau : {10.0, 100.0, 1e4}) {
        const double a = alpha(BasisSpec{1}, tau);
        REQUIRE(a < 0.0);
        const auto s = smoothing_factor(BasisSpec{1}, tau, 1.0, 1024);
        CHECK(std::abs(s.mu_s - std::abs(a)) < 1e-14);
    }
    CHECK_THROWS_AS(smoothing_factor(BasisSpec{0}, 1.0, 0.5, 12), std::invalid_argument);
    CHECK_THROWS_AS(smoothing_factor(BasisSpec{0}, 1.0, 0.5, 2), std::invalid_argument);
}

TEST_CASE("optimal damping smooths by at least 1/sqrt(2)")
{
    for (int p = 0; p <= 5; ++p) {
        for (double tau : oracle::decades(-6.0, 6.0, 49)) {
            const double a = alpha(BasisSpec{p}, tau);
            const auto r = smoothing_factor(BasisSpec{p}, tau, optimal_omega(a), 1024);
            INFO("p_t = " << p << ", tau = " << tau);
            CHECK(r.mu_s >= 0.0);
            CHECK(r.mu_s <= r.rho_all);
            CHECK(r.mu_s <= 1.0 / std::sqrt(2.0) + 1e-12);
            // bound on the full frequency range
            CHECK(r.rho_all <= std::abs(a) * (1.0 + std::abs(a)) / (1.0 + a * a) + 1e-12);
            // the uniform choice omega = 1/2 satisfies the same bound here
            CHECK(smoothing_factor(BasisSpec{p}, tau, 0.5, 1024).mu_s <= 1.0 / std::sqrt(2.0) + 1e-12);
        }
    }
}

TEST_CASE("local iteration eigenvalues")
{
    const FrequencySet set(32);
    for (int p = 0; p <= 5; ++p) {
        for (double tau : oracle::decades(-4.0, 4.0, 17)) {
            const auto ops = assemble_local(BasisSpec{p}, tau);
            const double a = alpha(BasisSpec{p}, tau);
            for (double omega : {0.25, 0.5, optimal_omega(a), 1.0}) {
                for (long k : set.all()) {
                    const double theta = set.theta(k);
                    const ComplexMatrix s = local_iteration(ops, theta, omega);
                    Eigen::ComplexEigenSolver<ComplexMatrix> eig(s, false);
                    INFO("p_t = " << p << ", tau = " << tau << ", omega = " << omega << ", theta = " << theta);
                    CHECK(eig.eigenvalues().cwiseAbs().maxCoeff() < 1.0);
                    if (std::abs(a) > 1e-4) {
                        std::vector<Complex> expected(static_cast<std::size_t>(p), Complex(1.0 - omega));
                        expected.push_back(1.0 - omega + std::polar(omega * a, -theta));
                        CHECK(multiset_distance(expected, eig.eigenvalues()) < 1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("global smoother has spectral radius |1 - omega|")
{
    for (int p = 0; p <= 2; ++p) {
        for (std::size_t steps : {2u, 4u, 8u}) {
            for (double omega : {0.5, 0.8, 1.0}) {
                const auto ops = assemble_local(BasisSpec{p}, 0.7);
                const Matrix s = dense::smoother(ops, steps, omega, false);
                const auto n = s.rows();
                // S - (1-omega) I is nilpotent, so every eigenvalue equals 1 - omega
                const Matrix shifted = s - (1.0 - omega) * Matrix::Identity(n, n);
                CHECK(dense::power(shifted, static_cast<int>(steps)).norm() < 1e-12);
                // eigensolvers resolve a Jordan block of size m only to about eps^{1/m}
                Eigen::ComplexEigenSolver<ComplexMatrix> eig(s.cast<Complex>(), false);
                const double slack = 10.0 * std::pow(2.2e-16, 1.0 / static_cast<double>(steps));
                CHECK(std::abs(eig.eigenvalues().cwiseAbs().maxCoeff() - std::abs(1.0 - omega)) < slack);
            }
        }
    }
}

TEST_CASE("two undamped sweeps are exact where alpha vanishes")
{
    const auto ops = assemble_local(BasisSpec{1}, 3.0);
    for (std::size_t steps : {4u, 16u}) {
        const Matrix s = dense::smoother(ops, steps, 1.0, false);
        CHECK((s * s).cwiseAbs().maxCoeff() < 1e-12);
        const Matrix sp = dense::smoother(ops, steps, 1.0, true);
        CHECK((sp * sp).cwiseAbs().maxCoeff() < 1e-12);
    }
}
