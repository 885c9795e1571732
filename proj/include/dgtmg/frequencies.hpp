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
#include <cstddef>
#include <vector>

namespace dgtmg {

/// Fourier frequencies theta_k = 2 k pi / N_L, k = 1 - N_L/2 .. N_L/2, split
/// into low (-pi/2, pi/2] and high frequencies.
///
/// Frequencies are stored by their integer index k to keep set membership
/// exact; theta(k) converts to radians.
class FrequencySet {
public:
    explicit FrequencySet(std::size_t num_steps) : num_steps_(num_steps)
    {
        if (num_steps < 4 || !is_power_of_two(num_steps)) {
            throw std::invalid_argument("FrequencySet: N_L must be a power of two >= 4");
        }
        const long half = static_cast<long>(num_steps / 2);
        const long quarter = half / 2;
        for (long k = 1 - half; k <= half; ++k) {
            all_.push_back(k);
            if (k > -quarter && k <= quarter) {
                low_.push_back(k);
            } else {
                high_.push_back(k);
            }
        }
    }

    [[nodiscard]] std::size_t num_steps() const noexcept { return num_steps_; }
    [[nodiscard]] const std::vector<long>& all() const noexcept { return all_; }
    [[nodiscard]] const std::vector<long>& low() const noexcept { return low_; }
    [[nodiscard]] const std::vector<long>& high() const noexcept { return high_; }

    [[nodiscard]] double theta(long k) const noexcept
    {
        return 2.0 * pi * static_cast<double>(k) / static_cast<double>(num_steps_);
    }

    [[nodiscard]] bool contains(long k) const noexcept
    {
        const long half = static_cast<long>(num_steps_ / 2);
        return k > -half && k <= half;
    }
    [[nodiscard]] bool is_low(long k) const noexcept
    {
        const long quarter = static_cast<long>(num_steps_ / 4);
        return k > -quarter && k <= quarter;
    }

    /// Position of k within all() (all() is sorted ascending).
    [[nodiscard]] std::size_t position(long k) const noexcept
    {
        return static_cast<std::size_t>(k - all_.front());
    }

    /// Index of a grid frequency given in radians; throws if theta is not on the grid.
    [[nodiscard]] long index_of(double theta) const
    {
        const double scaled = theta * static_cast<double>(num_steps_) / (2.0 * pi);
        const long k = std::lround(scaled);
        if (std::abs(scaled - static_cast<double>(k)) > 1e-9 || !contains(k)) {
            throw std::invalid_argument("FrequencySet: theta is not a grid frequency");
        }
        return k;
    }

    /// Aliasing partner of k: k - sign(k) N_L/2 with sign(0) := -1.
    /// An involution that swaps the low and high sets.
    [[nodiscard]] long partner(long k) const noexcept
    {
        const long half = static_cast<long>(num_steps_ / 2);
        return k > 0 ? k - half : k + half;
    }

private:
    std::size_t num_steps_;
    std::vector<long> all_;
    std::vector<long> low_;
    std::vector<long> high_;
};

[[nodiscard]] inline FrequencySet frequencies(std::size_t num_steps)
{
    return FrequencySet(num_steps);
}

/// gamma(theta) = theta - sign(theta) pi, with sign(0) := -1 so gamma(0) = pi.
/// Defined on low frequencies only.
[[nodiscard]] inline double gamma(const FrequencySet& set, double theta)
{
    const long k = set.index_of(theta);
    if (!set.is_low(k)) {
        throw std::invalid_argument("gamma: theta is not a low frequency");
    }
    return set.theta(set.partner(k));
}

/// Inverse of gamma: maps a high frequency back to its low partner.
[[nodiscard]] inline double gamma_inverse(const FrequencySet& set, double theta)
{
    const long k = set.index_of(theta);
    if (set.is_low(k)) {
        throw std::invalid_argument("gamma_inverse: theta is not a high frequency");
    }
    return set.theta(set.partner(k));
}

/// gamma for an arbitrary theta in (-pi/2, pi/2], without grid membership.
[[nodiscard]] inline double alias_frequency(double theta) noexcept
{
    return theta > 0.0 ? theta - pi : theta + pi;
}

}  // namespace dgtmg
