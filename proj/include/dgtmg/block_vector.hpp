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

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace dgtmg {

/// A sequence of equally sized blocks, stored contiguously block after block.
///
/// Block n holds the N_t DG coefficients (or residual moments) of time step n.
/// Block indices are zero-based here; step n of the time grid is block n-1.
template <class T>
class BasicBlockVector {
public:
    using value_type = T;

    BasicBlockVector() = default;
    BasicBlockVector(std::size_t num_blocks, std::size_t block_size, T fill = T{})
        : num_blocks_(num_blocks), block_size_(block_size), data_(num_blocks * block_size, fill)
    {
    }

    [[nodiscard]] std::size_t num_blocks() const noexcept { return num_blocks_; }
    [[nodiscard]] std::size_t block_size() const noexcept { return block_size_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

    [[nodiscard]] std::span<T> block(std::size_t n) noexcept
    {
        return {data_.data() + n * block_size_, block_size_};
    }
    [[nodiscard]] std::span<const T> block(std::size_t n) const noexcept
    {
        return {data_.data() + n * block_size_, block_size_};
    }

    /// Eigen view of block n.
    [[nodiscard]] auto map(std::size_t n) noexcept
    {
        return Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>(data_.data() + n * block_size_,
                                                               static_cast<Eigen::Index>(block_size_));
    }
    [[nodiscard]] auto map(std::size_t n) const noexcept
    {
        return Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>(
            data_.data() + n * block_size_, static_cast<Eigen::Index>(block_size_));
    }

    /// View of the whole vector as one long column.
    [[nodiscard]] auto flat() noexcept
    {
        return Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>(data_.data(),
                                                               static_cast<Eigen::Index>(data_.size()));
    }
    [[nodiscard]] auto flat() const noexcept
    {
        return Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>(
            data_.data(), static_cast<Eigen::Index>(data_.size()));
    }

    [[nodiscard]] T& operator()(std::size_t n, std::size_t l) noexcept { return data_[n * block_size_ + l]; }
    [[nodiscard]] const T& operator()(std::size_t n, std::size_t l) const noexcept
    {
        return data_[n * block_size_ + l];
    }

    [[nodiscard]] std::vector<T>& data() noexcept { return data_; }
    [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

    void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

    [[nodiscard]] bool same_shape(const BasicBlockVector& other) const noexcept
    {
        return num_blocks_ == other.num_blocks_ && block_size_ == other.block_size_;
    }

    friend bool operator==(const BasicBlockVector&, const BasicBlockVector&) = default;

private:
    std::size_t num_blocks_ = 0;
    std::size_t block_size_ = 0;
    std::vector<T> data_;
};

using BlockVector = BasicBlockVector<double>;
using ComplexBlockVector = BasicBlockVector<Complex>;

}  // namespace dgtmg
