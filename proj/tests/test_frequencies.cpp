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

#include "dgtmg/frequencies.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace dgtmg;

TEST_CASE("frequency sets for four steps")
{
    const auto f = frequencies(4);
    REQUIRE(f.all().size() == 4);
    const std::vector<double> all{-pi / 2, 0.0, pi / 2, pi};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(f.theta(f.all()[i]) - all[i]) < 1e-15);
    }
    REQUIRE(f.low().size() == 2);
    CHECK(f.theta(f.low()[0]) == 0.0);
    CHECK(std::abs(f.theta(f.low()[1]) - pi / 2) < 1e-15);
    REQUIRE(f.high().size() == 2);
    CHECK(std::abs(f.theta(f.high()[0]) + pi / 2) < 1e-15);
    CHECK(std::abs(f.theta(f.high()[1]) - pi) < 1e-15);
}

TEST_CASE("frequency set partition")
{
    for (std::size_t n : {4u, 8u, 16u, 1024u}) {
        const auto f = frequencies(n);
        CHECK(f.all().size() == n);
        CHECK(f.low().size() == n / 2);
        CHECK(f.high().size() == n / 2);
        std::set<long> seen(f.low().begin(), f.low().end());
        seen.insert(f.high().begin(), f.high().end());
        CHECK(seen.size() == n);
        for (long k : f.low()) {
            const double t = f.theta(k);
            CHECK(t > -pi / 2);
            CHECK(t <= pi / 2 + 1e-15);
        }
        for (long k : f.all()) {
            CHECK(f.theta(k) > -pi);
            CHECK(f.theta(k) <= pi + 1e-15);
            CHECK(f.index_of(f.theta(k)) == k);
        }
        CHECK_FALSE(f.is_low(f.index_of(pi)));
    }
}

TEST_CASE("invalid step counts are rejected")
{
    for (std::size_t n : {0u, 1u, 2u, 3u, 6u, 12u, 1000u}) {
        CHECK_THROWS_AS(frequencies(n), std::invalid_argument);
    }
    CHECK_THROWS_AS(frequencies(8).index_of(0.1), std::invalid_argument);
}

TEST_CASE("gamma examples")
{
    const auto f4 = frequencies(4);
    CHECK(std::abs(gamma(f4, pi / 2) + pi / 2) < 1e-15);
    CHECK(std::abs(gamma(f4, 0.0) - pi) < 1e-15);
    const auto f8 = frequencies(8);
    CHECK(std::abs(gamma(f8, -pi / 4) - 3 * pi / 4) < 1e-15);
    CHECK_THROWS_AS(gamma(f8, pi), std::invalid_argument);
    CHECK_THROWS_AS(gamma(f8, 3 * pi / 4), std::invalid_argument);
    CHECK_THROWS_AS(gamma_inverse(f8, 0.0), std::invalid_argument);
}

TEST_CASE("gamma is a bijection from low onto high")
{
    for (std::size_t n : {4u, 8u, 64u, 1024u}) {
        const auto f = frequencies(n);
        std::set<long> image;
        for (long k : f.low()) {
            const double t = f.theta(k);
            const double g = gamma(f, t);
            const long kg = f.index_of(g);
            CHECK_FALSE(f.is_low(kg));
            image.insert(kg);
            CHECK(std::abs(gamma_inverse(f, g) - t) < 1e-13);
            CHECK(f.partner(f.partner(k)) == k);
            CHECK(std::abs(alias_frequency(t) - g) < 1e-13);
        }
        CHECK(image.size() == f.high().size());
    }
}

TEST_CASE("frequency doubling maps low frequencies onto the coarse set")
{
    for (std::size_t n : {8u, 32u, 256u}) {
        const auto fine = frequencies(n);
        const auto coarse = frequencies(n / 2);
        std::set<long> image;
        for (long k : fine.low()) {
            image.insert(coarse.index_of(2.0 * fine.theta(k)));
        }
        CHECK(image.size() == coarse.all().size());
    }
}
