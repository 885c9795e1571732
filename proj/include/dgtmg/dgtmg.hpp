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

#include "dgtmg/analysis.hpp"
#include "dgtmg/basis.hpp"
#include "dgtmg/bench.hpp"
#include "dgtmg/block_vector.hpp"
#include "dgtmg/common.hpp"
#include "dgtmg/dg_core.hpp"
#include "dgtmg/fourier.hpp"
#include "dgtmg/frequencies.hpp"
#include "dgtmg/mg_solver.hpp"
#include "dgtmg/quadrature.hpp"
#include "dgtmg/stability.hpp"
#include "dgtmg/transfer.hpp"
