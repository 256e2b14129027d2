// Copyright 2026 The Quasar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <optional>

#include "quasar/core.hpp"
#include "quasar/parallel.hpp"

namespace quasar::linalg {

/// Batch of same-shaped matrices.
struct BatchedMatrices {
    std::vector<cmat> items;

    std::size_t size() const { return items.size(); }

    void push_back(cmat m) {
        if (!items.empty())
            require(m.rows() == items.front().rows() && m.cols() == items.front().cols(),
                    "batched: all elements must share one shape");
        items.push_back(std::move(m));
    }
};

/// Element-wise kernel evaluation over a batch, optionally fanned out over
/// worker threads. Results are identical to per-element calls; a failing
/// element reports its batch index.
inline std::vector<cdouble> batched(const std::function<cdouble(const cmat &)> &kernel,
                                    const BatchedMatrices &ms, unsigned nthreads = 1) {
    std::vector<cdouble> out(ms.size());
    std::vector<std::optional<std::string>> errors(ms.size());
    parallel_for(
        ms.size(),
        [&](std::size_t i) {
            try {
                out[i] = kernel(ms.items[i]);
            } catch (const std::exception &e) {
                errors[i] = e.what();
            }
        },
        nthreads);
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (errors[i])
            throw invalid_input("batched: element " + std::to_string(i) + ": " + *errors[i]);
    return out;
}

} // namespace quasar::linalg
