// Copyright 2026 The qcnnpad authors.
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

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qcnn::detail {

inline int resolve_jobs(int jobs) {
    if (jobs > 0)
        return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(worker, index) for every index in [0, n). Work is split into
/// contiguous chunks per worker, so each worker sees an increasing index
/// sequence; results indexed by `index` are deterministic regardless of the
/// worker count.
inline void parallel_for(int n, int jobs,
                         const std::function<void(int, int)> &fn) {
    jobs = std::min(resolve_jobs(jobs), n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i)
            fn(0, i);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    const int chunk = (n + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        workers.emplace_back([&, w, begin, end]() {
            try {
                for (int i = begin; i < end; ++i)
                    fn(w, i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : workers)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace qcnn::detail
