// Copyright 2026 The XpookyNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XPOOKY_SRC_PARALLEL_H
#define XPOOKY_SRC_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace xpooky::detail {

/// Runs fn(job) for job in [0, total) on up to `threads` workers. If any job
/// throws, the exception of the lowest failing job is rethrown so errors do
/// not depend on scheduling.
template <typename Fn>
void parallel_for(size_t total, size_t threads, Fn &&fn) {
    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    size_t error_index = total;
    std::exception_ptr error;

    auto worker = [&]() {
        while (true) {
            size_t job = next.fetch_add(1);
            if (job >= total) {
                return;
            }
            try {
                fn(job);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (job < error_index) {
                    error_index = job;
                    error = std::current_exception();
                }
            }
        }
    };

    threads = std::max<size_t>(1, std::min(threads, total));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace xpooky::detail

#endif
