// Copyright 2026 The aqec-lab Authors
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

#include "aqec/parallel.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace aqec {

namespace {

std::atomic<unsigned> thread_cap{0};
thread_local bool inside_worker = false;

}  // namespace

void set_thread_limit(unsigned threads) {
    thread_cap.store(threads);
}

unsigned thread_limit() {
    unsigned cap = thread_cap.load();
    if (cap == 0) {
        cap = std::max(1u, std::thread::hardware_concurrency());
    }
    return cap;
}

bool in_parallel_region() {
    return inside_worker;
}

void parallel_for(size_t count, const std::function<void(size_t)> &fn) {
    size_t workers = std::min<size_t>(thread_limit(), count);
    if (workers <= 1 || inside_worker) {
        for (size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_lock;
    auto run_range = [&](size_t begin, size_t end) {
        inside_worker = true;
        try {
            for (size_t i = begin; i < end; i++) {
                fn(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> guard(failure_lock);
            if (!failure) {
                failure = std::current_exception();
            }
        }
        inside_worker = false;
    };

    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    size_t chunk = (count + workers - 1) / workers;
    for (size_t w = 1; w < workers; w++) {
        size_t begin = std::min(count, w * chunk);
        size_t end = std::min(count, begin + chunk);
        threads.emplace_back(run_range, begin, end);
    }
    run_range(0, std::min(count, chunk));
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace aqec
