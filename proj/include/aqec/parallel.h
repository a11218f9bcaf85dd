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

#ifndef AQEC_PARALLEL_H
#define AQEC_PARALLEL_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace aqec {

/// Caps the worker threads used by parallel_for. 0 restores the default
/// (hardware concurrency).
void set_thread_limit(unsigned threads);
unsigned thread_limit();

/// True inside a parallel_for worker; nested parallel calls run inline.
bool in_parallel_region();

/// Calls fn(i) for every i in [0, count). Work is split into contiguous
/// ranges, one per thread; callers write results by index so the outcome
/// does not depend on the thread count.
void parallel_for(size_t count, const std::function<void(size_t)> &fn);

namespace detail {

constexpr uint64_t kSumLeaf = 256;
constexpr int kSumSplitDepth = 6;
constexpr uint64_t kParallelSumThreshold = uint64_t{1} << 16;

template <typename T, typename Term>
T tree_sum_range(uint64_t begin, uint64_t end, Term &term) {
    if (end - begin <= kSumLeaf) {
        T acc{};
        for (uint64_t i = begin; i < end; i++) {
            acc += term(i);
        }
        return acc;
    }
    uint64_t mid = begin + (end - begin) / 2;
    T left = tree_sum_range<T>(begin, mid, term);
    return left + tree_sum_range<T>(mid, end, term);
}

inline void collect_leaves(uint64_t begin, uint64_t end, int depth, std::vector<std::pair<uint64_t, uint64_t>> &out) {
    if (depth == kSumSplitDepth || end - begin <= kSumLeaf) {
        out.emplace_back(begin, end);
        return;
    }
    uint64_t mid = begin + (end - begin) / 2;
    collect_leaves(begin, mid, depth + 1, out);
    collect_leaves(mid, end, depth + 1, out);
}

template <typename T>
T combine_leaves(uint64_t begin, uint64_t end, int depth, const std::vector<T> &partial, size_t &next) {
    if (depth == kSumSplitDepth || end - begin <= kSumLeaf) {
        return partial[next++];
    }
    uint64_t mid = begin + (end - begin) / 2;
    T left = combine_leaves(begin, mid, depth + 1, partial, next);
    return left + combine_leaves(mid, end, depth + 1, partial, next);
}

}  // namespace detail

/// Pairwise (tree) summation of term(0) + ... + term(count - 1).
///
/// The summation tree depends only on `count`, so the result is bit-identical
/// for every thread count.
template <typename T, typename Term>
T tree_sum(uint64_t count, Term &&term) {
    if (count < detail::kParallelSumThreshold || thread_limit() <= 1 || in_parallel_region()) {
        return detail::tree_sum_range<T>(0, count, term);
    }
    std::vector<std::pair<uint64_t, uint64_t>> leaves;
    detail::collect_leaves(0, count, 0, leaves);
    std::vector<T> partial(leaves.size());
    parallel_for(leaves.size(), [&](size_t k) {
        partial[k] = detail::tree_sum_range<T>(leaves[k].first, leaves[k].second, term);
    });
    size_t next = 0;
    return detail::combine_leaves<T>(0, count, 0, partial, next);
}

}  // namespace aqec

#endif
