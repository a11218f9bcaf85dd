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

#include "aqec/boolfn.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aqec {

namespace {

// Bits of a word whose position has bit `var` clear (var < 6).
constexpr uint64_t kLowHalfMasks[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

}  // namespace

void BooleanFunctionTable::check_width(int width) {
    if (width < 1 || width > kMaxTableWidth) {
        throw std::invalid_argument("function width must be in [1, " + std::to_string(kMaxTableWidth) +
                                    "], got " + std::to_string(width));
    }
}

BooleanFunctionTable::BooleanFunctionTable(BitTable positive) : signs_(std::move(positive)) {
    check_width(signs_.width());
}

BooleanFunctionTable BooleanFunctionTable::constant(int width, bool positive) {
    check_width(width);
    BitTable t(width);
    if (positive) {
        for (auto &w : t.words()) {
            w = t.word_mask();
        }
    }
    return BooleanFunctionTable(std::move(t));
}

double BooleanFunctionTable::total() const {
    auto pos = static_cast<double>(positive_count());
    return pos - 0.5 * static_cast<double>(size());
}

int default_tribe_width(int num_vars) {
    BooleanFunctionTable::check_width(num_vars);
    if (num_vars == 1) {
        return 1;
    }
    double n = num_vars;
    double w = std::round(std::log2(n / (std::numbers::ln2 * std::log2(n))));
    return std::clamp(static_cast<int>(w), 1, num_vars);
}

BooleanFunctionTable tribes(int num_vars, std::optional<int> tribe_width) {
    BooleanFunctionTable::check_width(num_vars);
    int w = tribe_width.value_or(default_tribe_width(num_vars));
    if (w < 1 || w > num_vars) {
        throw std::invalid_argument("tribe width must be in [1, " + std::to_string(num_vars) + "], got " +
                                    std::to_string(w));
    }
    int count = num_vars / w;
    uint64_t tribe = low_mask(w);
    return BooleanFunctionTable::from_predicate(num_vars, [&](uint64_t x) {
        for (int k = 0; k < count; k++) {
            if (((x >> (k * w)) & tribe) == tribe) {
                return true;
            }
        }
        return false;
    });
}

BalanceResult balance(const BooleanFunctionTable &f) {
    uint64_t half = f.size() / 2;
    uint64_t pos = f.positive_count();
    if (pos == half) {
        return {f, 0};
    }
    bool majority = pos > half;
    uint64_t excess = majority ? pos - half : half - pos;
    BitTable t = f.signs();
    uint64_t remaining = excess;
    for (uint64_t x = 0; remaining > 0; x++) {
        if (t.get(x) == majority) {
            t.flip(x);
            remaining--;
        }
    }
    return {BooleanFunctionTable(std::move(t)), excess};
}

uint64_t pivotal_count(const BooleanFunctionTable &f, int var) {
    if (var < 0 || var >= f.width()) {
        throw std::out_of_range("variable index out of range");
    }
    auto words = f.signs().words();
    uint64_t pairs = 0;
    if (var < 6) {
        int shift = 1 << var;
        uint64_t mask = kLowHalfMasks[var] & f.signs().word_mask();
        for (uint64_t w : words) {
            pairs += std::popcount((w ^ (w >> shift)) & mask);
        }
    } else {
        size_t stride = size_t{1} << (var - 6);
        for (size_t k = 0; k < words.size(); k++) {
            if (k & stride) {
                continue;
            }
            pairs += std::popcount(words[k] ^ words[k + stride]);
        }
    }
    return 2 * pairs;
}

InfluenceProfile influence_profile(const BooleanFunctionTable &f) {
    InfluenceProfile out;
    auto scale = static_cast<double>(f.size());
    for (int j = 0; j < f.width(); j++) {
        uint64_t c = pivotal_count(f, j);
        out.pivotal_counts.push_back(c);
        out.per_variable.push_back(static_cast<double>(c) / scale);
    }
    out.max_influence = *std::max_element(out.per_variable.begin(), out.per_variable.end());
    return out;
}

double eval(const BooleanFunctionTable &f, const BitString &x) {
    if (x.width != f.width()) {
        throw std::invalid_argument("eval: input width " + std::to_string(x.width) + " != function width " +
                                    std::to_string(f.width()));
    }
    return f.value(x.value);
}

}  // namespace aqec
