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

#include "aqec/bits.h"

#include <stdexcept>

namespace aqec {

BitString::BitString(uint64_t value, int width) : value(value), width(width) {
    if (width < 1 || width > kMaxVariables) {
        throw std::invalid_argument("BitString width must be in [1, " + std::to_string(kMaxVariables) + "]");
    }
    if (value > low_mask(width)) {
        throw std::invalid_argument("BitString value does not fit in width " + std::to_string(width));
    }
}

BitString BitString::parse(std::string_view text) {
    if (text.empty() || text.size() > static_cast<size_t>(kMaxVariables)) {
        throw std::invalid_argument("BitString text has invalid length");
    }
    uint64_t v = 0;
    for (size_t k = 0; k < text.size(); k++) {
        if (text[k] == '1') {
            v |= uint64_t{1} << k;
        } else if (text[k] != '0') {
            throw std::invalid_argument("BitString text must contain only '0' and '1'");
        }
    }
    return BitString(v, static_cast<int>(text.size()));
}

BitString BitString::flipped(int pos) const {
    if (pos < 0 || pos >= width) {
        throw std::out_of_range("BitString::flipped position out of range");
    }
    return BitString(value ^ (uint64_t{1} << pos), width);
}

std::string BitString::str() const {
    std::string out(width, '0');
    for (int k = 0; k < width; k++) {
        if ((*this)[k]) {
            out[k] = '1';
        }
    }
    return out;
}

BitTable::BitTable(int width) : width_(width) {
    if (width < 0 || width > 30) {
        throw std::invalid_argument("BitTable width must be in [0, 30]");
    }
    words_.assign(width >= 6 ? (size_t{1} << (width - 6)) : 1, 0);
}

uint64_t BitTable::popcount() const {
    uint64_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

}  // namespace aqec
