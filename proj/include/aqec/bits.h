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

#ifndef AQEC_BITS_H
#define AQEC_BITS_H

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aqec {

/// Largest width for which a dense 2^width table is ever allocated.
constexpr int kMaxTableWidth = 26;

/// Hard limit on the number of variables anything in this library indexes.
constexpr int kMaxVariables = 64;

/// Removes bit `pos` from `x`, shifting higher bits down by one.
///
/// With `pos` the target qubit this maps x to x-hat: the string of the
/// remaining n-1 variables in their original order.
constexpr uint64_t remove_bit(uint64_t x, int pos) {
    uint64_t low = x & ((uint64_t{1} << pos) - 1);
    uint64_t high = ((x >> pos) >> 1) << pos;
    return low | high;
}

/// Inverse of remove_bit: inserts `bit` at position `pos`.
constexpr uint64_t insert_bit(uint64_t y, int pos, bool bit) {
    uint64_t low = y & ((uint64_t{1} << pos) - 1);
    uint64_t high = ((y >> pos) << pos) << 1;
    return low | high | (uint64_t{bit} << pos);
}

constexpr uint64_t low_mask(int width) {
    return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
}

/// A string in {0,1}^width. Bit p of `value` holds variable x_{p+1}, so the
/// text form "1001" has value 0b1001 read right-to-left (x1 = '1' first).
struct BitString {
    uint64_t value = 0;
    int width = 1;

    BitString() = default;
    BitString(uint64_t value, int width);

    /// Parses "x1 x2 ... xw" written as characters '0'/'1', x1 first.
    static BitString parse(std::string_view text);

    bool operator[](int pos) const {
        return (value >> pos) & 1;
    }
    BitString flipped(int pos) const;
    std::string str() const;

    bool operator==(const BitString &other) const = default;
};

/// Packed table of 2^width bits. Unused high bits of the last word stay zero.
class BitTable {
   public:
    BitTable() = default;
    explicit BitTable(int width);

    int width() const {
        return width_;
    }
    uint64_t size() const {
        return uint64_t{1} << width_;
    }
    bool get(uint64_t index) const {
        return (words_[index >> 6] >> (index & 63)) & 1;
    }
    void set(uint64_t index, bool bit) {
        uint64_t m = uint64_t{1} << (index & 63);
        if (bit) {
            words_[index >> 6] |= m;
        } else {
            words_[index >> 6] &= ~m;
        }
    }
    void flip(uint64_t index) {
        words_[index >> 6] ^= uint64_t{1} << (index & 63);
    }
    uint64_t popcount() const;

    std::span<const uint64_t> words() const {
        return words_;
    }
    std::span<uint64_t> words() {
        return words_;
    }
    /// Mask of meaningful bits inside each word (all ones once width >= 6).
    uint64_t word_mask() const {
        return width_ >= 6 ? ~uint64_t{0} : low_mask(1 << width_);
    }

    bool operator==(const BitTable &other) const = default;

   private:
    int width_ = 0;
    std::vector<uint64_t> words_{0};
};

}  // namespace aqec

#endif
