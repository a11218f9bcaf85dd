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

#ifndef AQEC_BOOLFN_H
#define AQEC_BOOLFN_H

#include <cstdint>
#include <optional>
#include <vector>

#include "aqec/bits.h"

namespace aqec {

/// Truth table of a function {0,1}^width -> {+1/2, -1/2}.
///
/// Values are stored as sign bits (set = +1/2) and materialized on read.
/// Balancedness is a property to check, not an invariant: raw Tribes
/// output is generally unbalanced.
class BooleanFunctionTable {
   public:
    /// `positive` must have the same width; bit x set means f(x) = +1/2.
    explicit BooleanFunctionTable(BitTable positive);

    static BooleanFunctionTable constant(int width, bool positive);

    /// Builds f(x) = +1/2 where pred(x) holds, -1/2 elsewhere.
    template <typename Pred>
    static BooleanFunctionTable from_predicate(int width, Pred &&pred) {
        check_width(width);
        BitTable t(width);
        for (uint64_t x = 0; x < t.size(); x++) {
            if (pred(x)) {
                t.set(x, true);
            }
        }
        return BooleanFunctionTable(std::move(t));
    }

    int width() const {
        return signs_.width();
    }
    uint64_t size() const {
        return signs_.size();
    }
    bool is_positive(uint64_t x) const {
        return signs_.get(x);
    }
    /// f(x) as +0.5 or -0.5; `x` is not range checked.
    double value(uint64_t x) const {
        return signs_.get(x) ? 0.5 : -0.5;
    }
    uint64_t positive_count() const {
        return signs_.popcount();
    }
    bool is_balanced() const {
        return 2 * positive_count() == size();
    }
    /// Sum of f over the whole cube, (#positive - #negative) / 2.
    double total() const;

    const BitTable &signs() const {
        return signs_;
    }

    bool operator==(const BooleanFunctionTable &other) const = default;

    static void check_width(int width);

   private:
    BitTable signs_;
};

struct InfluenceProfile {
    /// I_j = #{x : f(x) != f(x ^ e_j)} / 2^width, indexed by variable.
    std::vector<double> per_variable;
    /// Numerators of per_variable, kept exact.
    std::vector<uint64_t> pivotal_counts;
    double max_influence = 0;
};

/// The tribe width used when the caller gives none: the integer nearest the
/// classical balance point 2^w = n' / (w ln 2), with w ~ log2 n'.
int default_tribe_width(int num_vars);

/// OR of ANDs over floor(n'/w) disjoint consecutive tribes of width w,
/// mapped to +1/2 when the OR holds. Leftover variables are irrelevant.
BooleanFunctionTable tribes(int num_vars, std::optional<int> tribe_width = std::nullopt);

struct BalanceResult {
    BooleanFunctionTable table;
    /// Number of table entries whose sign was flipped.
    uint64_t flipped = 0;
};

/// Flips the |#positive - 2^(n'-1)| majority-sign entries with the smallest
/// table indices, giving an exactly balanced table.
BalanceResult balance(const BooleanFunctionTable &f);

InfluenceProfile influence_profile(const BooleanFunctionTable &f);

/// Number of inputs x with f(x) != f(x ^ e_var).
uint64_t pivotal_count(const BooleanFunctionTable &f, int var);

double eval(const BooleanFunctionTable &f, const BitString &x);

}  // namespace aqec

#endif
