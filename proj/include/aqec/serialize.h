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

#ifndef AQEC_SERIALIZE_H
#define AQEC_SERIALIZE_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "aqec/attacks.h"
#include "aqec/boolfn.h"
#include "aqec/codespace.h"
#include "aqec/noise.h"
#include "aqec/verify.h"

namespace aqec {

using json = nlohmann::json;

std::string base64_encode(std::span<const uint8_t> bytes);
std::vector<uint8_t> base64_decode(std::string_view text);

/// Bit x of the table goes to byte x / 8, bit x % 8 (little-endian by x).
std::string bits_to_base64(const BitTable &table);
BitTable bits_from_base64(std::string_view text, int width);

/// {"width": n', "signs": base64}
json to_json(const BooleanFunctionTable &f);
BooleanFunctionTable function_from_json(const json &j);

/// {"n": n, "B": B, "alpha": [[re, im], ...]} in z order.
json to_json(const CodewordCoeffs &c);
CodewordCoeffs codeword_from_json(const json &j);

/// {"n": n, "amp": [[re, im], ...]} in x order.
json to_json(const StateVector &v);
StateVector state_from_json(const json &j);

json to_json(const ControlSetSpec &controls);
ControlSetSpec controls_from_json(const json &j);

/// {"type": "bitflip", "i": target, "controls": {...}},
/// {"type": "phase", "theta": t, "set": {...}} or
/// {"type": "partition", "level": k, "angles": [...], "assignment": [...]}.
json to_json(const ErrorOperator &e);
ErrorOperator error_from_json(const json &j);

json to_json(const ImpossibilityWitness &w);

json witness_to_json(const ReportWitness &w);
ReportWitness witness_from_json(const json &j);

/// {"kind", "n", "B", "s", "epsilon_measured", "epsilon_bound",
///  "alpha_measured", "pass", "witness", "seed", "runtime_ms", ...}
json to_json(const VerificationReport &r);
VerificationReport report_from_json(const json &j);

json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace aqec

#endif
