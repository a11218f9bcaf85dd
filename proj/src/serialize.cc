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

#include "aqec/serialize.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aqec {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char c) {
    if (c >= 'A' && c <= 'Z') {
        return c - 'A';
    }
    if (c >= 'a' && c <= 'z') {
        return c - 'a' + 26;
    }
    if (c >= '0' && c <= '9') {
        return c - '0' + 52;
    }
    if (c == '+') {
        return 62;
    }
    if (c == '/') {
        return 63;
    }
    return -1;
}

json complex_to_json(Amplitude a) {
    return json::array({a.real(), a.imag()});
}

Amplitude complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json phase_set_to_json(const PhaseSetSpec &set) {
    return std::visit([](const auto &v) { return to_json(ControlSetSpec{v}); }, set);
}

PhaseSetSpec phase_set_from_json(const json &j) {
    ControlSetSpec c = controls_from_json(j);
    if (auto *v = std::get_if<AllControls>(&c)) {
        return *v;
    }
    if (auto *v = std::get_if<EmptyControls>(&c)) {
        return *v;
    }
    if (auto *v = std::get_if<ExplicitControls>(&c)) {
        return std::move(*v);
    }
    if (auto *v = std::get_if<SeededControls>(&c)) {
        return *v;
    }
    throw std::invalid_argument("phase sets must be all, empty, explicit or seeded");
}

}  // namespace

std::string base64_encode(std::span<const uint8_t> bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (size_t k = 0; k < bytes.size(); k += 3) {
        uint32_t chunk = uint32_t{bytes[k]} << 16;
        size_t avail = std::min<size_t>(3, bytes.size() - k);
        if (avail > 1) {
            chunk |= uint32_t{bytes[k + 1]} << 8;
        }
        if (avail > 2) {
            chunk |= bytes[k + 2];
        }
        out += kAlphabet[(chunk >> 18) & 63];
        out += kAlphabet[(chunk >> 12) & 63];
        out += avail > 1 ? kAlphabet[(chunk >> 6) & 63] : '=';
        out += avail > 2 ? kAlphabet[chunk & 63] : '=';
    }
    return out;
}

std::vector<uint8_t> base64_decode(std::string_view text) {
    if (text.size() % 4 != 0) {
        throw std::invalid_argument("base64 length must be a multiple of 4");
    }
    std::vector<uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (size_t k = 0; k < text.size(); k += 4) {
        uint32_t chunk = 0;
        int pad = 0;
        for (size_t m = 0; m < 4; m++) {
            char c = text[k + m];
            int v = 0;
            if (c == '=') {
                if (k + 4 != text.size() || m < 2) {
                    throw std::invalid_argument("misplaced base64 padding");
                }
                pad++;
            } else {
                v = decode_char(c);
                if (v < 0 || pad > 0) {
                    throw std::invalid_argument("invalid base64 character");
                }
            }
            chunk = (chunk << 6) | static_cast<uint32_t>(v);
        }
        out.push_back(static_cast<uint8_t>(chunk >> 16));
        if (pad < 2) {
            out.push_back(static_cast<uint8_t>(chunk >> 8));
        }
        if (pad < 1) {
            out.push_back(static_cast<uint8_t>(chunk));
        }
    }
    return out;
}

std::string bits_to_base64(const BitTable &table) {
    std::vector<uint8_t> bytes((table.size() + 7) / 8);
    for (uint64_t x = 0; x < table.size(); x++) {
        if (table.get(x)) {
            bytes[x / 8] |= static_cast<uint8_t>(1u << (x % 8));
        }
    }
    return base64_encode(bytes);
}

BitTable bits_from_base64(std::string_view text, int width) {
    BitTable table(width);
    std::vector<uint8_t> bytes = base64_decode(text);
    if (bytes.size() != (table.size() + 7) / 8) {
        throw std::invalid_argument("bit table payload has the wrong length for width " + std::to_string(width));
    }
    for (uint64_t x = 0; x < table.size(); x++) {
        table.set(x, (bytes[x / 8] >> (x % 8)) & 1);
    }
    for (uint64_t x = table.size(); x < bytes.size() * 8; x++) {
        if ((bytes[x / 8] >> (x % 8)) & 1) {
            throw std::invalid_argument("bit table payload has bits set past the table end");
        }
    }
    return table;
}

json to_json(const BooleanFunctionTable &f) {
    return {{"width", f.width()}, {"signs", bits_to_base64(f.signs())}};
}

BooleanFunctionTable function_from_json(const json &j) {
    int width = j.at("width").get<int>();
    BooleanFunctionTable::check_width(width);
    return BooleanFunctionTable(bits_from_base64(j.at("signs").get<std::string>(), width));
}

json to_json(const CodewordCoeffs &c) {
    json alpha = json::array();
    for (const auto &a : c.alpha) {
        alpha.push_back(complex_to_json(a));
    }
    return {{"n", c.params.n}, {"B", c.params.pairs}, {"alpha", alpha}};
}

CodewordCoeffs codeword_from_json(const json &j) {
    CodewordCoeffs c{make_params(j.at("n").get<int>(), j.at("B").get<int>()), {}};
    for (const auto &a : j.at("alpha")) {
        c.alpha.push_back(complex_from_json(a));
    }
    if (c.alpha.size() != c.params.dimension()) {
        throw std::invalid_argument("codeword file needs 2^B coefficients");
    }
    return c;
}

json to_json(const StateVector &v) {
    json amp = json::array();
    for (const auto &a : v.amplitudes()) {
        amp.push_back(complex_to_json(a));
    }
    return {{"n", v.num_qubits()}, {"amp", amp}};
}

StateVector state_from_json(const json &j) {
    std::vector<Amplitude> amp;
    for (const auto &a : j.at("amp")) {
        amp.push_back(complex_from_json(a));
    }
    return StateVector(j.at("n").get<int>(), std::move(amp));
}

json to_json(const ControlSetSpec &controls) {
    return std::visit(
        [](const auto &c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, AllControls>) {
                return {{"kind", "all"}};
            } else if constexpr (std::is_same_v<T, EmptyControls>) {
                return {{"kind", "empty"}};
            } else if constexpr (std::is_same_v<T, SingletonControl>) {
                return {{"kind", "singleton"}, {"point", c.point}};
            } else if constexpr (std::is_same_v<T, ExplicitControls>) {
                return {{"kind", "explicit"}, {"width", c.members.width()}, {"members", bits_to_base64(c.members)}};
            } else if constexpr (std::is_same_v<T, SeededControls>) {
                return {{"kind", "seeded"}, {"density", c.density}, {"seed", c.seed}};
            } else {
                return {{"kind", "block"},
                        {"block", c.block},
                        {"block_len", c.block_len},
                        {"subset", bits_to_base64(c.subset)}};
            }
        },
        controls);
}

ControlSetSpec controls_from_json(const json &j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "all") {
        return AllControls{};
    }
    if (kind == "empty") {
        return EmptyControls{};
    }
    if (kind == "singleton") {
        return SingletonControl{j.at("point").get<uint64_t>()};
    }
    if (kind == "explicit") {
        int width = j.at("width").get<int>();
        return ExplicitControls{bits_from_base64(j.at("members").get<std::string>(), width)};
    }
    if (kind == "seeded") {
        return SeededControls{j.at("density").get<double>(), j.at("seed").get<uint64_t>()};
    }
    if (kind == "block") {
        int len = j.at("block_len").get<int>();
        return BlockPredicate{j.at("block").get<int>(), len, bits_from_base64(j.at("subset").get<std::string>(), len)};
    }
    throw std::invalid_argument("unknown control kind '" + kind + "'");
}

json to_json(const ErrorOperator &e) {
    if (const auto *b = std::get_if<ControlledBitFlip>(&e)) {
        return {{"type", "bitflip"}, {"i", b->target}, {"controls", to_json(b->controls)}};
    }
    if (const auto *p = std::get_if<ControlledPhase>(&e)) {
        return {{"type", "phase"}, {"theta", p->theta}, {"set", phase_set_to_json(p->set)}};
    }
    const auto &part = std::get<PhasePartition>(e);
    json level = part.level ? json(*part.level) : json(nullptr);
    return {{"type", "partition"}, {"level", level}, {"angles", part.angles}, {"assignment", part.assignment}};
}

ErrorOperator error_from_json(const json &j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "bitflip") {
        return ControlledBitFlip{j.at("i").get<int>(), controls_from_json(j.at("controls"))};
    }
    if (type == "phase") {
        return ControlledPhase{phase_set_from_json(j.at("set")), j.at("theta").get<double>()};
    }
    if (type == "partition") {
        PhasePartition p;
        if (!j.at("level").is_null()) {
            p.level = j.at("level").get<int>();
        }
        p.angles = j.at("angles").get<std::vector<double>>();
        p.assignment = j.at("assignment").get<std::vector<uint32_t>>();
        return p;
    }
    throw std::invalid_argument("unknown error type '" + type + "'");
}

json to_json(const ImpossibilityWitness &w) {
    return {{"error", to_json(ErrorOperator{w.error})},
            {"q", w.q},
            {"phi_form", complex_to_json(w.phi_form)},
            {"psi_form", complex_to_json(w.psi_form)},
            {"cross_form", complex_to_json(w.cross_form)},
            {"residual", w.residual}};
}

json witness_to_json(const ReportWitness &w) {
    return std::visit(
        [](const auto &v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, ImmunityWitness>) {
                return {{"type", "immunity"},
                        {"codeword", to_json(v.codeword)},
                        {"error", to_json(ErrorOperator{v.error})},
                        {"structured", v.structured}};
            } else if constexpr (std::is_same_v<T, SeparationWitness>) {
                return {{"type", "separation"},
                        {"phi", to_json(v.phi)},
                        {"psi", to_json(v.psi)},
                        {"x", to_json(v.x)},
                        {"y", to_json(v.y)}};
            } else if constexpr (std::is_same_v<T, InfluenceWitness>) {
                return {{"type", "influence"}, {"codeword", to_json(v.codeword)}, {"qubit", v.qubit}};
            } else {
                return {{"type", "gram"}, {"row", v.row}, {"col", v.col}, {"value", complex_to_json(v.value)}};
            }
        },
        w);
}

ReportWitness witness_from_json(const json &j) {
    if (j.is_null()) {
        return std::monostate{};
    }
    std::string type = j.at("type").get<std::string>();
    if (type == "immunity") {
        ErrorOperator e = error_from_json(j.at("error"));
        return ImmunityWitness{codeword_from_json(j.at("codeword")), std::get<ControlledBitFlip>(std::move(e)),
                               j.at("structured").get<bool>()};
    }
    if (type == "separation") {
        return SeparationWitness{state_from_json(j.at("phi")), state_from_json(j.at("psi")),
                                 error_from_json(j.at("x")), error_from_json(j.at("y"))};
    }
    if (type == "influence") {
        return InfluenceWitness{codeword_from_json(j.at("codeword")), j.at("qubit").get<int>()};
    }
    if (type == "gram") {
        return GramWitness{j.at("row").get<uint64_t>(), j.at("col").get<uint64_t>(),
                           complex_from_json(j.at("value"))};
    }
    throw std::invalid_argument("unknown witness type '" + type + "'");
}

json to_json(const VerificationReport &r) {
    json out;
    out["kind"] = r.kind;
    out["n"] = r.n;
    out["B"] = r.pairs ? json(*r.pairs) : json(nullptr);
    out["s"] = r.s ? json(*r.s) : json(nullptr);
    bool is_epsilon = r.kind == "immunity";
    bool is_alpha = r.kind.starts_with("separation");
    out["epsilon_measured"] = is_epsilon ? json(r.measured) : json(nullptr);
    out["epsilon_bound"] = is_epsilon && r.bound ? json(*r.bound) : json(nullptr);
    out["alpha_measured"] = is_alpha ? json(r.measured) : json(nullptr);
    out["measured"] = r.measured;
    out["bound"] = r.bound ? json(*r.bound) : json(nullptr);
    out["pass"] = r.pass;
    out["witness"] = witness_to_json(r.witness);
    out["seed"] = r.seed;
    out["evaluations"] = r.evaluations;
    json stats = json::object();
    for (const auto &[name, value] : r.extras) {
        stats[name] = value;
    }
    out["stats"] = stats;
    out["runtime_ms"] = r.runtime_ms;
    return out;
}

VerificationReport report_from_json(const json &j) {
    VerificationReport r;
    r.kind = j.at("kind").get<std::string>();
    r.n = j.at("n").get<int>();
    if (!j.at("B").is_null()) {
        r.pairs = j.at("B").get<int>();
    }
    if (!j.at("s").is_null()) {
        r.s = j.at("s").get<double>();
    }
    r.measured = j.at("measured").get<double>();
    if (!j.at("bound").is_null()) {
        r.bound = j.at("bound").get<double>();
    }
    r.pass = j.at("pass").get<bool>();
    r.witness = witness_from_json(j.at("witness"));
    r.seed = j.at("seed").get<uint64_t>();
    r.evaluations = j.value("evaluations", uint64_t{0});
    json stats = j.value("stats", json::object());
    for (const auto &[name, value] : stats.items()) {
        r.extras.emplace_back(name, value.get<double>());
    }
    r.runtime_ms = j.value("runtime_ms", 0.0);
    return r;
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return json::parse(in);
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

}  // namespace aqec
