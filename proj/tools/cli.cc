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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "aqec/attacks.h"
#include "aqec/parallel.h"
#include "aqec/rng.h"
#include "aqec/serialize.h"
#include "aqec/verify.h"

namespace aqec::cli {

namespace {

struct Options {
    int n = 16;
    int pairs = 2;
    int w = 0;
    uint64_t seed = 1;
    int samples = 100;
    int draws = 200;
    int k = 2;
    std::string grid = "full";
    int dense_cap = kDefaultDenseCap;
    double tol = 1e-9;
    unsigned threads = 0;
    std::string out;
    std::string format = "json";
    bool structured = false;
    bool unbalanced = false;
    std::string function_file;
    std::vector<std::string> codeword_files;
    std::string error_file;
    std::string family = "phaseflip";
    int num_pairs = 4;
    double alpha = -1;
    double epsilon = -1;
    std::vector<int> ns = {8, 16, 32, 64};

    CLI::Option *w_opt = nullptr;
    CLI::Option *b_opt = nullptr;
    CLI::Option *alpha_opt = nullptr;
    CLI::Option *epsilon_opt = nullptr;
};

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

bool given(const CLI::Option *opt) {
    return opt != nullptr && opt->count() > 0;
}

// Building block for the code: a function file, or balanced Tribes.
BooleanFunctionTable building_block(const Options &o, int block_len) {
    if (!o.function_file.empty()) {
        BooleanFunctionTable f = function_from_json(read_json_file(o.function_file));
        if (f.width() != block_len) {
            throw UsageError("function file has width " + std::to_string(f.width()) + ", expected " +
                             std::to_string(block_len));
        }
        return f;
    }
    std::optional<int> w;
    if (given(o.w_opt)) {
        w = o.w;
    }
    BooleanFunctionTable raw = tribes(block_len, w);
    if (!o.unbalanced) {
        return balance(raw).table;
    }
    if (raw.is_balanced()) {
        BitTable t = raw.signs();
        t.flip(0);
        return BooleanFunctionTable(std::move(t));
    }
    return raw;
}

int resolved_width(const Options &o, int block_len) {
    return given(o.w_opt) ? o.w : default_tribe_width(block_len);
}

VerificationConfig make_config(const Options &o) {
    VerificationConfig cfg;
    cfg.seed = o.seed;
    cfg.codeword_samples = o.samples;
    cfg.error_draws = o.draws;
    cfg.tol = o.tol;
    cfg.dense_cap = o.dense_cap;
    cfg.structured = o.structured;
    cfg.attack_level = o.k;
    cfg.attack_grid = parse_grid_mode(o.grid);
    if (given(o.alpha_opt)) {
        cfg.alpha_claim = o.alpha;
    }
    if (given(o.epsilon_opt)) {
        cfg.epsilon_claim = o.epsilon;
    }
    validate(cfg);
    return cfg;
}

json manifest(const std::string &command, const Options &o) {
    json config = {
        {"n", o.n},
        {"B", given(o.b_opt) ? json(o.pairs) : json(nullptr)},
        {"w", given(o.w_opt) ? json(o.w) : json(nullptr)},
        {"seed", o.seed},
        {"samples", o.samples},
        {"draws", o.draws},
        {"k", o.k},
        {"grid", o.grid},
        {"dense_cap", o.dense_cap},
        {"tol", o.tol},
        {"threads", o.threads},
        {"structured", o.structured},
        {"unbalanced", o.unbalanced},
        {"function", o.function_file},
        {"codewords", o.codeword_files},
        {"error", o.error_file},
        {"family", o.family},
        {"pairs", o.num_pairs},
        {"alpha", given(o.alpha_opt) ? json(o.alpha) : json(nullptr)},
        {"epsilon", given(o.epsilon_opt) ? json(o.epsilon) : json(nullptr)},
        {"ns", o.ns},
    };
    return {
        {"command", command},
        {"version", kVersion},
        {"config", config},
        {"format", o.format},
        {"out", o.out.empty() ? "-" : o.out},
    };
}

struct Output {
    json report;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    int code = kVerified;
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

void emit(const std::string &command, const Options &o, const Output &result, std::ostream &out) {
    std::ostringstream text;
    if (o.format == "csv") {
        text << "# manifest " << manifest(command, o).dump() << "\n";
        for (size_t c = 0; c < result.csv_header.size(); c++) {
            text << (c ? "," : "") << result.csv_header[c];
        }
        text << "\n";
        for (const auto &row : result.csv_rows) {
            for (size_t c = 0; c < row.size(); c++) {
                text << (c ? "," : "") << row[c];
            }
            text << "\n";
        }
    } else {
        json doc = {{"manifest", manifest(command, o)}, {"report", result.report}};
        text << doc.dump(2) << "\n";
    }
    if (o.out.empty()) {
        out << text.str();
    } else {
        write_text_file(o.out, text.str());
    }
}

CodeParams code_params(const Options &o) {
    if (!given(o.b_opt)) {
        throw UsageError("--B is required for this command");
    }
    return make_params(o.n, o.pairs);
}

std::vector<CodewordCoeffs> codeword_files(const Options &o, const CodeParams &p) {
    std::vector<CodewordCoeffs> out;
    for (const auto &path : o.codeword_files) {
        CodewordCoeffs c = codeword_from_json(read_json_file(path));
        if (c.params != p) {
            throw UsageError("codeword file " + path + " does not match --n/--B");
        }
        out.push_back(std::move(c));
    }
    return out;
}

// A pair of unit vectors from two codeword files, if given.
std::optional<StatePair> pair_from_files(const Options &o, const BooleanFunctionTable &f, const CodeParams &p) {
    if (o.codeword_files.empty()) {
        return std::nullopt;
    }
    if (o.codeword_files.size() != 2) {
        throw UsageError("pass exactly two --codeword files to define a pair");
    }
    auto cs = codeword_files(o, p);
    StatePair pair{materialize_codeword(f, cs[0], o.dense_cap), materialize_codeword(f, cs[1], o.dense_cap)};
    if (!is_orthonormal(pair.first, pair.second, std::max(o.tol, 1e-9))) {
        throw UsageError("the two codewords are not orthonormal");
    }
    return pair;
}

StatePair basis_slice(const BooleanFunctionTable &f, const CodeParams &p, uint64_t z0, uint64_t z1, int cap) {
    return {materialize_codeword(f, basis_codeword(p, z0), cap), materialize_codeword(f, basis_codeword(p, z1), cap)};
}

Output cmd_influence(const Options &o) {
    BooleanFunctionTable f = BooleanFunctionTable::constant(1, true);
    uint64_t flipped = 0;
    json w = nullptr;
    if (!o.function_file.empty()) {
        f = function_from_json(read_json_file(o.function_file));
    } else {
        BalanceResult b = balance(tribes(o.n, given(o.w_opt) ? std::optional<int>(o.w) : std::nullopt));
        f = std::move(b.table);
        flipped = b.flipped;
        w = resolved_width(o, o.n);
    }
    InfluenceProfile prof = influence_profile(f);
    Output r;
    r.report = {
        {"kind", "influence"},
        {"n_prime", f.width()},
        {"w", w},
        {"balanced", f.is_balanced()},
        {"flipped", flipped},
        {"s", prof.max_influence},
        {"per_variable", prof.per_variable},
        {"pivotal_counts", prof.pivotal_counts},
    };
    r.csv_header = {"variable", "influence", "pivotal_count"};
    for (size_t j = 0; j < prof.per_variable.size(); j++) {
        r.csv_rows.push_back({std::to_string(j), num(prof.per_variable[j]), std::to_string(prof.pivotal_counts[j])});
    }
    return r;
}

Output cmd_build(const Options &o) {
    BooleanFunctionTable f = building_block(o, o.n);
    Output r;
    r.report = to_json(f);
    r.report["balanced"] = f.is_balanced();
    r.csv_header = {"x", "value"};
    for (uint64_t x = 0; x < f.size(); x++) {
        r.csv_rows.push_back({std::to_string(x), f.is_positive(x) ? "0.5" : "-0.5"});
    }
    return r;
}

Output cmd_sample(const Options &o) {
    CodeParams p = code_params(o);
    CodewordCoeffs c = sample_codeword(p, derive_seed(o.seed, "cli-sample"));
    Output r;
    r.report = to_json(c);
    r.csv_header = {"z", "re", "im"};
    for (size_t z = 0; z < c.alpha.size(); z++) {
        r.csv_rows.push_back({std::to_string(z), num(c.alpha[z].real()), num(c.alpha[z].imag())});
    }
    return r;
}

Output report_output(const VerificationReport &rep) {
    Output r;
    r.report = to_json(rep);
    r.code = rep.pass ? kVerified : kViolation;
    return r;
}

Output cmd_gram(const Options &o) {
    CodeParams p = code_params(o);
    BooleanFunctionTable f = building_block(o, p.block_len);
    VerificationReport rep = check_gram(f, p, make_config(o));
    Output r = report_output(rep);
    r.csv_header = {"n", "B", "max_deviation", "diagonal_expected", "balanced", "pass"};
    r.csv_rows.push_back({std::to_string(p.n), std::to_string(p.pairs), num(rep.measured),
                          num(std::ldexp(1.0, p.basis_norm_exponent())), f.is_balanced() ? "1" : "0",
                          rep.pass ? "1" : "0"});
    return r;
}

std::vector<std::string> immunity_row(const VerificationReport &rep, const CodeParams &p, int w) {
    return {std::to_string(p.n), std::to_string(p.pairs), std::to_string(p.block_len), std::to_string(w),
            num(*rep.s), num(rep.measured), num(*rep.bound), rep.pass ? "1" : "0"};
}

const std::vector<std::string> kImmunityHeader = {"n", "B", "n_prime", "w", "s", "epsilon_measured", "two_s", "pass"};

Output cmd_immunity(const Options &o) {
    CodeParams p = code_params(o);
    BooleanFunctionTable f = building_block(o, p.block_len);
    VerificationConfig cfg = make_config(o);
    cfg.extra_codewords = codeword_files(o, p);
    if (!o.error_file.empty()) {
        ErrorOperator e = error_from_json(read_json_file(o.error_file));
        if (!std::holds_alternative<ControlledBitFlip>(e)) {
            throw UsageError("immunity checks take a bitflip error file");
        }
        cfg.extra_errors.push_back(std::get<ControlledBitFlip>(std::move(e)));
    }
    VerificationReport rep = check_immunity(f, p, cfg);
    Output r = report_output(rep);
    r.csv_header = kImmunityHeader;
    r.csv_rows.push_back(immunity_row(rep, p, resolved_width(o, p.block_len)));
    return r;
}

Output cmd_trend(const Options &o) {
    Output r;
    r.report = {{"kind", "trend"}, {"rows", json::array()}};
    r.csv_header = kImmunityHeader;
    VerificationConfig cfg = make_config(o);
    for (int n : o.ns) {
        CodeParams p = make_params(n, o.pairs);
        BooleanFunctionTable f = building_block(o, p.block_len);
        cfg.structured = o.structured || n > o.dense_cap;
        VerificationReport rep = check_immunity(f, p, cfg);
        int w = resolved_width(o, p.block_len);
        r.report["rows"].push_back({{"n", n},
                                    {"B", p.pairs},
                                    {"n_prime", p.block_len},
                                    {"w", w},
                                    {"s", *rep.s},
                                    {"epsilon_measured", rep.measured},
                                    {"two_s", *rep.bound},
                                    {"pass", rep.pass},
                                    {"runtime_ms", rep.runtime_ms}});
        r.csv_rows.push_back(immunity_row(rep, p, w));
        if (!rep.pass) {
            r.code = kViolation;
        }
    }
    return r;
}

Output cmd_separation(const Options &o) {
    CodeParams p = code_params(o);
    check_dense_cap(p.n, o.dense_cap);
    BooleanFunctionTable f = building_block(o, p.block_len);
    VerificationConfig cfg = make_config(o);
    if (!o.error_file.empty()) {
        ErrorOperator e = error_from_json(read_json_file(o.error_file));
        cfg.extra_separation_errors.push_back(std::move(e));
    }
    ErrorFamily family;
    if (o.family == "bitflip") {
        family = ErrorFamily::bitflip;
    } else if (o.family == "phaseflip") {
        family = ErrorFamily::phaseflip;
    } else {
        throw UsageError("--family must be bitflip or phaseflip");
    }
    std::vector<StatePair> pairs;
    if (auto given_pair = pair_from_files(o, f, p)) {
        pairs.push_back(std::move(*given_pair));
    } else {
        for (uint64_t z = 1; z < std::min<uint64_t>(p.dimension(), 4); z++) {
            pairs.push_back(basis_slice(f, p, 0, z, o.dense_cap));
        }
        for (int k = 0; k < o.num_pairs; k++) {
            auto [a, b] = orthonormal_codeword_pair(p, derive_seed(o.seed, "cli-pairs", static_cast<uint64_t>(k)));
            pairs.emplace_back(materialize_codeword(f, a, o.dense_cap), materialize_codeword(f, b, o.dense_cap));
        }
    }
    VerificationReport rep = check_separation(pairs, family, cfg);
    rep.pairs = p.pairs;
    Output r = report_output(rep);
    r.csv_header = {"n", "B", "family", "alpha_measured", "min_pair_alpha", "pass"};
    double min_pair = 0;
    for (const auto &[name, v] : rep.extras) {
        if (name == "min_pair_alpha") {
            min_pair = v;
        }
    }
    r.csv_rows.push_back(
        {std::to_string(p.n), std::to_string(p.pairs), o.family, num(rep.measured), num(min_pair), rep.pass ? "1" : "0"});
    return r;
}

Output cmd_attack(const Options &o) {
    GridMode mode = parse_grid_mode(o.grid);
    if (o.k < 1 || o.k > kMaxGridLevel) {
        throw UsageError("--k must be in [1, " + std::to_string(kMaxGridLevel) + "]");
    }
    StatePair pair;
    json code = nullptr;
    if (given(o.b_opt)) {
        CodeParams p = make_params(o.n, o.pairs);
        check_dense_cap(p.n, o.dense_cap);
        BooleanFunctionTable f = building_block(o, p.block_len);
        if (!f.is_balanced()) {
            throw UsageError("attacks on W need a balanced building block");
        }
        auto from_files = pair_from_files(o, f, p);
        pair = from_files ? std::move(*from_files) : basis_slice(f, p, 0, 1, o.dense_cap);
        code = {{"kind", from_files ? "codeword-files" : "w-slice"}, {"B", p.pairs}};
    } else {
        if (o.n < 1 || o.n > o.dense_cap) {
            throw UsageError("--n must be in [1, dense cap] for a random code");
        }
        pair = random_orthonormal_pair(o.n, derive_seed(o.seed, "cli-attack"));
        code = {{"kind", "random"}};
    }
    auto start = std::chrono::steady_clock::now();
    BoostedPair boosted = boost_overlap(pair.first, pair.second, std::max(o.tol, 1e-9));
    PhaseAttack attack = build_phase_partition(boosted.phi, boosted.psi, o.k, mode, o.dense_cap);
    double value = attack_value(boosted.phi, boosted.psi, attack.partition);
    json bound = nullptr;
    if (mode == GridMode::full) {
        bound = (1 - std::ldexp(std::numbers::pi, -o.k)) * boosted.overlap;
    }

    constexpr int kBins = 16;
    std::vector<uint64_t> histogram(kBins, 0);
    for (uint64_t x = 0; x < boosted.phi.size(); x++) {
        if (std::abs(boosted.phi[x]) > 0 && std::abs(boosted.psi[x]) > 0) {
            auto bin = static_cast<int>(attack.residual[x] / std::numbers::pi * kBins);
            histogram[std::clamp(bin, 0, kBins - 1)]++;
        }
    }

    json realization = nullptr;
    json realizable_value = nullptr;
    if (o.k == 2) {
        PhaseAttack rotated = build_rotated_partition(boosted.phi, boosted.psi, 2, 64, o.dense_cap);
        if (auto xy = realize_as_xy(rotated.partition)) {
            realizable_value = std::abs(inner(apply_phase(xy->x, boosted.phi), apply_phase(xy->y, boosted.psi)));
            realization = {{"x", to_json(ErrorOperator{xy->x})},
                           {"y", to_json(ErrorOperator{xy->y})},
                           {"global_phase", xy->global_phase},
                           {"rotation", rotated.rotation}};
        }
    }
    double runtime = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    Output r;
    r.report = {
        {"kind", "attack"},
        {"n", o.n},
        {"code", code},
        {"overlap_before", boosted.original_overlap},
        {"overlap_after", boosted.overlap},
        {"rotated", boosted.rotated},
        {"k", o.k},
        {"grid", std::string(to_string(mode))},
        {"attack_value", value},
        {"bound", bound},
        {"max_residual", attack.max_residual},
        {"residual_histogram", histogram},
        {"realizable_attack_value", realizable_value},
        {"witness",
         {{"phi", to_json(boosted.phi)},
          {"psi", to_json(boosted.psi)},
          {"error", to_json(ErrorOperator{attack.partition})},
          {"xy", realization}}},
        {"runtime_ms", runtime},
    };
    // The paper grid carries no guarantee, so it only reports.
    json assertion = nullptr;
    if (mode == GridMode::full) {
        assertion = value > 0.1;
        r.code = value > 0.1 ? kViolation : kVerified;
    }
    r.report["attack_exceeds_tenth"] = assertion;
    r.csv_header = {"n", "k", "grid", "overlap_before", "overlap_after", "attack_value", "bound"};
    r.csv_rows.push_back({std::to_string(o.n), std::to_string(o.k), std::string(to_string(mode)),
                          num(boosted.original_overlap), num(boosted.overlap), num(value),
                          bound.is_null() ? "" : num(bound.get<double>())});
    return r;
}

Output cmd_witness(const Options &o) {
    CodeParams p = code_params(o);
    check_dense_cap(p.n, o.dense_cap);
    BooleanFunctionTable f = building_block(o, p.block_len);
    if (!f.is_balanced()) {
        throw UsageError("witness search needs a balanced building block");
    }
    auto start = std::chrono::steady_clock::now();
    std::optional<StatePair> from_files = pair_from_files(o, f, p);
    json pair_json;
    StatePair pair;
    if (from_files) {
        pair = std::move(*from_files);
        pair_json = o.codeword_files;
    } else {
        auto [a, b] = orthonormal_codeword_pair(p, derive_seed(o.seed, "cli-witness"));
        pair = {materialize_codeword(f, a, o.dense_cap), materialize_codeword(f, b, o.dense_cap)};
        pair_json = {{"phi", to_json(a)}, {"psi", to_json(b)}};
    }
    auto w = exact_impossibility_witness(pair.first, pair.second, o.tol);
    double runtime = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    Output r;
    r.report = {
        {"kind", "witness"},
        {"n", p.n},
        {"B", p.pairs},
        {"found", w.has_value()},
        {"tol", o.tol},
        {"pair", pair_json},
        {"witness", w ? to_json(*w) : json(nullptr)},
        {"runtime_ms", runtime},
    };
    r.code = w ? kViolation : kVerified;
    r.csv_header = {"n", "B", "found", "target", "q", "residual"};
    r.csv_rows.push_back({std::to_string(p.n), std::to_string(p.pairs), w ? "1" : "0",
                          w ? std::to_string(w->error.target) : "", w ? std::to_string(w->q) : "",
                          w ? num(w->residual) : ""});
    return r;
}

void add_common(CLI::App *sub, Options &o) {
    sub->add_option("--seed", o.seed, "Root seed for every random stage");
    sub->add_option("--samples", o.samples, "Random codewords (or operator pairs) per check")->check(CLI::PositiveNumber);
    sub->add_option("--draws", o.draws, "Random control sets per codeword")->check(CLI::NonNegativeNumber);
    sub->add_option("--dense-cap", o.dense_cap, "Largest n for dense state vectors")->check(CLI::Range(1, 30));
    sub->add_option("--tol", o.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Worker thread cap (0 = hardware)");
    sub->add_option("--out", o.out, "Write the report here instead of stdout");
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--function", o.function_file, "Function-table JSON for the building block")
        ->check(CLI::ExistingFile);
}

void add_code(CLI::App *sub, Options &o) {
    sub->add_option("--n", o.n, "Total qubits n");
    sub->add_option("--B", o.pairs, "Block pairs B (code dimension 2^B)");
    sub->add_option("--w", o.w, "Tribe width");
    sub->add_flag("--unbalanced", o.unbalanced, "Use a deliberately unbalanced building block");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Approximate quantum error correction against correlated bit flips"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    auto *influence = app.add_subcommand("influence", "Influence profile of the balanced Tribes block");
    influence->add_option("--n", o.n, "Block length n'");
    influence->add_option("--w", o.w, "Tribe width");
    add_common(influence, o);

    auto *build = app.add_subcommand("build", "Write a building-block function file");
    build->add_option("--n", o.n, "Block length n'");
    build->add_option("--w", o.w, "Tribe width");
    build->add_flag("--unbalanced", o.unbalanced, "Skip balancing");
    add_common(build, o);

    auto *sample = app.add_subcommand("sample", "Write a seeded codeword file");
    add_code(sample, o);
    add_common(sample, o);

    auto *gram_cmd = app.add_subcommand("gram", "Check orthogonality of the code basis");
    add_code(gram_cmd, o);
    add_common(gram_cmd, o);

    auto *immunity = app.add_subcommand("immunity", "Check bit-flip immunity against 2s");
    add_code(immunity, o);
    add_common(immunity, o);
    immunity->add_flag("--structured", o.structured, "Use block-factorized forms");
    immunity->add_option("--codeword", o.codeword_files, "Extra codeword files to test")->check(CLI::ExistingFile);
    immunity->add_option("--error", o.error_file, "Extra bit-flip error file to test")->check(CLI::ExistingFile);
    immunity->add_option("--epsilon", o.epsilon, "Claimed epsilon to verify as well");

    auto *trend = app.add_subcommand("trend", "Immunity epsilon versus n at fixed B");
    add_code(trend, o);
    add_common(trend, o);
    trend->add_option("--ns", o.ns, "Values of n")->delimiter(',');
    trend->add_flag("--structured", o.structured, "Use block-factorized forms (automatic above the dense cap)");

    auto *separation = app.add_subcommand("separation", "Measure separation of codeword pairs");
    add_code(separation, o);
    add_common(separation, o);
    separation->add_option("--family", o.family, "Error family")->check(CLI::IsMember({"bitflip", "phaseflip"}));
    separation->add_option("--k", o.k, "Attack grid level");
    separation->add_option("--grid", o.grid, "Attack grid")->check(CLI::IsMember({"paper", "full"}));
    separation->add_option("--pairs", o.num_pairs, "Random codeword pairs")->check(CLI::NonNegativeNumber);
    separation->add_option("--codeword", o.codeword_files, "Two codeword files forming the pair")
        ->check(CLI::ExistingFile);
    separation->add_option("--alpha", o.alpha, "Claimed alpha to verify");
    separation->add_option("--error", o.error_file, "Extra error file evaluated on every pair")
        ->check(CLI::ExistingFile);

    auto *attack = app.add_subcommand("attack", "Boost and phase-attack a two-dimensional code");
    add_code(attack, o);
    add_common(attack, o);
    attack->add_option("--k", o.k, "Grid level");
    attack->add_option("--grid", o.grid, "Grid")->check(CLI::IsMember({"paper", "full"}));
    attack->add_option("--codeword", o.codeword_files, "Two codeword files forming the pair")
        ->check(CLI::ExistingFile);

    auto *witness = app.add_subcommand("witness", "Find a singleton error that defeats exact correction");
    add_code(witness, o);
    add_common(witness, o);
    witness->add_option("--codeword", o.codeword_files, "Two codeword files forming the pair")
        ->check(CLI::ExistingFile);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kVerified : kUsageError;
    }

    CLI::App *active = app.get_subcommands().front();
    o.w_opt = active->get_option_no_throw("--w");
    o.b_opt = active->get_option_no_throw("--B");
    o.alpha_opt = active->get_option_no_throw("--alpha");
    o.epsilon_opt = active->get_option_no_throw("--epsilon");
    if (o.threads > 0) {
        set_thread_limit(o.threads);
    }
    try {
        std::string name = active->get_name();
        Output result;
        if (name == "influence") {
            result = cmd_influence(o);
        } else if (name == "build") {
            result = cmd_build(o);
        } else if (name == "sample") {
            result = cmd_sample(o);
        } else if (name == "gram") {
            result = cmd_gram(o);
        } else if (name == "immunity") {
            result = cmd_immunity(o);
        } else if (name == "trend") {
            result = cmd_trend(o);
        } else if (name == "separation") {
            result = cmd_separation(o);
        } else if (name == "attack") {
            result = cmd_attack(o);
        } else {
            result = cmd_witness(o);
        }
        emit(name, o, result, out);
        return result.code;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
}

}  // namespace aqec::cli
