// Copyright 2026 The qsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   qsec analyze  --scheme FILE [--threshold T] [--format text|json] [--output PATH]
//   qsec game     --scheme FILE [--x NAME --y NAME] [--trials N] [--seed S] ...
//   qsec semantic --scheme FILE [--x NAME --y NAME] [--adversary KIND] ...
//   qsec selftest [--seed S]
//
// Reports go to stdout (or --output); warnings and diagnostics to stderr.
// Exit codes: 0 success (analyze: indistinguishable), 2 distinguishable
// verdict, 1 any error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <qsec/qsec.hpp>

namespace {

struct CommandOptions {
    std::string scheme_path;
    std::string x_name;
    std::string y_name;
    std::string format = "text";
    std::string output;
    std::string adversary = "helstrom";
    double threshold = 1e-6;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
};

std::size_t env_size(const char* name, std::size_t fallback) {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value, &end, 10);
    if (end == value || *end != '\0' || parsed == 0) {
        throw qsec::UsageError(std::string(name) + ": expected a positive integer, got '" +
                               value + "'");
    }
    return static_cast<std::size_t>(parsed);
}

void configure_caps_from_env() {
    qsec::caps().max_dim = env_size("QSEC_MAX_DIM", qsec::caps().max_dim);
    qsec::caps().max_keys = env_size("QSEC_MAX_KEYS", qsec::caps().max_keys);
}

void emit(const std::string& content, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw qsec::UsageError("cannot open output file '" + output_path + "'");
    out << content;
}

void print_warnings(const qsec::Scheme& scheme) {
    for (const std::string& w : scheme.warnings()) {
        std::cerr << "warning: " << scheme.name() << ": " << w << "\n";
    }
}

const qsec::PlaintextEntry& pick_plaintext(const qsec::PlaintextSet& set,
                                           const std::string& name, std::size_t default_index,
                                           const char* flag) {
    if (name.empty()) {
        if (default_index >= set.size()) {
            throw qsec::UsageError(std::string(flag) +
                                   ": scheme file defines too few plaintexts for a default pair; "
                                   "pass the name explicitly");
        }
        return set.entry(default_index);
    }
    for (const qsec::PlaintextEntry& e : set.entries()) {
        if (e.name == name) return e;
    }
    throw qsec::UsageError(std::string(flag) + ": no plaintext named '" + name +
                           "' in the scheme file");
}

void check_threshold(double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0) {
        throw qsec::UsageError("--threshold: value " + std::to_string(threshold) +
                               " outside (0, 1]");
    }
}

int cmd_analyze(const CommandOptions& opt) {
    check_threshold(opt.threshold);
    const auto [scheme, plaintexts] = qsec::load_scheme(opt.scheme_path);
    print_warnings(scheme);
    const qsec::AdvantageReport report =
        qsec::indistinguishability_check(scheme, plaintexts, opt.threshold);
    emit(opt.format == "json" ? qsec::render_advantage_report_json(report)
                              : qsec::render_advantage_report_text(report),
         opt.output);
    return report.verdict == qsec::Verdict::kDistinguishable ? 2 : 0;
}

int cmd_game(const CommandOptions& opt) {
    const auto [scheme, plaintexts] = qsec::load_scheme(opt.scheme_path);
    print_warnings(scheme);
    const qsec::PlaintextEntry& x = pick_plaintext(plaintexts, opt.x_name, 0, "--x");
    const qsec::PlaintextEntry& y = pick_plaintext(plaintexts, opt.y_name, 1, "--y");

    // The distinguisher defaults to the optimal measurement on the
    // key-averaged cipher states of the chosen pair.
    const qsec::Povm povm =
        qsec::helstrom_povm(scheme.cipher_state(x.state), scheme.cipher_state(y.state));
    const qsec::GameResult result =
        qsec::run_ind_game(scheme, x.state, y.state, povm, opt.trials, opt.seed);
    const double analytic = qsec::analytic_ind_success(scheme, x.state, y.state, povm);
    const qsec::GameReport report =
        qsec::make_game_report("game", scheme.name(), x.name, y.name, "", result, analytic,
                               std::abs(2.0 * analytic - 1.0));
    emit(opt.format == "json" ? qsec::render_game_report_json(report)
                              : qsec::render_game_report_text(report),
         opt.output);
    return 0;
}

int cmd_semantic(const CommandOptions& opt) {
    const auto [scheme, plaintexts] = qsec::load_scheme(opt.scheme_path);
    print_warnings(scheme);
    const qsec::PlaintextEntry& x = pick_plaintext(plaintexts, opt.x_name, 0, "--x");
    const qsec::PlaintextEntry& y = pick_plaintext(plaintexts, opt.y_name, 1, "--y");

    const qsec::Povm helstrom =
        qsec::helstrom_povm(scheme.cipher_state(x.state), scheme.cipher_state(y.state));
    const qsec::SemanticInstance inst = qsec::make_semantic_instance(
        x.name, x.state, y.name, y.state,
        qsec::SemanticHint{"helstrom circuit for (" + x.name + "," + y.name + ")", helstrom});

    qsec::Adversary adversary = [&] {
        if (opt.adversary == "helstrom") return qsec::adversary_from_distinguisher(helstrom, inst);
        if (opt.adversary == "baseline") return qsec::baseline_adversary(inst);
        if (opt.adversary == "constant0") return qsec::constant_adversary(0);
        return qsec::constant_adversary(1);  // "constant1", enforced by the option check
    }();

    const qsec::GameResult result =
        qsec::run_semantic_game(scheme, inst, adversary, opt.trials, opt.seed);
    const double analytic = qsec::analytic_semantic_success(scheme, inst, adversary);
    const qsec::GameReport report =
        qsec::make_game_report("semantic", scheme.name(), x.name, y.name, adversary.name(),
                               result, analytic, analytic - 0.5);
    emit(opt.format == "json" ? qsec::render_game_report_json(report)
                              : qsec::render_game_report_text(report),
         opt.output);
    return 0;
}

int cmd_selftest(const CommandOptions& opt) {
    const int failures = qsec::selftest_main(std::cout, opt.seed);
    if (failures > 0) {
        std::cerr << "selftest: " << failures << " check(s) failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale security analysis for quantum encryption schemes"};
    app.require_subcommand(1);

    CommandOptions opt;

    const auto add_common = [&](CLI::App* cmd, bool with_pair) {
        cmd->add_option("--scheme", opt.scheme_path, "scheme definition file (JSON)")
            ->required();
        cmd->add_option("--format", opt.format, "report format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        cmd->add_option("--output", opt.output, "write the report to a file instead of stdout");
        if (with_pair) {
            cmd->add_option("--x", opt.x_name, "first plaintext name (default: first entry)");
            cmd->add_option("--y", opt.y_name, "second plaintext name (default: second entry)");
            cmd->add_option("--trials", opt.trials, "Monte Carlo trials")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
            cmd->add_option("--seed", opt.seed, "master seed for the per-trial streams")
                ->capture_default_str();
        }
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "pairwise trace distances, Helstrom bound, indistinguishability verdict");
    add_common(analyze, false);
    analyze->add_option("--threshold", opt.threshold,
                        "verdict threshold on the max trace distance")
        ->capture_default_str();

    CLI::App* game = app.add_subcommand(
        "game", "Monte Carlo indistinguishability game with the Helstrom distinguisher");
    add_common(game, true);

    CLI::App* semantic =
        app.add_subcommand("semantic", "Monte Carlo semantic-security game");
    add_common(semantic, true);
    semantic->add_option("--adversary", opt.adversary, "adversary strategy")
        ->check(CLI::IsMember({"helstrom", "baseline", "constant0", "constant1"}))
        ->capture_default_str();

    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in sanity battery");
    selftest->add_option("--seed", opt.seed, "seed for the randomized checks")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        configure_caps_from_env();
        if (analyze->parsed()) return cmd_analyze(opt);
        if (game->parsed()) return cmd_game(opt);
        if (semantic->parsed()) return cmd_semantic(opt);
        return cmd_selftest(opt);
    } catch (const qsec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
