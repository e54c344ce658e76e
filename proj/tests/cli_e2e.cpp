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

// End-to-end checks against the installed binary: exit codes, stream
// discipline (reports on stdout, warnings on stderr), --output, and
// process-level determinism.
//
// Usage: cli_e2e <path-to-qsec-binary> <path-to-schemes-dir>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int g_failures = 0;
int g_checks = 0;

void check(bool ok, const std::string& name) {
    ++g_checks;
    if (!ok) ++g_failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp_and_remove(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    in.close();
    std::remove(path.c_str());
    return buf.str();
}

/// Run `command` through the shell, capturing both streams.
RunResult run(const std::string& command) {
    static int counter = 0;
    const std::string tag = std::to_string(++counter);
    const std::string out_path = "e2e_stdout_" + tag + ".txt";
    const std::string err_path = "e2e_stderr_" + tag + ".txt";
    const int status = std::system((command + " >" + out_path + " 2>" + err_path).c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp_and_remove(out_path);
    r.err = slurp_and_remove(err_path);
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: cli_e2e <qsec-binary> <schemes-dir>\n";
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";
    const std::string dir = argv[2];
    const auto scheme = [&](const std::string& name) {
        return " --scheme \"" + dir + "/" + name + "\"";
    };

    // --- analyze exit codes and stream discipline ---
    {
        const RunResult r = run(cli + " analyze" + scheme("qotp1.json"));
        check(r.exit_code == 0, "analyze qotp1 exits 0");
        check(contains(r.out, "verdict: indistinguishable"), "analyze qotp1 verdict on stdout");
        check(r.err.empty(), "analyze qotp1 emits no warnings");
    }
    {
        const RunResult r = run(cli + " analyze" + scheme("xonly_private.json"));
        check(r.exit_code == 2, "analyze xonly_private exits 2");
        check(contains(r.out, "verdict: distinguishable"), "analyze xonly_private verdict");
        check(contains(r.out, "attack witness"), "analyze xonly_private prints the witness");
    }
    {
        const RunResult r = run(cli + " analyze" + scheme("bad_prob_sum.json"));
        check(r.exit_code == 1, "analyze bad_prob_sum exits 1");
        check(contains(r.err, "probabilities sum to 1.1"), "bad_prob_sum diagnostic on stderr");
        check(r.out.empty(), "bad_prob_sum leaves stdout empty");
    }
    {
        const RunResult r = run(cli + " analyze" + scheme("no_such_scheme.json"));
        check(r.exit_code == 1, "analyze missing file exits 1");
        check(contains(r.err, "cannot open"), "missing file diagnostic on stderr");
    }
    {
        const RunResult r = run(cli + " analyze" + scheme("depolarize1.json"));
        check(r.exit_code == 0, "analyze depolarize1 exits 0");
        check(contains(r.err, "warning") && contains(r.err, "decrypt"),
              "missing-decrypt warning lands on stderr");
        check(!contains(r.out, "warning"), "warnings stay off stdout");
    }

    // --- public-key model report ---
    {
        const RunResult r = run(cli + " analyze" + scheme("xonly_public.json") + " --format json");
        check(r.exit_code == 2, "analyze xonly_public exits 2");
        const nlohmann::json j = nlohmann::json::parse(r.out, nullptr, false);
        check(!j.is_discarded(), "xonly_public emits valid JSON");
        if (!j.is_discarded()) {
            check(j.at("key_model") == "public", "public key model recorded");
            const auto& pair = j.at("pairs").at(0);
            check(pair.at("trace_distance").get<double>() > 0.999999999,
                  "public joint distance is 1");
            check(pair.at("key_averaged_distance").get<double>() < 1e-9,
                  "public key-averaged distance is 0");
        }
    }

    // --- determinism across processes ---
    {
        const RunResult a = run(cli + " analyze" + scheme("qotp2.json") + " --format json");
        const RunResult b = run(cli + " analyze" + scheme("qotp2.json") + " --format json");
        check(a.exit_code == 0 && b.exit_code == 0, "analyze qotp2 exits 0 twice");
        check(!a.out.empty() && a.out == b.out, "analyze JSON byte-identical across runs");
    }
    {
        const std::string cmd =
            cli + " game" + scheme("identity1.json") + " --trials 20000 --seed 11 --format json";
        const RunResult a = run(cmd);
        const RunResult b = run(cmd);
        check(a.exit_code == 0 && b.exit_code == 0, "game exits 0");
        check(!a.out.empty() && a.out == b.out, "game JSON byte-identical across runs");
        const nlohmann::json j = nlohmann::json::parse(a.out, nullptr, false);
        check(!j.is_discarded() && j.at("band_check") == "PASS",
              "game empirical success within the analytic band");
        const RunResult c = run(cli + " game" + scheme("identity1.json") +
                                " --trials 20000 --seed 12 --format json");
        check(c.exit_code == 0 && c.out != a.out, "different seed changes the game report");
    }

    // --- semantic subcommand and adversary selection ---
    {
        const RunResult r = run(cli + " semantic" + scheme("xonly_private.json") +
                                " --trials 5000 --format json");
        const nlohmann::json j = nlohmann::json::parse(r.out, nullptr, false);
        check(r.exit_code == 0 && !j.is_discarded(), "semantic helstrom runs");
        if (!j.is_discarded()) {
            check(j.at("empirical_success").get<double>() == 1.0,
                  "orthogonal ciphers give certain semantic success");
        }
        const RunResult base = run(cli + " semantic" + scheme("qotp1.json") +
                                   " --adversary baseline --trials 5000 --format json");
        const nlohmann::json jb = nlohmann::json::parse(base.out, nullptr, false);
        check(base.exit_code == 0 && !jb.is_discarded() && jb.at("band_check") == "PASS",
              "baseline adversary centers on one half");
        const RunResult c0 = run(cli + " semantic" + scheme("qotp1.json") +
                                 " --adversary constant0 --trials 2000 --format json");
        const nlohmann::json jc = nlohmann::json::parse(c0.out, nullptr, false);
        check(c0.exit_code == 0 && !jc.is_discarded() &&
                  jc.at("analytic_success").get<double>() == 0.5,
              "constant adversary has analytic success one half");
    }

    // --- plaintext selection ---
    {
        const RunResult r = run(cli + " game" + scheme("qotp1.json") +
                                " --x plus --y minus --trials 2000");
        check(r.exit_code == 0 && contains(r.out, "plus vs minus"), "--x/--y pick the pair");
        const RunResult bad = run(cli + " game" + scheme("qotp1.json") + " --x nope");
        check(bad.exit_code == 1 && contains(bad.err, "no plaintext named"),
              "unknown plaintext name is a usage error");
    }

    // --- perfectly distinguishable and perfectly hidden pairs ---
    {
        const RunResult r = run(cli + " game" + scheme("identity1.json") +
                                " --x zero --y one --trials 10000 --format json");
        const nlohmann::json j = nlohmann::json::parse(r.out, nullptr, false);
        check(r.exit_code == 0 && !j.is_discarded() &&
                  j.at("empirical_success").get<double>() == 1.0 &&
                  j.at("analytic_success").get<double>() == 1.0,
              "orthogonal plaintexts under identity win every trial");
        const RunResult q = run(cli + " game" + scheme("qotp1.json") +
                                " --trials 10000 --format json");
        const nlohmann::json jq = nlohmann::json::parse(q.out, nullptr, false);
        check(q.exit_code == 0 && !jq.is_discarded() && jq.at("band_check") == "PASS" &&
                  jq.at("analytic_success").get<double>() == 0.5,
              "qotp game centers on one half with PASS band");
    }

    // --- --output writes the same bytes as stdout ---
    {
        const std::string out_file = "e2e_report.json";
        const RunResult direct =
            run(cli + " analyze" + scheme("classical_otp1.json") + " --format json");
        const RunResult filed = run(cli + " analyze" + scheme("classical_otp1.json") +
                                    " --format json --output " + out_file);
        check(filed.exit_code == 2 && filed.out.empty(), "--output leaves stdout empty");
        check(slurp_and_remove(out_file) == direct.out, "--output matches stdout bytes");
    }

    // --- help, bad flags, selftest, caps ---
    {
        check(run(cli + " --help").exit_code == 0, "--help exits 0");
        check(run(cli + " analyze --no-such-flag").exit_code == 1, "unknown flag exits 1");
        check(run(cli).exit_code == 1, "missing subcommand exits 1");
        const RunResult st = run(cli + " selftest");
        check(st.exit_code == 0 && contains(st.out, "ok:"), "selftest passes");
        const RunResult capped =
            run("QSEC_MAX_DIM=2 " + cli + " analyze" + scheme("qotp2.json"));
        check(capped.exit_code == 1 && !capped.err.empty(),
              "QSEC_MAX_DIM caps the register size");
    }

    std::cout << g_checks - g_failures << "/" << g_checks << " checks passed\n";
    return g_failures == 0 ? 0 : 1;
}
