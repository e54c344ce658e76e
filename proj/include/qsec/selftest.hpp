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

#pragma once

// Built-in sanity battery: quick randomized checks of the numeric kernels
// and the security invariants, runnable from the command line without any
// scheme file. One line per check; any exception fails the check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qsec/analysis.hpp"
#include "qsec/game.hpp"
#include "qsec/random.hpp"
#include "qsec/scheme.hpp"
#include "qsec/scheme_io.hpp"

namespace qsec {

struct SelfTestResult {
    std::string name;
    bool passed = false;
    std::string detail;  // populated on failure
};

namespace selftest_detail {

inline void run_check(std::vector<SelfTestResult>& results, const std::string& name,
                      const std::function<void()>& body) {
    SelfTestResult r;
    r.name = name;
    try {
        body();
        r.passed = true;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = e.what();
    }
    results.push_back(std::move(r));
}

inline void expect(bool condition, const std::string& message) {
    if (!condition) throw NumericError(message);
}

}  // namespace selftest_detail

inline std::vector<SelfTestResult> run_selftest(std::uint64_t seed) {
    using selftest_detail::expect;
    using selftest_detail::run_check;
    std::vector<SelfTestResult> results;

    run_check(results, "eigensolver reconstruction", [&] {
        RngStream rng(seed ^ 0x01);
        for (std::size_t dim : {2u, 4u, 8u, 16u}) {
            for (int trial = 0; trial < 3; ++trial) {
                const ComplexMatrix a = random_hermitian(dim, rng);
                const EigenDecomposition eig = hermitian_eig(a);
                ComplexMatrix scaled = eig.eigenvectors;
                for (std::size_t c = 0; c < dim; ++c) {
                    for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= eig.eigenvalues[c];
                }
                const ComplexMatrix rebuilt = matmul(scaled, dagger(eig.eigenvectors));
                expect(max_abs_diff(rebuilt, 0.5 * (a + dagger(a))) <= 1e-10,
                       "reconstruction error above 1e-10 at dim " + std::to_string(dim));
                const ComplexMatrix gram =
                    matmul(dagger(eig.eigenvectors), eig.eigenvectors);
                expect(max_abs_diff(gram, ComplexMatrix::identity(dim)) <= 1e-10,
                       "eigenvector basis not orthonormal at dim " + std::to_string(dim));
            }
        }
    });

    run_check(results, "trace distance is a symmetric metric", [&] {
        RngStream rng(seed ^ 0x02);
        for (int trial = 0; trial < 5; ++trial) {
            const DensityOperator a = random_density(2, rng);
            const DensityOperator b = random_density(2, rng);
            const DensityOperator c = random_density(2, rng);
            expect(trace_distance(a, b) == trace_distance(b, a),
                   "trace distance not exactly symmetric");
            expect(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-9,
                   "triangle inequality violated");
            expect(trace_distance(a, a) == 0.0, "self distance nonzero");
        }
    });

    run_check(results, "helstrom measurement is optimal", [&] {
        RngStream rng(seed ^ 0x03);
        const DensityOperator rho = random_density(2, rng);
        const DensityOperator sigma = random_density(2, rng);
        const double bound = helstrom_success(rho, sigma);
        const Povm opt = helstrom_povm(rho, sigma);
        const double achieved = 0.5 * (measure_probabilities(opt, rho)[0] +
                                       measure_probabilities(opt, sigma)[1]);
        expect(std::abs(achieved - bound) <= 1e-9, "helstrom POVM misses its own bound");
        for (int t = 0; t < 50; ++t) {
            const Povm povm = random_two_outcome_povm(4, rng);
            const double fwd =
                0.5 * (measure_probabilities(povm, rho)[0] + measure_probabilities(povm, sigma)[1]);
            const double rev =
                0.5 * (measure_probabilities(povm, rho)[1] + measure_probabilities(povm, sigma)[0]);
            expect(std::max(fwd, rev) <= bound + 1e-9, "random POVM beat the helstrom bound");
        }
    });

    run_check(results, "quantum one-time pad hides every plaintext", [&] {
        RngStream rng(seed ^ 0x04);
        for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
            const Scheme qotp = builtin_qotp(n);
            const ComplexMatrix mixed = DensityOperator::maximally_mixed(n).matrix();
            for (int trial = 0; trial < 3; ++trial) {
                const PureState x = random_pure(n, rng);
                expect(max_abs_diff(qotp.cipher_state(x).matrix(), mixed) <= 1e-9,
                       "qotp cipher state deviates from maximally mixed");
            }
        }
    });

    run_check(results, "classical pad leaks the conjugate basis", [&] {
        const Scheme otp = builtin_classical_otp(1);
        const double hidden = trace_distance(otp.cipher_state(PureState::computational(1, 0)),
                                             otp.cipher_state(PureState::computational(1, 1)));
        const double leaked = trace_distance(otp.cipher_state(PureState::plus()),
                                             otp.cipher_state(PureState::minus()));
        expect(hidden <= 1e-9, "computational basis not hidden");
        expect(std::abs(leaked - 1.0) <= 1e-9, "conjugate basis not fully leaked");
    });

    run_check(results, "channels preserve trace and positivity", [&] {
        RngStream rng(seed ^ 0x05);
        for (int trial = 0; trial < 5; ++trial) {
            const DensityOperator rho = random_density(2, rng);
            const Channel ch = random_kraus_channel(4, 2 + trial % 3, rng);
            const DensityOperator out = apply_channel(ch, rho);
            expect(std::abs(trace(out.matrix()).real() - 1.0) <= 1e-9,
                   "channel output trace deviates from 1");
            expect(hermitian_eig(out.matrix()).eigenvalues.back() >= -1e-9,
                   "channel output not positive semidefinite");
        }
    });

    run_check(results, "games are deterministic given the seed", [&] {
        const Scheme otp = builtin_classical_otp(1);
        const PureState plus = PureState::plus();
        const PureState minus = PureState::minus();
        const Povm povm = helstrom_povm(otp.cipher_state(plus), otp.cipher_state(minus));
        const GameResult a = run_ind_game(otp, plus, minus, povm, 2000, seed);
        const GameResult b = run_ind_game(otp, plus, minus, povm, 2000, seed);
        expect(a.wins == b.wins, "identical seeds produced different games");
    });

    run_check(results, "reduction round trip preserves the advantage", [&] {
        const Scheme id = builtin_identity(1);
        const PureState zero = PureState::computational(1, 0);
        const PureState plus = PureState::plus();
        const Povm helstrom = helstrom_povm(id.cipher_state(zero), id.cipher_state(plus));
        const SemanticInstance inst = make_semantic_instance(
            "zero", zero, "plus", plus, SemanticHint{"helstrom circuit", helstrom});
        const Adversary adv = adversary_from_distinguisher(helstrom, inst);
        const double delta = analytic_semantic_success(id, inst, adv) - 0.5;
        const Povm round_trip = distinguisher_from_adversary(adv, inst);
        const double ind_success = analytic_ind_success(id, zero, plus, round_trip);
        expect(std::abs((2.0 * ind_success - 1.0) - 2.0 * delta) <= 1e-12,
               "round-trip advantage mismatch");
    });

    run_check(results, "scheme file round trip is a fixpoint", [&] {
        const std::string text = R"({
            "name": "xonly",
            "qubits": 1,
            "key_model": "private",
            "keys": [
                {"id": "I", "prob": 0.5, "unitary": "pauli:I",
                 "decrypt": {"unitary": "pauli:I"}},
                {"id": "X", "prob": 0.5, "unitary": [[[0,0],[1,0]],[[1,0],[0,0]]],
                 "decrypt": {"unitary": "pauli:X"}}
            ],
            "plaintexts": [
                {"name": "zero", "state": "basis:0"},
                {"name": "plus", "state": "vector:[0.70710678118654746,0;0.70710678118654746,0]"}
            ]
        })";
        const std::string once = serialize_scheme_file(parse_scheme_text(text));
        const std::string twice = serialize_scheme_file(parse_scheme_text(once));
        expect(once == twice, "serialize(parse(.)) is not a fixpoint");
        realize_scheme_file(parse_scheme_text(text));  // must validate cleanly
    });

    return results;
}

/// Run the battery, print one line per check, return the failure count.
inline int selftest_main(std::ostream& out, std::uint64_t seed) {
    int failures = 0;
    for (const SelfTestResult& r : run_selftest(seed)) {
        if (r.passed) {
            out << "ok:   " << r.name << "\n";
        } else {
            out << "FAIL: " << r.name << " (" << r.detail << ")\n";
            ++failures;
        }
    }
    return failures;
}

}  // namespace qsec
