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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qsec/random.hpp"
#include "qsec/scheme.hpp"

using qsec::Channel;
using qsec::ComplexMatrix;
using qsec::cplx;
using qsec::DensityOperator;
using qsec::KeyModel;
using qsec::PureState;
using qsec::RngStream;
using qsec::Scheme;
using qsec::SchemeKey;

namespace {

//-------------------------------------------------------------------------
// Oracles: literal per-key sums with plain += accumulation, independent of
// the library's compensated average.
//-------------------------------------------------------------------------

ComplexMatrix keyed_average_oracle(const Scheme& s, const PureState& x) {
    const ComplexMatrix input = qsec::outer(x.amplitudes(), x.amplitudes());
    ComplexMatrix sum(s.dim());
    for (const SchemeKey& k : s.keys()) {
        const ComplexMatrix term = k.encrypt.apply_matrix(input);
        for (std::size_t r = 0; r < s.dim(); ++r) {
            for (std::size_t c = 0; c < s.dim(); ++c) {
                sum(r, c) += cplx(k.probability, 0.0) * term(r, c);
            }
        }
    }
    return sum;
}

// Trace distance recomputed straight from the spectrum of the difference.
double trace_distance_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    const qsec::EigenDecomposition eig = qsec::hermitian_eig(a - b);
    double sum = 0.0;
    for (double lambda : eig.eigenvalues) sum += std::abs(lambda);
    return 0.5 * sum;
}

SchemeKey unitary_key(const std::string& id, double p, const ComplexMatrix& u) {
    return SchemeKey{id, p, Channel::unitary(u), Channel::unitary(qsec::dagger(u))};
}

}  // namespace

//-------------------------------------------------------------------------
// Validation
//-------------------------------------------------------------------------

TEST_CASE("scheme validation") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);

    // Probabilities must sum to 1.
    CHECK_THROWS_AS(Scheme("bad", 1, KeyModel::kPrivate,
                           {unitary_key("a", 0.6, i2), unitary_key("b", 0.6, i2)}),
                    qsec::UsageError);

    // Negative probability.
    CHECK_THROWS_AS(Scheme("bad", 1, KeyModel::kPrivate,
                           {unitary_key("a", 1.2, i2), unitary_key("b", -0.2, i2)}),
                    qsec::UsageError);

    // Empty key list.
    CHECK_THROWS_AS(Scheme("bad", 1, KeyModel::kPrivate, {}), qsec::UsageError);

    // Channel dimension mismatch.
    CHECK_THROWS_AS(Scheme("bad", 2, KeyModel::kPrivate, {unitary_key("a", 1.0, i2)}),
                    qsec::UsageError);

    // Failing correctness: encrypt with X but decrypt with Z.
    CHECK_THROWS_AS(Scheme("bad", 1, KeyModel::kPrivate,
                           {SchemeKey{"k", 1.0, Channel::unitary(qsec::pauli('X')),
                                      Channel::unitary(qsec::pauli('Z'))}}),
                    qsec::UsageError);

    // Missing decrypt: accepted with a warning, not an error.
    const Scheme analysis_only("enc-only", 1, KeyModel::kPrivate,
                               {SchemeKey{"k", 1.0, Channel::unitary(qsec::pauli('X')),
                                          std::nullopt}});
    REQUIRE(analysis_only.warnings().size() == 1);
    CHECK(analysis_only.warnings()[0].find("correctness check skipped") != std::string::npos);
}

TEST_CASE("plaintext set validation") {
    CHECK_THROWS_AS(qsec::PlaintextSet({}), qsec::UsageError);

    std::vector<qsec::PlaintextEntry> mixed;
    mixed.push_back({"one", PureState::computational(1, 0)});
    mixed.push_back({"two", PureState::computational(2, 0)});
    CHECK_THROWS_AS(qsec::PlaintextSet(std::move(mixed)), qsec::UsageError);

    std::vector<qsec::PlaintextEntry> ok;
    ok.push_back({"zero", PureState::computational(1, 0)});
    ok.push_back({"plus", PureState::plus()});
    const qsec::PlaintextSet set(std::move(ok));
    CHECK(set.size() == 2);
    CHECK(set.qubits() == 1);
}

//-------------------------------------------------------------------------
// cipher_state
//-------------------------------------------------------------------------

TEST_CASE("cipher_state: spec examples") {
    // Full QOTP on one qubit sends |0> to I/2: explicit 4-term sum.
    const Scheme qotp = qsec::builtin_qotp(1);
    const PureState zero = PureState::computational(1, 0);
    const ComplexMatrix oracle4 = keyed_average_oracle(qotp, zero);
    const DensityOperator rho = qotp.cipher_state(zero);
    CHECK(qsec::max_abs_diff(rho.matrix(), oracle4) < 1e-12);
    CHECK(qsec::max_abs_diff(rho.matrix(), DensityOperator::maximally_mixed(1).matrix()) <
          1e-12);

    // Identity scheme reproduces the plaintext projector.
    const Scheme id = qsec::builtin_identity(1);
    const PureState plus = PureState::plus();
    CHECK(qsec::max_abs_diff(id.cipher_state(plus).matrix(),
                             qsec::pure_to_density(plus).matrix()) < 1e-15);

    // X-only OTP fixes |+> (X|+> = |+>): explicit 2-term sum.
    const Scheme xonly = qsec::builtin_pauli_subset(1, {"I", "X"});
    const ComplexMatrix oracle2 = keyed_average_oracle(xonly, plus);
    const DensityOperator rho_plus = xonly.cipher_state(plus);
    CHECK(qsec::max_abs_diff(rho_plus.matrix(), oracle2) < 1e-12);
    CHECK(qsec::max_abs_diff(rho_plus.matrix(), qsec::pure_to_density(plus).matrix()) < 1e-12);

    // Dimension mismatch.
    CHECK_THROWS_AS(qotp.cipher_state(PureState::computational(2, 0)), qsec::UsageError);
}

TEST_CASE("cipher_state: linearity against per-key loop oracle") {
    RngStream rng(9090);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t qubits = 1 + (trial % 2);
        const std::size_t dim = std::size_t{1} << qubits;
        // Random 3-key scheme with uneven probabilities.
        std::vector<SchemeKey> keys;
        keys.push_back(unitary_key("a", 0.5, qsec::random_unitary(dim, rng)));
        keys.push_back(unitary_key("b", 0.3, qsec::random_unitary(dim, rng)));
        keys.push_back(SchemeKey{"c", 0.2, qsec::random_kraus_channel(dim, 2, rng),
                                 std::nullopt});
        const Scheme s("random", qubits, KeyModel::kPrivate, std::move(keys));
        const PureState x = qsec::random_pure(qubits, rng);
        CHECK(qsec::max_abs_diff(s.cipher_state(x).matrix(), keyed_average_oracle(s, x)) <
              1e-12);
    }
}

TEST_CASE("cipher_state output is a valid density operator") {
    RngStream rng(1414);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<SchemeKey> keys;
        keys.push_back(unitary_key("u", 0.7, qsec::random_unitary(4, rng)));
        keys.push_back(SchemeKey{"k", 0.3, qsec::random_kraus_channel(4, 3, rng), std::nullopt});
        const Scheme s("random", 2, KeyModel::kPrivate, std::move(keys));
        const DensityOperator rho = s.cipher_state(qsec::random_pure(2, rng));
        CHECK(std::abs(qsec::trace(rho.matrix()).real() - 1.0) < 1e-9);
        CHECK(qsec::hermitian_eig(rho.matrix()).eigenvalues.back() >= -1e-9);
    }
}

//-------------------------------------------------------------------------
// joint_cipher_state_public
//-------------------------------------------------------------------------

TEST_CASE("joint_cipher_state_public: spec examples") {
    const PureState zero = PureState::computational(1, 0);

    // Single public key: |0><0| (x) encrypt(|x><x|).
    const Scheme single("one-key", 1, KeyModel::kPublic,
                        {unitary_key("x", 1.0, qsec::pauli('X'))});
    const DensityOperator joint = single.joint_cipher_state_public(zero);
    const ComplexMatrix key0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    const ComplexMatrix expected =
        qsec::tensor(key0, qsec::pure_to_density(PureState::computational(1, 1)).matrix());
    CHECK(qsec::max_abs_diff(joint.matrix(), expected) < 1e-15);

    // Two identity keys: (1/2) sum_k |k><k| (x) |x><x|, trace 1.
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const Scheme two("two-key", 1, KeyModel::kPublic,
                     {unitary_key("a", 0.5, i2), unitary_key("b", 0.5, i2)});
    const DensityOperator joint2 = two.joint_cipher_state_public(zero);
    const ComplexMatrix key1 = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const ComplexMatrix plain = qsec::pure_to_density(zero).matrix();
    const ComplexMatrix expected2 =
        0.5 * qsec::tensor(key0, plain) + 0.5 * qsec::tensor(key1, plain);
    CHECK(qsec::max_abs_diff(joint2.matrix(), expected2) < 1e-15);
    CHECK(std::abs(qsec::trace(joint2.matrix()).real() - 1.0) < 1e-12);

    // X-only public OTP: the key register reveals which Pauli was applied,
    // so the joint states of |0> and |1> are perfectly distinguishable.
    const Scheme xonly = qsec::builtin_pauli_subset(1, {"I", "X"}, KeyModel::kPublic);
    const DensityOperator j0 = xonly.joint_cipher_state_public(zero);
    const DensityOperator j1 = xonly.joint_cipher_state_public(PureState::computational(1, 1));
    CHECK(std::abs(trace_distance_oracle(j0.matrix(), j1.matrix()) - 1.0) < 1e-9);

    // Private schemes refuse the public-mode query.
    const Scheme priv = qsec::builtin_identity(1);
    CHECK_THROWS_AS(priv.joint_cipher_state_public(zero), qsec::UsageError);
}

TEST_CASE("key register sizing") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    auto scheme_with_keys = [&](std::size_t count) {
        std::vector<SchemeKey> keys;
        const double p = 1.0 / static_cast<double>(count);
        for (std::size_t i = 0; i < count; ++i) {
            keys.push_back(unitary_key("k" + std::to_string(i), p, i2));
        }
        return Scheme("sized", 1, KeyModel::kPublic, std::move(keys));
    };
    CHECK(scheme_with_keys(1).key_register_qubits() == 1);
    CHECK(scheme_with_keys(2).key_register_qubits() == 1);
    CHECK(scheme_with_keys(3).key_register_qubits() == 2);
    CHECK(scheme_with_keys(4).key_register_qubits() == 2);
    CHECK(scheme_with_keys(5).key_register_qubits() == 3);
}

//-------------------------------------------------------------------------
// Built-ins
//-------------------------------------------------------------------------

TEST_CASE("builtin: qotp structure and perfect hiding") {
    const Scheme qotp1 = qsec::builtin_qotp(1);
    REQUIRE(qotp1.keys().size() == 4);
    for (const SchemeKey& k : qotp1.keys()) CHECK(k.probability == 0.25);

    // qotp(n) maps every plaintext to the maximally mixed state.
    RngStream rng(246);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
        const Scheme qotp = qsec::builtin_qotp(n);
        const ComplexMatrix mixed = DensityOperator::maximally_mixed(n).matrix();
        for (int trial = 0; trial < 4; ++trial) {
            const PureState x = qsec::random_pure(n, rng);
            CHECK(qsec::max_abs_diff(qotp.cipher_state(x).matrix(), mixed) < 1e-9);
        }
    }

    // 4^7 keys exceed the default cap.
    CHECK_THROWS_AS(qsec::builtin_qotp(7), qsec::CapacityError);
}

TEST_CASE("builtin: identity scheme exposes orthogonal plaintexts") {
    const Scheme id = qsec::builtin_identity(1);
    const DensityOperator c0 = id.cipher_state(PureState::computational(1, 0));
    const DensityOperator c1 = id.cipher_state(PureState::computational(1, 1));
    CHECK(std::abs(qsec::trace_product(c0.matrix(), c1.matrix())) < 1e-15);
    CHECK(std::abs(trace_distance_oracle(c0.matrix(), c1.matrix()) - 1.0) < 1e-12);
}

TEST_CASE("builtin: classical OTP hides the computational basis only") {
    const Scheme otp = qsec::builtin_classical_otp(1);
    REQUIRE(otp.keys().size() == 2);

    const ComplexMatrix mixed = DensityOperator::maximally_mixed(1).matrix();
    const DensityOperator c0 = otp.cipher_state(PureState::computational(1, 0));
    const DensityOperator c1 = otp.cipher_state(PureState::computational(1, 1));
    CHECK(qsec::max_abs_diff(c0.matrix(), keyed_average_oracle(
                                              otp, PureState::computational(1, 0))) < 1e-15);
    CHECK(qsec::max_abs_diff(c0.matrix(), mixed) < 1e-12);
    CHECK(qsec::max_abs_diff(c1.matrix(), mixed) < 1e-12);

    // Conjugate-basis plaintexts pass through unchanged: insecure there.
    const DensityOperator cp = otp.cipher_state(PureState::plus());
    const DensityOperator cm = otp.cipher_state(PureState::minus());
    CHECK(qsec::max_abs_diff(cp.matrix(), qsec::pure_to_density(PureState::plus()).matrix()) <
          1e-12);
    CHECK(qsec::max_abs_diff(cm.matrix(), qsec::pure_to_density(PureState::minus()).matrix()) <
          1e-12);
}

TEST_CASE("builtin: correctness on every key and basis state") {
    for (const Scheme& s : {qsec::builtin_qotp(2), qsec::builtin_classical_otp(2),
                            qsec::builtin_pauli_subset(2, {"IX", "ZI", "YY"})}) {
        for (const SchemeKey& k : s.keys()) {
            REQUIRE(k.decrypt.has_value());
            for (std::size_t b = 0; b < s.dim(); ++b) {
                std::vector<cplx> amps(s.dim(), cplx(0.0, 0.0));
                amps[b] = 1.0;
                const ComplexMatrix plain = qsec::outer(amps, amps);
                const ComplexMatrix round =
                    k.decrypt->apply_matrix(k.encrypt.apply_matrix(plain));
                CHECK(qsec::max_abs_diff(round, plain) < 1e-9);
            }
        }
    }
}

TEST_CASE("builtin: dispatch by name") {
    CHECK(qsec::builtin("qotp", 1).keys().size() == 4);
    CHECK(qsec::builtin("identity", 2).keys().size() == 1);
    CHECK(qsec::builtin("classical_otp", 2).keys().size() == 4);
    CHECK(qsec::builtin("pauli_subset", 1, {"I", "Z"}).keys().size() == 2);
    CHECK_THROWS_AS(qsec::builtin("caesar", 1), qsec::UsageError);
}
