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

// Keyed channel ensembles: a scheme is a key distribution p_k together
// with per-key encrypt (and usually decrypt) channels. The key-averaged
// cipher state sum_k p_k E_k(|x><x|) is the object the security analysis
// reasons about.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsec/rng.hpp"
#include "qsec/states.hpp"

namespace qsec {

enum class KeyModel { kPrivate, kPublic };

inline std::string to_string(KeyModel m) {
    return m == KeyModel::kPrivate ? "private" : "public";
}

struct SchemeKey {
    std::string id;
    double probability;
    Channel encrypt;
    std::optional<Channel> decrypt;  // absent: analysis-only key, correctness unchecked
};

namespace detail {

inline std::size_t ceil_log2(std::size_t n) {
    std::size_t bits = 0;
    std::size_t capacity = 1;
    while (capacity < n) {
        capacity <<= 1;
        ++bits;
    }
    return bits;
}

}  // namespace detail

/// Immutable scheme instance for one fixed qubit count. Construction
/// validates the key distribution, channel dimensions, and (where decrypt
/// channels are present) correctness on a spanning set of basis states.
class Scheme {
  public:
    Scheme(std::string name, std::size_t qubits, KeyModel key_model, std::vector<SchemeKey> keys)
        : name_(std::move(name)),
          qubits_(qubits),
          key_model_(key_model),
          keys_(std::move(keys)) {
        if (qubits_ == 0) throw UsageError("Scheme: qubit count must be >= 1");
        const std::size_t dim = std::size_t{1} << qubits_;
        if (dim > caps().max_dim) {
            throw CapacityError("Scheme: dimension " + std::to_string(dim) + " exceeds cap " +
                                std::to_string(caps().max_dim));
        }
        if (keys_.empty()) throw UsageError("Scheme: key list must be nonempty");
        if (keys_.size() > caps().max_keys) {
            throw CapacityError("Scheme: " + std::to_string(keys_.size()) + " keys exceed cap " +
                                std::to_string(caps().max_keys));
        }
        double total = 0.0;
        for (const SchemeKey& k : keys_) {
            if (!(k.probability >= 0.0)) {
                throw UsageError("Scheme: key '" + k.id + "' has negative probability");
            }
            if (k.encrypt.dim() != dim) {
                throw UsageError("Scheme: key '" + k.id + "' encrypt channel acts on dim " +
                                 std::to_string(k.encrypt.dim()) + ", expected " +
                                 std::to_string(dim));
            }
            if (k.decrypt && k.decrypt->dim() != dim) {
                throw UsageError("Scheme: key '" + k.id + "' decrypt channel acts on dim " +
                                 std::to_string(k.decrypt->dim()) + ", expected " +
                                 std::to_string(dim));
            }
            total += k.probability;
        }
        if (std::abs(total - 1.0) > tolerance::kProbability) {
            throw UsageError("Scheme: key probabilities sum to " + std::to_string(total) +
                             ", expected 1 within 1e-9");
        }
        check_correctness();
    }

    const std::string& name() const { return name_; }
    std::size_t qubits() const { return qubits_; }
    std::size_t dim() const { return std::size_t{1} << qubits_; }
    KeyModel key_model() const { return key_model_; }
    const std::vector<SchemeKey>& keys() const { return keys_; }

    /// Diagnostics accumulated during validation (e.g. skipped correctness
    /// checks for keys without a decrypt channel).
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// Qubits of the key register used by the public-key joint state:
    /// ceil(log2(#keys)), at least 1.
    std::size_t key_register_qubits() const {
        const std::size_t bits = detail::ceil_log2(keys_.size());
        return bits == 0 ? 1 : bits;
    }

    /// Key-averaged cipher state rho_x = sum_k p_k encrypt_k(|x><x|).
    DensityOperator cipher_state(const PureState& x) const {
        if (x.dim() != dim()) {
            throw UsageError("cipher_state: plaintext dim " + std::to_string(x.dim()) +
                             " does not match scheme dim " + std::to_string(dim()));
        }
        const ComplexMatrix input = outer(x.amplitudes(), x.amplitudes());
        MatrixAccumulator acc(dim());
        for (const SchemeKey& k : keys_) {
            acc.add(k.probability, k.encrypt.apply_matrix(input));
        }
        return DensityOperator(qubits_, acc.value());
    }

    /// Public-key joint state sum_k p_k |k><k| (x) encrypt_k(|x><x|), with
    /// keys embedded as orthogonal computational-basis states of the key
    /// register. Models the adversary who sees the key alongside the
    /// ciphertext.
    DensityOperator joint_cipher_state_public(const PureState& x) const {
        if (key_model_ != KeyModel::kPublic) {
            throw UsageError("joint_cipher_state_public: scheme '" + name_ +
                             "' has a private key model");
        }
        if (x.dim() != dim()) {
            throw UsageError("joint_cipher_state_public: plaintext dim " +
                             std::to_string(x.dim()) + " does not match scheme dim " +
                             std::to_string(dim()));
        }
        const std::size_t key_qubits = key_register_qubits();
        const std::size_t key_dim = std::size_t{1} << key_qubits;
        const std::size_t sub = dim();
        if (key_dim > caps().max_dim / sub) {
            throw CapacityError("joint_cipher_state_public: combined dimension " +
                                std::to_string(key_dim * sub) + " exceeds cap " +
                                std::to_string(caps().max_dim));
        }
        const ComplexMatrix input = outer(x.amplitudes(), x.amplitudes());
        // Key terms live in disjoint diagonal blocks, so direct placement
        // needs no compensated summation.
        ComplexMatrix joint(key_dim * sub);
        for (std::size_t k = 0; k < keys_.size(); ++k) {
            const ComplexMatrix enc = keys_[k].encrypt.apply_matrix(input);
            const std::size_t offset = k * sub;
            const cplx weight(keys_[k].probability, 0.0);
            for (std::size_t r = 0; r < sub; ++r) {
                for (std::size_t c = 0; c < sub; ++c) {
                    joint(offset + r, offset + c) = weight * enc(r, c);
                }
            }
        }
        return DensityOperator(key_qubits + qubits_, std::move(joint));
    }

  private:
    // decrypt_k(encrypt_k(|b><b|)) = |b><b| on a spanning basis sample:
    // the full computational basis for n <= 3, a fixed pseudorandom sample
    // of 8 basis states above that. Keys without decrypt are skipped with
    // a warning.
    void check_correctness() {
        const std::size_t d = dim();
        std::vector<std::size_t> basis_sample;
        if (qubits_ <= 3) {
            for (std::size_t i = 0; i < d; ++i) basis_sample.push_back(i);
        } else {
            RngStream sampler(0x5A11E5);  // fixed seed: the sample never varies
            while (basis_sample.size() < 8) {
                const std::size_t candidate = sampler.next_index(d);
                bool seen = false;
                for (std::size_t b : basis_sample) seen = seen || (b == candidate);
                if (!seen) basis_sample.push_back(candidate);
            }
        }
        for (const SchemeKey& k : keys_) {
            if (!k.decrypt) {
                warnings_.push_back("key '" + k.id +
                                    "': no decrypt channel; correctness check skipped");
                continue;
            }
            for (std::size_t b : basis_sample) {
                std::vector<cplx> amps(d, cplx(0.0, 0.0));
                amps[b] = 1.0;
                const ComplexMatrix plain = outer(amps, amps);
                const ComplexMatrix round_trip =
                    k.decrypt->apply_matrix(k.encrypt.apply_matrix(plain));
                if (max_abs_diff(round_trip, plain) > tolerance::kProbability) {
                    throw UsageError("Scheme: key '" + k.id +
                                     "' fails correctness: decrypt(encrypt(|" +
                                     std::to_string(b) + ">)) deviates beyond 1e-9");
                }
            }
        }
    }

    std::string name_;
    std::size_t qubits_;
    KeyModel key_model_;
    std::vector<SchemeKey> keys_;
    std::vector<std::string> warnings_;
};

//=========================================================================
// Plaintext sets
//=========================================================================

struct PlaintextEntry {
    std::string name;
    PureState state;
};

/// Named plaintexts to be compared pairwise by the analysis. All entries
/// share one qubit count; matching it against a scheme happens at use.
class PlaintextSet {
  public:
    explicit PlaintextSet(std::vector<PlaintextEntry> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw UsageError("PlaintextSet: must be nonempty");
        const std::size_t qubits = entries_.front().state.qubits();
        for (const PlaintextEntry& e : entries_) {
            if (e.state.qubits() != qubits) {
                throw UsageError("PlaintextSet: entry '" + e.name + "' has " +
                                 std::to_string(e.state.qubits()) + " qubits, expected " +
                                 std::to_string(qubits));
            }
        }
    }

    std::size_t size() const { return entries_.size(); }
    std::size_t qubits() const { return entries_.front().state.qubits(); }
    const PlaintextEntry& entry(std::size_t i) const { return entries_.at(i); }
    const std::vector<PlaintextEntry>& entries() const { return entries_; }

  private:
    std::vector<PlaintextEntry> entries_;
};

//=========================================================================
// Built-in reference schemes
//=========================================================================

namespace detail {

inline std::string pauli_string_for_index(std::size_t index, std::size_t qubits,
                                          const char* alphabet, std::size_t base) {
    std::string s(qubits, alphabet[0]);
    for (std::size_t pos = qubits; pos-- > 0;) {
        s[pos] = alphabet[index % base];
        index /= base;
    }
    return s;
}

inline SchemeKey pauli_key(const std::string& spec, double probability) {
    const ComplexMatrix u = pauli_string(spec);
    // Paulis are involutions, so decrypt == encrypt.
    return SchemeKey{spec, probability, Channel::unitary(u), Channel::unitary(u)};
}

}  // namespace detail

/// Quantum one-time pad: uniform over all 4^n Pauli strings. Rejects key
/// counts beyond the configured cap (n >= 7 at the default 4096).
inline Scheme builtin_qotp(std::size_t qubits, KeyModel key_model = KeyModel::kPrivate) {
    if (qubits == 0) throw UsageError("qotp: qubit count must be >= 1");
    if (qubits >= 32 || (std::size_t{1} << (2 * qubits)) > caps().max_keys) {
        throw CapacityError("qotp: 4^" + std::to_string(qubits) + " keys exceed cap " +
                            std::to_string(caps().max_keys));
    }
    const std::size_t count = std::size_t{1} << (2 * qubits);
    const double p = 1.0 / static_cast<double>(count);
    std::vector<SchemeKey> keys;
    keys.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        keys.push_back(detail::pauli_key(detail::pauli_string_for_index(i, qubits, "IXYZ", 4), p));
    }
    return Scheme("qotp", qubits, key_model, std::move(keys));
}

/// Uniform mixture over an explicit list of Pauli strings.
inline Scheme builtin_pauli_subset(std::size_t qubits, const std::vector<std::string>& strings,
                                   KeyModel key_model = KeyModel::kPrivate) {
    if (strings.empty()) throw UsageError("pauli_subset: string list must be nonempty");
    const double p = 1.0 / static_cast<double>(strings.size());
    std::vector<SchemeKey> keys;
    keys.reserve(strings.size());
    for (const std::string& s : strings) {
        if (s.size() != qubits) {
            throw UsageError("pauli_subset: string '" + s + "' has length " +
                             std::to_string(s.size()) + ", expected " + std::to_string(qubits));
        }
        keys.push_back(detail::pauli_key(s, p));
    }
    return Scheme("pauli_subset", qubits, key_model, std::move(keys));
}

/// Single identity key: encryption that does nothing (the insecure floor).
inline Scheme builtin_identity(std::size_t qubits, KeyModel key_model = KeyModel::kPrivate) {
    std::vector<SchemeKey> keys;
    keys.push_back(detail::pauli_key(std::string(qubits, 'I'), 1.0));
    return Scheme("identity", qubits, key_model, std::move(keys));
}

/// Classical one-time pad embedded in the computational basis: uniform
/// over the 2^n bit-flip (X-string) keys.
inline Scheme builtin_classical_otp(std::size_t qubits, KeyModel key_model = KeyModel::kPrivate) {
    if (qubits == 0) throw UsageError("classical_otp: qubit count must be >= 1");
    if (qubits >= 63 || (std::size_t{1} << qubits) > caps().max_keys) {
        throw CapacityError("classical_otp: 2^" + std::to_string(qubits) + " keys exceed cap " +
                            std::to_string(caps().max_keys));
    }
    const std::size_t count = std::size_t{1} << qubits;
    const double p = 1.0 / static_cast<double>(count);
    std::vector<SchemeKey> keys;
    keys.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        keys.push_back(detail::pauli_key(detail::pauli_string_for_index(i, qubits, "IX", 2), p));
    }
    return Scheme("classical_otp", qubits, key_model, std::move(keys));
}

/// Dispatch by name; `params` carries the pauli_subset strings.
inline Scheme builtin(const std::string& name, std::size_t qubits,
                      const std::vector<std::string>& params = {},
                      KeyModel key_model = KeyModel::kPrivate) {
    if (name == "qotp") return builtin_qotp(qubits, key_model);
    if (name == "pauli_subset") return builtin_pauli_subset(qubits, params, key_model);
    if (name == "identity") return builtin_identity(qubits, key_model);
    if (name == "classical_otp") return builtin_classical_otp(qubits, key_model);
    throw UsageError("builtin: unknown scheme '" + name +
                     "', expected one of qotp, pauli_subset, identity, classical_otp");
}

}  // namespace qsec
