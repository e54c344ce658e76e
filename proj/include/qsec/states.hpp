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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsec/linalg.hpp"
#include "qsec/rng.hpp"

namespace qsec {

namespace tolerance {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kStateNorm = 1e-10;
inline constexpr double kTraceOne = 1e-9;
inline constexpr double kPsdSlack = 1e-9;   // minimum eigenvalue >= -kPsdSlack
inline constexpr double kUnitary = 1e-10;
inline constexpr double kKrausCompletion = 1e-9;
inline constexpr double kPovmCompletion = 1e-9;
inline constexpr double kProbability = 1e-9;
}  // namespace tolerance

//=========================================================================
// Pauli constructors
//=========================================================================

inline const ComplexMatrix& pauli(char symbol) {
    static const ComplexMatrix i2 = ComplexMatrix::identity(2);
    static const ComplexMatrix x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    static const ComplexMatrix y =
        ComplexMatrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
    static const ComplexMatrix z = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    switch (symbol) {
        case 'I': return i2;
        case 'X': return x;
        case 'Y': return y;
        case 'Z': return z;
        default:
            throw UsageError(std::string("pauli: unknown symbol '") + symbol +
                             "', expected one of I, X, Y, Z");
    }
}

/// Tensor product of single-qubit Paulis; the leftmost symbol acts on the
/// most significant qubit. E.g. pauli_string("XZ") == tensor(X, Z).
inline ComplexMatrix pauli_string(const std::string& spec) {
    if (spec.empty()) throw UsageError("pauli_string: spec must be nonempty");
    ComplexMatrix out = pauli(spec[0]);
    for (std::size_t i = 1; i < spec.size(); ++i) {
        out = tensor(out, pauli(spec[i]));
    }
    return out;
}

//=========================================================================
// PureState
//=========================================================================

/// Normalized state vector on n qubits. Plaintexts are arbitrary pure
/// states; classical bitstrings are the computational-basis special case.
class PureState {
  public:
    PureState(std::size_t qubits, std::vector<cplx> amplitudes)
        : qubits_(qubits), amplitudes_(std::move(amplitudes)) {
        if (qubits_ == 0) throw UsageError("PureState: qubit count must be >= 1");
        const std::size_t dim = std::size_t{1} << qubits_;
        if (amplitudes_.size() != dim) {
            throw UsageError("PureState: expected " + std::to_string(dim) +
                             " amplitudes, got " + std::to_string(amplitudes_.size()));
        }
        double norm2 = 0.0;
        for (const cplx& a : amplitudes_) {
            if (!is_finite(a)) throw UsageError("PureState: amplitudes must be finite");
            norm2 += std::norm(a);
        }
        if (std::abs(norm2 - 1.0) > tolerance::kStateNorm) {
            throw UsageError("PureState: squared norm " + std::to_string(norm2) +
                             " is not 1 within 1e-10");
        }
    }

    /// Computational-basis state |index> on the given number of qubits.
    static PureState computational(std::size_t qubits, std::size_t index) {
        const std::size_t dim = std::size_t{1} << qubits;
        if (index >= dim) {
            throw UsageError("PureState::computational: index " + std::to_string(index) +
                             " out of range for " + std::to_string(qubits) + " qubits");
        }
        std::vector<cplx> amps(dim, cplx(0.0, 0.0));
        amps[index] = 1.0;
        return PureState(qubits, std::move(amps));
    }

    /// Basis state from a bitstring, leftmost bit most significant: "01" -> |01>.
    static PureState from_bits(const std::string& bits) {
        if (bits.empty()) throw UsageError("PureState::from_bits: empty bitstring");
        std::size_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw UsageError(std::string("PureState::from_bits: bad character '") + c + "'");
            }
            index = (index << 1) | static_cast<std::size_t>(c - '0');
        }
        return computational(bits.size(), index);
    }

    static PureState plus() {
        const double r = 1.0 / std::sqrt(2.0);
        return PureState(1, {cplx(r, 0.0), cplx(r, 0.0)});
    }

    static PureState minus() {
        const double r = 1.0 / std::sqrt(2.0);
        return PureState(1, {cplx(r, 0.0), cplx(-r, 0.0)});
    }

    std::size_t qubits() const { return qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cplx>& amplitudes() const { return amplitudes_; }

  private:
    std::size_t qubits_;
    std::vector<cplx> amplitudes_;
};

/// Kronecker product of pure states (left factor most significant).
inline PureState tensor(const PureState& a, const PureState& b) {
    const std::size_t dim = a.dim() * b.dim();
    if (dim > caps().max_dim) {
        throw CapacityError("tensor(PureState): dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(caps().max_dim));
    }
    std::vector<cplx> amps;
    amps.reserve(dim);
    for (const cplx& x : a.amplitudes()) {
        for (const cplx& y : b.amplitudes()) amps.push_back(x * y);
    }
    return PureState(a.qubits() + b.qubits(), std::move(amps));
}

//=========================================================================
// DensityOperator
//=========================================================================

/// Validated quantum state on n qubits: Hermitian within 1e-10, unit trace
/// within 1e-9, minimum eigenvalue >= -1e-9. States failing validation are
/// rejected, never repaired.
class DensityOperator {
  public:
    DensityOperator(std::size_t qubits, ComplexMatrix matrix)
        : qubits_(qubits), matrix_(std::move(matrix)) {
        if (qubits_ == 0) throw UsageError("DensityOperator: qubit count must be >= 1");
        const std::size_t dim = std::size_t{1} << qubits_;
        if (matrix_.dim() != dim) {
            throw UsageError("DensityOperator: matrix dim " + std::to_string(matrix_.dim()) +
                             " does not match " + std::to_string(qubits_) + " qubits");
        }
        if (hermiticity_defect(matrix_) > tolerance::kHermitian) {
            throw UsageError("DensityOperator: matrix is not Hermitian within 1e-10");
        }
        const cplx tr = trace(matrix_);
        if (std::abs(tr - cplx(1.0, 0.0)) > tolerance::kTraceOne) {
            throw UsageError("DensityOperator: trace " + std::to_string(tr.real()) +
                             " is not 1 within 1e-9");
        }
        const EigenDecomposition eig = hermitian_eig(matrix_);
        const double min_eig = eig.eigenvalues.back();
        if (min_eig < -tolerance::kPsdSlack) {
            throw UsageError("DensityOperator: minimum eigenvalue " +
                             std::to_string(min_eig) + " below -1e-9");
        }
    }

    static DensityOperator maximally_mixed(std::size_t qubits) {
        const std::size_t dim = std::size_t{1} << qubits;
        ComplexMatrix m(dim);
        const double p = 1.0 / static_cast<double>(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = p;
        return DensityOperator(qubits, std::move(m));
    }

    std::size_t qubits() const { return qubits_; }
    std::size_t dim() const { return matrix_.dim(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    /// Tr(rho^2); 1 for pure states.
    double purity() const { return trace_product(matrix_, matrix_).real(); }

  private:
    std::size_t qubits_;
    ComplexMatrix matrix_;
};

/// |psi><psi| of a pure state.
inline DensityOperator pure_to_density(const PureState& s) {
    return DensityOperator(s.qubits(), outer(s.amplitudes(), s.amplitudes()));
}

//=========================================================================
// Channel
//=========================================================================

/// Quantum channel: a single unitary U (rho -> U rho U†) or a Kraus set
/// {K_i} (rho -> sum K_i rho K_i†) with sum K†K = I within 1e-9.
class Channel {
  public:
    enum class Kind { kUnitary, kKraus };

    static Channel unitary(ComplexMatrix u) {
        const ComplexMatrix gram = matmul(dagger(u), u);
        if (max_abs_diff(gram, ComplexMatrix::identity(u.dim())) > tolerance::kUnitary) {
            throw UsageError("Channel::unitary: U†U deviates from identity beyond 1e-10");
        }
        return Channel(Kind::kUnitary, {std::move(u)});
    }

    static Channel kraus(std::vector<ComplexMatrix> ops) {
        if (ops.empty()) throw UsageError("Channel::kraus: operator list must be nonempty");
        const std::size_t dim = ops.front().dim();
        ComplexMatrix completion(dim);
        for (const ComplexMatrix& k : ops) {
            if (k.dim() != dim) throw UsageError("Channel::kraus: mixed operator dimensions");
            completion = completion + matmul(dagger(k), k);
        }
        if (max_abs_diff(completion, ComplexMatrix::identity(dim)) > tolerance::kKrausCompletion) {
            throw UsageError("Channel::kraus: sum K†K deviates from identity beyond 1e-9");
        }
        return Channel(Kind::kKraus, std::move(ops));
    }

    Kind kind() const { return kind_; }
    bool is_unitary() const { return kind_ == Kind::kUnitary; }
    std::size_t dim() const { return ops_.front().dim(); }

    const ComplexMatrix& unitary_matrix() const {
        if (!is_unitary()) throw UsageError("Channel: not a unitary channel");
        return ops_.front();
    }

    const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }

    /// Raw action on a matrix, without DensityOperator validation.
    ComplexMatrix apply_matrix(const ComplexMatrix& m) const {
        if (m.dim() != dim()) {
            throw UsageError("Channel: state dim " + std::to_string(m.dim()) +
                             " does not match channel dim " + std::to_string(dim()));
        }
        if (is_unitary()) {
            return matmul(matmul(ops_.front(), m), dagger(ops_.front()));
        }
        MatrixAccumulator acc(m.dim());
        for (const ComplexMatrix& k : ops_) {
            acc.add(1.0, matmul(matmul(k, m), dagger(k)));
        }
        return acc.value();
    }

  private:
    Channel(Kind kind, std::vector<ComplexMatrix> ops) : kind_(kind), ops_(std::move(ops)) {}

    Kind kind_;
    std::vector<ComplexMatrix> ops_;
};

/// Apply a channel to a state. Dimension mismatches are usage errors; an
/// output failing the DensityOperator invariants is a numeric error.
inline DensityOperator apply_channel(const Channel& ch, const DensityOperator& rho) {
    if (ch.dim() != rho.dim()) {
        throw UsageError("apply_channel: channel dim " + std::to_string(ch.dim()) +
                         " does not match state dim " + std::to_string(rho.dim()));
    }
    ComplexMatrix out = ch.apply_matrix(rho.matrix());
    try {
        return DensityOperator(rho.qubits(), std::move(out));
    } catch (const UsageError& e) {
        throw NumericError(std::string("apply_channel: output state invalid: ") + e.what());
    }
}

//=========================================================================
// Povm
//=========================================================================

/// Positive operator-valued measure: Hermitian PSD effects summing to the
/// identity within 1e-9 entrywise, one label per outcome.
class Povm {
  public:
    Povm(std::vector<ComplexMatrix> effects, std::vector<std::string> labels)
        : effects_(std::move(effects)), labels_(std::move(labels)) {
        if (effects_.empty()) throw UsageError("Povm: effect list must be nonempty");
        if (labels_.size() != effects_.size()) {
            throw UsageError("Povm: need one label per effect");
        }
        const std::size_t dim = effects_.front().dim();
        ComplexMatrix completion(dim);
        for (const ComplexMatrix& e : effects_) {
            if (e.dim() != dim) throw UsageError("Povm: mixed effect dimensions");
            if (hermiticity_defect(e) > tolerance::kHermitian) {
                throw UsageError("Povm: effect is not Hermitian within 1e-10");
            }
            const EigenDecomposition eig = hermitian_eig(e);
            if (eig.eigenvalues.back() < -tolerance::kPsdSlack) {
                throw UsageError("Povm: effect has eigenvalue " +
                                 std::to_string(eig.eigenvalues.back()) + " below -1e-9");
            }
            completion = completion + e;
        }
        if (max_abs_diff(completion, ComplexMatrix::identity(dim)) > tolerance::kPovmCompletion) {
            throw UsageError("Povm: effects do not sum to identity within 1e-9");
        }
    }

    std::size_t size() const { return effects_.size(); }
    std::size_t dim() const { return effects_.front().dim(); }
    const ComplexMatrix& effect(std::size_t i) const { return effects_.at(i); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<ComplexMatrix>& effects() const { return effects_; }
    const std::vector<std::string>& labels() const { return labels_; }

  private:
    std::vector<ComplexMatrix> effects_;
    std::vector<std::string> labels_;
};

/// Born-rule outcome distribution p_m = Tr(rho E_m). Probabilities are
/// validated to lie in [-1e-9, 1+1e-9] and sum to 1 within 1e-9, then
/// clamped to [0, 1].
inline std::vector<double> measure_probabilities(const Povm& povm, const DensityOperator& rho) {
    if (povm.dim() != rho.dim()) {
        throw UsageError("measure_probabilities: POVM dim " + std::to_string(povm.dim()) +
                         " does not match state dim " + std::to_string(rho.dim()));
    }
    std::vector<double> probs;
    probs.reserve(povm.size());
    double sum = 0.0;
    for (std::size_t m = 0; m < povm.size(); ++m) {
        const double p = trace_product(rho.matrix(), povm.effect(m)).real();
        if (p < -tolerance::kProbability || p > 1.0 + tolerance::kProbability) {
            throw NumericError("measure_probabilities: outcome probability " +
                               std::to_string(p) + " outside [0, 1] tolerance band");
        }
        probs.push_back(p);
        sum += p;
    }
    if (std::abs(sum - 1.0) > tolerance::kProbability) {
        throw NumericError("measure_probabilities: probabilities sum to " +
                           std::to_string(sum) + ", expected 1 within 1e-9");
    }
    for (double& p : probs) p = std::min(1.0, std::max(0.0, p));
    return probs;
}

/// Draw an outcome index from a distribution using the given stream. The
/// draw is deterministic given the stream position.
inline std::size_t sample_outcome(const std::vector<double>& dist, RngStream& rng) {
    if (dist.empty()) throw UsageError("sample_outcome: empty distribution");
    double sum = 0.0;
    for (double p : dist) {
        if (!(p >= 0.0)) throw UsageError("sample_outcome: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tolerance::kProbability) {
        throw UsageError("sample_outcome: probabilities sum to " + std::to_string(sum));
    }
    const double u = rng.next_double();
    double cum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        cum += dist[i];
        if (u < cum) return i;
    }
    return dist.size() - 1;
}

}  // namespace qsec
