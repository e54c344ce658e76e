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

// Trace distance, the Helstrom optimal distinguisher, and the
// indistinguishability verdict over a scheme's plaintext pairs. The
// information-theoretic tier is fully evaluated; computational and
// physical tiers are reported as not evaluated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsec/scheme.hpp"
#include "qsec/states.hpp"

namespace qsec {

namespace detail {

inline constexpr double kEigZeroCutoff = 1e-12;  // |lambda| below this counts as zero
inline constexpr double kDistanceOvershoot = 1e-9;

// Flip the sign of the whole matrix if its first nonzero entry (row-major)
// has negative real part, or zero real and negative imaginary part. Since
// rho - sigma == -(sigma - rho) holds exactly in floating point, both
// argument orders canonicalize to the same matrix bit for bit, which makes
// trace_distance exactly symmetric.
inline ComplexMatrix canonical_sign(ComplexMatrix m) {
    for (const cplx& e : m.entries()) {
        if (e.real() != 0.0 || e.imag() != 0.0) {
            const bool flip = e.real() < 0.0 || (e.real() == 0.0 && e.imag() < 0.0);
            if (flip) {
                for (cplx& v : m.entries()) v = -v;
            }
            break;
        }
    }
    return m;
}

}  // namespace detail

/// Trace distance D(rho, sigma) = (1/2) sum |lambda_i(rho - sigma)|.
/// Exactly symmetric in its arguments and clamped to [0, 1] after a 1e-9
/// overshoot check.
inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw UsageError("trace_distance: dims " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()) + " differ");
    }
    const ComplexMatrix diff = detail::canonical_sign(rho.matrix() - sigma.matrix());
    const double d = 0.5 * trace_norm(diff);
    if (d > 1.0 + detail::kDistanceOvershoot) {
        throw NumericError("trace_distance: value " + std::to_string(d) +
                           " overshoots 1 beyond tolerance");
    }
    return std::min(1.0, std::max(0.0, d));
}

/// Two-outcome POVM {"rho", "sigma"} where the "rho" effect is the
/// projector onto the strictly positive eigenspace of rho - sigma
/// (eigenvalues above 1e-12; the zero subspace goes to "sigma"). Achieves
/// distinguishing success (1/2)(1 + D(rho, sigma)) under a uniform prior.
inline Povm helstrom_povm(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw UsageError("helstrom_povm: dims " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()) + " differ");
    }
    const std::size_t dim = rho.dim();
    const EigenDecomposition eig = hermitian_eig(rho.matrix() - sigma.matrix());
    // P+ = V_pos V_pos†, built by zeroing the non-positive columns.
    ComplexMatrix pos_cols = eig.eigenvectors;
    for (std::size_t c = 0; c < dim; ++c) {
        if (eig.eigenvalues[c] > detail::kEigZeroCutoff) continue;
        for (std::size_t r = 0; r < dim; ++r) pos_cols(r, c) = 0.0;
    }
    ComplexMatrix p_plus = matmul(pos_cols, dagger(pos_cols));
    p_plus = 0.5 * (p_plus + dagger(p_plus));
    ComplexMatrix rest = ComplexMatrix::identity(dim) - p_plus;
    std::vector<ComplexMatrix> effects;
    effects.push_back(std::move(p_plus));
    effects.push_back(std::move(rest));
    return Povm(std::move(effects), {"rho", "sigma"});
}

/// Optimal single-shot distinguishing success (1/2)(1 + D(rho, sigma)).
inline double helstrom_success(const DensityOperator& rho, const DensityOperator& sigma) {
    return 0.5 * (1.0 + trace_distance(rho, sigma));
}

//=========================================================================
// Indistinguishability verdict
//=========================================================================

enum class Verdict { kIndistinguishable, kDistinguishable };

inline std::string to_string(Verdict v) {
    return v == Verdict::kIndistinguishable ? "indistinguishable" : "distinguishable";
}

struct PairResult {
    std::string x_name;
    std::string y_name;
    double trace_distance;   // drives the verdict (joint distance in public mode)
    double helstrom_success; // (1/2)(1 + trace_distance)
    // Public mode only: the key-averaged distance, which ignores the
    // adversary's view of the key. Reported alongside, never the verdict.
    std::optional<double> key_averaged_distance;
};

/// Explicit attack on the worst plaintext pair: the Helstrom measurement
/// and the success probability it achieves.
struct AttackWitness {
    std::string x_name;
    std::string y_name;
    Povm povm;
    double success;
};

struct AdvantageReport {
    std::string scheme_name;
    KeyModel key_model = KeyModel::kPrivate;
    double threshold = 0.0;  // the concrete 1/p(n) stand-in
    std::vector<PairResult> pairs;  // lexicographic by (x_name, y_name)
    double max_distance = 0.0;
    Verdict verdict = Verdict::kIndistinguishable;
    std::optional<AttackWitness> witness;  // present iff distinguishable
    // Tier classification: only the first tier is evaluated by this tool.
    std::string tier = "information-theoretic";
};

/// Pairwise trace-distance sweep over the plaintext set. Private schemes
/// compare key-averaged cipher states; public schemes compare the joint
/// key-plus-ciphertext states (the adversary holds the key register) and
/// additionally report the key-averaged quantity for each pair. The
/// verdict is `indistinguishable` iff every distance is below `threshold`;
/// otherwise the report carries the Helstrom attack on the worst pair.
inline AdvantageReport indistinguishability_check(const Scheme& s, const PlaintextSet& p,
                                                  double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0) {
        throw UsageError("indistinguishability_check: threshold " + std::to_string(threshold) +
                         " outside (0, 1]");
    }
    if (p.size() < 2) {
        throw UsageError("indistinguishability_check: need at least 2 plaintexts, got " +
                         std::to_string(p.size()));
    }
    if (p.qubits() != s.qubits()) {
        throw UsageError("indistinguishability_check: plaintexts on " +
                         std::to_string(p.qubits()) + " qubits, scheme on " +
                         std::to_string(s.qubits()));
    }
    const bool is_public = s.key_model() == KeyModel::kPublic;

    // Cipher states per plaintext, computed once.
    std::vector<DensityOperator> averaged;
    std::vector<DensityOperator> joint;
    averaged.reserve(p.size());
    for (const PlaintextEntry& e : p.entries()) {
        averaged.push_back(s.cipher_state(e.state));
        if (is_public) joint.push_back(s.joint_cipher_state_public(e.state));
    }

    // Unordered pairs, each oriented and then sorted lexicographically by
    // (x_name, y_name) so report assembly is deterministic.
    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const bool in_order = p.entry(i).name <= p.entry(j).name;
            index_pairs.emplace_back(in_order ? i : j, in_order ? j : i);
        }
    }
    std::sort(index_pairs.begin(), index_pairs.end(),
              [&](const auto& a, const auto& b) {
                  const auto key_a = std::make_pair(p.entry(a.first).name, p.entry(a.second).name);
                  const auto key_b = std::make_pair(p.entry(b.first).name, p.entry(b.second).name);
                  return key_a < key_b;
              });

    AdvantageReport report;
    report.scheme_name = s.name();
    report.key_model = s.key_model();
    report.threshold = threshold;

    std::size_t worst_pair = 0;
    for (const auto& [i, j] : index_pairs) {
        PairResult pr;
        pr.x_name = p.entry(i).name;
        pr.y_name = p.entry(j).name;
        if (is_public) {
            pr.trace_distance = trace_distance(joint[i], joint[j]);
            pr.key_averaged_distance = trace_distance(averaged[i], averaged[j]);
        } else {
            pr.trace_distance = trace_distance(averaged[i], averaged[j]);
        }
        pr.helstrom_success = 0.5 * (1.0 + pr.trace_distance);
        if (pr.trace_distance > report.max_distance) {
            report.max_distance = pr.trace_distance;
            worst_pair = report.pairs.size();
        }
        report.pairs.push_back(std::move(pr));
    }

    report.verdict = report.max_distance < threshold ? Verdict::kIndistinguishable
                                                     : Verdict::kDistinguishable;
    if (report.verdict == Verdict::kDistinguishable) {
        const PairResult& worst = report.pairs[worst_pair];
        // Recover the pair's states to build the attack measurement.
        std::size_t xi = 0, yi = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.entry(i).name == worst.x_name) xi = i;
            if (p.entry(i).name == worst.y_name) yi = i;
        }
        const DensityOperator& a = is_public ? joint[xi] : averaged[xi];
        const DensityOperator& b = is_public ? joint[yi] : averaged[yi];
        report.witness = AttackWitness{worst.x_name, worst.y_name, helstrom_povm(a, b),
                                       worst.helstrom_success};
    }
    return report;
}

}  // namespace qsec
