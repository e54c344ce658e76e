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

// Monte Carlo indistinguishability and semantic-security games, plus the
// two reduction constructions that tie them together: an adversary built
// from a distinguisher and a distinguisher built from an adversary.
//
// Win/lose statistics come from exact Bernoulli sampling of analytically
// computed outcome distributions, not trajectory simulation. Trial i draws
// from RngStream::for_trial(seed, i) in a fixed order — challenge branch,
// then key, then measurement/guess randomness — so results never depend on
// evaluation order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsec/analysis.hpp"
#include "qsec/rng.hpp"
#include "qsec/scheme.hpp"
#include "qsec/states.hpp"

namespace qsec {

struct GameResult {
    std::uint64_t trials = 0;
    std::uint64_t wins = 0;
    double empirical_success = 0.0;
    double empirical_advantage = 0.0;  // |2s-1| for IND games, s-1/2 for semantic
    double std_error = 0.0;            // sqrt(s(1-s)/trials)
    std::uint64_t seed = 0;
};

namespace detail {

inline GameResult finish_result(std::uint64_t trials, std::uint64_t wins, std::uint64_t seed,
                                bool signed_advantage) {
    GameResult r;
    r.trials = trials;
    r.wins = wins;
    r.seed = seed;
    r.empirical_success = static_cast<double>(wins) / static_cast<double>(trials);
    const double s = r.empirical_success;
    r.empirical_advantage = signed_advantage ? s - 0.5 : std::abs(2.0 * s - 1.0);
    r.std_error = std::sqrt(s * (1.0 - s) / static_cast<double>(trials));
    return r;
}

inline std::vector<double> key_distribution(const Scheme& s) {
    std::vector<double> probs;
    probs.reserve(s.keys().size());
    for (const SchemeKey& k : s.keys()) probs.push_back(k.probability);
    return probs;
}

}  // namespace detail

//=========================================================================
// Semantic-security instances
//=========================================================================

/// The "hint" handed to the semantic adversary: a free-text description of
/// the distinguishing circuit, optionally carrying the circuit itself as a
/// POVM. Adversaries that need the distinguisher reconstruct it from here.
struct SemanticHint {
    std::string description;
    std::optional<Povm> distinguisher;
};

/// One semantic-security challenge: the plaintext is drawn uniformly from
/// {x, y} and the adversary must output f of the drawn branch, where f is
/// the branch indicator (f = 1 on the x branch, f = 0 on the y branch).
struct SemanticInstance {
    std::string x_name;
    std::string y_name;
    PureState x;
    PureState y;
    SemanticHint hint;
};

inline SemanticInstance make_semantic_instance(std::string x_name, PureState x,
                                               std::string y_name, PureState y,
                                               SemanticHint hint = {}) {
    if (x.dim() != y.dim()) {
        throw UsageError("make_semantic_instance: branch states have different dims");
    }
    if (x_name == y_name && x.amplitudes() == y.amplitudes()) {
        throw UsageError("make_semantic_instance: branches are identical; need x != y");
    }
    return SemanticInstance{std::move(x_name), std::move(y_name), std::move(x), std::move(y),
                            std::move(hint)};
}

//=========================================================================
// Adversaries
//=========================================================================

/// A semantic adversary: a measurement policy mapping (ciphertext, hint)
/// to an output bit. Deterministic given its seed stream. Three strategies
/// exist — a POVM with an outcome-to-output map, a uniform guesser, and a
/// constant output.
class Adversary {
  public:
    static Adversary measurement(Povm povm, std::vector<int> outcome_to_output,
                                 std::string name) {
        if (outcome_to_output.size() != povm.size()) {
            throw UsageError("Adversary: need one output bit per POVM outcome");
        }
        for (int bit : outcome_to_output) {
            if (bit != 0 && bit != 1) {
                throw UsageError("Adversary: outputs must be 0 or 1");
            }
        }
        Adversary a(Kind::kMeasurement, std::move(name));
        a.povm_.emplace(std::move(povm));
        a.outcome_to_output_ = std::move(outcome_to_output);
        return a;
    }

    static Adversary uniform(std::string name = "uniform-baseline") {
        return Adversary(Kind::kUniform, std::move(name));
    }

    static Adversary constant(int output, std::string name = "constant-baseline") {
        if (output != 0 && output != 1) throw UsageError("Adversary: output must be 0 or 1");
        Adversary a(Kind::kConstant, std::move(name));
        a.constant_output_ = output;
        return a;
    }

    bool is_measurement() const { return kind_ == Kind::kMeasurement; }
    const std::string& name() const { return name_; }

    const Povm& povm() const {
        if (!povm_) throw UsageError("Adversary: strategy '" + name_ + "' has no measurement");
        return *povm_;
    }

    const std::vector<int>& outcome_map() const {
        if (!povm_) throw UsageError("Adversary: strategy '" + name_ + "' has no measurement");
        return outcome_to_output_;
    }

    /// Output bit for one ciphertext, drawing any randomness from `rng`.
    int respond(const DensityOperator& cipher, RngStream& rng) const {
        switch (kind_) {
            case Kind::kMeasurement: {
                const std::vector<double> dist = measure_probabilities(*povm_, cipher);
                return outcome_to_output_[sample_outcome(dist, rng)];
            }
            case Kind::kUniform:
                return static_cast<int>(rng.next_index(2));
            case Kind::kConstant:
                return constant_output_;
        }
        throw UsageError("Adversary: unreachable strategy kind");
    }

  private:
    enum class Kind { kMeasurement, kUniform, kConstant };

    Adversary(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    std::optional<Povm> povm_;
    std::vector<int> outcome_to_output_;
    int constant_output_ = 0;
};

//=========================================================================
// The two reductions of the equivalence proof
//=========================================================================

/// Necessity direction: an adversary that recovers the distinguishing
/// circuit from the instance hint and outputs what the circuit outputs.
/// POVM outcome 0 claims the x branch (f = 1), outcome 1 the y branch
/// (f = 0). The hint must carry the distinguisher description.
inline Adversary adversary_from_distinguisher(const Povm& povm, const SemanticInstance& inst) {
    if (!inst.hint.distinguisher) {
        throw UsageError("adversary_from_distinguisher: instance hint does not carry a "
                         "distinguisher POVM");
    }
    if (povm.size() != 2) {
        throw UsageError("adversary_from_distinguisher: distinguisher must have outcomes {0,1}");
    }
    return Adversary::measurement(povm, {1, 0}, "from-distinguisher");
}

/// The adversary that ignores the ciphertext entirely and guesses f
/// uniformly; its success converges to 1/2 whatever the scheme.
inline Adversary baseline_adversary(const SemanticInstance&) { return Adversary::uniform(); }

/// Deterministic baseline variant: always outputs the same bit. Success is
/// exactly 1/2 analytically because the branch is uniform.
inline Adversary constant_adversary(int output) { return Adversary::constant(output); }

/// Sufficiency direction: a distinguisher that runs the adversary on the
/// ciphertext and outputs 1 iff the adversary's output equals f on the x
/// branch. As a POVM this regroups the adversary's effects by output bit:
/// effect 0 (guess x) collects outcomes mapped to 1, effect 1 the rest.
inline Povm distinguisher_from_adversary(const Adversary& adv, const SemanticInstance& inst) {
    if (!adv.is_measurement()) {
        throw UsageError("distinguisher_from_adversary: adversary '" + adv.name() +
                         "' is not measurement-based");
    }
    const Povm& povm = adv.povm();
    if (povm.dim() != inst.x.dim()) {
        throw UsageError("distinguisher_from_adversary: POVM dim does not match instance dim");
    }
    ComplexMatrix claims_x(povm.dim());
    ComplexMatrix claims_y(povm.dim());
    for (std::size_t o = 0; o < povm.size(); ++o) {
        if (adv.outcome_map()[o] == 1) {
            claims_x = claims_x + povm.effect(o);
        } else {
            claims_y = claims_y + povm.effect(o);
        }
    }
    std::vector<ComplexMatrix> effects;
    effects.push_back(std::move(claims_x));
    effects.push_back(std::move(claims_y));
    return Povm(std::move(effects), {"0", "1"});
}

//=========================================================================
// Games
//=========================================================================

/// Indistinguishability game: each trial samples a uniform challenge bit b,
/// a key with probability p_k, encrypts x (b = 0) or y (b = 1), measures
/// the given two-outcome POVM, and wins iff the outcome equals b.
inline GameResult run_ind_game(const Scheme& s, const PureState& x, const PureState& y,
                               const Povm& povm, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw UsageError("run_ind_game: trials must be >= 1");
    if (povm.size() != 2) {
        throw UsageError("run_ind_game: POVM must have outcomes {0,1}, got " +
                         std::to_string(povm.size()));
    }
    if (x.dim() != s.dim() || y.dim() != s.dim() || povm.dim() != s.dim()) {
        throw UsageError("run_ind_game: plaintext or POVM dim does not match scheme dim " +
                         std::to_string(s.dim()));
    }
    const std::vector<double> key_probs = detail::key_distribution(s);

    // Per-(branch, key) outcome distributions, computed analytically once.
    std::vector<std::vector<double>> dist[2];
    for (int b = 0; b < 2; ++b) {
        const DensityOperator plain = pure_to_density(b == 0 ? x : y);
        dist[b].reserve(s.keys().size());
        for (const SchemeKey& k : s.keys()) {
            dist[b].push_back(measure_probabilities(povm, apply_channel(k.encrypt, plain)));
        }
    }

    std::uint64_t wins = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        RngStream t = RngStream::for_trial(seed, i);
        const std::size_t b = t.next_index(2);
        const std::size_t k = sample_outcome(key_probs, t);
        const std::size_t outcome = sample_outcome(dist[b][k], t);
        if (outcome == b) ++wins;
    }
    return detail::finish_result(trials, wins, seed, /*signed_advantage=*/false);
}

/// Semantic-security game: each trial samples the branch uniformly, samples
/// a key, encrypts the branch plaintext, runs the adversary on the
/// ciphertext, and wins iff its output equals f (1 on x, 0 on y). The
/// advantage is reported against the baseline's analytic 1/2, signed.
inline GameResult run_semantic_game(const Scheme& s, const SemanticInstance& inst,
                                    const Adversary& adv, std::uint64_t trials,
                                    std::uint64_t seed) {
    if (trials == 0) throw UsageError("run_semantic_game: trials must be >= 1");
    if (inst.x.dim() != s.dim() || inst.y.dim() != s.dim()) {
        throw UsageError("run_semantic_game: instance dim does not match scheme dim " +
                         std::to_string(s.dim()));
    }
    if (adv.is_measurement() && adv.povm().dim() != s.dim()) {
        throw UsageError("run_semantic_game: adversary POVM dim does not match scheme dim");
    }
    const std::vector<double> key_probs = detail::key_distribution(s);

    // Per-(branch, key) ciphertexts, computed once.
    std::vector<DensityOperator> ciphers[2];
    for (int b = 0; b < 2; ++b) {
        const DensityOperator plain = pure_to_density(b == 0 ? inst.x : inst.y);
        ciphers[b].reserve(s.keys().size());
        for (const SchemeKey& k : s.keys()) {
            ciphers[b].push_back(apply_channel(k.encrypt, plain));
        }
    }

    std::uint64_t wins = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        RngStream t = RngStream::for_trial(seed, i);
        const std::size_t branch = t.next_index(2);
        const std::size_t k = sample_outcome(key_probs, t);
        const int output = adv.respond(ciphers[branch][k], t);
        const int f_value = branch == 0 ? 1 : 0;
        if (output == f_value) ++wins;
    }
    return detail::finish_result(trials, wins, seed, /*signed_advantage=*/true);
}

//=========================================================================
// Analytic counterparts (reported side by side with the Monte Carlo runs)
//=========================================================================

/// Exact success probability of the IND game: the POVM faces the
/// key-averaged cipher states, so success is
/// (1/2)(Pr[outcome 0 | rho_x] + Pr[outcome 1 | rho_y]).
inline double analytic_ind_success(const Scheme& s, const PureState& x, const PureState& y,
                                   const Povm& povm) {
    if (povm.size() != 2) {
        throw UsageError("analytic_ind_success: POVM must have outcomes {0,1}");
    }
    const std::vector<double> px = measure_probabilities(povm, s.cipher_state(x));
    const std::vector<double> py = measure_probabilities(povm, s.cipher_state(y));
    return 0.5 * (px[0] + py[1]);
}

/// Exact success probability of the semantic game for the given adversary.
/// Baselines sit at exactly 1/2: their output is independent of the
/// uniformly drawn branch.
inline double analytic_semantic_success(const Scheme& s, const SemanticInstance& inst,
                                        const Adversary& adv) {
    if (!adv.is_measurement()) return 0.5;
    const Povm& povm = adv.povm();
    const std::vector<double> px = measure_probabilities(povm, s.cipher_state(inst.x));
    const std::vector<double> py = measure_probabilities(povm, s.cipher_state(inst.y));
    double win_x = 0.0;  // Pr[output == 1 | x branch]
    double win_y = 0.0;  // Pr[output == 0 | y branch]
    for (std::size_t o = 0; o < povm.size(); ++o) {
        if (adv.outcome_map()[o] == 1) {
            win_x += px[o];
        } else {
            win_y += py[o];
        }
    }
    return 0.5 * (win_x + win_y);
}

}  // namespace qsec
