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

// Random quantum objects for property tests and the built-in selftest.
// Every generator draws from a caller-owned RngStream, so identical seeds
// give identical objects across runs and platforms.

#include <cmath>
#include <cstddef>
#include <vector>

#include "qsec/linalg.hpp"
#include "qsec/rng.hpp"
#include "qsec/states.hpp"

namespace qsec {

/// Matrix with i.i.d. standard complex Gaussian entries.
inline ComplexMatrix random_matrix(std::size_t dim, RngStream& rng) {
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(r, c) = cplx(rng.next_gaussian(), rng.next_gaussian());
        }
    }
    return m;
}

/// (G + G†)/2 of a Gaussian matrix: Hermitian, GUE-like spectrum.
inline ComplexMatrix random_hermitian(std::size_t dim, RngStream& rng) {
    const ComplexMatrix g = random_matrix(dim, rng);
    return (g + dagger(g)) * cplx(0.5, 0.0);
}

/// Haar-like unitary built as exp(iH) for random Hermitian H, evaluated
/// through the eigendecomposition of H.
inline ComplexMatrix random_unitary(std::size_t dim, RngStream& rng) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const EigenDecomposition eig = hermitian_eig(h);
    // U = V diag(e^{i lambda}) V†
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t c = 0; c < dim; ++c) {
        const cplx phase = std::exp(cplx(0.0, eig.eigenvalues[c]));
        for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= phase;
    }
    return matmul(scaled, dagger(eig.eigenvectors));
}

/// Normalized Gaussian state vector.
inline PureState random_pure(std::size_t qubits, RngStream& rng) {
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<cplx> amps(dim);
    double norm2 = 0.0;
    for (cplx& a : amps) {
        a = cplx(rng.next_gaussian(), rng.next_gaussian());
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : amps) a *= inv;
    return PureState(qubits, std::move(amps));
}

/// Full-rank random state GG†/Tr(GG†).
inline DensityOperator random_density(std::size_t qubits, RngStream& rng) {
    const std::size_t dim = std::size_t{1} << qubits;
    const ComplexMatrix g = random_matrix(dim, rng);
    ComplexMatrix gg = matmul(g, dagger(g));
    const double tr = trace(gg).real();
    gg = gg * cplx(1.0 / tr, 0.0);
    return DensityOperator(qubits, std::move(gg));
}

/// CPTP channel from `count` Gaussian seeds G_i, normalized through the
/// inverse square root of S = sum G†G so that the Kraus completion holds
/// exactly up to roundoff.
inline Channel random_kraus_channel(std::size_t dim, std::size_t count, RngStream& rng) {
    if (count == 0) throw UsageError("random_kraus_channel: count must be >= 1");
    std::vector<ComplexMatrix> seeds;
    seeds.reserve(count);
    ComplexMatrix s(dim);
    for (std::size_t i = 0; i < count; ++i) {
        seeds.push_back(random_matrix(dim, rng));
        s = s + matmul(dagger(seeds.back()), seeds.back());
    }
    // S is Hermitian positive definite with probability one; S^{-1/2} via
    // its spectral decomposition.
    const EigenDecomposition eig = hermitian_eig(s);
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t c = 0; c < dim; ++c) {
        if (eig.eigenvalues[c] <= 0.0) {
            throw NumericError("random_kraus_channel: Gram matrix not positive definite");
        }
        const double f = 1.0 / std::sqrt(eig.eigenvalues[c]);
        for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= f;
    }
    const ComplexMatrix inv_sqrt = matmul(scaled, dagger(eig.eigenvectors));
    std::vector<ComplexMatrix> ops;
    ops.reserve(count);
    for (const ComplexMatrix& g : seeds) ops.push_back(matmul(g, inv_sqrt));
    return Channel::kraus(std::move(ops));
}

/// Two-outcome POVM {E, I-E} where E comes from a random Hermitian with
/// spectrum affinely rescaled into [0, 1].
inline Povm random_two_outcome_povm(std::size_t dim, RngStream& rng) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const EigenDecomposition eig = hermitian_eig(h);
    const double lo = eig.eigenvalues.back();
    const double hi = eig.eigenvalues.front();
    const double span = hi - lo;
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t c = 0; c < dim; ++c) {
        const double f = span > 0.0 ? (eig.eigenvalues[c] - lo) / span : 0.5;
        for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= f;
    }
    ComplexMatrix e = matmul(scaled, dagger(eig.eigenvectors));
    // Symmetrize away the roundoff skew so Povm validation sees a clean
    // Hermitian pair.
    e = (e + dagger(e)) * cplx(0.5, 0.0);
    ComplexMatrix rest = ComplexMatrix::identity(dim) - e;
    std::vector<ComplexMatrix> effects;
    effects.push_back(std::move(e));
    effects.push_back(std::move(rest));
    return Povm(std::move(effects), {"0", "1"});
}

}  // namespace qsec
