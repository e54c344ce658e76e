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
#include <random>
#include <vector>

#include "qsec/linalg.hpp"

using namespace qsec;

namespace {

const ComplexMatrix kPauliX = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
const ComplexMatrix kPauliY =
    ComplexMatrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
const ComplexMatrix kPauliZ = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});

ComplexMatrix random_matrix(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            m(i, j) = cplx(u(rng), u(rng));
        }
    }
    return m;
}

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    const ComplexMatrix m = random_matrix(dim, rng);
    return m + dagger(m);
}

// Independent schoolbook product oracle: the literal triple loop over the
// definition, with no shared code with matmul.
ComplexMatrix schoolbook_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

// Direct diagonal sum, bypassing trace().
cplx direct_trace(const ComplexMatrix& a) {
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double reconstruction_error(const ComplexMatrix& a, const EigenDecomposition& eig) {
    const std::size_t n = a.dim();
    ComplexMatrix lam(n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = eig.eigenvalues[i];
    const ComplexMatrix rebuilt =
        schoolbook_product(schoolbook_product(eig.eigenvectors, lam), dagger(eig.eigenvectors));
    return max_abs_diff(a, rebuilt);
}

}  // namespace

TEST_CASE("matmul matches definition", "[linalg]") {
    std::mt19937_64 rng(11);

    SECTION("identity is neutral") {
        const ComplexMatrix a = random_matrix(4, rng);
        REQUIRE(max_abs_diff(matmul(ComplexMatrix::identity(4), a), a) == 0.0);
        REQUIRE(max_abs_diff(matmul(a, ComplexMatrix::identity(4)), a) == 0.0);
    }
    SECTION("Pauli X is an involution") {
        REQUIRE(approx_equal(matmul(kPauliX, kPauliX), ComplexMatrix::identity(2), 1e-15));
    }
    SECTION("random pair matches schoolbook oracle") {
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix a = random_matrix(4, rng);
            const ComplexMatrix b = random_matrix(4, rng);
            REQUIRE(max_abs_diff(matmul(a, b), schoolbook_product(a, b)) <= 1e-12);
        }
    }
    SECTION("dimension mismatch is a usage error") {
        REQUIRE_THROWS_AS(matmul(ComplexMatrix(2), ComplexMatrix(3)), UsageError);
    }
}

TEST_CASE("dagger", "[linalg]") {
    std::mt19937_64 rng(12);
    REQUIRE(max_abs_diff(dagger(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) == 0.0);
    REQUIRE(max_abs_diff(dagger(kPauliY), kPauliY) == 0.0);

    const ComplexMatrix a = random_matrix(5, rng);
    REQUIRE(max_abs_diff(dagger(dagger(a)), a) == 0.0);
}

TEST_CASE("tensor product", "[linalg]") {
    std::mt19937_64 rng(13);

    SECTION("identity times identity") {
        REQUIRE(max_abs_diff(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                             ComplexMatrix::identity(4)) == 0.0);
    }
    SECTION("X tensor Z block structure") {
        const ComplexMatrix expected = ComplexMatrix::from_rows({
            {0.0, 0.0, 1.0, 0.0},
            {0.0, 0.0, 0.0, -1.0},
            {1.0, 0.0, 0.0, 0.0},
            {0.0, -1.0, 0.0, 0.0},
        });
        REQUIRE(max_abs_diff(tensor(kPauliX, kPauliZ), expected) == 0.0);
    }
    SECTION("trace is multiplicative") {
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix a = random_matrix(3, rng);
            const ComplexMatrix b = random_matrix(4, rng);
            const cplx lhs = direct_trace(tensor(a, b));
            const cplx rhs = direct_trace(a) * direct_trace(b);
            REQUIRE(std::abs(lhs - rhs) <= 1e-12);
        }
    }
    SECTION("associativity") {
        const ComplexMatrix a = random_matrix(2, rng);
        const ComplexMatrix b = random_matrix(3, rng);
        const ComplexMatrix c = random_matrix(2, rng);
        REQUIRE(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <= 1e-12);
    }
    SECTION("capacity cap") {
        const ComplexMatrix big(64);
        const ComplexMatrix wide(32);
        REQUIRE_THROWS_AS(tensor(big, wide), CapacityError);
        REQUIRE_NOTHROW(tensor(ComplexMatrix(32), ComplexMatrix(32)));
    }
}

TEST_CASE("trace", "[linalg]") {
    std::mt19937_64 rng(14);
    REQUIRE(trace(ComplexMatrix::identity(4)) == cplx(4.0, 0.0));
    REQUIRE(trace(kPauliX) == cplx(0.0, 0.0));

    SECTION("cyclicity") {
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix a = random_matrix(4, rng);
            const ComplexMatrix b = random_matrix(4, rng);
            const cplx ab = trace(matmul(a, b));
            const cplx ba = trace(matmul(b, a));
            REQUIRE(std::abs(ab - ba) <= 1e-12);
        }
    }
    SECTION("trace_product agrees with trace of product") {
        const ComplexMatrix a = random_matrix(5, rng);
        const ComplexMatrix b = random_matrix(5, rng);
        REQUIRE(std::abs(trace_product(a, b) - trace(schoolbook_product(a, b))) <= 1e-12);
    }
}

TEST_CASE("hermitian_eig on known spectra", "[linalg][eig]") {
    SECTION("identity") {
        const EigenDecomposition eig = hermitian_eig(ComplexMatrix::identity(2));
        REQUIRE(eig.eigenvalues.size() == 2);
        REQUIRE(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(eig.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("Pauli X has spectrum {1, -1} with |+>, |-> eigenvectors") {
        const EigenDecomposition eig = hermitian_eig(kPauliX);
        REQUIRE(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(eig.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-12));

        // Compare projectors, not raw columns: columns are only fixed up to phase.
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const std::vector<cplx> plus = {inv_sqrt2, inv_sqrt2};
        const std::vector<cplx> minus = {inv_sqrt2, -inv_sqrt2};
        std::vector<cplx> col0 = {eig.eigenvectors(0, 0), eig.eigenvectors(1, 0)};
        std::vector<cplx> col1 = {eig.eigenvectors(0, 1), eig.eigenvectors(1, 1)};
        REQUIRE(max_abs_diff(outer(col0, col0), outer(plus, plus)) <= 1e-10);
        REQUIRE(max_abs_diff(outer(col1, col1), outer(minus, minus)) <= 1e-10);
    }
    SECTION("1x1 and zero matrices") {
        const EigenDecomposition one = hermitian_eig(ComplexMatrix::from_rows({{-2.5}}));
        REQUIRE(one.eigenvalues[0] == Catch::Approx(-2.5).margin(1e-15));
        const EigenDecomposition zero = hermitian_eig(ComplexMatrix(3));
        for (double lambda : zero.eigenvalues) REQUIRE(std::abs(lambda) <= 1e-15);
    }
    SECTION("non-Hermitian input is rejected") {
        ComplexMatrix m(2);
        m(0, 1) = cplx(1.0, 0.0);
        REQUIRE_THROWS_AS(hermitian_eig(m), UsageError);
    }
    SECTION("non-finite entries are rejected at construction") {
        std::vector<cplx> entries(4, cplx(0.0, 0.0));
        entries[1] = cplx(std::nan(""), 0.0);
        REQUIRE_THROWS_AS(ComplexMatrix(2, std::move(entries)), UsageError);
    }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality", "[linalg][eig]") {
    std::mt19937_64 rng(15);
    for (std::size_t dim : {2, 3, 4, 8, 16, 32}) {
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix a = random_hermitian(dim, rng);
            const EigenDecomposition eig = hermitian_eig(a);

            REQUIRE(reconstruction_error(a, eig) <= 1e-10);

            const ComplexMatrix gram =
                schoolbook_product(dagger(eig.eigenvectors), eig.eigenvectors);
            REQUIRE(max_abs_diff(gram, ComplexMatrix::identity(dim)) <= 1e-10);

            for (std::size_t i = 0; i + 1 < dim; ++i) {
                REQUIRE(eig.eigenvalues[i] >= eig.eigenvalues[i + 1]);
            }
        }
    }
}

TEST_CASE("trace_norm", "[linalg]") {
    std::mt19937_64 rng(16);

    SECTION("zero matrix") {
        REQUIRE(trace_norm(ComplexMatrix(4)) == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("Pauli Z") {
        REQUIRE(trace_norm(kPauliZ) == Catch::Approx(2.0).margin(1e-12));
    }
    SECTION("|0><0| minus the maximally mixed state") {
        // Eigenvalues of diag(1,0) - I/2 are +1/2 and -1/2, so the norm is 1.
        ComplexMatrix m(2);
        m(0, 0) = 0.5;
        m(1, 1) = -0.5;
        REQUIRE(trace_norm(m) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("norm axioms on random Hermitian triples") {
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix a = random_hermitian(4, rng);
            const ComplexMatrix b = random_hermitian(4, rng);
            const double na = trace_norm(a);
            const double nb = trace_norm(b);
            REQUIRE(na >= 0.0);
            REQUIRE(trace_norm(a + b) <= na + nb + 1e-9);
        }
        // Zero iff (numerically) zero.
        const ComplexMatrix tiny = 1e-12 * random_hermitian(4, rng);
        REQUIRE(trace_norm(tiny) <= 1e-10);
        const ComplexMatrix a = random_hermitian(4, rng);
        if (max_abs(a) > 1e-8) REQUIRE(trace_norm(a) > 1e-10);
    }
}

TEST_CASE("compensated accumulation is order independent", "[linalg]") {
    std::mt19937_64 rng(17);
    const int terms = 200;
    std::vector<double> weights(terms);
    std::vector<ComplexMatrix> mats;
    mats.reserve(terms);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double total = 0.0;
    for (int i = 0; i < terms; ++i) {
        weights[i] = u(rng);
        total += weights[i];
        mats.push_back(random_matrix(3, rng));
    }
    for (int i = 0; i < terms; ++i) weights[i] /= total;

    MatrixAccumulator forward(3);
    for (int i = 0; i < terms; ++i) forward.add(weights[i], mats[i]);
    MatrixAccumulator backward(3);
    for (int i = terms - 1; i >= 0; --i) backward.add(weights[i], mats[i]);

    REQUIRE(max_abs_diff(forward.value(), backward.value()) <= 1e-12);
}
