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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qsec/common.hpp"

namespace qsec {

using cplx = std::complex<double>;

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

//=========================================================================
// ComplexMatrix
//=========================================================================

/// Dense square complex matrix, row-major storage. The substrate for all
/// operators in the toolkit: states, unitaries, Kraus maps, POVM effects.
/// Constructors reject non-finite entries.
class ComplexMatrix {
  public:
    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim)
        : dim_(dim), entries_(check_dim(dim) * dim, cplx(0.0, 0.0)) {}

    /// Wrap row-major entries; size must be dim*dim and every entry finite.
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
        : dim_(check_dim(dim)), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_) {
            throw UsageError("ComplexMatrix: entry count " +
                             std::to_string(entries_.size()) +
                             " does not match dim " + std::to_string(dim_));
        }
        check_finite();
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Build from nested row lists, e.g. {{0, 1}, {1, 0}}.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        const std::size_t n = rows.size();
        ComplexMatrix m(n);
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != n) {
                throw UsageError("ComplexMatrix: rows must form a square matrix");
            }
            std::size_t c = 0;
            for (cplx z : row) m(r, c++) = z;
            ++r;
        }
        m.check_finite();
        return m;
    }

    std::size_t dim() const { return dim_; }

    cplx operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

    const std::vector<cplx>& entries() const { return entries_; }
    std::vector<cplx>& entries() { return entries_; }

    void check_finite() const {
        for (const cplx& z : entries_) {
            if (!is_finite(z)) throw UsageError("ComplexMatrix: entries must be finite");
        }
    }

  private:
    static std::size_t check_dim(std::size_t dim) {
        if (dim == 0) throw UsageError("ComplexMatrix: dimension must be >= 1");
        return dim;
    }

    std::size_t dim_;
    std::vector<cplx> entries_;
};

//=========================================================================
// Elementwise arithmetic
//=========================================================================

namespace detail {
inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw UsageError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}
}  // namespace detail

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "operator+");
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < out.entries().size(); ++i) {
        out.entries()[i] = a.entries()[i] + b.entries()[i];
    }
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "operator-");
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < out.entries().size(); ++i) {
        out.entries()[i] = a.entries()[i] - b.entries()[i];
    }
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] = -a.entries()[i];
    return out;
}

inline ComplexMatrix operator*(cplx scalar, const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] = scalar * a.entries()[i];
    return out;
}

inline ComplexMatrix operator*(double scalar, const ComplexMatrix& a) {
    return cplx(scalar, 0.0) * a;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, cplx scalar) { return scalar * a; }

inline ComplexMatrix operator*(const ComplexMatrix& a, double scalar) {
    return cplx(scalar, 0.0) * a;
}

//=========================================================================
// Core operations
//=========================================================================

/// Standard matrix product. Both operands must share one dimension.
inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}

/// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

/// Kronecker product; the result dimension is a.dim() * b.dim() and must
/// stay within caps().max_dim.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    if (na > caps().max_dim / nb) {
        throw CapacityError("tensor: result dimension " + std::to_string(na) + "*" +
                            std::to_string(nb) + " exceeds cap " +
                            std::to_string(caps().max_dim));
    }
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Sum of diagonal entries.
inline cplx trace(const ComplexMatrix& a) {
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

/// trace(a * b) without forming the product.
inline cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "trace_product");
    const std::size_t n = a.dim();
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t += a(i, j) * b(j, i);
        }
    }
    return t;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cplx& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

/// Entrywise distance from a to its own adjoint: max |a - a†|.
inline double hermiticity_defect(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return m;
}

/// Outer product u v† of two equal-length vectors.
inline ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    if (u.size() != v.size() || u.empty()) {
        throw UsageError("outer: vectors must be nonempty and of equal length");
    }
    ComplexMatrix out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return out;
}

//=========================================================================
// Compensated accumulation
//=========================================================================

/// Entrywise Kahan-compensated accumulator for weighted matrix sums, so
/// that summation order changes results by less than 1e-12.
class MatrixAccumulator {
  public:
    explicit MatrixAccumulator(std::size_t dim) : sum_(dim), comp_(dim) {}

    void add(double weight, const ComplexMatrix& m) {
        detail::require_same_dim(sum_, m, "MatrixAccumulator::add");
        for (std::size_t i = 0; i < sum_.entries().size(); ++i) {
            const cplx y = weight * m.entries()[i] - comp_.entries()[i];
            const cplx t = sum_.entries()[i] + y;
            comp_.entries()[i] = (t - sum_.entries()[i]) - y;
            sum_.entries()[i] = t;
        }
    }

    const ComplexMatrix& value() const { return sum_; }

  private:
    ComplexMatrix sum_;
    ComplexMatrix comp_;
};

//=========================================================================
// Hermitian eigendecomposition
//=========================================================================

/// Spectral decomposition of a Hermitian matrix: A = V diag(λ) V†.
struct EigenDecomposition {
    std::vector<double> eigenvalues;  // sorted descending
    ComplexMatrix eigenvectors;       // orthonormal columns

    EigenDecomposition(std::vector<double> values, ComplexMatrix vectors)
        : eigenvalues(std::move(values)), eigenvectors(std::move(vectors)) {}
};

namespace detail {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kImagResidueTol = 1e-12;
inline constexpr int kMaxQlIterations = 50;

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form, accumulating the unitary so that input = v * T * v† throughout.
// On return d holds the diagonal of T and sub[i] = T[i+1][i].
inline double tridiagonalize(ComplexMatrix& a, ComplexMatrix& v,
                             std::vector<double>& d, std::vector<double>& sub) {
    const std::size_t n = a.dim();
    d.assign(n, 0.0);
    sub.assign(n > 1 ? n - 1 : 0, 0.0);
    double imag_residue = 0.0;

    std::vector<cplx> hv(n), p(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm2 += std::norm(a(i, k));
        const double colnorm = std::sqrt(colnorm2);
        if (colnorm == 0.0) continue;

        const cplx x0 = a(k + 1, k);
        const double x0abs = std::abs(x0);
        const cplx phase = (x0abs == 0.0) ? cplx(1.0, 0.0) : x0 / x0abs;
        const cplx beta = -phase * colnorm;

        // Householder vector hv = x - beta * e1; chosen sign avoids cancellation.
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) hv[i] = a(i, k);
        hv[k + 1] -= beta;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(hv[i]);
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;

        // Rank-2 update of the trailing block: A <- A - hv w† - w hv†.
        for (std::size_t i = k + 1; i < n; ++i) {
            cplx s(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * hv[j];
            p[i] = tau * s;
        }
        cplx vp(0.0, 0.0);
        for (std::size_t i = k + 1; i < n; ++i) vp += std::conj(hv[i]) * p[i];
        const double kcoef = 0.5 * tau * vp.real();
        for (std::size_t i = k + 1; i < n; ++i) w[i] = p[i] - kcoef * hv[i];
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx hvi = hv[i];
            const cplx wi = w[i];
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) -= hvi * std::conj(w[j]) + wi * std::conj(hv[j]);
            }
        }
        // The Hermitian update keeps the diagonal real analytically; record
        // the round-off drift, then truncate it.
        for (std::size_t i = k + 1; i < n; ++i) {
            imag_residue = std::max(imag_residue, std::abs(a(i, i).imag()));
            a(i, i) = cplx(a(i, i).real(), 0.0);
        }

        a(k + 1, k) = beta;
        a(k, k + 1) = std::conj(beta);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = cplx(0.0, 0.0);
            a(k, i) = cplx(0.0, 0.0);
        }

        // v <- v * H with H acting on indices k+1..n-1.
        for (std::size_t r = 0; r < n; ++r) {
            cplx s(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += v(r, j) * hv[j];
            s *= tau;
            for (std::size_t c = k + 1; c < n; ++c) v(r, c) -= s * std::conj(hv[c]);
        }
    }

    // Phase chain making the subdiagonal real nonnegative: T <- D† T D with
    // D = diag(phases), accumulated as v <- v * D.
    std::vector<cplx> phases(n, cplx(1.0, 0.0));
    for (std::size_t i = 1; i < n; ++i) {
        const cplx s = a(i, i - 1);
        const double m = std::abs(s);
        phases[i] = (m == 0.0) ? phases[i - 1] : phases[i - 1] * (s / m);
        sub[i - 1] = m;
    }
    for (std::size_t i = 0; i < n; ++i) {
        imag_residue = std::max(imag_residue, std::abs(a(i, i).imag()));
        d[i] = a(i, i).real();
        if (phases[i] != cplx(1.0, 0.0)) {
            for (std::size_t r = 0; r < n; ++r) v(r, i) *= phases[i];
        }
    }
    return imag_residue;
}

// Implicit-shift QL on the real symmetric tridiagonal (d, sub), rotating the
// complex eigenvector columns of v along the way.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& sub, ComplexMatrix& v) {
    const std::size_t n = d.size();
    if (n < 2) return;
    std::vector<double> e(sub);  // e[i] couples d[i] and d[i+1]
    e.push_back(0.0);
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        while (true) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iterations++ >= kMaxQlIterations) {
                throw NumericError("hermitian_eig: QL iteration failed to converge");
            }

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool underflow = false;
            for (std::size_t ii = m; ii-- > l;) {
                double f = s * e[ii];
                const double b = c * e[ii];
                r = std::hypot(f, g);
                e[ii + 1] = r;
                if (r == 0.0) {
                    d[ii + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[ii + 1] - p;
                r = (d[ii] - g) * s + 2.0 * c * b;
                p = s * r;
                d[ii + 1] = g + p;
                g = c * r - b;
                for (std::size_t k = 0; k < v.dim(); ++k) {
                    const cplx fk = v(k, ii + 1);
                    v(k, ii + 1) = s * v(k, ii) + c * fk;
                    v(k, ii) = c * v(k, ii) - s * fk;
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    sub.assign(e.begin(), e.end() - 1);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix via Householder tridiagonal
/// reduction followed by implicit-shift QL. The input must be Hermitian
/// within 1e-10 entrywise; it is symmetrized as (A + A†)/2 before the
/// decomposition. Eigenvalues come out sorted descending; within a
/// degenerate cluster the eigenvector order is unspecified.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
    const double defect = hermiticity_defect(a);
    if (defect > detail::kHermitianTol) {
        throw UsageError("hermitian_eig: matrix is not Hermitian (defect " +
                         std::to_string(defect) + ")");
    }

    const std::size_t n = a.dim();
    ComplexMatrix work(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            work(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    std::vector<double> d;
    std::vector<double> sub;
    const double residue = detail::tridiagonalize(work, v, d, sub);
    if (residue > detail::kImagResidueTol * std::max(1.0, max_abs(a))) {
        throw NumericError("hermitian_eig: eigenvalue imaginary residue " +
                           std::to_string(residue) + " exceeds tolerance");
    }
    detail::ql_implicit(d, sub, v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t i, std::size_t j) { return d[i] > d[j]; });

    std::vector<double> values(n);
    ComplexMatrix vectors(n);
    for (std::size_t c = 0; c < n; ++c) {
        values[c] = d[order[c]];
        for (std::size_t r = 0; r < n; ++r) vectors(r, c) = v(r, order[c]);
    }
    return EigenDecomposition(std::move(values), std::move(vectors));
}

/// Sum of |λ_i| over the real spectrum. The input must be Hermitian within
/// the same tolerance as hermitian_eig.
inline double trace_norm(const ComplexMatrix& a) {
    const EigenDecomposition eig = hermitian_eig(a);
    double s = 0.0;
    for (double lambda : eig.eigenvalues) s += std::abs(lambda);
    return s;
}

}  // namespace qsec
