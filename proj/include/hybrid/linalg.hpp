// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYBRID_LINALG_HPP
#define HYBRID_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hybrid
{
    using cdouble = std::complex<double>;
    using CVector = std::vector<cdouble>;

    // Dense complex matrix, row-major storage. Sized for the small problems in this
    // library (K x K Gram matrices, M x K channels with M up to a few thousand).
    class CMatrix
    {
    public:
        CMatrix() = default;
        CMatrix(std::size_t rows, std::size_t cols);                       // zero-filled
        CMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries); // throws on size mismatch or non-finite entries

        static CMatrix identity(std::size_t n);
        static CMatrix diagonal(std::span<const double> d);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        bool empty() const { return data_.empty(); }

        cdouble &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const cdouble &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        std::span<const cdouble> data() const { return data_; }

        CVector col(std::size_t c) const;
        void set_col(std::size_t c, std::span<const cdouble> v);

        CMatrix adjoint() const;
        CMatrix operator*(const CMatrix &rhs) const;
        CVector operator*(std::span<const cdouble> v) const;
        CMatrix operator+(const CMatrix &rhs) const;
        CMatrix operator-(const CMatrix &rhs) const;
        CMatrix operator*(cdouble s) const;

        double frobenius_norm() const;
        double max_abs() const;
        bool all_finite() const;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cdouble> data_;
    };

    // Vector helpers
    double norm(std::span<const cdouble> v);
    cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b); // a^H b

    // Condition-number ceiling for Gram solves. Above this the solve is rejected.
    inline constexpr double kMaxConditionNumber = 1e12;

    // Returns (G^H G)^-1 for a G with rows >= cols, by Gaussian elimination with partial
    // pivoting. Throws SingularMatrix when a pivot falls below 1e-12 * max|G^H G| or the
    // 1-norm condition number exceeds kMaxConditionNumber.
    CMatrix gram_inverse(const CMatrix &G);

    // Hermitian eigendecomposition by cyclic Jacobi rotations. Eigenvalues ascending,
    // eigenvectors in the columns of `vectors`.
    struct HermitianEigen
    {
        std::vector<double> values;
        CMatrix vectors;
    };
    HermitianEigen hermitian_eigen(const CMatrix &R);

    // Principal square root of a Hermitian PSD matrix.
    // Throws NotHermitian when |R_ij - conj(R_ji)| > 1e-10 and NegativeEigenvalue when an
    // eigenvalue is below -1e-6. Slightly negative eigenvalues above that are clamped to 0.
    CMatrix psd_sqrt(const CMatrix &R);
}

#endif
