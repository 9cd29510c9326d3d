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

#include "hybrid/linalg.hpp"
#include "hybrid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace hybrid
{
    CMatrix::CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cdouble(0.0, 0.0))
    {
    }

    CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows * cols)
            throw DimensionMismatch("CMatrix: entry count " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
        if (!all_finite())
            throw std::invalid_argument("CMatrix: entries must be finite");
    }

    CMatrix CMatrix::identity(std::size_t n)
    {
        CMatrix I(n, n);
        for (std::size_t i = 0; i < n; ++i)
            I(i, i) = 1.0;
        return I;
    }

    CMatrix CMatrix::diagonal(std::span<const double> d)
    {
        CMatrix D(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            D(i, i) = d[i];
        return D;
    }

    CVector CMatrix::col(std::size_t c) const
    {
        CVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    void CMatrix::set_col(std::size_t c, std::span<const cdouble> v)
    {
        if (v.size() != rows_)
            throw DimensionMismatch("CMatrix::set_col: length mismatch");
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, c) = v[r];
    }

    CMatrix CMatrix::adjoint() const
    {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    CMatrix CMatrix::operator*(const CMatrix &rhs) const
    {
        if (cols_ != rhs.rows_)
            throw DimensionMismatch("CMatrix product: inner dimensions differ");
        CMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
            {
                const cdouble a = (*this)(i, k);
                if (a == cdouble(0.0, 0.0))
                    continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    CVector CMatrix::operator*(std::span<const cdouble> v) const
    {
        if (v.size() != cols_)
            throw DimensionMismatch("CMatrix-vector product: length mismatch");
        CVector out(rows_, cdouble(0.0, 0.0));
        for (std::size_t i = 0; i < rows_; ++i)
        {
            cdouble acc(0.0, 0.0);
            for (std::size_t j = 0; j < cols_; ++j)
                acc += (*this)(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    CMatrix CMatrix::operator+(const CMatrix &rhs) const
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw DimensionMismatch("CMatrix sum: shapes differ");
        CMatrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] += rhs.data_[i];
        return out;
    }

    CMatrix CMatrix::operator-(const CMatrix &rhs) const
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw DimensionMismatch("CMatrix difference: shapes differ");
        CMatrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] -= rhs.data_[i];
        return out;
    }

    CMatrix CMatrix::operator*(cdouble s) const
    {
        CMatrix out = *this;
        for (auto &x : out.data_)
            x *= s;
        return out;
    }

    double CMatrix::frobenius_norm() const
    {
        double acc = 0.0;
        for (const auto &x : data_)
            acc += std::norm(x);
        return std::sqrt(acc);
    }

    double CMatrix::max_abs() const
    {
        double m = 0.0;
        for (const auto &x : data_)
            m = std::max(m, std::abs(x));
        return m;
    }

    bool CMatrix::all_finite() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const cdouble &x)
                           { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
    }

    double norm(std::span<const cdouble> v)
    {
        double acc = 0.0;
        for (const auto &x : v)
            acc += std::norm(x);
        return std::sqrt(acc);
    }

    cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b)
    {
        if (a.size() != b.size())
            throw DimensionMismatch("dot: length mismatch");
        cdouble acc(0.0, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            acc += std::conj(a[i]) * b[i];
        return acc;
    }

    namespace
    {
        double one_norm(const CMatrix &A)
        {
            double best = 0.0;
            for (std::size_t c = 0; c < A.cols(); ++c)
            {
                double s = 0.0;
                for (std::size_t r = 0; r < A.rows(); ++r)
                    s += std::abs(A(r, c));
                best = std::max(best, s);
            }
            return best;
        }
    }

    CMatrix gram_inverse(const CMatrix &G)
    {
        if (G.rows() < G.cols() || G.cols() == 0)
            throw DimensionMismatch("gram_inverse: expected a non-empty matrix with rows >= cols");

        const std::size_t n = G.cols();
        CMatrix A = G.adjoint() * G;
        const double scale = A.max_abs();
        const double pivot_floor = 1e-12 * scale;
        if (scale == 0.0)
            throw SingularMatrix("gram_inverse: zero Gram matrix");

        CMatrix work = A;
        CMatrix X = CMatrix::identity(n);

        for (std::size_t k = 0; k < n; ++k)
        {
            std::size_t piv = k;
            double best = std::abs(work(k, k));
            for (std::size_t r = k + 1; r < n; ++r)
            {
                const double m = std::abs(work(r, k));
                if (m > best)
                {
                    best = m;
                    piv = r;
                }
            }
            if (best < pivot_floor)
                throw SingularMatrix("gram_inverse: pivot " + std::to_string(best) + " below threshold");

            if (piv != k)
                for (std::size_t c = 0; c < n; ++c)
                {
                    std::swap(work(k, c), work(piv, c));
                    std::swap(X(k, c), X(piv, c));
                }

            const cdouble inv_p = 1.0 / work(k, k);
            for (std::size_t c = 0; c < n; ++c)
            {
                work(k, c) *= inv_p;
                X(k, c) *= inv_p;
            }
            for (std::size_t r = 0; r < n; ++r)
            {
                if (r == k)
                    continue;
                const cdouble f = work(r, k);
                if (f == cdouble(0.0, 0.0))
                    continue;
                for (std::size_t c = 0; c < n; ++c)
                {
                    work(r, c) -= f * work(k, c);
                    X(r, c) -= f * X(k, c);
                }
            }
        }

        if (one_norm(A) * one_norm(X) > kMaxConditionNumber)
            throw SingularMatrix("gram_inverse: condition number exceeds 1e12");
        return X;
    }

    HermitianEigen hermitian_eigen(const CMatrix &R)
    {
        const std::size_t n = R.rows();
        if (R.cols() != n)
            throw DimensionMismatch("hermitian_eigen: matrix must be square");

        CMatrix A = R;
        CMatrix V = CMatrix::identity(n);

        auto off_norm = [&]()
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j)
                        s += std::norm(A(i, j));
            return std::sqrt(s);
        };

        const double total = std::max(A.frobenius_norm(), 1e-300);
        for (int sweep = 0; sweep < 100 && off_norm() > 1e-15 * total; ++sweep)
        {
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                {
                    const double b = std::abs(A(p, q));
                    if (b <= 1e-300)
                        continue;
                    // Phase e rotates a_pq onto the positive real axis; then a real
                    // Jacobi rotation (c, s) annihilates it.
                    const cdouble e = A(p, q) / b;
                    const double app = A(p, p).real(), aqq = A(q, q).real();
                    const double tau = (aqq - app) / (2.0 * b);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const cdouble ec = std::conj(e);

                    // A <- A Q, V <- V Q with Q = [[c, s], [-s conj(e), c conj(e)]]
                    for (std::size_t i = 0; i < n; ++i)
                    {
                        const cdouble aip = A(i, p), aiq = A(i, q);
                        A(i, p) = c * aip - s * ec * aiq;
                        A(i, q) = s * aip + c * ec * aiq;
                        const cdouble vip = V(i, p), viq = V(i, q);
                        V(i, p) = c * vip - s * ec * viq;
                        V(i, q) = s * vip + c * ec * viq;
                    }
                    // A <- Q^H A
                    for (std::size_t j = 0; j < n; ++j)
                    {
                        const cdouble apj = A(p, j), aqj = A(q, j);
                        A(p, j) = c * apj - s * e * aqj;
                        A(q, j) = s * apj + c * e * aqj;
                    }
                    A(p, q) = 0.0;
                    A(q, p) = 0.0;
                    A(p, p) = A(p, p).real();
                    A(q, q) = A(q, q).real();
                }
        }

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                         { return A(a, a).real() < A(b, b).real(); });

        HermitianEigen out;
        out.values.resize(n);
        out.vectors = CMatrix(n, n);
        for (std::size_t k = 0; k < n; ++k)
        {
            out.values[k] = A(order[k], order[k]).real();
            for (std::size_t i = 0; i < n; ++i)
                out.vectors(i, k) = V(i, order[k]);
        }
        return out;
    }

    CMatrix psd_sqrt(const CMatrix &R)
    {
        const std::size_t n = R.rows();
        if (R.cols() != n || n == 0)
            throw DimensionMismatch("psd_sqrt: matrix must be square and non-empty");
        if (!R.all_finite())
            throw std::invalid_argument("psd_sqrt: non-finite entry");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (std::abs(R(i, j) - std::conj(R(j, i))) > 1e-10)
                    throw NotHermitian("psd_sqrt: |R(" + std::to_string(i) + "," + std::to_string(j) +
                                       ") - conj(R(" + std::to_string(j) + "," + std::to_string(i) + "))| > 1e-10");

        const HermitianEigen eig = hermitian_eigen(R);
        std::vector<double> root(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            const double lambda = eig.values[k];
            if (lambda < -1e-6)
                throw NegativeEigenvalue("psd_sqrt: eigenvalue " + std::to_string(lambda) + " < -1e-6");
            root[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
        }

        // S = V diag(root) V^H, symmetrised so the output is exactly Hermitian.
        CMatrix S(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
            {
                cdouble acc(0.0, 0.0);
                for (std::size_t k = 0; k < n; ++k)
                    acc += eig.vectors(i, k) * root[k] * std::conj(eig.vectors(j, k));
                if (i == j)
                    S(i, i) = acc.real();
                else
                {
                    S(i, j) = acc;
                    S(j, i) = std::conj(acc);
                }
            }
        return S;
    }
}
