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

#include "hybrid/errors.hpp"
#include "hybrid/linalg.hpp"
#include "hybrid/rng.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace hybrid;
using Catch::Matchers::WithinAbs;

namespace
{
    CMatrix random_matrix(std::size_t r, std::size_t c, Rng &rng)
    {
        CMatrix A(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                A(i, j) = rng.complex_normal();
        return A;
    }

    double max_diff(const CMatrix &a, const CMatrix &b) { return (a - b).max_abs(); }

    // Inverse of a 3x3 matrix by cofactors; independent of the elimination code under test.
    CMatrix adjugate_inverse(const CMatrix &A)
    {
        auto m = [&](int i, int j) { return A(static_cast<std::size_t>(i % 3), static_cast<std::size_t>(j % 3)); };
        CMatrix C(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                C(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
                    m(i + 1, j + 1) * m(i + 2, j + 2) - m(i + 1, j + 2) * m(i + 2, j + 1);
        const cdouble det = A(0, 0) * C(0, 0) + A(0, 1) * C(1, 0) + A(0, 2) * C(2, 0);
        return C * (1.0 / det);
    }
}

TEST_CASE("matrix products and adjoint")
{
    const CMatrix A(2, 3, {{1, 1}, {2, 0}, {0, -1}, {3, 0}, {0, 2}, {1, 0}});
    const CMatrix Ah = A.adjoint();
    REQUIRE(Ah.rows() == 3);
    CHECK(Ah(2, 0) == cdouble(0, 1));
    CHECK(Ah(0, 0) == cdouble(1, -1));

    const CMatrix P = A * Ah;
    CHECK_THAT(P(0, 0).real(), WithinAbs(2 + 4 + 1, 1e-14));
    CHECK_THAT(P(0, 0).imag(), WithinAbs(0, 1e-14));
    CHECK_THAT(std::abs(P(0, 1) - std::conj(P(1, 0))), WithinAbs(0, 1e-14));

    const CVector v{{1, 0}, {0, 1}, {1, 1}};
    const CVector Av = A * std::span<const cdouble>(v);
    CHECK(Av[0] == cdouble(2, 2)); // (1+i) + 2i - i(1+i)
}

TEST_CASE("constructor rejects bad input")
{
    CHECK_THROWS_AS(CMatrix(2, 2, std::vector<cdouble>(3)), DimensionMismatch);
    CHECK_THROWS(CMatrix(1, 1, {cdouble(std::nan(""), 0)}));
    CHECK_THROWS_AS(CMatrix(2, 2) * CMatrix(3, 1), DimensionMismatch);
}

TEST_CASE("norm and dot")
{
    const CVector a{{3, 0}, {0, 4}};
    CHECK_THAT(norm(a), WithinAbs(5.0, 1e-15));
    const CVector b{{0, 1}, {1, 0}};
    // a^H b = 3*i + (-4i)*1
    const cdouble d = dot(a, b);
    CHECK_THAT(d.real(), WithinAbs(0.0, 1e-15));
    CHECK_THAT(d.imag(), WithinAbs(-1.0, 1e-15));
}

TEST_CASE("gram_inverse matches the cofactor inverse on random 3x3 matrices")
{
    Rng rng(11, 0);
    for (int rep = 0; rep < 200; ++rep)
    {
        const CMatrix G = random_matrix(3, 3, rng);
        const CMatrix oracle = adjugate_inverse(G.adjoint() * G);
        const CMatrix inv = gram_inverse(G);
        CHECK(max_diff(inv, oracle) < 1e-8 * std::max(1.0, oracle.max_abs()));
    }
}

TEST_CASE("gram_inverse of tall and well conditioned matrices inverts the Gram matrix")
{
    Rng rng(12, 0);
    for (std::size_t K : {1u, 2u, 4u, 8u, 12u})
    {
        const CMatrix G = random_matrix(4 * K, K, rng);
        const CMatrix gram = G.adjoint() * G;
        CHECK(max_diff(gram * gram_inverse(G), CMatrix::identity(K)) < 1e-9);
    }
    CHECK(max_diff(gram_inverse(CMatrix::identity(5)), CMatrix::identity(5)) == 0.0);
}

TEST_CASE("gram_inverse rejects singular and ill-conditioned input")
{
    CMatrix G(3, 3);
    G(0, 0) = 1;
    G(1, 1) = 1; // third column zero
    CHECK_THROWS_AS(gram_inverse(G), SingularMatrix);

    Rng rng(13, 0);
    CMatrix D = random_matrix(4, 4, rng);
    for (std::size_t i = 0; i < 4; ++i)
        D(i, 3) = D(i, 2) * cdouble(1.0 + 1e-9, 0.0); // nearly parallel columns
    CHECK_THROWS_AS(gram_inverse(D), SingularMatrix);

    CHECK_THROWS_AS(gram_inverse(CMatrix(2, 3)), DimensionMismatch);
}

TEST_CASE("hermitian_eigen reconstructs the matrix with orthonormal vectors")
{
    Rng rng(14, 0);
    for (std::size_t n : {1u, 2u, 3u, 6u, 10u})
    {
        const CMatrix B = random_matrix(n, n, rng);
        const CMatrix R = B.adjoint() * B;
        const HermitianEigen e = hermitian_eigen(R);
        REQUIRE(e.values.size() == n);
        for (std::size_t i = 1; i < n; ++i)
            CHECK(e.values[i - 1] <= e.values[i]);
        CHECK(max_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(n)) < 1e-10);
        const CMatrix rebuilt = e.vectors * CMatrix::diagonal(e.values) * e.vectors.adjoint();
        CHECK(max_diff(rebuilt, R) < 1e-10 * std::max(1.0, R.max_abs()));
    }
}

TEST_CASE("hermitian_eigen of a known 2x2 matrix")
{
    // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
    const CMatrix R(2, 2, {{2, 0}, {0, 1}, {0, -1}, {2, 0}});
    const HermitianEigen e = hermitian_eigen(R);
    CHECK_THAT(e.values[0], WithinAbs(1.0, 1e-13));
    CHECK_THAT(e.values[1], WithinAbs(3.0, 1e-13));
}

TEST_CASE("psd_sqrt squares back to its argument")
{
    Rng rng(15, 0);
    for (std::size_t n : {1u, 2u, 4u, 8u})
    {
        const CMatrix B = random_matrix(n, n, rng);
        const CMatrix R = B.adjoint() * B;
        const CMatrix S = psd_sqrt(R);
        CHECK(max_diff(S * S, R) < 1e-10 * std::max(1.0, R.max_abs()));
        CHECK(max_diff(S, S.adjoint()) < 1e-12);
        for (double v : hermitian_eigen(S).values)
            CHECK(v >= -1e-12);
    }
    CHECK(max_diff(psd_sqrt(CMatrix::identity(4)), CMatrix::identity(4)) == 0.0);

    const std::vector<double> d{4.0, 9.0, 0.25};
    const CMatrix S = psd_sqrt(CMatrix::diagonal(d));
    CHECK_THAT(S(1, 1).real(), WithinAbs(3.0, 1e-14));
    CHECK_THAT(S(2, 2).real(), WithinAbs(0.5, 1e-14));
}

TEST_CASE("psd_sqrt rejects non-Hermitian and indefinite input")
{
    const CMatrix nh(2, 2, {{1, 0}, {0.5, 0}, {0, 0}, {1, 0}});
    CHECK_THROWS_AS(psd_sqrt(nh), NotHermitian);
    const std::vector<double> d{1.0, -0.5};
    CHECK_THROWS_AS(psd_sqrt(CMatrix::diagonal(d)), NegativeEigenvalue);
    const std::vector<double> tiny{1.0, -1e-9};
    CHECK_NOTHROW(psd_sqrt(CMatrix::diagonal(tiny)));
}
