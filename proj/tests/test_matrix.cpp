#include <doctest.h>

#include <cmath>

#include "kstiefel/matrix.hpp"

using namespace kst;

namespace {

const Field kFields[] = {Field::R, Field::C, Field::H};

Scalar rand_scalar(Rng& rng, Field f) {
    Scalar s = scalar_zero(f);
    for (int c = 0; c < real_dim(f); ++c) s.set_component(c, rng.normal());
    return s;
}

}  // namespace

TEST_CASE("shape and field guards") {
    KMatrix a(Field::C, 2, 3), b(Field::C, 2, 3), c(Field::R, 2, 3);
    CHECK_NOTHROW(add(a, b));
    CHECK_THROWS_AS(add(a, c), FieldMismatchError);
    CHECK_THROWS_AS(matmul(a, b), DimensionError);
    CHECK_THROWS_AS(a.at(2, 0), DimensionError);
    CHECK_THROWS_AS(KMatrix(Field::R, -1, 2), DimensionError);
}

TEST_CASE("adjoint reverses products") {
    Rng rng(3);
    for (Field f : kFields) {
        KMatrix a = random_matrix(rng, f, 4, 3);
        KMatrix b = random_matrix(rng, f, 3, 5);
        KMatrix lhs = adjoint(matmul(a, b));
        KMatrix rhs = matmul(adjoint(b), adjoint(a));
        CHECK(max_abs(sub(lhs, rhs)) <= 1e-12 * std::max(1.0, max_abs(lhs)));
    }
}

TEST_CASE("inner product is hermitian and sesquilinear") {
    Rng rng(5);
    for (Field f : kFields) {
        KMatrix x = random_matrix(rng, f, 6, 1);
        KMatrix y = random_matrix(rng, f, 6, 1);
        Scalar lam = rand_scalar(rng, f);
        Scalar mu = rand_scalar(rng, f);

        // [x, y] = conj([y, x])
        CHECK(scalar_close(inner_product(x, y), conj(inner_product(y, x)),
                           1e-12));

        // [x lam, y mu] = conj(lam) [x, y] mu
        KMatrix xl(f, 6, 1), ym(f, 6, 1);
        for (int r = 0; r < 6; ++r) {
            xl.set(r, 0, x.at(r, 0) * lam);
            ym.set(r, 0, y.at(r, 0) * mu);
        }
        Scalar want = conj(lam) * inner_product(x, y) * mu;
        CHECK(scalar_close(inner_product(xl, ym), want,
                           1e-11 * std::max(1.0, abs(want))));

        // Positivity: [x, x] is a nonnegative real.
        Scalar sq = inner_product(x, x);
        CHECK(real_part(sq) >= 0.0);
        CHECK(std::abs(sq.i) + std::abs(sq.j) + std::abs(sq.k) <= 1e-12);
    }
}

TEST_CASE("adjoint is the inner-product transpose") {
    Rng rng(9);
    for (Field f : kFields) {
        KMatrix a = random_matrix(rng, f, 5, 3);
        KMatrix v = random_matrix(rng, f, 5, 1);
        KMatrix w = random_matrix(rng, f, 3, 1);
        // [a* v, w] = [v, a w]
        Scalar lhs = inner_product(matmul(adjoint(a), v), w);
        Scalar rhs = inner_product(v, matmul(a, w));
        CHECK(scalar_close(lhs, rhs, 1e-11 * std::max(1.0, abs(lhs))));
    }
}

TEST_CASE("gauss_inverse round trip on conditioned inputs") {
    Rng rng(21);
    for (Field f : kFields) {
        for (int t = 0; t < 40; ++t) {
            int n = 1 + static_cast<int>(rng.next_u64() % 5);
            // Controlled condition number: unitary x diag x unitary with
            // singular values in [0.5, 2].
            KMatrix u = random_isometry(rng, f, n, n);
            KMatrix v = random_isometry(rng, f, n, n);
            KMatrix d(f, n, n);
            for (int i = 0; i < n; ++i)
                d.set(i, i, scalar_real(f, 0.5 + 1.5 * rng.uniform()));
            KMatrix a = matmul(matmul(u, d), v);

            KMatrix inv = gauss_inverse(a);
            KMatrix id = KMatrix::identity(f, n);
            CHECK(max_abs(sub(matmul(a, inv), id)) <= 1e-9);
            CHECK(max_abs(sub(matmul(inv, a), id)) <= 1e-9);
        }
    }
    KMatrix z(Field::C, 2, 2);
    CHECK_THROWS_AS(gauss_inverse(z), SingularMatrixError);
}

TEST_CASE("rank detects factorized rank exactly") {
    Rng rng(23);
    for (Field f : kFields) {
        for (int t = 0; t < 40; ++t) {
            int rows = 2 + static_cast<int>(rng.next_u64() % 4);
            int cols = 2 + static_cast<int>(rng.next_u64() % 4);
            int r = static_cast<int>(rng.next_u64() %
                                     (std::min(rows, cols) + 1));
            KMatrix m = (r == 0)
                            ? KMatrix(f, rows, cols)
                            : matmul(random_matrix(rng, f, rows, r),
                                     random_matrix(rng, f, r, cols));
            CHECK(rank(m) == r);
            // Duplicating columns or stacking zero rows never raises it.
            CHECK(rank(hstack(m, m)) == r);
            CHECK(rank(vstack(m, KMatrix(f, 2, cols))) == r);
        }
    }
}

TEST_CASE("rank ambiguity flags pivots near the threshold") {
    Tolerance tol;  // eps_rank 1e-8
    KMatrix crisp(Field::R, 2, 2);
    crisp.set(0, 0, scalar_real(Field::R, 1.0));
    crisp.set(1, 1, scalar_real(Field::R, 1e-12));
    CHECK_FALSE(rank_info(crisp, tol).ambiguous());
    CHECK(rank(crisp, tol) == 1);

    KMatrix shady(Field::R, 2, 2);
    shady.set(0, 0, scalar_real(Field::R, 1.0));
    shady.set(1, 1, scalar_real(Field::R, 5e-8));  // 5x the threshold
    RankInfo info = rank_info(shady, tol);
    CHECK(info.rank == 2);
    CHECK(info.ambiguous());

    KMatrix shady2(Field::R, 2, 2);
    shady2.set(0, 0, scalar_real(Field::R, 1.0));
    shady2.set(1, 1, scalar_real(Field::R, 5e-9));  // threshold / 2
    RankInfo info2 = rank_info(shady2, tol);
    CHECK(info2.rank == 1);
    CHECK(info2.ambiguous());
}

TEST_CASE("image_orthobasis spans and is orthonormal") {
    Rng rng(29);
    for (Field f : kFields) {
        int rows = 6, r = 3;
        KMatrix m = matmul(random_matrix(rng, f, rows, r),
                           random_matrix(rng, f, r, 5));
        KMatrix q = image_orthobasis(m);
        CHECK(q.cols() == r);
        CHECK(is_isometry(q));
        // Projection onto the basis reproduces every original column.
        KMatrix proj = matmul(q, adjoint(q));
        double scale = std::max(1.0, max_abs(m));
        CHECK(max_abs(sub(matmul(proj, m), m)) <= 1e-8 * scale);
    }
    CHECK(image_orthobasis(KMatrix(Field::H, 4, 3)).cols() == 0);
}

TEST_CASE("skew_self_split parts and reassembly") {
    Rng rng(31);
    for (Field f : kFields) {
        KMatrix m = random_matrix(rng, f, 4, 4);
        auto [x, z] = skew_self_split(m);
        CHECK(max_abs(add(x, adjoint(x))) <= 1e-14);
        CHECK(max_abs(sub(z, adjoint(z))) <= 1e-14);
        CHECK(max_abs(sub(add(x, z), m)) <= 1e-14);
    }
}

TEST_CASE("block assembly round trips") {
    Rng rng(37);
    KMatrix a = random_matrix(rng, Field::C, 3, 2);
    KMatrix b = random_matrix(rng, Field::C, 2, 2);
    KMatrix v = vstack(a, b);
    CHECK(max_abs(sub(sub_block(v, 0, 0, 3, 2), a)) == 0.0);
    CHECK(max_abs(sub(sub_block(v, 3, 0, 2, 2), b)) == 0.0);
    KMatrix s = direct_sum(a, b);
    CHECK(s.rows() == 5);
    CHECK(s.cols() == 4);
    CHECK(max_abs(sub_block(s, 0, 2, 3, 2)) == 0.0);
    CHECK_THROWS_AS(sub_block(a, 0, 0, 4, 2), DimensionError);
}

TEST_CASE("random_isometry is deterministic per seed") {
    for (Field f : kFields) {
        Rng r1(123), r2(123), r3(124);
        KMatrix a = random_isometry(r1, f, 5, 3);
        KMatrix b = random_isometry(r2, f, 5, 3);
        KMatrix c = random_isometry(r3, f, 5, 3);
        CHECK(is_isometry(a));
        CHECK(max_abs(sub(a, b)) == 0.0);
        CHECK(max_abs(sub(a, c)) > 0.0);
    }
    Rng rng(1);
    CHECK_THROWS_AS(random_isometry(rng, Field::R, 2, 3), DimensionError);
}

TEST_CASE("rank scale floor keeps roundoff noise from counting as signal") {
    KMatrix noise(Field::R, 2, 2);
    noise.set(0, 0, scalar_real(Field::R, 1e-16));
    noise.set(1, 1, scalar_real(Field::R, -2e-16));
    CHECK(rank_info(noise).rank == 2);  // relative to its own largest entry
    RankInfo floored = rank_info(noise, {}, 1.0);
    CHECK(floored.rank == 0);
    CHECK_FALSE(floored.ambiguous());
    CHECK(image_orthobasis(noise, {}, 1.0).cols() == 0);
}
