#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kstiefel/spectral.hpp"

using namespace kst;

namespace {

const Field kFields[] = {Field::R, Field::C, Field::H};

// Test-local oracle: eigenvalues of a 2x2 self-adjoint matrix
//   [ a  x ]
//   [ x* b ]
// with real diagonal are (a+b)/2 -+ sqrt(((a-b)/2)^2 + |x|^2), over every
// field, because the off-diagonal entry only enters through its norm.
std::pair<double, double> analytic_2x2(double a, double b, double xnorm) {
    double mid = 0.5 * (a + b);
    double rad = std::sqrt(0.25 * (a - b) * (a - b) + xnorm * xnorm);
    return {mid - rad, mid + rad};
}

// Test-local adjoint embedding H -> M_2(C), kept separate from the
// library's copy on purpose.
KMatrix embed_h(const KMatrix& m) {
    KMatrix out(Field::C, 2 * m.rows(), 2 * m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            const Scalar& q = m.at(r, c);
            out.set(2 * r, 2 * c, scalar_complex(q.re, q.i));
            out.set(2 * r, 2 * c + 1, scalar_complex(q.j, q.k));
            out.set(2 * r + 1, 2 * c, scalar_complex(-q.j, q.k));
            out.set(2 * r + 1, 2 * c + 1, scalar_complex(q.re, -q.i));
        }
    return out;
}

KMatrix reconstruct(const SpectralDecomposition& sd, Field f) {
    return matmul(matmul(sd.q, diag_real(f, sd.lambda)), adjoint(sd.q));
}

}  // namespace

TEST_CASE("embedding H into M_2(C) is a *-homomorphism") {
    Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        KMatrix a = random_matrix(rng, Field::H, 3, 3);
        KMatrix b = random_matrix(rng, Field::H, 3, 3);
        KMatrix lhs = embed_h(matmul(a, b));
        KMatrix rhs = matmul(embed_h(a), embed_h(b));
        CHECK(max_abs(sub(lhs, rhs)) <= 1e-12 * std::max(1.0, max_abs(lhs)));
        CHECK(max_abs(sub(embed_h(adjoint(a)), adjoint(embed_h(a)))) == 0.0);
    }
}

TEST_CASE("eigh on the j-coupled 2x2 quaternion matrix") {
    KMatrix x(Field::H, 2, 2);
    x.set(0, 1, scalar_quat({0, 0, 1, 0}));
    x.set(1, 0, scalar_quat({0, 0, -1, 0}));
    SpectralDecomposition sd = eigh(x);
    REQUIRE(sd.lambda.size() == 2);
    CHECK(sd.lambda[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sd.lambda[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs(sub(reconstruct(sd, Field::H), x)) <= 1e-12);
}

TEST_CASE("eigh matches the analytic 2x2 spectrum") {
    Rng rng(43);
    for (Field f : kFields) {
        for (int t = 0; t < 100; ++t) {
            KMatrix x = random_selfadjoint(rng, f, 2);
            auto [lo, hi] = analytic_2x2(real_part(x.at(0, 0)),
                                         real_part(x.at(1, 1)),
                                         abs(x.at(0, 1)));
            SpectralDecomposition sd = eigh(x);
            CHECK(std::abs(sd.lambda[0] - lo) <= 1e-12 * std::max(1.0, std::abs(lo)));
            CHECK(std::abs(sd.lambda[1] - hi) <= 1e-12 * std::max(1.0, std::abs(hi)));
        }
    }
}

TEST_CASE("eigh reconstruction and orthonormality, random draws") {
    Rng rng(47);
    for (Field f : kFields) {
        for (int t = 0; t < 60; ++t) {
            int k = 1 + static_cast<int>(rng.next_u64() % 8);
            KMatrix x = random_selfadjoint(rng, f, k);
            SpectralDecomposition sd = eigh(x);
            CHECK(frobenius(sub(reconstruct(sd, f), x)) <=
                  1e-9 * std::max(1.0, frobenius(x)));
            CHECK(max_abs(sub(matmul(adjoint(sd.q), sd.q),
                              KMatrix::identity(f, k))) <= 1e-10);
            CHECK(std::is_sorted(sd.lambda.begin(), sd.lambda.end()));
        }
    }
}

TEST_CASE("quaternionic eigenvalues match the embedding oracle, doubled") {
    Rng rng(53);
    for (int t = 0; t < 60; ++t) {
        int k = 1 + static_cast<int>(rng.next_u64() % 6);
        KMatrix x = random_selfadjoint(rng, Field::H, k);
        SpectralDecomposition got = eigh(x);
        SpectralDecomposition ref = eigh(embed_h(x));
        REQUIRE(ref.lambda.size() == 2 * got.lambda.size());
        for (int i = 0; i < k; ++i) {
            CHECK(std::abs(got.lambda[i] - ref.lambda[2 * i]) <= 1e-8);
            CHECK(std::abs(got.lambda[i] - ref.lambda[2 * i + 1]) <= 1e-8);
        }
    }
}

TEST_CASE("eigh canonical output is reproducible") {
    Rng r1(59), r2(59);
    KMatrix x1 = random_selfadjoint(r1, Field::H, 5);
    KMatrix x2 = random_selfadjoint(r2, Field::H, 5);
    SpectralDecomposition a = eigh(x1), b = eigh(x2);
    CHECK(max_abs(sub(a.q, b.q)) == 0.0);
}

TEST_CASE("eigh rejects non-self-adjoint input") {
    KMatrix x(Field::C, 2, 2);
    x.set(0, 1, scalar_complex(1, 0));
    CHECK_THROWS_AS(eigh(x), StructureError);
}

TEST_CASE("exp on nilpotent and diagonal matrices") {
    KMatrix n(Field::R, 2, 2);
    n.set(0, 1, scalar_real(Field::R, 3.0));
    KMatrix e = exp_matrix(n);  // I + N since N^2 = 0
    CHECK(real_part(e.at(0, 0)) == doctest::Approx(1.0));
    CHECK(real_part(e.at(0, 1)) == doctest::Approx(3.0));
    CHECK(real_part(e.at(1, 0)) == doctest::Approx(0.0));

    KMatrix d = diag_real(Field::C, {-1.0, 0.5, 2.0});
    KMatrix ed = exp_matrix(d);
    CHECK(real_part(ed.at(0, 0)) == doctest::Approx(std::exp(-1.0)));
    CHECK(real_part(ed.at(1, 1)) == doctest::Approx(std::exp(0.5)));
    CHECK(real_part(ed.at(2, 2)) == doctest::Approx(std::exp(2.0)));
}

TEST_CASE("exp inverse and unitary equivariance") {
    Rng rng(61);
    for (Field f : kFields) {
        KMatrix a = random_matrix(rng, f, 4, 4);
        KMatrix prod = matmul(exp_matrix(a), exp_matrix(real_scale(-1, a)));
        CHECK(max_abs(sub(prod, KMatrix::identity(f, 4))) <= 1e-10);

        KMatrix u = random_isometry(rng, f, 4, 4);
        KMatrix lhs = exp_matrix(matmul(matmul(u, a), adjoint(u)));
        KMatrix rhs = matmul(matmul(u, exp_matrix(a)), adjoint(u));
        CHECK(max_abs(sub(lhs, rhs)) <= 1e-11 * std::max(1.0, max_abs(rhs)));
    }
}

TEST_CASE("series exp agrees with spectral exp on self-adjoint input") {
    Rng rng(67);
    for (Field f : kFields) {
        KMatrix z = random_selfadjoint(rng, f, 5);
        KMatrix a = exp_matrix(z);
        KMatrix b = exp_selfadjoint(z);
        CHECK(max_abs(sub(a, b)) <= 1e-11 * std::max(1.0, max_abs(a)));
    }
}

TEST_CASE("log and sqrt invert on the positive cone") {
    Rng rng(71);
    for (Field f : kFields) {
        KMatrix z = real_scale(0.7, random_selfadjoint(rng, f, 4));
        KMatrix g = exp_selfadjoint(z);
        CHECK(max_abs(sub(log_posdef(g), z)) <= 1e-10);
        KMatrix s = sqrt_posdef(g);
        CHECK(max_abs(sub(matmul(s, s), g)) <=
              1e-10 * std::max(1.0, max_abs(g)));
    }
    CHECK_THROWS_AS(log_posdef(diag_real(Field::R, {1.0, -1.0})),
                    StructureError);
    CHECK_THROWS_AS(sqrt_posdef(diag_real(Field::C, {1.0, 0.0})),
                    StructureError);
}

TEST_CASE("polar factorization recovers a constructed factorization") {
    Rng rng(73);
    for (Field f : kFields) {
        for (int t = 0; t < 30; ++t) {
            int k = 1 + static_cast<int>(rng.next_u64() % 4);
            int m = static_cast<int>(rng.next_u64() % 3);
            KMatrix a0 = random_isometry(rng, f, k + m, k);
            KMatrix z0 = real_scale(0.4, random_selfadjoint(rng, f, k));
            KMatrix b = matmul(a0, exp_selfadjoint(real_scale(-1, z0)));
            PolarFactorization pf = polar_factor(b);
            CHECK(max_abs(sub(pf.a, a0)) <= 1e-8);
            CHECK(max_abs(sub(pf.z, z0)) <= 1e-8);
        }
    }
}

TEST_CASE("polar rejects rank-deficient input") {
    Rng rng(79);
    KMatrix thin = random_matrix(rng, Field::C, 4, 1);
    KMatrix wideish = hstack(thin, thin);  // rank 1, two columns
    CHECK_THROWS_AS(polar_factor(wideish), StructureError);
}
