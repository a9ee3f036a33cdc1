#include "kstiefel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace kst {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagFactor = 1e-12;

double offdiag_frobenius(const KMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (r != c) s += norm_sq(a.at(r, c));
    return std::sqrt(s);
}

// Right-multiply columns p, q of a by the rotation [[uc, us], [-s, c]].
void rotate_columns(KMatrix& a, int p, int q, const Scalar& uc,
                    const Scalar& us, double s_, double c_) {
    Scalar ms = scalar_real(a.field(), -s_);
    Scalar cs = scalar_real(a.field(), c_);
    for (int r = 0; r < a.rows(); ++r) {
        Scalar vp = a.at(r, p), vq = a.at(r, q);
        a.set(r, p, vp * uc + vq * ms);
        a.set(r, q, vp * us + vq * cs);
    }
}

// Left-multiply rows p, q of a by the adjoint rotation.
void rotate_rows(KMatrix& a, int p, int q, const Scalar& ubar, double s_,
                 double c_) {
    Scalar cu = scalar_real(a.field(), c_) * ubar;
    Scalar su = scalar_real(a.field(), s_) * ubar;
    Scalar cs = scalar_real(a.field(), c_);
    Scalar ss = scalar_real(a.field(), s_);
    for (int col = 0; col < a.cols(); ++col) {
        Scalar vp = a.at(p, col), vq = a.at(q, col);
        a.set(p, col, cu * vp - ss * vq);
        a.set(q, col, su * vp + cs * vq);
    }
}

}  // namespace

SpectralDecomposition eigh(const KMatrix& x, const Tolerance& tol) {
    if (x.rows() != x.cols())
        throw DimensionError("eigh of non-square matrix");
    const int n = x.rows();
    const Field f = x.field();

    double scale = std::max(1.0, max_abs(x));
    if (max_abs(sub(x, adjoint(x))) > tol.eps_iso * scale)
        throw StructureError("eigh: input is not self-adjoint");

    KMatrix a = skew_self_split(x).second;  // exact hermitization
    KMatrix q = KMatrix::identity(f, n);

    const double target = kOffDiagFactor * frobenius(a);
    bool converged = offdiag_frobenius(a) <= target;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < n; ++p)
            for (int qq = p + 1; qq < n; ++qq) {
                double r = abs(a.at(p, qq));
                if (r < 1e-300) continue;  // keeps 1/r finite
                // Phase u makes the pivot entry real nonnegative; tau, t
                // are the classical symmetric Jacobi quantities for the
                // resulting real 2x2 block.
                Scalar u = scalar_real(f, 1.0 / r) * a.at(p, qq);
                double ad = real_part(a.at(p, p));
                double bd = real_part(a.at(qq, qq));
                double tau = (bd - ad) / (2.0 * r);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                Scalar uc = u * scalar_real(f, c);
                Scalar us = u * scalar_real(f, s);
                rotate_rows(a, p, qq, conj(u), s, c);
                rotate_columns(a, p, qq, uc, us, s, c);
                rotate_columns(q, p, qq, uc, us, s, c);
            }
        converged = offdiag_frobenius(a) <= target;
    }
    if (!converged)
        throw ConvergenceError("eigh: off-diagonal mass above " +
                               std::to_string(target) + " after " +
                               std::to_string(kMaxSweeps) + " sweeps");

    std::vector<double> lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = real_part(a.at(i, i));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return lambda[i] < lambda[j]; });

    SpectralDecomposition out{KMatrix(f, n, n), std::vector<double>(n)};
    for (int c = 0; c < n; ++c) {
        out.lambda[c] = lambda[order[c]];
        for (int r = 0; r < n; ++r) out.q.set(r, c, q.at(r, order[c]));
    }

    // Phase-canonicalize each column: the first entry of largest norm is
    // made real and positive by a right unit multiplication.
    for (int c = 0; c < n; ++c) {
        int best = 0;
        double bn = abs(out.q.at(0, c));
        for (int r = 1; r < n; ++r) {
            double v = abs(out.q.at(r, c));
            if (v > bn) {
                bn = v;
                best = r;
            }
        }
        if (bn == 0.0) continue;
        Scalar phase =
            scalar_real(f, 1.0 / bn) * conj(out.q.at(best, c));
        for (int r = 0; r < n; ++r)
            out.q.set(r, c, out.q.at(r, c) * phase);
    }
    return out;
}

KMatrix diag_real(Field f, const std::vector<double>& d) {
    KMatrix out(f, static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        out.set(i, i, scalar_real(f, d[i]));
    return out;
}

KMatrix exp_matrix(const KMatrix& m) {
    if (m.rows() != m.cols())
        throw DimensionError("exp_matrix of non-square matrix");
    const int n = m.rows();
    const Field f = m.field();
    if (n == 0) return m;

    int squarings = 0;
    double nrm = one_norm(m);
    while (nrm > 0.5 && squarings < 64) {
        nrm *= 0.5;
        ++squarings;
    }
    KMatrix a = real_scale(std::ldexp(1.0, -squarings), m);

    // With one-norm at most 1/2, the degree-18 Taylor tail is far below
    // double roundoff.
    KMatrix acc = KMatrix::identity(f, n);
    KMatrix term = KMatrix::identity(f, n);
    for (int t = 1; t <= 18; ++t) {
        term = real_scale(1.0 / t, matmul(term, a));
        acc = add(acc, term);
    }
    for (int i = 0; i < squarings; ++i) acc = matmul(acc, acc);
    return acc;
}

namespace {

KMatrix spectral_map(const SpectralDecomposition& sd, Field f,
                     double (*fn)(double)) {
    std::vector<double> mapped(sd.lambda.size());
    for (std::size_t i = 0; i < sd.lambda.size(); ++i)
        mapped[i] = fn(sd.lambda[i]);
    return matmul(matmul(sd.q, diag_real(f, mapped)), adjoint(sd.q));
}

void check_posdef(const std::vector<double>& lambda, const Tolerance& tol,
                  const char* op) {
    double top = 0.0;
    for (double l : lambda) top = std::max(top, l);
    for (double l : lambda)
        if (!(top > 0.0) || l <= tol.eps_rank * top)
            throw StructureError(std::string(op) +
                                 ": eigenvalue " + std::to_string(l) +
                                 " is not safely positive");
}

}  // namespace

KMatrix exp_selfadjoint(const KMatrix& z, const Tolerance& tol) {
    SpectralDecomposition sd = eigh(z, tol);
    return spectral_map(sd, z.field(), [](double l) { return std::exp(l); });
}

KMatrix log_posdef(const KMatrix& g, const Tolerance& tol) {
    SpectralDecomposition sd = eigh(g, tol);
    check_posdef(sd.lambda, tol, "log_posdef");
    return spectral_map(sd, g.field(), [](double l) { return std::log(l); });
}

KMatrix sqrt_posdef(const KMatrix& g, const Tolerance& tol) {
    SpectralDecomposition sd = eigh(g, tol);
    check_posdef(sd.lambda, tol, "sqrt_posdef");
    return spectral_map(sd, g.field(), [](double l) { return std::sqrt(l); });
}

PolarFactorization polar_factor(const KMatrix& b, const Tolerance& tol) {
    if (b.rows() < b.cols())
        throw DimensionError("polar_factor: wide matrices are never injective");
    RankInfo info = rank_info(b, tol);
    if (info.rank < b.cols())
        throw StructureError("polar_factor: input has column rank " +
                             std::to_string(info.rank) + " < " +
                             std::to_string(b.cols()));

    KMatrix gram = matmul(adjoint(b), b);
    SpectralDecomposition sd = eigh(gram, tol);
    check_posdef(sd.lambda, tol, "polar_factor");
    const Field f = b.field();

    std::vector<double> inv_sqrt(sd.lambda.size()), logs(sd.lambda.size());
    for (std::size_t i = 0; i < sd.lambda.size(); ++i) {
        inv_sqrt[i] = 1.0 / std::sqrt(sd.lambda[i]);
        logs[i] = -0.5 * std::log(sd.lambda[i]);
    }
    KMatrix isqrt =
        matmul(matmul(sd.q, diag_real(f, inv_sqrt)), adjoint(sd.q));
    KMatrix z = matmul(matmul(sd.q, diag_real(f, logs)), adjoint(sd.q));
    return {matmul(b, isqrt), z};
}

}  // namespace kst
