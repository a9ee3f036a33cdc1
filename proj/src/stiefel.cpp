#include "kstiefel/stiefel.hpp"

#include <cmath>
#include <string>

namespace kst {

StiefelPoint::StiefelPoint(KMatrix f, int n, int m, const Tolerance& tol)
    : f_(std::move(f)), n_(n), m_(m) {
    if (n < 0 || m < 0 || f_.rows() != n + m || f_.cols() != n)
        throw DimensionError("stiefel point must be (n+m) x n");
    if (!is_isometry(f_, tol))
        throw StructureError("stiefel point fails f* f = 1 at eps_iso");
}

KMatrix StiefelPoint::top() const { return sub_block(f_, 0, 0, n_, n_); }

KMatrix StiefelPoint::bottom() const { return sub_block(f_, n_, 0, m_, n_); }

KMatrix base_inclusion(Field f, int n, int m) {
    return vstack(KMatrix::identity(f, n), KMatrix(f, m, n));
}

RankInfo filtration_rank_info(const StiefelPoint& p, const Tolerance& tol) {
    KMatrix moved = sub(p.f(), base_inclusion(p.field(), p.n(), p.m()));
    // Isometries live at unit scale, so the rank cut is floored there: a
    // moved part that is all roundoff must count as the basepoint, not as
    // a full-rank matrix relative to its own noise.
    return rank_info(moved, tol, 1.0);
}

int filtration_level(const StiefelPoint& p, const Tolerance& tol) {
    return filtration_rank_info(p, tol).rank;
}

namespace {

void check_cayley_coords(const CayleyCoords& c, const Tolerance& tol) {
    if (c.y.field() != c.x.field())
        throw FieldMismatchError("cayley coordinates: fields differ");
    const int k = c.x.rows();
    if (c.x.cols() != k || c.y.cols() != k)
        throw DimensionError("cayley coordinates need y m x k and x k x k");
    double scale = std::max(1.0, max_abs(c.x));
    if (max_abs(add(c.x, adjoint(c.x))) > tol.eps_iso * scale)
        throw StructureError("cayley coordinates: x is not skew-adjoint");
}

}  // namespace

StiefelPoint cayley(const CayleyCoords& coords, const Tolerance& tol) {
    check_cayley_coords(coords, tol);
    const Field f = coords.x.field();
    const int k = coords.x.rows();
    const KMatrix id = KMatrix::identity(f, k);

    KMatrix c = add(real_scale(0.5, coords.x),
                    real_scale(0.25, matmul(adjoint(coords.y), coords.y)));
    // c + 1 has hermitian part 1 + y*y/4, so it is invertible outright.
    KMatrix inv = gauss_inverse(add(c, id), tol);
    KMatrix g = matmul(sub(c, id), inv);
    KMatrix h = real_scale(0.5, matmul(coords.y, sub(id, g)));
    return StiefelPoint(vstack(g, h), k, coords.y.rows(), tol);
}

CayleyCoords cayley_inverse(const StiefelPoint& p, const Tolerance& tol) {
    const Field f = p.field();
    const int k = p.n();
    KMatrix g = p.top();
    KMatrix h = p.bottom();
    KMatrix w = sub(KMatrix::identity(f, k), g);

    RankInfo info = rank_info(w, tol, 1.0);  // unit ambient scale
    if (info.rank < k)
        throw LevelDeficiencyError(
            "cayley_inverse: level " + std::to_string(info.rank) +
            " point is outside the level-" + std::to_string(k) + " chart");
    KMatrix winv = gauss_inverse(w, tol);

    KMatrix y = real_scale(2.0, matmul(h, winv));
    KMatrix x = real_scale(
        2.0, matmul(matmul(adjoint(winv), sub(g, adjoint(g))), winv));
    return {y, x};
}

StiefelPoint conjugate_embedding(const KMatrix& psi, const StiefelPoint& p,
                                 const Tolerance& tol) {
    if (psi.field() != p.field())
        throw FieldMismatchError("conjugate_embedding: fields differ");
    if (psi.cols() != p.n())
        throw DimensionError("conjugate_embedding: psi must have n columns");
    if (!is_isometry(psi, tol))
        throw StructureError("conjugate_embedding: psi is not an isometry");

    const int big_n = psi.rows();
    KMatrix psi_star = adjoint(psi);
    KMatrix proj = matmul(psi, psi_star);
    KMatrix top = add(matmul(matmul(psi, p.top()), psi_star),
                      sub(KMatrix::identity(p.field(), big_n), proj));
    KMatrix bottom = matmul(p.bottom(), psi_star);
    return StiefelPoint(vstack(top, bottom), big_n, p.m(), tol);
}

KMatrix galois_apply_entrywise(const GaloisElement& t, const KMatrix& m) {
    KMatrix out(m.field(), m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.set(r, c, t.apply(m.at(r, c)));
    return out;
}

StiefelPoint galois_act(const GaloisElement& t, const StiefelPoint& p,
                        const Tolerance& tol) {
    if (t.field() != p.field())
        throw FieldMismatchError("galois_act: fields differ");
    return StiefelPoint(galois_apply_entrywise(t, p.f()), p.n(), p.m(), tol);
}

ZetaMap zeta_map(Field f, int k) {
    if (f == Field::R)
        throw FieldMismatchError("zeta_map: the comparison map collapses "
                                 "over R; only C and H are supported");
    if (k < 0) throw DimensionError("zeta_map: negative rank");
    const int d = real_dim(f);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    KMatrix m(f, d * k, k);
    for (int b = 0; b < k; ++b) {
        m.set(b * d, b, scalar_real(f, w));
        for (int beta = 1; beta < d; ++beta) {
            Scalar s = scalar_zero(f);
            s.set_component(beta, -w);
            m.set(b * d + beta, b, s);
        }
    }
    return {f, k, m};
}

KMatrix zeta_codomain_act(const GaloisElement& t, const KMatrix& v) {
    const int d = real_dim(t.field());
    if (v.field() != t.field())
        throw FieldMismatchError("zeta_codomain_act: fields differ");
    if (v.rows() % d != 0)
        throw DimensionError("zeta_codomain_act: rows not divisible by d");
    KMatrix tw = galois_apply_entrywise(t, v);
    auto rt = galois_unit_matrix(t);
    KMatrix out(v.field(), v.rows(), v.cols());
    for (int slot = 0; slot < v.rows() / d; ++slot)
        for (int c = 0; c < v.cols(); ++c)
            for (int a = 0; a < d; ++a) {
                Scalar acc = scalar_zero(v.field());
                for (int b = 0; b < d; ++b)
                    acc = acc + scalar_real(v.field(), rt[a * d + b]) *
                                    tw.at(slot * d + b, c);
                out.set(slot * d + a, c, acc);
            }
    return out;
}

StratumDecomposition stratum_decompose(const StiefelPoint& p, int k,
                                       const Tolerance& tol) {
    if (k < 0 || k > p.n())
        throw DimensionError("stratum_decompose: level outside [0, n]");
    RankInfo info = filtration_rank_info(p, tol);
    if (info.ambiguous())
        throw RankAmbiguityError(
            "stratum_decompose: pivots straddle the rank threshold "
            "(smallest accepted " + std::to_string(info.smallest_accepted) +
            ", largest rejected " + std::to_string(info.largest_rejected) +
            ", threshold " + std::to_string(info.threshold) + ")");
    if (info.rank < k) return InLowerStratum{info.rank};
    if (info.rank > k) return AboveStratum{info.rank};

    // The complement of the fixed space is the image of (f - i1)*.
    KMatrix moved = sub(p.f(), base_inclusion(p.field(), p.n(), p.m()));
    KMatrix psi = image_orthobasis(adjoint(moved), tol, 1.0);
    if (psi.cols() != k)
        throw RankAmbiguityError(
            "stratum_decompose: orthobasis dimension " +
            std::to_string(psi.cols()) + " disagrees with rank " +
            std::to_string(k));

    // Compress through psi; f maps the complement of the fixed space into
    // (image psi) + K^m, so the compression is again an isometry.
    KMatrix squeeze =
        direct_sum(adjoint(psi), KMatrix::identity(p.field(), p.m()));
    KMatrix f0 = matmul(squeeze, matmul(p.f(), psi));
    StiefelPoint compressed(f0, k, p.m(), tol);
    return StratumCoords{psi, cayley_inverse(compressed, tol)};
}

StiefelPoint stratum_reconstruct(const StratumCoords& s, int n, int m,
                                 const Tolerance& tol) {
    if (s.psi.rows() != n || s.psi.cols() != s.coords.x.rows() ||
        s.coords.y.rows() != m)
        throw DimensionError(
            "stratum_reconstruct: coordinate shapes disagree with (n, m)");
    return conjugate_embedding(s.psi, cayley(s.coords, tol), tol);
}

}  // namespace kst
