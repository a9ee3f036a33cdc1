#include "kstiefel/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kst {

namespace {

void check_same_field(const KMatrix& a, const KMatrix& b, const char* op) {
    if (a.field() != b.field())
        throw FieldMismatchError(std::string(op) + ": fields differ (" +
                                 field_name(a.field()) + " vs " +
                                 field_name(b.field()) + ")");
}

std::string shape(const KMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

KMatrix::KMatrix(Field f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw DimensionError("negative matrix dimension");
    e_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              scalar_zero(f));
}

KMatrix KMatrix::identity(Field f, int n) {
    KMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, scalar_one(f));
    return m;
}

int KMatrix::idx(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw DimensionError("matrix index (" + std::to_string(r) + ", " +
                             std::to_string(c) + ") outside " +
                             std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    return r * cols_ + c;
}

void KMatrix::set(int r, int c, const Scalar& v) {
    if (v.field != field_)
        throw FieldMismatchError("entry field does not match matrix field");
    e_[idx(r, c)] = v;
}

KMatrix matmul(const KMatrix& a, const KMatrix& b) {
    check_same_field(a, b, "matmul");
    if (a.cols() != b.rows())
        throw DimensionError("matmul: " + shape(a) + " times " + shape(b));
    KMatrix out(a.field(), a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) {
            Scalar acc = scalar_zero(a.field());
            for (int t = 0; t < a.cols(); ++t)
                acc = acc + a.at(r, t) * b.at(t, c);
            out.set(r, c, acc);
        }
    return out;
}

KMatrix add(const KMatrix& a, const KMatrix& b) {
    check_same_field(a, b, "add");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("add: " + shape(a) + " vs " + shape(b));
    KMatrix out(a.field(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            out.set(r, c, a.at(r, c) + b.at(r, c));
    return out;
}

KMatrix sub(const KMatrix& a, const KMatrix& b) {
    check_same_field(a, b, "sub");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("sub: " + shape(a) + " vs " + shape(b));
    KMatrix out(a.field(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            out.set(r, c, a.at(r, c) - b.at(r, c));
    return out;
}

KMatrix real_scale(double s, const KMatrix& a) {
    KMatrix out(a.field(), a.rows(), a.cols());
    Scalar f = scalar_real(a.field(), s);
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out.set(r, c, f * a.at(r, c));
    return out;
}

KMatrix adjoint(const KMatrix& a) {
    KMatrix out(a.field(), a.cols(), a.rows());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out.set(c, r, conj(a.at(r, c)));
    return out;
}

Scalar inner_product(const KMatrix& x, const KMatrix& y) {
    check_same_field(x, y, "inner_product");
    if (x.cols() != 1 || y.cols() != 1 || x.rows() != y.rows())
        throw DimensionError("inner_product needs equal-length column vectors");
    Scalar acc = scalar_zero(x.field());
    for (int r = 0; r < x.rows(); ++r)
        acc = acc + conj(x.at(r, 0)) * y.at(r, 0);
    return acc;
}

KMatrix sub_block(const KMatrix& a, int r0, int c0, int rows, int cols) {
    if (r0 < 0 || c0 < 0 || rows < 0 || cols < 0 || r0 + rows > a.rows() ||
        c0 + cols > a.cols())
        throw DimensionError("sub_block outside " + shape(a));
    KMatrix out(a.field(), rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.set(r, c, a.at(r0 + r, c0 + c));
    return out;
}

KMatrix vstack(const KMatrix& top, const KMatrix& bottom) {
    check_same_field(top, bottom, "vstack");
    if (top.cols() != bottom.cols())
        throw DimensionError("vstack: " + shape(top) + " over " +
                             shape(bottom));
    KMatrix out(top.field(), top.rows() + bottom.rows(), top.cols());
    for (int r = 0; r < top.rows(); ++r)
        for (int c = 0; c < top.cols(); ++c) out.set(r, c, top.at(r, c));
    for (int r = 0; r < bottom.rows(); ++r)
        for (int c = 0; c < bottom.cols(); ++c)
            out.set(top.rows() + r, c, bottom.at(r, c));
    return out;
}

KMatrix hstack(const KMatrix& left, const KMatrix& right) {
    check_same_field(left, right, "hstack");
    if (left.rows() != right.rows())
        throw DimensionError("hstack: " + shape(left) + " beside " +
                             shape(right));
    KMatrix out(left.field(), left.rows(), left.cols() + right.cols());
    for (int r = 0; r < left.rows(); ++r) {
        for (int c = 0; c < left.cols(); ++c) out.set(r, c, left.at(r, c));
        for (int c = 0; c < right.cols(); ++c)
            out.set(r, left.cols() + c, right.at(r, c));
    }
    return out;
}

KMatrix direct_sum(const KMatrix& a, const KMatrix& b) {
    check_same_field(a, b, "direct_sum");
    KMatrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c)
            out.set(a.rows() + r, a.cols() + c, b.at(r, c));
    return out;
}

KMatrix column(const KMatrix& a, int c) {
    return sub_block(a, 0, c, a.rows(), 1);
}

double max_abs(const KMatrix& a) {
    double m = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            m = std::max(m, abs(a.at(r, c)));
    return m;
}

double frobenius(const KMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) s += norm_sq(a.at(r, c));
    return std::sqrt(s);
}

double one_norm(const KMatrix& a) {
    double m = 0.0;
    for (int c = 0; c < a.cols(); ++c) {
        double s = 0.0;
        for (int r = 0; r < a.rows(); ++r) s += abs(a.at(r, c));
        m = std::max(m, s);
    }
    return m;
}

bool matrix_close(const KMatrix& a, const KMatrix& b, double tol) {
    if (a.field() != b.field() || a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (!scalar_close(a.at(r, c), b.at(r, c), tol)) return false;
    return true;
}

bool RankInfo::ambiguous(double factor) const {
    // Fragile from either side: an accepted pivot barely above the
    // threshold or a rejected candidate barely below it would flip the
    // rank under a small tolerance change.
    bool accepted_low = rank > 0 && smallest_accepted < factor * threshold;
    bool rejected_high = largest_rejected > threshold / factor;
    return accepted_low || rejected_high;
}

namespace {

// Shared elimination core.  When inv != nullptr the input must be square
// and reduction continues to the identity, accumulating the inverse.
RankInfo eliminate(KMatrix a, const Tolerance& tol, KMatrix* inv,
                   double scale_floor = 0.0) {
    const int rows = a.rows(), cols = a.cols();
    RankInfo info;
    info.threshold = tol.eps_rank * std::max(scale_floor, max_abs(a));
    info.smallest_accepted = std::numeric_limits<double>::infinity();

    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int p = r;
        double best = abs(a.at(r, col));
        for (int rr = r + 1; rr < rows; ++rr) {
            double v = abs(a.at(rr, col));
            if (v > best) {
                best = v;
                p = rr;
            }
        }
        if (best <= info.threshold) {
            info.largest_rejected = std::max(info.largest_rejected, best);
            if (inv)
                throw SingularMatrixError(
                    "pivot " + std::to_string(best) + " below threshold " +
                    std::to_string(info.threshold) + " in column " +
                    std::to_string(col));
            continue;
        }
        info.smallest_accepted = std::min(info.smallest_accepted, best);

        if (p != r) {
            for (int c = 0; c < cols; ++c) {
                Scalar t = a.at(r, c);
                a.set(r, c, a.at(p, c));
                a.set(p, c, t);
            }
            if (inv)
                for (int c = 0; c < cols; ++c) {
                    Scalar t = inv->at(r, c);
                    inv->set(r, c, inv->at(p, c));
                    inv->set(p, c, t);
                }
        }

        // Scalars are not central, so eliminating rows means multiplying
        // the pivot row by a scalar from the left, never the right.
        Scalar pinv = inverse(a.at(r, col));
        if (inv) {
            for (int c = 0; c < cols; ++c) {
                a.set(r, c, pinv * a.at(r, c));
                inv->set(r, c, pinv * inv->at(r, c));
            }
            for (int rr = 0; rr < rows; ++rr) {
                if (rr == r) continue;
                Scalar f = a.at(rr, col);
                if (norm_sq(f) == 0.0) continue;
                for (int c = 0; c < cols; ++c) {
                    a.set(rr, c, a.at(rr, c) - f * a.at(r, c));
                    inv->set(rr, c, inv->at(rr, c) - f * inv->at(r, c));
                }
            }
        } else {
            for (int rr = r + 1; rr < rows; ++rr) {
                Scalar f = a.at(rr, col) * pinv;
                if (norm_sq(f) == 0.0) continue;
                for (int c = col; c < cols; ++c)
                    a.set(rr, c, a.at(rr, c) - f * a.at(r, c));
            }
        }
        ++r;
    }
    info.rank = r;
    if (info.rank == 0) info.smallest_accepted = 0.0;
    return info;
}

}  // namespace

RankInfo rank_info(const KMatrix& a, const Tolerance& tol,
                   double scale_floor) {
    return eliminate(a, tol, nullptr, scale_floor);
}

int rank(const KMatrix& a, const Tolerance& tol) {
    return rank_info(a, tol).rank;
}

KMatrix gauss_inverse(const KMatrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols())
        throw DimensionError("gauss_inverse of non-square " + shape(a));
    KMatrix inv = KMatrix::identity(a.field(), a.rows());
    eliminate(a, tol, &inv);
    return inv;
}

KMatrix image_orthobasis(const KMatrix& a, const Tolerance& tol,
                         double scale_floor) {
    const Field f = a.field();
    double scale = scale_floor;
    for (int c = 0; c < a.cols(); ++c)
        scale = std::max(scale, frobenius(column(a, c)));
    std::vector<KMatrix> basis;
    for (int c = 0; c < a.cols(); ++c) {
        KMatrix v = column(a, c);
        // Two projection passes keep the basis orthonormal to roundoff
        // even when the incoming column is nearly dependent.
        for (int pass = 0; pass < 2; ++pass)
            for (const KMatrix& u : basis) {
                Scalar coeff = inner_product(u, v);
                KMatrix scaled(f, u.rows(), 1);
                for (int r = 0; r < u.rows(); ++r)
                    scaled.set(r, 0, u.at(r, 0) * coeff);
                v = sub(v, scaled);
            }
        double n = frobenius(v);
        if (n > tol.eps_rank * scale) basis.push_back(real_scale(1.0 / n, v));
    }
    KMatrix out(f, a.rows(), static_cast<int>(basis.size()));
    for (int c = 0; c < static_cast<int>(basis.size()); ++c)
        for (int r = 0; r < a.rows(); ++r) out.set(r, c, basis[c].at(r, 0));
    return out;
}

bool is_isometry(const KMatrix& a, const Tolerance& tol) {
    KMatrix g = matmul(adjoint(a), a);
    return max_abs(sub(g, KMatrix::identity(a.field(), a.cols()))) <=
           tol.eps_iso;
}

std::pair<KMatrix, KMatrix> skew_self_split(const KMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("skew_self_split of non-square " + shape(a));
    KMatrix at = adjoint(a);
    return {real_scale(0.5, sub(a, at)), real_scale(0.5, add(a, at))};
}

KMatrix random_matrix(Rng& rng, Field f, int rows, int cols) {
    KMatrix out(f, rows, cols);
    int d = real_dim(f);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            Scalar s = scalar_zero(f);
            for (int t = 0; t < d; ++t) s.set_component(t, rng.normal());
            out.set(r, c, s);
        }
    return out;
}

KMatrix random_isometry(Rng& rng, Field f, int n, int k) {
    if (k > n)
        throw DimensionError("random_isometry: more columns than rows");
    // Gaussian draws are full rank with probability 1; the retry loop only
    // exists to keep the function total.
    for (int attempt = 0; attempt < 8; ++attempt) {
        KMatrix q = image_orthobasis(random_matrix(rng, f, n, k));
        if (q.cols() == k) return q;
    }
    throw StructureError("random_isometry: degenerate draws");
}

KMatrix random_skew(Rng& rng, Field f, int n) {
    return skew_self_split(random_matrix(rng, f, n, n)).first;
}

KMatrix random_selfadjoint(Rng& rng, Field f, int n) {
    return skew_self_split(random_matrix(rng, f, n, n)).second;
}

Quaternion random_unit_quaternion(Rng& rng) {
    for (;;) {
        Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        double n = abs(q);
        if (n > 1e-6) return (1.0 / n) * q;
    }
}

GaloisElement random_galois(Rng& rng, Field f) {
    switch (f) {
        case Field::R:
            return GaloisElement::identity(Field::R);
        case Field::C:
            return rng.uniform() < 0.5 ? GaloisElement::identity(Field::C)
                                       : GaloisElement::conjugation();
        case Field::H:
            return GaloisElement::inner(random_unit_quaternion(rng));
    }
    throw FieldMismatchError("corrupt field tag");
}

}  // namespace kst
