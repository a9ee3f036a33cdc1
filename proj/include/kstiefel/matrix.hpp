#pragma once

#include <utility>
#include <vector>

#include "kstiefel/rng.hpp"
#include "kstiefel/scalar.hpp"

namespace kst {

// Shared numerical thresholds.
//   eps_iso   structural checks (isometry, self-adjointness, skewness)
//   eps_rank  pivot and column acceptance, relative to the input's scale
struct Tolerance {
    double eps_iso = 1e-8;
    double eps_rank = 1e-8;
};

// Dense matrix over R, C or H, row-major.  Columns of an n x m matrix act
// on coordinate vectors written as columns; scalars multiply vectors on
// the right, so matrix entries multiply vector entries from the left and
// all row operations in elimination multiply rows from the left.
//
// Operations are pure functions returning fresh matrices; mutation is
// confined to construction sites.
class KMatrix {
  public:
    KMatrix(Field f, int rows, int cols);  // zero-filled
    static KMatrix identity(Field f, int n);

    Field field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Scalar& at(int r, int c) const { return e_[idx(r, c)]; }
    void set(int r, int c, const Scalar& v);

  private:
    int idx(int r, int c) const;

    Field field_;
    int rows_;
    int cols_;
    std::vector<Scalar> e_;
};

KMatrix matmul(const KMatrix& a, const KMatrix& b);
KMatrix add(const KMatrix& a, const KMatrix& b);
KMatrix sub(const KMatrix& a, const KMatrix& b);
KMatrix real_scale(double s, const KMatrix& a);
KMatrix adjoint(const KMatrix& a);  // conjugate transpose

// Hermitian form [x, y] = sum_i conj(x_i) y_i on column vectors.
Scalar inner_product(const KMatrix& x, const KMatrix& y);

KMatrix sub_block(const KMatrix& a, int r0, int c0, int rows, int cols);
KMatrix vstack(const KMatrix& top, const KMatrix& bottom);
KMatrix hstack(const KMatrix& left, const KMatrix& right);
KMatrix direct_sum(const KMatrix& a, const KMatrix& b);
KMatrix column(const KMatrix& a, int c);

double max_abs(const KMatrix& a);    // largest entry norm
double frobenius(const KMatrix& a);
double one_norm(const KMatrix& a);   // max column sum of entry norms

bool matrix_close(const KMatrix& a, const KMatrix& b, double tol);

// Outcome of row elimination with pivoting by entry norm.  A pivot is
// accepted when its norm exceeds
//   threshold = eps_rank * max(scale_floor, max_abs(input)).
// The floor matters for inputs derived from unit-scale data (differences
// of isometries): without it a matrix made of pure roundoff noise is
// full rank relative to itself.  smallest_accepted / largest_rejected
// expose how close the decision came to the threshold; ambiguous() flags
// runs where either side crowds it.
struct RankInfo {
    int rank = 0;
    double threshold = 0.0;
    double smallest_accepted = 0.0;  // +inf style sentinel when rank == 0
    double largest_rejected = 0.0;

    bool ambiguous(double factor = 10.0) const;
};

RankInfo rank_info(const KMatrix& a, const Tolerance& tol = {},
                   double scale_floor = 0.0);
int rank(const KMatrix& a, const Tolerance& tol = {});

// Gauss-Jordan inverse; SingularMatrixError when a pivot column has no
// entry above the rank threshold.
KMatrix gauss_inverse(const KMatrix& a, const Tolerance& tol = {});

// Orthonormal basis of the column span via modified Gram-Schmidt with one
// re-orthogonalization pass.  Columns are consumed in natural order, so
// the basis is deterministic.  Column acceptance is relative to the
// largest column norm of the input, floored like rank_info.
KMatrix image_orthobasis(const KMatrix& a, const Tolerance& tol = {},
                         double scale_floor = 0.0);

// max_abs(a* a - I) <= eps_iso
bool is_isometry(const KMatrix& a, const Tolerance& tol = {});

// a = skew + self with skew* = -skew and self* = self (square input).
std::pair<KMatrix, KMatrix> skew_self_split(const KMatrix& a);

// Entries with independent standard normal components.
KMatrix random_matrix(Rng& rng, Field f, int rows, int cols);
// Orthonormal columns spanning a uniformly drawn k-dimensional subspace.
KMatrix random_isometry(Rng& rng, Field f, int n, int k);
KMatrix random_skew(Rng& rng, Field f, int n);
KMatrix random_selfadjoint(Rng& rng, Field f, int n);
Quaternion random_unit_quaternion(Rng& rng);
GaloisElement random_galois(Rng& rng, Field f);

}  // namespace kst
