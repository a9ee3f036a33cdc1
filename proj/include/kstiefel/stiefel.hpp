#pragma once

#include <variant>

#include "kstiefel/matrix.hpp"

namespace kst {

// Point of the Stiefel manifold of isometries K^n -> K^{n+m}: an
// (n+m) x n matrix f with f* f = I, checked at construction within
// eps_iso.  The top n x n block is f1, the bottom m x n block is f2.
class StiefelPoint {
  public:
    StiefelPoint(KMatrix f, int n, int m, const Tolerance& tol = {});

    Field field() const { return f_.field(); }
    int n() const { return n_; }
    int m() const { return m_; }
    const KMatrix& f() const { return f_; }

    KMatrix top() const;     // f1, n x n
    KMatrix bottom() const;  // f2, m x n

  private:
    KMatrix f_;
    int n_;
    int m_;
};

// The basepoint inclusion (I_n; 0), the unique point of level 0.
KMatrix base_inclusion(Field f, int n, int m);

// Level of f: codimension of the fixed space ker(f1 - I) cap ker(f2),
// computed as the rank of f - (I; 0).
int filtration_level(const StiefelPoint& p, const Tolerance& tol = {});
RankInfo filtration_rank_info(const StiefelPoint& p, const Tolerance& tol = {});

// Chart coordinates for the open stratum of maximal level: y is m x k and
// x is k x k skew-adjoint.
struct CayleyCoords {
    KMatrix y;
    KMatrix x;
};

// Cayley chart.  With c = x/2 + y*y/4 the image point is
//   g = (c - 1)(c + 1)^{-1},   h = y (1 - g)/2,
// stacked as (g; h).  Every image has level k (1 - g is invertible) and
// the map is equivariant for unitary conjugation on coordinates.
StiefelPoint cayley(const CayleyCoords& c, const Tolerance& tol = {});

// Inverse chart on the open top stratum:
//   y = 2 h (1 - g)^{-1},
//   x = 2 (1 - g*)^{-1} (g - g*) (1 - g)^{-1}.
// LevelDeficiencyError when 1 - g is singular at the working tolerance.
CayleyCoords cayley_inverse(const StiefelPoint& p, const Tolerance& tol = {});

// Pushforward along an isometry psi: K^n -> K^N of the ambient space:
//   top    psi f1 psi* + (1 - psi psi*)
//   bottom f2 psi*
// acting as f on the image of psi and as the identity on its complement.
// Preserves level.
StiefelPoint conjugate_embedding(const KMatrix& psi, const StiefelPoint& p,
                                 const Tolerance& tol = {});

KMatrix galois_apply_entrywise(const GaloisElement& t, const KMatrix& m);

// Galois action on points: entrywise in the coordinates induced by the
// standard basis.  Commutes with filtration_level.
StiefelPoint galois_act(const GaloisElement& t, const StiefelPoint& p,
                        const Tolerance& tol = {});

// Isometric comparison map K^k -> K^{dk} (fields C and H only) sending a
// vector to the tuple of its coordinates along 1, i, ... of each slot:
// column b places 1/sqrt(d) at row (b, 0) and -beta/sqrt(d) at row
// (b, beta) for each imaginary unit beta.  Rows are ordered slot-major.
struct ZetaMap {
    Field field;
    int k;
    KMatrix matrix;  // dk x k
};

ZetaMap zeta_map(Field f, int k);

// Codomain twist matching zeta's equivariance: entrywise Galois action
// followed by the real d x d unit-action matrix applied to each slot.
// zeta respects   zeta(t . v) = zeta_codomain_act(t, zeta(v)).
KMatrix zeta_codomain_act(const GaloisElement& t, const KMatrix& v);

// Stratum coordinates of a level-k point: an orthonormal basis psi of the
// complement of the fixed space plus Cayley coordinates of the compressed
// point over K^k.
struct StratumCoords {
    KMatrix psi;  // n x k isometry
    CayleyCoords coords;
};

struct InLowerStratum {
    int level;
};
struct AboveStratum {
    int level;
};

using StratumDecomposition =
    std::variant<StratumCoords, InLowerStratum, AboveStratum>;

// Classifies p against level k and, on the nose, inverts the stratum
// chart: psi spans the image of (f - i1)*, the point is compressed
// through psi* + identity on the complement, and the compression is fed
// to the inverse Cayley chart.  RankAmbiguityError when the level
// decision rests on pivots crowding the threshold.
StratumDecomposition stratum_decompose(const StiefelPoint& p, int k,
                                       const Tolerance& tol = {});

// Left inverse of stratum_decompose: Cayley chart over K^k followed by
// the conjugate embedding along psi.  The result always has level k.
StiefelPoint stratum_reconstruct(const StratumCoords& s, int n, int m,
                                 const Tolerance& tol = {});

}  // namespace kst
