#pragma once

#include <variant>
#include <vector>

#include "kstiefel/spectral.hpp"
#include "kstiefel/stiefel.hpp"

namespace kst {

// Linear model of the (k+m) x k hom space: the top square block splits
// into skew and self-adjoint parts, the bottom m x k block is free.
struct HomDecomposition {
    KMatrix y;  // m x k
    KMatrix x;  // k x k skew
    KMatrix z;  // k x k self-adjoint
};

HomDecomposition hom_decompose(const KMatrix& m);
KMatrix hom_assemble(const HomDecomposition& d);  // (x + z; y)

// Collapse target for inputs outside the open dense locus.
struct Basepoint {};

// Rank collapse: rank-deficient matrices go to the basepoint, injective
// ones to their polar data (isometry factor, self-adjoint log-stretch).
using PolarCollapse = std::variant<Basepoint, PolarFactorization>;
PolarCollapse collapse_polar(const KMatrix& m, const Tolerance& tol = {});

// Level collapse: points below top level go to the basepoint, top-level
// points to their Cayley chart coordinates.
using CayleyCollapse = std::variant<Basepoint, CayleyCoords>;
CayleyCollapse collapse_cayley(const StiefelPoint& p,
                               const Tolerance& tol = {});

// f(y, x, z) = cayley(y, x) * exp(-z), an open embedding of the hom-space
// model near the origin.  Its value at zero is (-1; 0) and the two
// collapses unwind it exactly: the polar factor is cayley(y, x) with
// stretch z, and the Cayley chart recovers (y, x).
KMatrix composite_embedding(const HomDecomposition& d,
                            const Tolerance& tol = {});

// Real coordinates on the hom-space model, ordered y-block, x-block,
// z-block.  y runs over (row, col, component); x lists per row the
// imaginary diagonal components then the full entries right of the
// diagonal; z lists per row the real diagonal entry then the full
// entries right of the diagonal.
int hom_param_dim(Field f, int k, int m);
std::vector<double> pack_hom(const HomDecomposition& d);
HomDecomposition unpack_hom(Field f, int k, int m,
                            const std::vector<double>& v);

// Central-difference Jacobian of composite_embedding at the origin in the
// coordinates above; returns the largest entrywise deviation from the
// identity matrix.
double jacobian_origin_deviation(Field f, int k, int m, double step = 1e-4,
                                 const Tolerance& tol = {});

}  // namespace kst
