#pragma once

#include <vector>

#include "kstiefel/matrix.hpp"

namespace kst {

// Eigenvalues ascending; q has orthonormal columns with x q = q diag(lambda).
// Eigenvalues of a self-adjoint matrix are real over all three fields (over
// H they are the real standard eigenvalues).
struct SpectralDecomposition {
    KMatrix q;
    std::vector<double> lambda;
};

// One-sided Jacobi iteration adapted to noncommutative entries: each 2x2
// pivot block is first phase-rotated to make the off-diagonal entry real
// and nonnegative, then a classical real rotation annihilates it.  Sweeps
// run until the off-diagonal Frobenius mass drops below 1e-12 times the
// Frobenius norm of the input (at most 60 sweeps, ConvergenceError after).
//
// Determinism: within each eigenvalue, column phase is fixed by making the
// first entry of largest norm real and positive; ties in eigenvalue order
// are broken by the sweep's stable sort, so equal seeds give identical
// output.  Input must be self-adjoint within eps_iso (relative to its
// scale); it is symmetrized before iterating.
SpectralDecomposition eigh(const KMatrix& x, const Tolerance& tol = {});

KMatrix diag_real(Field f, const std::vector<double>& d);

// Scaling-and-squaring with a fixed degree-18 Taylor evaluation after
// halving until the one-norm is at most 1/2.
KMatrix exp_matrix(const KMatrix& m);

// exp / log / sqrt through the spectral decomposition.  log and sqrt
// require all eigenvalues > eps_rank times the largest eigenvalue.
KMatrix exp_selfadjoint(const KMatrix& z, const Tolerance& tol = {});
KMatrix log_posdef(const KMatrix& g, const Tolerance& tol = {});
KMatrix sqrt_posdef(const KMatrix& g, const Tolerance& tol = {});

// b = a * exp(-z) with a an isometry and z self-adjoint; b must be
// injective (full column rank).  z = -(1/2) log(b* b).
struct PolarFactorization {
    KMatrix a;
    KMatrix z;
};

PolarFactorization polar_factor(const KMatrix& b, const Tolerance& tol = {});

}  // namespace kst
