#pragma once

#include <vector>

#include "clockforge/matrix.hpp"
#include "clockforge/tridiagonal.hpp"

namespace clockforge {

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // orthonormal columns, matching order
    double residual = 0.0;            // max_k ||H v_k - l_k v_k|| / max(1, ||H||)
    bool degenerate_ground = false;

    Vector column(int k) const {
        Vector v(eigenvectors.rows());
        for (int i = 0; i < eigenvectors.rows(); ++i) v[i] = eigenvectors(i, k);
        return v;
    }
};

// Dense Hermitian eigensolver: Householder reduction to tridiagonal form,
// phase gauge to a real symmetric tridiagonal, then implicit-shift QL with
// accumulated transformations.  Iteration cap 64*dim sweeps; on failure the
// diagnostic carries the achieved off-diagonal residual.
EigenDecomposition eig_hermitian(const HermitianMatrix& h, double tol = 1e-10);

// Convenience overload validating hermiticity first.
EigenDecomposition eig_hermitian(const Matrix& m, double tol = 1e-10);

// Full decomposition of a real symmetric tridiagonal matrix via Sturm
// bisection and inverse iteration; O(n) memory per eigenpair.
EigenDecomposition eig_tridiagonal(const SymTridiagonal& t, double tol = 1e-10);

double spectral_gap(const HermitianMatrix& h);
double spectral_gap(const SymTridiagonal& t);

struct GroundState {
    double energy;
    Vector state;
    bool degenerate;
};

GroundState ground_state(const HermitianMatrix& h);
GroundState ground_state(const SymTridiagonal& t);

// Orthonormal basis (as matrix columns) of the eigenspace with eigenvalues in
// [lo, hi].
Matrix eigenspace_basis(const HermitianMatrix& h, double lo, double hi);

// Kernel basis at threshold 1e-9 on eigenvalues (relative to max(1, ||H||)).
Matrix kernel_basis(const HermitianMatrix& h, double tol = 1e-9);

Matrix projector_from_basis(const Matrix& basis, int dim);

// Cosines of the principal angles between range(P) and range(Q), descending;
// computed from the singular values of the product of orthonormal range
// bases.  Inputs must be Hermitian idempotent within `idem_tol`.
std::vector<double> principal_angles(const HermitianMatrix& p, const HermitianMatrix& q, double idem_tol = 1e-10);

// Degeneracy threshold shared by the gap/flag logic.
inline double degeneracy_threshold(double norm) { return 1e-9 * std::max(1.0, norm); }

}  // namespace clockforge
