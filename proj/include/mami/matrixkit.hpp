#pragma once

#include "mami/cmat.hpp"

namespace mami {

// Q has orthonormal columns (m x n), R is upper triangular (n x n) with a
// real, non-negative diagonal.
struct QrFactors {
    CMat q;
    CMat r;
};

enum class InverseEngine { QR, Neumann, Direct };

// a^H a. Hermitian positive semidefinite, cols x cols.
CMat gram(const CMat& a);

// QR by modified Gram-Schmidt, one orthogonalization pass per column.
// Throws RankDeficient when a column pivot drops below 1e-12 of the
// column's original norm.
QrFactors qr_mgs(const CMat& a);

// Truncated Neumann series for the inverse of a Hermitian matrix with
// dominant diagonal:  sum_{n<terms} (D^-1 (D - A))^n D^-1,  D = diag(A).
// Exact for diagonal A at one term. Throws SingularDiagonal when any
// diagonal entry magnitude is below 1e-14.
CMat neumann_inverse(const CMat& a, std::size_t terms);

// Inverse of a Hermitian positive definite matrix via Cholesky.
CMat hpd_inverse(const CMat& a);

// (g^H g + beta I)^-1 g^H for an M x K matrix g, M >= K. beta = 0 gives the
// zero-forcing pseudo-inverse. The QR engine factors g augmented with
// sqrt(beta) I_K; Neumann uses the truncated series with `neumann_terms`.
CMat regularized_pinv(const CMat& g, double beta, InverseEngine engine,
                      std::size_t neumann_terms = 3);

// Largest eigenvalue magnitude of the Neumann iteration matrix
// D^-1 (D - A), by power iteration. Convergence diagnostic.
double neumann_spectral_radius(const CMat& a, std::size_t iters = 200);

}  // namespace mami
