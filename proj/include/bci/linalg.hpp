#pragma once

#include "bci/matrix.hpp"

#include <vector>

namespace bci {

struct SymmetricEigen {
    Matrix vectors;             // columns are eigenvectors, orthonormal
    std::vector<double> values; // descending
};

// Cyclic Jacobi for symmetric matrices. Fixed sweep order (p < q row-major),
// convergence when the off-diagonal Frobenius norm drops below
// 1e-12 * ||A||_F, budget 100 sweeps (NUMERIC_FAILURE beyond that).
// Eigenvectors are sign-normalized so each column's entry of largest
// absolute value is positive; equal eigenvalues are ordered by the
// sign-normalized vector's lexicographic order. Deterministic throughout.
SymmetricEigen symmetric_eigen(const Matrix& a);

// Lower-triangular Cholesky factor of an SPD matrix; SINGULAR when a pivot
// is not strictly positive.
Matrix cholesky_lower(const Matrix& a);

// Gaussian elimination with partial pivoting; SINGULAR on a vanishing pivot.
std::vector<double> solve_linear(Matrix a, std::vector<double> rhs);

// Sign rule shared with the eigensolver: flip the vector when its
// largest-magnitude entry (first such index on ties) is negative.
void sign_normalize(std::vector<double>& v);

} // namespace bci
