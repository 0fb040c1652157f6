#pragma once

#include "bci/matrix.hpp"
#include "bci/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace bci {

struct SpatialCovariance {
    Matrix matrix;               // N x N, symmetric, trace 1 after normalization
    std::size_t trial_count = 1; // trials averaged into this estimate
};

// Trace-normalized spatial covariance of one trial: (X X^T) / trace(X X^T).
// ZERO_SIGNAL when the trial carries essentially no energy.
SpatialCovariance normalized_covariance(const Matrix& trial);

// Arithmetic mean of per-trial normalized covariances for one class.
// TOO_FEW_TRIALS below two epochs of the requested label.
SpatialCovariance average_covariance(std::span<const Epoch> epochs, ClassLabel label);

struct CompositeEigen {
    Matrix m0;                 // columns are orthonormal eigenvectors
    std::vector<double> sigma; // eigenvalues, descending
};

// Eigendecomposition of the composite covariance ANC = anc_l + anc_r.
CompositeEigen composite_eigendecomposition(const SpatialCovariance& anc_l,
                                            const SpatialCovariance& anc_r);

struct CspModel {
    Matrix projection;               // 2J x N; J most-LEFT rows then J most-RIGHT rows
    std::vector<double> eigenvalues; // LEFT-class variances; first J descending, last J ascending
    std::vector<std::string> channel_names;
    std::size_t n_pairs = 0;
    double ridge = 0.0; // relative ridge gamma applied to the class covariances
};

// Full training pipeline: class covariance averages, ridge, composite
// eigendecomposition, whitening (dropping dimensions with
// sigma < 1e-10 * sigma_max), diagonalization of the whitened LEFT
// covariance, and selection of the J highest / J lowest eigenvalue filters.
// Rows are sign-normalized (largest-magnitude entry positive).
CspModel train_csp(std::span<const Epoch> epochs, std::size_t n_pairs,
                   std::vector<std::string> channel_names = {}, double ridge_gamma = 1e-9);

// projection * epoch_data; DIM_MISMATCH if the channel count differs.
Matrix apply_csp(const CspModel& model, const Matrix& epoch_data);

} // namespace bci
