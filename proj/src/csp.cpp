#include "bci/csp.hpp"

#include "bci/error.hpp"
#include "bci/kernels.hpp"
#include "bci/linalg.hpp"

#include <cmath>

namespace bci {

namespace {

void add_ridge(Matrix& cov, double gamma) {
    const double lambda = gamma * trace(cov) / static_cast<double>(cov.rows());
    for (std::size_t i = 0; i < cov.rows(); ++i) cov(i, i) += lambda;
}

std::vector<Matrix> class_trials(std::span<const Epoch> epochs, ClassLabel label) {
    std::vector<Matrix> trials;
    for (const Epoch& e : epochs)
        if (e.label == label) trials.push_back(e.data);
    return trials;
}

SpatialCovariance average_of_trials(std::vector<Matrix> trials, ClassLabel label) {
    if (trials.size() < 2)
        fail(Errc::too_few_trials,
             std::string("need at least 2 trials of class ") + to_string(label));
    const std::size_t n = trials.front().rows();
    for (const Matrix& t : trials)
        if (t.rows() != n) fail(Errc::dim_mismatch, "epochs differ in channel count");
    const std::vector<Matrix> covs = kernels::normalized_grams(trials);
    SpatialCovariance out;
    out.matrix = kernels::pairwise_mean(covs);
    out.trial_count = trials.size();
    return out;
}

} // namespace

SpatialCovariance normalized_covariance(const Matrix& trial) {
    if (trial.cols() < 2) fail(Errc::invalid_arg, "trial needs at least 2 samples");
    if (!all_finite(trial)) fail(Errc::invalid_arg, "trial contains non-finite values");
    const Matrix trials[] = {trial};
    SpatialCovariance out;
    out.matrix = kernels::normalized_grams(trials).front();
    out.trial_count = 1;
    return out;
}

SpatialCovariance average_covariance(std::span<const Epoch> epochs, ClassLabel label) {
    return average_of_trials(class_trials(epochs, label), label);
}

CompositeEigen composite_eigendecomposition(const SpatialCovariance& anc_l,
                                            const SpatialCovariance& anc_r) {
    if (anc_l.matrix.rows() != anc_r.matrix.rows())
        fail(Errc::dim_mismatch, "class covariances differ in size");
    const Matrix anc = anc_l.matrix + anc_r.matrix;
    SymmetricEigen eig = symmetric_eigen(anc);
    return CompositeEigen{std::move(eig.vectors), std::move(eig.values)};
}

CspModel train_csp(std::span<const Epoch> epochs, std::size_t n_pairs,
                   std::vector<std::string> channel_names, double ridge_gamma) {
    if (n_pairs == 0) fail(Errc::invalid_arg, "need at least one filter pair");

    SpatialCovariance anc_l = average_of_trials(class_trials(epochs, ClassLabel::left), ClassLabel::left);
    SpatialCovariance anc_r = average_of_trials(class_trials(epochs, ClassLabel::right), ClassLabel::right);
    if (anc_l.matrix.rows() != anc_r.matrix.rows())
        fail(Errc::dim_mismatch, "class covariances differ in size");

    const std::size_t n = anc_l.matrix.rows();
    add_ridge(anc_l.matrix, ridge_gamma);
    add_ridge(anc_r.matrix, ridge_gamma);

    const CompositeEigen comp = composite_eigendecomposition(anc_l, anc_r);

    // Whitening transform T = Sigma^{-1/2} m0^T, dropping degenerate
    // dimensions of the composite spectrum.
    const double sigma_max = comp.sigma.empty() ? 0.0 : comp.sigma.front();
    std::size_t kept = 0;
    while (kept < comp.sigma.size() && comp.sigma[kept] >= 1e-10 * sigma_max) ++kept;
    if (kept < 2 * n_pairs)
        fail(Errc::rank_deficient, "composite covariance leaves fewer than 2J usable dimensions");

    Matrix whitening(kept, n);
    for (std::size_t i = 0; i < kept; ++i) {
        const double scale = 1.0 / std::sqrt(comp.sigma[i]);
        for (std::size_t j = 0; j < n; ++j) whitening(i, j) = scale * comp.m0(j, i);
    }

    // Diagonalize the whitened LEFT covariance; its eigenvalues are the
    // LEFT-class variances lambda in [0, 1].
    const Matrix s_l =
        kernels::matmul(kernels::matmul(whitening, anc_l.matrix), transpose(whitening));
    SymmetricEigen left = symmetric_eigen(s_l);

    const Matrix filters = kernels::matmul(transpose(left.vectors), whitening);

    // J rows with the largest lambda (LEFT-discriminative) then J rows with
    // the smallest lambda, the latter in ascending lambda order.
    std::vector<std::size_t> picks;
    picks.reserve(2 * n_pairs);
    for (std::size_t i = 0; i < n_pairs; ++i) picks.push_back(i);
    for (std::size_t i = 0; i < n_pairs; ++i) picks.push_back(kept - 1 - i);

    CspModel model;
    model.n_pairs = n_pairs;
    model.ridge = ridge_gamma;
    model.projection = Matrix(2 * n_pairs, n);
    model.eigenvalues.resize(2 * n_pairs);
    for (std::size_t r = 0; r < picks.size(); ++r) {
        model.eigenvalues[r] = left.values[picks[r]];
        std::vector<double> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = filters(picks[r], c);
        sign_normalize(row);
        for (std::size_t c = 0; c < n; ++c) model.projection(r, c) = row[c];
    }
    model.channel_names =
        channel_names.empty() ? default_channel_names(n) : std::move(channel_names);
    if (model.channel_names.size() != n)
        fail(Errc::dim_mismatch, "channel name count does not match epoch channels");
    return model;
}

Matrix apply_csp(const CspModel& model, const Matrix& epoch_data) {
    if (epoch_data.rows() != model.projection.cols())
        fail(Errc::dim_mismatch, "epoch channel count does not match the model");
    return kernels::matmul(model.projection, epoch_data);
}

} // namespace bci
