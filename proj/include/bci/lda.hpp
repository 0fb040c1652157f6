#pragma once

#include "bci/matrix.hpp"
#include "bci/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bci {

struct FeatureVector {
    std::vector<double> values; // 2J log-variance features
    std::optional<ClassLabel> label;
};

// f_j = log(var_j / sum_k var_k) with the sample variance (denominator W-1)
// of each projected row. Rows with zero variance hit a documented floor of
// log(1e-30 / sum). DEGENERATE_EPOCH when the total variance is zero.
FeatureVector log_variance_features(const Matrix& projected);

struct LdaModel {
    std::vector<double> weights;
    double bias = 0.0;
    double score_scale = 1.0; // std of training scores; score > 0 means RIGHT
};

// Pooled-covariance two-class LDA with a 1e-6 mean-diagonal shrinkage term.
//   weights = Sigma_p^{-1} (mu_+ - mu_-),  bias = -weights . (mu_+ + mu_-)/2
LdaModel train_lda(std::span<const FeatureVector> features);

double lda_score(const LdaModel& model, const FeatureVector& f);

// score > 0 -> RIGHT, otherwise LEFT (ties resolve to LEFT).
ClassLabel classify(const LdaModel& model, const FeatureVector& f);

} // namespace bci
