#include "bci/lda.hpp"

#include "bci/error.hpp"
#include "bci/linalg.hpp"

#include <cmath>

namespace bci {

FeatureVector log_variance_features(const Matrix& projected) {
    if (projected.cols() < 2) fail(Errc::invalid_arg, "need at least 2 samples per window");
    const std::size_t rows = projected.rows();
    const std::size_t w = projected.cols();

    std::vector<double> variances(rows);
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const double* x = projected.row(r);
        double mean = 0.0;
        for (std::size_t i = 0; i < w; ++i) mean += x[i];
        mean /= static_cast<double>(w);
        double ss = 0.0;
        for (std::size_t i = 0; i < w; ++i) {
            const double d = x[i] - mean;
            ss += d * d;
        }
        variances[r] = ss / static_cast<double>(w - 1);
        total += variances[r];
    }
    if (total <= 0.0) fail(Errc::degenerate_epoch, "window has zero variance in every component");

    constexpr double kVarianceFloor = 1e-30;
    FeatureVector f;
    f.values.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const double v = variances[r] > 0.0 ? variances[r] : kVarianceFloor;
        f.values[r] = std::log(v / total);
    }
    return f;
}

LdaModel train_lda(std::span<const FeatureVector> features) {
    if (features.empty()) fail(Errc::too_few_samples, "no feature vectors");
    const std::size_t d = features.front().values.size();

    std::vector<const FeatureVector*> neg, pos;
    for (const FeatureVector& f : features) {
        if (!f.label) fail(Errc::invalid_arg, "training feature without a label");
        if (f.values.size() != d) fail(Errc::dim_mismatch, "feature dimensionality differs");
        (f.label == ClassLabel::left ? neg : pos).push_back(&f);
    }
    if (neg.size() < 2 || pos.size() < 2)
        fail(Errc::too_few_samples, "need at least 2 feature vectors per class");

    auto mean_of = [d](const std::vector<const FeatureVector*>& group) {
        std::vector<double> mu(d, 0.0);
        for (const FeatureVector* f : group)
            for (std::size_t i = 0; i < d; ++i) mu[i] += f->values[i];
        for (double& m : mu) m /= static_cast<double>(group.size());
        return mu;
    };
    const std::vector<double> mu_neg = mean_of(neg);
    const std::vector<double> mu_pos = mean_of(pos);

    auto scatter_of = [d](const std::vector<const FeatureVector*>& group,
                          const std::vector<double>& mu) {
        Matrix s(d, d);
        for (const FeatureVector* f : group)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    s(i, j) += (f->values[i] - mu[i]) * (f->values[j] - mu[j]);
        return s; // (n-1) * sample covariance
    };
    Matrix pooled = scatter_of(neg, mu_neg) + scatter_of(pos, mu_pos);
    const double denom = static_cast<double>(neg.size() + pos.size() - 2);
    pooled = (1.0 / denom) * pooled;

    const double shrink = 1e-6 * trace(pooled) / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) pooled(i, i) += shrink;

    std::vector<double> delta(d);
    for (std::size_t i = 0; i < d; ++i) delta[i] = mu_pos[i] - mu_neg[i];

    LdaModel model;
    model.weights = solve_linear(pooled, delta);

    double mid = 0.0;
    for (std::size_t i = 0; i < d; ++i) mid += model.weights[i] * (mu_pos[i] + mu_neg[i]);
    model.bias = -0.5 * mid;

    // Spread of training scores drives the feedback squashing.
    std::vector<double> scores;
    scores.reserve(features.size());
    for (const FeatureVector& f : features) scores.push_back(lda_score(model, f));
    double mean = 0.0;
    for (double s : scores) mean += s;
    mean /= static_cast<double>(scores.size());
    double ss = 0.0;
    for (double s : scores) ss += (s - mean) * (s - mean);
    const double std_dev = std::sqrt(ss / static_cast<double>(scores.size() - 1));
    model.score_scale = std_dev > 1e-12 ? std_dev : 1e-12;
    return model;
}

double lda_score(const LdaModel& model, const FeatureVector& f) {
    if (f.values.size() != model.weights.size())
        fail(Errc::dim_mismatch, "feature dimensionality does not match the model");
    double s = model.bias;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += model.weights[i] * f.values[i];
    return s;
}

ClassLabel classify(const LdaModel& model, const FeatureVector& f) {
    return lda_score(model, f) > 0.0 ? ClassLabel::right : ClassLabel::left;
}

} // namespace bci
