#include "bci/eval.hpp"

#include "bci/csp.hpp"
#include "bci/error.hpp"
#include "bci/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bci {

std::size_t class_index(ClassLabel label) { return label == ClassLabel::left ? 0 : 1; }

std::uint64_t& ConfusionMatrix::at(ClassLabel target, ClassLabel prediction) {
    return counts[class_index(target)][class_index(prediction)];
}

std::uint64_t ConfusionMatrix::at(ClassLabel target, ClassLabel prediction) const {
    return counts[class_index(target)][class_index(prediction)];
}

std::uint64_t ConfusionMatrix::total() const {
    return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

std::uint64_t ConfusionMatrix::correct() const { return counts[0][0] + counts[1][1]; }

std::uint64_t ConfusionMatrix::row_total(ClassLabel target) const {
    const auto& row = counts[class_index(target)];
    return row[0] + row[1];
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) counts[i][j] += other.counts[i][j];
    return *this;
}

ConfusionMatrix confusion(std::span<const ClassLabel> targets,
                          std::span<const ClassLabel> predictions) {
    if (targets.size() != predictions.size())
        fail(Errc::length_mismatch, "confusion: " + std::to_string(targets.size()) +
                                        " targets vs " + std::to_string(predictions.size()) +
                                        " predictions");
    if (targets.empty()) fail(Errc::empty, "confusion: no samples");
    ConfusionMatrix cm;
    for (std::size_t k = 0; k < targets.size(); ++k) ++cm.at(targets[k], predictions[k]);
    return cm;
}

double accuracy_percent(const ConfusionMatrix& cm) {
    const std::uint64_t n = cm.total();
    if (n == 0) fail(Errc::empty, "accuracy: empty confusion matrix");
    return 100.0 * static_cast<double>(cm.correct()) / static_cast<double>(n);
}

std::string format_percent(double percent) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", percent);
    return buf;
}

double feedback_strength(const LdaModel& model, double score) {
    return std::tanh(score / model.score_scale);
}

std::vector<std::size_t> stratified_folds(std::span<const Epoch> epochs, std::size_t folds) {
    if (folds == 0) fail(Errc::invalid_arg, "fold count must be positive");
    std::vector<std::size_t> assignment(epochs.size());
    std::size_t seen[2] = {0, 0};
    for (std::size_t i = 0; i < epochs.size(); ++i) {
        std::size_t& j = seen[class_index(epochs[i].label)];
        assignment[i] = j % folds;
        ++j;
    }
    return assignment;
}

OfflineEvaluation evaluate_offline(std::span<const Epoch> epochs, std::size_t n_pairs,
                                   std::size_t folds) {
    if (folds < 2) fail(Errc::invalid_arg, "evaluate_offline: folds must be at least 2");
    std::size_t per_class[2] = {0, 0};
    for (const Epoch& e : epochs) ++per_class[class_index(e.label)];
    if (per_class[0] < folds || per_class[1] < folds)
        fail(Errc::too_few_trials, "evaluate_offline: each class needs at least " +
                                       std::to_string(folds) + " epochs, got " +
                                       std::to_string(per_class[0]) + " LEFT and " +
                                       std::to_string(per_class[1]) + " RIGHT");

    const std::vector<std::size_t> assignment = stratified_folds(epochs, folds);
    OfflineEvaluation result;
    result.records.resize(epochs.size());

    // Folds fill disjoint record slots; counts are merged afterwards in fold
    // order so the result does not depend on the thread count.
    bool failed = false;
    Error first_error(Errc::invalid_arg, "");
#pragma omp parallel for schedule(static)
    for (long long f = 0; f < static_cast<long long>(folds); ++f) {
        try {
            const std::size_t fold = static_cast<std::size_t>(f);
            std::vector<Epoch> training;
            std::vector<std::size_t> held_out;
            for (std::size_t i = 0; i < epochs.size(); ++i) {
                if (assignment[i] == fold)
                    held_out.push_back(i);
                else
                    training.push_back(epochs[i]);
            }
            if (held_out.empty()) continue; // cannot happen once preconditions hold

            const CspModel csp = train_csp(training, n_pairs);
            std::vector<FeatureVector> features;
            features.reserve(training.size());
            for (const Epoch& e : training) {
                FeatureVector fv = log_variance_features(apply_csp(csp, e.data));
                fv.label = e.label;
                features.push_back(std::move(fv));
            }
            const LdaModel lda = train_lda(features);

            for (const std::size_t i : held_out) {
                const FeatureVector fv = log_variance_features(apply_csp(csp, epochs[i].data));
                WindowRecord& rec = result.records[i];
                rec.time_s = epochs[i].onset_s;
                rec.target = epochs[i].label;
                rec.score = lda_score(lda, fv);
                rec.prediction = classify(lda, fv);
                rec.feedback = feedback_strength(lda, rec.score);
            }
        } catch (const Error& e) {
#pragma omp critical
            if (!failed) {
                failed = true;
                first_error = e;
            }
        }
    }
    if (failed) throw first_error;

    for (const WindowRecord& rec : result.records) ++result.matrix.at(*rec.target, rec.prediction);
    result.accuracy = accuracy_percent(result.matrix);
    return result;
}

namespace {

std::string class_accuracy_line(const ConfusionMatrix& cm, ClassLabel label) {
    const std::uint64_t row = cm.row_total(label);
    std::string line = std::string("accuracy ") + to_string(label) + ": ";
    if (row == 0) return line + "n/a";
    const double pct = 100.0 * static_cast<double>(cm.at(label, label)) / static_cast<double>(row);
    return line + format_percent(pct) + "%";
}

} // namespace

std::string render_report(const std::vector<KeyValue>& settings, const ConfusionMatrix& cm,
                          const std::vector<KeyValue>& extras) {
    std::ostringstream out;
    if (!settings.empty()) {
        out << "settings:\n";
        for (const auto& [key, value] : settings) out << "  " << key << ": " << value << '\n';
    }
    out << "confusion matrix (rows = true class, columns = predicted):\n";
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  %-6s %10s %10s\n", "", "LEFT", "RIGHT");
    out << buf;
    for (const ClassLabel label : {ClassLabel::left, ClassLabel::right}) {
        std::snprintf(buf, sizeof(buf), "  %-6s %10llu %10llu\n", to_string(label),
                      static_cast<unsigned long long>(cm.at(label, ClassLabel::left)),
                      static_cast<unsigned long long>(cm.at(label, ClassLabel::right)));
        out << buf;
    }
    out << class_accuracy_line(cm, ClassLabel::left) << '\n';
    out << class_accuracy_line(cm, ClassLabel::right) << '\n';
    out << "accuracy overall: ";
    if (cm.total() == 0)
        out << "n/a\n";
    else
        out << format_percent(accuracy_percent(cm)) << "%\n";
    for (const auto& [key, value] : extras) out << key << ": " << value << '\n';
    return out.str();
}

void write_window_csv(std::span<const WindowRecord> records, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    out << "time,target,prediction,score,feedback\n";
    for (const WindowRecord& rec : records) {
        out << format_double(rec.time_s) << ',';
        if (rec.target) out << to_string(*rec.target);
        out << ',' << to_string(rec.prediction) << ',' << format_double(rec.score) << ','
            << format_double(rec.feedback) << '\n';
    }
    if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
}

} // namespace bci
