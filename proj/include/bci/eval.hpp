#pragma once

#include "bci/lda.hpp"
#include "bci/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bci {

// 2x2 count table, rows = true class, columns = predicted class.
// Row/column 0 is LEFT, 1 is RIGHT.
struct ConfusionMatrix {
    std::array<std::array<std::uint64_t, 2>, 2> counts{{{0, 0}, {0, 0}}};

    std::uint64_t& at(ClassLabel target, ClassLabel prediction);
    std::uint64_t at(ClassLabel target, ClassLabel prediction) const;
    std::uint64_t total() const;
    std::uint64_t correct() const; // diagonal sum
    std::uint64_t row_total(ClassLabel target) const;
    ConfusionMatrix& operator+=(const ConfusionMatrix& other);
    bool operator==(const ConfusionMatrix&) const = default;
};

std::size_t class_index(ClassLabel label); // LEFT -> 0, RIGHT -> 1

// counts[i][j] = #{k : targets[k] = i, predictions[k] = j}.
// LENGTH_MISMATCH on unequal lengths, EMPTY on zero length.
ConfusionMatrix confusion(std::span<const ClassLabel> targets,
                          std::span<const ClassLabel> predictions);

// 100 * correct / total. EMPTY when total is zero.
double accuracy_percent(const ConfusionMatrix& cm);

// Fixed two-decimal rendering used by every text report ("79.92").
std::string format_percent(double percent);

// tanh(score / score_scale), in [-1, +1]; negative means LEFT.
double feedback_strength(const LdaModel& model, double score);

// One scored window (or epoch). target is empty when no cue covers the window.
struct WindowRecord {
    double time_s = 0.0;
    std::optional<ClassLabel> target;
    ClassLabel prediction = ClassLabel::left;
    double score = 0.0;
    double feedback = 0.0;
};

// Stratified fold assignment: the j-th epoch of each class (input order)
// lands in fold j mod folds. Returned vector holds the fold of each epoch.
std::vector<std::size_t> stratified_folds(std::span<const Epoch> epochs, std::size_t folds);

struct OfflineEvaluation {
    ConfusionMatrix matrix;
    double accuracy = 0.0;                    // percent
    std::vector<WindowRecord> records;        // one per epoch, input order
};

// Stratified k-fold cross-validation of the full CSP + LDA pipeline.
// Each fold trains on the other folds only and scores its held-out epochs.
// INVALID_ARG when folds < 2; TOO_FEW_TRIALS when a class has < folds epochs.
OfflineEvaluation evaluate_offline(std::span<const Epoch> epochs, std::size_t n_pairs,
                                   std::size_t folds);

using KeyValue = std::pair<std::string, std::string>;

// Plain-text report: settings block, confusion matrix, per-class and overall
// accuracy, then any extra lines. Zero-count rows render as "n/a".
std::string render_report(const std::vector<KeyValue>& settings, const ConfusionMatrix& cm,
                          const std::vector<KeyValue>& extras = {});

// CSV with header "time,target,prediction,score,feedback"; empty target field
// for unlabeled windows.
void write_window_csv(std::span<const WindowRecord> records, const std::string& path);

} // namespace bci
