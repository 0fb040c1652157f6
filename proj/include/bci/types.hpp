#pragma once

#include "bci/matrix.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bci {

// Signed encoding is part of the contract: LEFT = -1, RIGHT = +1.
enum class ClassLabel : int { left = -1, right = +1 };

const char* to_string(ClassLabel label);

enum class MarkerLabel { session_start, left_cue, right_cue, cross };

// GDF-style stimulation codes; code <-> label is a bijection.
constexpr std::uint32_t kCodeSessionStart = 768;
constexpr std::uint32_t kCodeLeftCue = 769;
constexpr std::uint32_t kCodeRightCue = 770;
constexpr std::uint32_t kCodeCross = 786;

std::uint32_t code_for(MarkerLabel label);
MarkerLabel label_for_code(std::uint32_t code); // PARSE_ERROR on unknown code
const char* to_string(MarkerLabel label);
MarkerLabel marker_label_from_string(std::string_view name); // PARSE_ERROR

struct Marker {
    double time_s = 0.0;
    std::uint32_t code = 0;
    MarkerLabel label = MarkerLabel::session_start;
};

using MarkerStream = std::vector<Marker>;

// Total order: by time, ties broken by code ascending.
void sort_markers(MarkerStream& markers);

struct SignalBuffer {
    double sample_rate_hz = 0.0;
    std::vector<std::string> channel_names;
    Matrix samples; // N channels x S samples, microvolts

    std::size_t channel_count() const { return samples.rows(); }
    std::size_t sample_count() const { return samples.cols(); }
    double duration_s() const {
        return sample_rate_hz > 0.0 ? static_cast<double>(sample_count()) / sample_rate_hz : 0.0;
    }
};

// INVALID_ARG when any SignalBuffer invariant is broken.
void validate(const SignalBuffer& buffer);

struct Epoch {
    ClassLabel label = ClassLabel::left;
    Matrix data;        // N x W
    double onset_s = 0; // window start time within the source recording
};

// Round-to-nearest sample index; the one conversion used everywhere.
std::size_t time_to_index(double t_s, double fs);

// Copy of samples[start .. start+W), start = round(start_s*fs), W = round(length_s*fs).
Matrix slice_window(const SignalBuffer& buffer, double start_s, double length_s);

std::vector<std::string> default_channel_names(std::size_t n);

} // namespace bci
