#include "bci/types.hpp"

#include "bci/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace bci {

const char* to_string(ClassLabel label) {
    return label == ClassLabel::left ? "LEFT" : "RIGHT";
}

std::uint32_t code_for(MarkerLabel label) {
    switch (label) {
    case MarkerLabel::session_start: return kCodeSessionStart;
    case MarkerLabel::left_cue: return kCodeLeftCue;
    case MarkerLabel::right_cue: return kCodeRightCue;
    case MarkerLabel::cross: return kCodeCross;
    }
    fail(Errc::invalid_arg, "unknown marker label");
}

MarkerLabel label_for_code(std::uint32_t code) {
    switch (code) {
    case kCodeSessionStart: return MarkerLabel::session_start;
    case kCodeLeftCue: return MarkerLabel::left_cue;
    case kCodeRightCue: return MarkerLabel::right_cue;
    case kCodeCross: return MarkerLabel::cross;
    }
    fail(Errc::parse_error, "unknown marker code " + std::to_string(code));
}

const char* to_string(MarkerLabel label) {
    switch (label) {
    case MarkerLabel::session_start: return "SESSION_START";
    case MarkerLabel::left_cue: return "LEFT_CUE";
    case MarkerLabel::right_cue: return "RIGHT_CUE";
    case MarkerLabel::cross: return "CROSS";
    }
    return "?";
}

MarkerLabel marker_label_from_string(std::string_view name) {
    if (name == "SESSION_START") return MarkerLabel::session_start;
    if (name == "LEFT_CUE") return MarkerLabel::left_cue;
    if (name == "RIGHT_CUE") return MarkerLabel::right_cue;
    if (name == "CROSS") return MarkerLabel::cross;
    fail(Errc::parse_error, "unknown marker label '" + std::string(name) + "'");
}

void sort_markers(MarkerStream& markers) {
    std::stable_sort(markers.begin(), markers.end(), [](const Marker& a, const Marker& b) {
        if (a.time_s != b.time_s) return a.time_s < b.time_s;
        return a.code < b.code;
    });
}

void validate(const SignalBuffer& buffer) {
    if (buffer.channel_count() == 0 || buffer.sample_count() == 0)
        fail(Errc::invalid_arg, "signal buffer must have at least one channel and one sample");
    if (buffer.channel_names.size() != buffer.channel_count())
        fail(Errc::invalid_arg, "channel name count does not match channel count");
    std::unordered_set<std::string> seen;
    for (const auto& name : buffer.channel_names)
        if (!seen.insert(name).second)
            fail(Errc::invalid_arg, "duplicate channel name '" + name + "'");
    if (!(buffer.sample_rate_hz > 0.0) || !std::isfinite(buffer.sample_rate_hz))
        fail(Errc::invalid_arg, "sample rate must be positive and finite");
    if (!all_finite(buffer.samples)) fail(Errc::invalid_arg, "non-finite sample value");
}

std::size_t time_to_index(double t_s, double fs) {
    return static_cast<std::size_t>(std::llround(t_s * fs));
}

Matrix slice_window(const SignalBuffer& buffer, double start_s, double length_s) {
    if (length_s <= 0.0) fail(Errc::invalid_arg, "window length must be positive");
    const double fs = buffer.sample_rate_hz;
    const std::size_t w = time_to_index(length_s, fs);
    if (w == 0) fail(Errc::invalid_arg, "window rounds to zero samples");
    if (start_s < 0.0) fail(Errc::out_of_range, "window starts before the buffer");
    const std::size_t start = time_to_index(start_s, fs);
    if (start + w > buffer.sample_count())
        fail(Errc::out_of_range, "window exceeds the buffer end");

    Matrix out(buffer.channel_count(), w);
    for (std::size_t ch = 0; ch < buffer.channel_count(); ++ch) {
        const double* src = buffer.samples.row(ch) + start;
        double* dst = out.row(ch);
        std::copy(src, src + w, dst);
    }
    return out;
}

std::vector<std::string> default_channel_names(std::size_t n) {
    // Emotiv EPOC+ montage for the default 14-channel layout.
    static const std::vector<std::string> kEmotiv = {"AF3", "F7", "F3", "FC5", "T7",  "P7",  "O1",
                                                     "O2",  "P8", "T8", "FC6", "F4", "F8", "AF4"};
    if (n == kEmotiv.size()) return kEmotiv;
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("C" + std::to_string(i + 1));
    return names;
}

} // namespace bci
