#include "bci/epochs.hpp"

#include "bci/error.hpp"

#include <algorithm>
#include <cmath>

namespace bci {

EpochExtraction extract_epochs(const SignalBuffer& buffer, const MarkerStream& markers,
                               double offset_s, double length_s) {
    if (length_s <= 0.0) fail(Errc::invalid_arg, "epoch length must be positive");
    const double fs = buffer.sample_rate_hz;
    const std::size_t w = time_to_index(length_s, fs);
    if (w == 0) fail(Errc::invalid_arg, "epoch length rounds to zero samples");

    EpochExtraction out;
    for (const Marker& m : markers) {
        ClassLabel label;
        if (m.label == MarkerLabel::left_cue)
            label = ClassLabel::left;
        else if (m.label == MarkerLabel::right_cue)
            label = ClassLabel::right;
        else
            continue;

        const double start_s = m.time_s + offset_s;
        const long long start = std::llround(start_s * fs);
        if (start < 0 || static_cast<std::size_t>(start) + w > buffer.sample_count()) {
            ++out.skipped;
            continue;
        }

        Epoch e;
        e.label = label;
        e.onset_s = start_s;
        e.data = Matrix(buffer.channel_count(), w);
        for (std::size_t ch = 0; ch < buffer.channel_count(); ++ch) {
            const double* src = buffer.samples.row(ch) + start;
            std::copy(src, src + w, e.data.row(ch));
        }
        out.epochs.push_back(std::move(e));
    }

    if (out.epochs.empty()) fail(Errc::empty_result, "no epochs extracted");
    return out;
}

} // namespace bci
