#pragma once

#include "bci/types.hpp"

#include <vector>

namespace bci {

struct EpochExtraction {
    std::vector<Epoch> epochs;
    std::size_t skipped = 0; // cues whose window fell outside the recording
};

// One epoch per LEFT/RIGHT cue covering [t+offset, t+offset+length).
// Windows that overrun the recording are skipped and tallied, never padded.
// CROSS and SESSION_START markers produce no epochs. EMPTY_RESULT when
// nothing was extracted.
EpochExtraction extract_epochs(const SignalBuffer& buffer, const MarkerStream& markers,
                               double offset_s, double length_s);

} // namespace bci
