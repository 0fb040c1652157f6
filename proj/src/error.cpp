#include "bci/error.hpp"

namespace bci {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::invalid_arg: return "INVALID_ARG";
    case Errc::out_of_range: return "OUT_OF_RANGE";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::nonuniform_row: return "NONUNIFORM_ROW";
    case Errc::version_mismatch: return "VERSION_MISMATCH";
    case Errc::dim_mismatch: return "DIM_MISMATCH";
    case Errc::zero_signal: return "ZERO_SIGNAL";
    case Errc::too_few_trials: return "TOO_FEW_TRIALS";
    case Errc::rank_deficient: return "RANK_DEFICIENT";
    case Errc::numeric_failure: return "NUMERIC_FAILURE";
    case Errc::degenerate_epoch: return "DEGENERATE_EPOCH";
    case Errc::too_few_samples: return "TOO_FEW_SAMPLES";
    case Errc::singular: return "SINGULAR";
    case Errc::length_mismatch: return "LENGTH_MISMATCH";
    case Errc::empty: return "EMPTY";
    case Errc::empty_result: return "EMPTY_RESULT";
    case Errc::window_too_long: return "WINDOW_TOO_LONG";
    case Errc::invalid_band: return "INVALID_BAND";
    case Errc::unstable: return "UNSTABLE";
    case Errc::invalid_spec: return "INVALID_SPEC";
    case Errc::sink_disconnected: return "SINK_DISCONNECTED";
    case Errc::bind_failed: return "BIND_FAILED";
    case Errc::io_error: return "IO_ERROR";
    }
    return "UNKNOWN";
}

} // namespace bci
