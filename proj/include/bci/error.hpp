#pragma once

#include <stdexcept>
#include <string>

namespace bci {

// Error vocabulary shared by every module. The names mirror the identifiers
// used in CLI diagnostics (errc_name) so scripts can match on them.
enum class Errc {
    invalid_arg,
    out_of_range,
    parse_error,
    nonuniform_row,
    version_mismatch,
    dim_mismatch,
    zero_signal,
    too_few_trials,
    rank_deficient,
    numeric_failure,
    degenerate_epoch,
    too_few_samples,
    singular,
    length_mismatch,
    empty,
    empty_result,
    window_too_long,
    invalid_band,
    unstable,
    invalid_spec,
    sink_disconnected,
    bind_failed,
    io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace bci
