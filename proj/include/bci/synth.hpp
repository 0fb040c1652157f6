#pragma once

#include "bci/matrix.hpp"
#include "bci/types.hpp"

#include <cstdint>
#include <string>

namespace bci {

// xorshift64* PRNG seeded through one splitmix64 step. The exact algorithm
// is part of the output contract (same seed, same bytes, any platform);
// the README spells out every step for cross-language ports.
class Rng64 {
public:
    explicit Rng64(std::uint64_t seed);

    std::uint64_t next_u64();
    double next_unit();     // uniform in (0, 1], never 0
    double next_gaussian(); // standard normal via Box-Muller, pair-cached

private:
    std::uint64_t state_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

struct SessionSpec {
    std::size_t n_channels = 14;
    double fs = 128.0;
    std::size_t n_cues = 40;       // even; classes balanced exactly
    double cue_period_s = 4.0;
    Matrix cov_left;               // N x N SPD; empty = identity
    Matrix cov_right;              // N x N SPD; empty = identity
    double band_low_hz = 8.0;
    double band_high_hz = 30.0;
    std::size_t filter_order = 4;
    double noise_floor = 0.1;      // white-noise amplitude added to every channel
    std::uint64_t seed = 1;
    bool shuffle = false;          // false = strict L,R,L,R alternation
};

// Key-value text file, one "key=value" per line, '#' comments.
// Keys: n_channels, fs, n_cues, cue_period_s, cov_left, cov_right,
// band_low_hz, band_high_hz, filter_order, noise_floor, seed, shuffle.
// Covariances: "diag:v1,v2,..." or "file:<path>" (matrix file format).
SessionSpec parse_session_spec(const std::string& path);

// INVALID_SPEC on: non-SPD or mis-sized covariance, odd n_cues, period not
// exceeding the 3.5 s training epoch window, nonpositive sizes/rates,
// negative noise floor, inconsistent band edges, unsupported filter order.
void validate(const SessionSpec& spec);

struct GeneratedSession {
    SignalBuffer signal;
    MarkerStream markers;
};

// Deterministic synthetic session: SESSION_START at 0; per cue i a CROSS at
// t_i - 1 and the cue at t_i = (i+1)*period; x = L_class * z + floor * w with
// the class covariance active on [t_i, t_i + period) and the class average
// elsewhere; the whole signal is then band-passed.
GeneratedSession generate_session(const SessionSpec& spec);

} // namespace bci
