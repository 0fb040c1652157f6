#pragma once

#include "bci/matrix.hpp"
#include "bci/types.hpp"

#include <vector>

namespace bci {

struct FilterCoefficients {
    std::vector<double> feedforward; // b0..bM
    std::vector<double> feedback;    // a0..aM, a0 == 1
    double low_hz = 0.0;
    double high_hz = 0.0;
    int order = 0;
    double fs = 0.0;
};

// Butterworth band-pass of the given total order (even, 2..8) via the
// bilinear transform with frequency pre-warping. The numerator is the
// binomial expansion of (z^2 - 1)^(order/2) scaled by the designed gain, so
// the response is pinned to zero at 0 Hz and fs/2: exactly zero for orders 2
// and 4 (the scaled binomials are exact doubles) and within one coefficient
// rounding (~1e-16 of the largest tap) for orders 6 and 8, where gain*3 and
// gain*6 round. INVALID_BAND unless 0 < low < high < fs/2,
// INVALID_ARG for an unsupported order, UNSTABLE if any designed pole lands
// outside |z| < 1 - 1e-9 (cannot happen for legal inputs).
FilterCoefficients design_bandpass(double low_hz, double high_hz, int order, double fs);

// Causal per-channel difference equation with zero initial state. Causal on
// purpose: offline training and online replay see identical samples.
Matrix apply_filter(const FilterCoefficients& coeffs, const Matrix& channels);
SignalBuffer apply_filter(const FilterCoefficients& coeffs, const SignalBuffer& buffer);

} // namespace bci
