#include "bci/filter.hpp"

#include "bci/error.hpp"
#include "bci/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace bci {

namespace {

using cplx = std::complex<double>;

// Expand prod_i (z - roots[i]) into monic polynomial coefficients,
// highest power first.
std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> coeffs{1.0};
    for (const cplx& r : roots) {
        std::vector<cplx> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i];
            next[i + 1] -= coeffs[i] * r;
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

// Binomial coefficients of (z^2 - 1)^n, degree 2n, highest power first.
std::vector<double> bandpass_numerator(int n) {
    std::vector<double> c{1.0};
    for (int stage = 0; stage < n; ++stage) {
        std::vector<double> next(c.size() + 2, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];      // * z^2
            next[i + 2] -= c[i];  // * (-1)
        }
        c = std::move(next);
    }
    return c;
}

} // namespace

FilterCoefficients design_bandpass(double low_hz, double high_hz, int order, double fs) {
    if (order < 2 || order > 8 || order % 2 != 0)
        fail(Errc::invalid_arg, "band-pass order must be one of 2, 4, 6, 8");
    if (!(low_hz > 0.0) || !(low_hz < high_hz) || !(high_hz < fs / 2.0))
        fail(Errc::invalid_band, "band must satisfy 0 < low < high < fs/2");

    const int n = order / 2; // low-pass prototype order
    const double pi = std::numbers::pi;
    const double k2 = 2.0 * fs; // bilinear constant 2/T

    // Pre-warped analog band edges.
    const double wl = k2 * std::tan(pi * low_hz / fs);
    const double wh = k2 * std::tan(pi * high_hz / fs);
    const double w0sq = wl * wh;
    const double bw = wh - wl;

    // Left-half-plane Butterworth prototype poles on the unit circle.
    std::vector<cplx> analog_poles;
    analog_poles.reserve(static_cast<std::size_t>(order));
    for (int k = 0; k < n; ++k) {
        const double angle = pi * (2.0 * k + n + 1.0) / (2.0 * n);
        const cplx p(std::cos(angle), std::sin(angle));
        // Low-pass -> band-pass: s -> (s^2 + w0^2) / (bw * s), each prototype
        // pole splits into a conjugate-ish pair.
        const cplx term = p * (bw / 2.0);
        const cplx disc = std::sqrt(term * term - w0sq);
        analog_poles.push_back(term + disc);
        analog_poles.push_back(term - disc);
    }

    // Bilinear transform of the poles; gain picks up (2/T - s_z) / (2/T - s_p)
    // with the n analog zeros all at s = 0.
    std::vector<cplx> digital_poles;
    digital_poles.reserve(analog_poles.size());
    cplx denom_gain = 1.0;
    for (const cplx& s : analog_poles) {
        digital_poles.push_back((k2 + s) / (k2 - s));
        denom_gain *= (k2 - s);
    }
    const double gain = std::pow(bw, n) * std::pow(k2, n) / denom_gain.real();

    FilterCoefficients out;
    out.low_hz = low_hz;
    out.high_hz = high_hz;
    out.order = order;
    out.fs = fs;

    const std::vector<double> num = bandpass_numerator(n);
    out.feedforward.resize(static_cast<std::size_t>(order) + 1, 0.0);
    for (std::size_t i = 0; i < num.size(); ++i) out.feedforward[i] = gain * num[i];

    const std::vector<cplx> den = poly_from_roots(digital_poles);
    out.feedback.resize(den.size());
    for (std::size_t i = 0; i < den.size(); ++i) out.feedback[i] = den[i].real();
    out.feedback[0] = 1.0;

    for (const cplx& p : digital_poles)
        if (std::abs(p) >= 1.0 - 1e-9)
            fail(Errc::unstable, "designed pole outside the stable region");

    return out;
}

Matrix apply_filter(const FilterCoefficients& coeffs, const Matrix& channels) {
    return kernels::iir_channels(coeffs.feedforward, coeffs.feedback, channels);
}

SignalBuffer apply_filter(const FilterCoefficients& coeffs, const SignalBuffer& buffer) {
    SignalBuffer out;
    out.sample_rate_hz = buffer.sample_rate_hz;
    out.channel_names = buffer.channel_names;
    out.samples = apply_filter(coeffs, buffer.samples);
    return out;
}

} // namespace bci
