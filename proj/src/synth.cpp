#include "bci/synth.hpp"

#include "bci/error.hpp"
#include "bci/filter.hpp"
#include "bci/io.hpp"
#include "bci/linalg.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <utility>

namespace bci {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

Rng64::Rng64(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
}

std::uint64_t Rng64::next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1Dull;
}

double Rng64::next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng64::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

namespace {

[[noreturn]] void spec_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    fail(Errc::invalid_spec, path + ":" + std::to_string(line_no) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double to_double(const std::string& s, const std::string& path, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(Errc::parse_error, path + ":" + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

std::uint64_t to_u64(const std::string& s, const std::string& path, std::size_t line_no) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(Errc::parse_error, path + ":" + std::to_string(line_no) + ": bad integer '" + s + "'");
    return v;
}

Matrix parse_covariance(const std::string& value, const std::string& path, std::size_t line_no) {
    if (value.rfind("diag:", 0) == 0) {
        std::vector<double> diag;
        std::string item;
        std::size_t start = 5;
        while (start <= value.size()) {
            const std::size_t comma = value.find(',', start);
            item = trim(value.substr(start, comma == std::string::npos ? comma : comma - start));
            if (item.empty())
                spec_fail(path, line_no, "empty diagonal entry");
            diag.push_back(to_double(item, path, line_no));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        Matrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }
    if (value.rfind("file:", 0) == 0) return read_matrix_file(trim(value.substr(5)));
    spec_fail(path, line_no, "covariance must be 'diag:v1,v2,...' or 'file:<path>'");
}

} // namespace

SessionSpec parse_session_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open spec file '" + path + "'");
    SessionSpec spec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) spec_fail(path, line_no, "expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "n_channels")
            spec.n_channels = static_cast<std::size_t>(to_u64(value, path, line_no));
        else if (key == "fs")
            spec.fs = to_double(value, path, line_no);
        else if (key == "n_cues")
            spec.n_cues = static_cast<std::size_t>(to_u64(value, path, line_no));
        else if (key == "cue_period_s")
            spec.cue_period_s = to_double(value, path, line_no);
        else if (key == "cov_left")
            spec.cov_left = parse_covariance(value, path, line_no);
        else if (key == "cov_right")
            spec.cov_right = parse_covariance(value, path, line_no);
        else if (key == "band_low_hz")
            spec.band_low_hz = to_double(value, path, line_no);
        else if (key == "band_high_hz")
            spec.band_high_hz = to_double(value, path, line_no);
        else if (key == "filter_order")
            spec.filter_order = static_cast<std::size_t>(to_u64(value, path, line_no));
        else if (key == "noise_floor")
            spec.noise_floor = to_double(value, path, line_no);
        else if (key == "seed")
            spec.seed = to_u64(value, path, line_no);
        else if (key == "shuffle")
            spec.shuffle = (value == "1" || value == "true");
        else
            spec_fail(path, line_no, "unknown key '" + key + "'");
    }
    return spec;
}

namespace {

// The default training epoch sits 0.5 s after the cue and lasts 3.0 s, so a
// period must exceed 3.5 s for every epoch to stay inside its cue interval.
constexpr double kMinCuePeriod = 3.5;

void check_covariance(const Matrix& cov, std::size_t n, const char* which) {
    if (cov.empty()) return; // identity default
    if (cov.rows() != n || cov.cols() != n)
        fail(Errc::invalid_spec, std::string(which) + " must be " + std::to_string(n) + "x" +
                                     std::to_string(n) + ", got " + std::to_string(cov.rows()) +
                                     "x" + std::to_string(cov.cols()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c)
            if (std::fabs(cov(r, c) - cov(c, r)) > 1e-9)
                fail(Errc::invalid_spec, std::string(which) + " is not symmetric");
    try {
        cholesky_lower(cov);
    } catch (const Error&) {
        fail(Errc::invalid_spec, std::string(which) + " is not positive definite");
    }
}

} // namespace

void validate(const SessionSpec& spec) {
    if (spec.n_channels == 0) fail(Errc::invalid_spec, "n_channels must be positive");
    if (!(spec.fs > 0.0)) fail(Errc::invalid_spec, "fs must be positive");
    if (!(spec.cue_period_s > 0.0)) fail(Errc::invalid_spec, "cue_period_s must be positive");
    if (spec.n_cues % 2 != 0)
        fail(Errc::invalid_spec, "n_cues must be even so classes balance exactly");
    if (spec.n_cues > 0 && !(spec.cue_period_s > kMinCuePeriod))
        fail(Errc::invalid_spec, "cue_period_s must exceed " + std::to_string(kMinCuePeriod) +
                                     " s, the training epoch span");
    if (spec.noise_floor < 0.0) fail(Errc::invalid_spec, "noise_floor must be nonnegative");
    if (!(spec.band_low_hz > 0.0) || !(spec.band_high_hz > spec.band_low_hz) ||
        !(spec.band_high_hz < spec.fs / 2.0))
        fail(Errc::invalid_spec, "band edges must satisfy 0 < low < high < fs/2");
    if (spec.filter_order < 2 || spec.filter_order > 8 || spec.filter_order % 2 != 0)
        fail(Errc::invalid_spec, "filter_order must be 2, 4, 6, or 8");
    check_covariance(spec.cov_left, spec.n_channels, "cov_left");
    check_covariance(spec.cov_right, spec.n_channels, "cov_right");
}

GeneratedSession generate_session(const SessionSpec& spec) {
    validate(spec);
    const std::size_t n = spec.n_channels;
    const Matrix cov_left = spec.cov_left.empty() ? Matrix::identity(n) : spec.cov_left;
    const Matrix cov_right = spec.cov_right.empty() ? Matrix::identity(n) : spec.cov_right;
    const Matrix chol_left = cholesky_lower(cov_left);
    const Matrix chol_right = cholesky_lower(cov_right);
    const Matrix chol_mixed = cholesky_lower(0.5 * (cov_left + cov_right));

    const auto period_n = static_cast<std::size_t>(std::llround(spec.cue_period_s * spec.fs));
    if (period_n == 0) fail(Errc::invalid_spec, "cue_period_s spans no samples at this fs");
    const std::size_t total = (spec.n_cues + 1) * period_n;

    Rng64 rng(spec.seed);

    std::vector<ClassLabel> cue_labels(spec.n_cues);
    for (std::size_t i = 0; i < spec.n_cues; ++i)
        cue_labels[i] = (i % 2 == 0) ? ClassLabel::left : ClassLabel::right;
    if (spec.shuffle) {
        for (std::size_t i = spec.n_cues; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
            std::swap(cue_labels[i - 1], cue_labels[j]);
        }
    }

    GeneratedSession session;
    session.markers.push_back({0.0, kCodeSessionStart, MarkerLabel::session_start});
    for (std::size_t i = 0; i < spec.n_cues; ++i) {
        const double t = static_cast<double>((i + 1) * period_n) / spec.fs;
        session.markers.push_back({t - 1.0, kCodeCross, MarkerLabel::cross});
        const bool left = cue_labels[i] == ClassLabel::left;
        session.markers.push_back(
            {t, left ? kCodeLeftCue : kCodeRightCue, left ? MarkerLabel::left_cue : MarkerLabel::right_cue});
    }
    sort_markers(session.markers);

    Matrix samples(n, total);
    std::vector<double> structured(n), noise(n);
    for (std::size_t s = 0; s < total; ++s) {
        const std::size_t segment = s / period_n; // 0 = lead-in, else cue segment-1
        const Matrix* chol = &chol_mixed;
        if (segment > 0)
            chol = cue_labels[segment - 1] == ClassLabel::left ? &chol_left : &chol_right;
        for (std::size_t ch = 0; ch < n; ++ch) structured[ch] = rng.next_gaussian();
        for (std::size_t ch = 0; ch < n; ++ch) noise[ch] = rng.next_gaussian();
        for (std::size_t r = 0; r < n; ++r) {
            double v = 0.0;
            for (std::size_t c = 0; c <= r; ++c) v += (*chol)(r, c) * structured[c];
            samples(r, s) = v + spec.noise_floor * noise[r];
        }
    }

    SignalBuffer raw;
    raw.sample_rate_hz = spec.fs;
    raw.channel_names = default_channel_names(n);
    raw.samples = std::move(samples);
    const FilterCoefficients coeffs = design_bandpass(
        spec.band_low_hz, spec.band_high_hz, static_cast<int>(spec.filter_order), spec.fs);
    session.signal = apply_filter(coeffs, raw);
    return session;
}

} // namespace bci
