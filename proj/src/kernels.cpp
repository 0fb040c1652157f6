#include "bci/kernels.hpp"

#include "bci/error.hpp"

#include <cstdint>

namespace bci::kernels {

namespace {

inline void check_matmul_dims(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) fail(Errc::dim_mismatch, "matmul inner dimensions differ");
}

inline double dot_rows(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k] * y[k];
    return acc;
}

// Shared single-channel recursion; both variants call this so the only
// difference between them is the channel loop.
inline void iir_one_channel(std::span<const double> ff, std::span<const double> fb,
                            const double* x, double* y, std::size_t s) {
    const std::size_t nb = ff.size();
    const std::size_t na = fb.size();
    for (std::size_t n = 0; n < s; ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < nb && k <= n; ++k) acc += ff[k] * x[n - k];
        for (std::size_t k = 1; k < na && k <= n; ++k) acc -= fb[k] * y[n - k];
        y[n] = acc;
    }
}

inline Matrix gram_one(const Matrix& x) {
    const std::size_t n = x.rows();
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = dot_rows(x.row(i), x.row(j), x.cols());
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

inline Matrix normalize_by_trace(Matrix g) {
    double t = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) t += g(i, i);
    if (t <= 1e-30) fail(Errc::zero_signal, "trial has (near-)zero energy");
    const double inv = 1.0 / t;
    for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] *= inv;
    return g;
}

void check_iir_args(std::span<const double> ff, std::span<const double> fb) {
    if (ff.empty() || fb.empty()) fail(Errc::invalid_arg, "empty filter coefficients");
    if (fb[0] != 1.0) fail(Errc::invalid_arg, "feedback[0] must be 1");
}

Matrix sum_range(std::span<const Matrix> ms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return ms[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return sum_range(ms, lo, mid) + sum_range(ms, mid, hi);
}

} // namespace

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_matmul_dims(a, b);
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

Matrix gram(const Matrix& x) { return gram_one(x); }

Matrix iir_channels(std::span<const double> ff, std::span<const double> fb, const Matrix& in) {
    check_iir_args(ff, fb);
    Matrix out(in.rows(), in.cols());
    for (std::size_t ch = 0; ch < in.rows(); ++ch)
        iir_one_channel(ff, fb, in.row(ch), out.row(ch), in.cols());
    return out;
}

std::vector<Matrix> normalized_grams(std::span<const Matrix> trials) {
    std::vector<Matrix> out(trials.size());
    for (std::size_t t = 0; t < trials.size(); ++t)
        out[t] = normalize_by_trace(gram_one(trials[t]));
    return out;
}

} // namespace serial

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_matmul_dims(a, b);
    Matrix c(a.rows(), b.cols());
    const std::int64_t rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

Matrix gram(const Matrix& x) {
    const std::size_t n = x.rows();
    Matrix g(n, n);
    const std::int64_t rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < rows; ++i) {
        for (std::size_t j = static_cast<std::size_t>(i); j < n; ++j) {
            const double v = dot_rows(x.row(i), x.row(j), x.cols());
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

Matrix iir_channels(std::span<const double> ff, std::span<const double> fb, const Matrix& in) {
    check_iir_args(ff, fb);
    Matrix out(in.rows(), in.cols());
    const std::int64_t channels = static_cast<std::int64_t>(in.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t ch = 0; ch < channels; ++ch)
        iir_one_channel(ff, fb, in.row(ch), out.row(ch), in.cols());
    return out;
}

std::vector<Matrix> normalized_grams(std::span<const Matrix> trials) {
    std::vector<Matrix> out(trials.size());
    const std::int64_t n = static_cast<std::int64_t>(trials.size());
    bool zero_signal = false;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < n; ++t) {
        try {
            out[t] = normalize_by_trace(gram_one(trials[t]));
        } catch (const Error&) {
#pragma omp atomic write
            zero_signal = true;
        }
    }
    if (zero_signal) fail(Errc::zero_signal, "trial has (near-)zero energy");
    return out;
}

Matrix pairwise_mean(std::span<const Matrix> ms) {
    if (ms.empty()) fail(Errc::invalid_arg, "mean of zero matrices");
    Matrix s = sum_range(ms, 0, ms.size());
    return (1.0 / static_cast<double>(ms.size())) * s;
}

} // namespace bci::kernels
