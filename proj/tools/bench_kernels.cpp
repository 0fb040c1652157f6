// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce bit-identical results.

#include "bci/filter.hpp"
#include "bci/kernels.hpp"
#include "bci/matrix.hpp"
#include "bci/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using bci::Matrix;

Matrix random_matrix(bci::Rng64& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.next_gaussian();
    return m;
}

double time_ms(const std::function<void()>& fn, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    return elapsed.count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-18s %12.3f %12.3f %9.2fx %14.3g\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, diff);
}

} // namespace

int main() {
    bci::Rng64 rng(42);

    // Trial batch shaped like a training set: 200 trials of 14 x 384.
    std::vector<Matrix> trials;
    trials.reserve(200);
    for (int t = 0; t < 200; ++t) trials.push_back(random_matrix(rng, 14, 384));

    const Matrix a = random_matrix(rng, 96, 256);
    const Matrix b = random_matrix(rng, 256, 256);
    const Matrix long_signal = random_matrix(rng, 14, 40000);
    const bci::FilterCoefficients coeffs = bci::design_bandpass(8.0, 30.0, 4, 128.0);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d\n", threads);
    std::printf("%-18s %12s %12s %10s %14s\n", "kernel", "serial_ms", "parallel_ms", "speedup",
                "max_abs_diff");

    {
        std::vector<Matrix> serial_out, parallel_out;
        const double ts = time_ms([&] { serial_out = bci::kernels::serial::normalized_grams(trials); }, 5);
        const double tp = time_ms([&] { parallel_out = bci::kernels::normalized_grams(trials); }, 5);
        double diff = 0.0;
        for (std::size_t i = 0; i < serial_out.size(); ++i)
            diff = std::max(diff, bci::max_abs_diff(serial_out[i], parallel_out[i]));
        report("normalized_grams", ts, tp, diff);
    }
    {
        Matrix serial_out, parallel_out;
        const double ts = time_ms([&] { serial_out = bci::kernels::serial::matmul(a, b); }, 10);
        const double tp = time_ms([&] { parallel_out = bci::kernels::matmul(a, b); }, 10);
        report("matmul", ts, tp, bci::max_abs_diff(serial_out, parallel_out));
    }
    {
        Matrix serial_out, parallel_out;
        const double ts = time_ms(
            [&] {
                serial_out = bci::kernels::serial::iir_channels(coeffs.feedforward,
                                                                coeffs.feedback, long_signal);
            },
            5);
        const double tp = time_ms(
            [&] {
                parallel_out =
                    bci::kernels::iir_channels(coeffs.feedforward, coeffs.feedback, long_signal);
            },
            5);
        report("iir_channels", ts, tp, bci::max_abs_diff(serial_out, parallel_out));
    }
    return 0;
}
