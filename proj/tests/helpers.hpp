#pragma once

#include "bci/error.hpp"
#include "bci/linalg.hpp"
#include "bci/matrix.hpp"
#include "bci/synth.hpp"
#include "bci/types.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

// Asserts that fn throws bci::Error carrying exactly this code.
template <typename Fn>
void expect_error(bci::Errc code, Fn&& fn) {
    try {
        fn();
        FAIL_CHECK("expected " << bci::errc_name(code) << ", but nothing was thrown");
    } catch (const bci::Error& e) {
        CHECK_MESSAGE(e.code() == code, "expected " << bci::errc_name(code) << ", got "
                                                    << bci::errc_name(e.code()) << ": "
                                                    << e.what());
    }
}

inline bci::Matrix random_matrix(bci::Rng64& rng, std::size_t rows, std::size_t cols) {
    bci::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.next_gaussian();
    return m;
}

// Random symmetric positive definite matrix: A A^T + n*I.
inline bci::Matrix random_spd(bci::Rng64& rng, std::size_t n) {
    const bci::Matrix a = random_matrix(rng, n, n);
    bci::Matrix spd(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v += a(r, k) * a(c, k);
            spd(r, c) = v;
        }
    for (std::size_t i = 0; i < n; ++i) spd(i, i) += static_cast<double>(n);
    return spd;
}

// Zero-mean Gaussian trial with exact covariance structure cov = L L^T.
inline bci::Matrix gaussian_trial(bci::Rng64& rng, const bci::Matrix& chol, std::size_t samples) {
    const std::size_t n = chol.rows();
    bci::Matrix x(n, samples);
    std::vector<double> z(n);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t ch = 0; ch < n; ++ch) z[ch] = rng.next_gaussian();
        for (std::size_t r = 0; r < n; ++r) {
            double v = 0.0;
            for (std::size_t c = 0; c <= r; ++c) v += chol(r, c) * z[c];
            x(r, s) = v;
        }
    }
    return x;
}

// Alternating LEFT/RIGHT epochs drawn from two class covariances.
inline std::vector<bci::Epoch> gaussian_epochs(const bci::Matrix& cov_left,
                                               const bci::Matrix& cov_right,
                                               std::size_t per_class, std::size_t samples,
                                               std::uint64_t seed) {
    bci::Rng64 rng(seed);
    const bci::Matrix chol_left = bci::cholesky_lower(cov_left);
    const bci::Matrix chol_right = bci::cholesky_lower(cov_right);
    std::vector<bci::Epoch> epochs;
    epochs.reserve(2 * per_class);
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        bci::Epoch e;
        e.label = (i % 2 == 0) ? bci::ClassLabel::left : bci::ClassLabel::right;
        e.data = gaussian_trial(rng, e.label == bci::ClassLabel::left ? chol_left : chol_right,
                                samples);
        e.onset_s = static_cast<double>(i);
        epochs.push_back(std::move(e));
    }
    return epochs;
}

// Well-separated two-class fixture: strong variance contrast on channels 1/2.
inline bci::Matrix fixture_cov_left() {
    return bci::Matrix::from_rows({{5.0, 0.0, 0.0}, {0.0, 0.5, 0.0}, {0.0, 0.0, 1.0}});
}
inline bci::Matrix fixture_cov_right() {
    return bci::Matrix::from_rows({{0.5, 0.0, 0.0}, {0.0, 5.0, 0.0}, {0.0, 0.0, 1.0}});
}

// Self-deleting temp file path under the test working directory.
class TempFile {
public:
    explicit TempFile(const std::string& name) : path_("tmp_" + name) {}
    ~TempFile() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace testutil
