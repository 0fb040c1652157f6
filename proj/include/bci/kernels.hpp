#pragma once

#include "bci/matrix.hpp"

#include <span>
#include <vector>

namespace bci::kernels {

// Plain loop-nest reference implementations. They stay in the library so the
// unit tests and the kernel benchmark can compare the OpenMP variants below
// against them. Both variants use the same per-element accumulation order,
// so results are bit-identical regardless of thread count.
namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b);

// x * x^T for an N x S trial matrix; output is N x N symmetric.
Matrix gram(const Matrix& x);

// Causal IIR difference equation per channel, zero initial state:
//   y[n] = sum_k ff[k] x[n-k] - sum_{k>=1} fb[k] y[n-k]
Matrix iir_channels(std::span<const double> feedforward,
                    std::span<const double> feedback, const Matrix& in);

// One trace-normalized covariance x x^T / trace(x x^T) per trial.
std::vector<Matrix> normalized_grams(std::span<const Matrix> trials);

} // namespace serial

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix gram(const Matrix& x);
Matrix iir_channels(std::span<const double> feedforward,
                    std::span<const double> feedback, const Matrix& in);
std::vector<Matrix> normalized_grams(std::span<const Matrix> trials);

// Fixed-order pairwise tree sum divided by count. The summation order never
// depends on thread count, keeping parallel covariance averaging
// reproducible.
Matrix pairwise_mean(std::span<const Matrix> ms);

} // namespace bci::kernels
