#include "bci/linalg.hpp"

#include "bci/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bci {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

void sign_normalize(std::vector<double>& v) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = std::fabs(v[i]);
        if (m > best) {
            best = m;
            arg = i;
        }
    }
    if (!v.empty() && v[arg] < 0.0)
        for (double& x : v) x = -x;
}

SymmetricEigen symmetric_eigen(const Matrix& input) {
    if (input.rows() != input.cols()) fail(Errc::dim_mismatch, "eigensolver needs a square matrix");
    const std::size_t n = input.rows();
    Matrix a = input;
    Matrix v = Matrix::identity(n);

    const double threshold = 1e-12 * frobenius_norm(a);
    constexpr int kMaxSweeps = 100;

    bool converged = n < 2 || off_diagonal_norm(a) <= threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = off_diagonal_norm(a) <= threshold;
    }
    if (!converged) fail(Errc::numeric_failure, "Jacobi sweeps exhausted without convergence");

    std::vector<std::vector<double>> columns(n, std::vector<double>(n));
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = a(j, j);
        for (std::size_t i = 0; i < n; ++i) columns[j][i] = v(i, j);
        sign_normalize(columns[j]);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (values[i] != values[j]) return values[i] > values[j];
        return std::lexicographical_compare(columns[i].begin(), columns[i].end(),
                                            columns[j].begin(), columns[j].end());
    });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = values[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = columns[order[j]][i];
    }
    return out;
}

Matrix cholesky_lower(const Matrix& a) {
    if (a.rows() != a.cols()) fail(Errc::dim_mismatch, "Cholesky needs a square matrix");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) fail(Errc::singular, "matrix is not positive definite");
                l(i, j) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> rhs) {
    if (a.rows() != a.cols() || a.rows() != rhs.size())
        fail(Errc::dim_mismatch, "linear solve shape mismatch");
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
        if (std::fabs(a(pivot, col)) < 1e-300) fail(Errc::singular, "singular system");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = rhs[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a(ri, c) * x[c];
        x[ri] = s / a(ri, ri);
    }
    return x;
}

} // namespace bci
