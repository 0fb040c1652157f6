#include "bci/matrix.hpp"

#include "bci/error.hpp"

#include <cmath>

namespace bci {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) fail(Errc::dim_mismatch, "ragged initializer rows");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(Errc::dim_mismatch, "matrix addition shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(Errc::dim_mismatch, "matrix subtraction shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

Matrix operator*(double s, const Matrix& m) {
    Matrix c = m;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= s;
    return c;
}

double trace(const Matrix& m) {
    double t = 0.0;
    const std::size_t n = m.rows() < m.cols() ? m.rows() : m.cols();
    for (std::size_t i = 0; i < n; ++i) t += m(i, i);
    return t;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m.data()[i] * m.data()[i];
    return std::sqrt(s);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(Errc::dim_mismatch, "matrix comparison shape mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = std::fabs(a.data()[i] - b.data()[i]);
        if (e > d) d = e;
    }
    return d;
}

bool all_finite(const Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!std::isfinite(m.data()[i])) return false;
    return true;
}

} // namespace bci
