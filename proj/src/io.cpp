#include "bci/io.hpp"

#include "bci/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace bci {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    fail(Errc::parse_error, path + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line_no) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        parse_fail(path, line_no, "expected a number, got '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, const std::string& path, std::size_t line_no) {
    std::uint64_t v = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        parse_fail(path, line_no, "expected an unsigned integer, got '" + s + "'");
    return v;
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SignalBuffer read_signal_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) parse_fail(path, 1, "missing header line");
    ++line_no;
    strip_cr(line);
    const std::vector<std::string> header = split(line, ',');
    if (header.size() < 2 || header[0] != "time")
        parse_fail(path, line_no, "header must be 'time,<ch1>,...,<chN>'");
    const std::size_t n = header.size() - 1;

    std::vector<double> times;
    std::vector<std::vector<double>> columns(n);
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != header.size())
            fail(Errc::nonuniform_row, path + ":" + std::to_string(line_no) + ": expected " +
                                           std::to_string(header.size()) + " fields, got " +
                                           std::to_string(fields.size()));
        times.push_back(parse_double(fields[0], path, line_no));
        for (std::size_t c = 0; c < n; ++c)
            columns[c].push_back(parse_double(fields[c + 1], path, line_no));
    }
    if (times.size() < 2)
        parse_fail(path, line_no, "need at least two sample rows to infer the sample rate");

    const std::size_t s = times.size();
    const double dt = (times.back() - times.front()) / static_cast<double>(s - 1);
    if (!(dt > 0.0)) parse_fail(path, line_no, "time column must be strictly increasing");
    for (std::size_t i = 0; i < s; ++i) {
        const double expected = times.front() + static_cast<double>(i) * dt;
        if (std::fabs(times[i] - expected) > 1e-6)
            fail(Errc::parse_error, path + ": time column is not uniform at row " +
                                        std::to_string(i + 2) + " (step must be 1/fs within 1e-6 s)");
        if (i > 0 && !(times[i] > times[i - 1]))
            fail(Errc::parse_error,
                 path + ": time column is not strictly increasing at row " + std::to_string(i + 2));
    }

    SignalBuffer buffer;
    buffer.sample_rate_hz = 1.0 / dt;
    buffer.channel_names.assign(header.begin() + 1, header.end());
    buffer.samples = Matrix(n, s);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < s; ++i) buffer.samples(c, i) = columns[c][i];
    validate(buffer);
    return buffer;
}

void write_signal_csv(const SignalBuffer& buffer, const std::string& path) {
    validate(buffer);
    std::ofstream out = open_for_write(path);
    out << "time";
    for (const auto& name : buffer.channel_names) out << ',' << name;
    out << '\n';
    const double fs = buffer.sample_rate_hz;
    for (std::size_t i = 0; i < buffer.sample_count(); ++i) {
        out << format_double(static_cast<double>(i) / fs);
        for (std::size_t ch = 0; ch < buffer.channel_count(); ++ch)
            out << ',' << format_double(buffer.samples(ch, i));
        out << '\n';
    }
    if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
}

MarkerStream read_markers_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) parse_fail(path, 1, "missing header line");
    ++line_no;
    strip_cr(line);
    if (split(line, ',') != std::vector<std::string>{"time", "code", "label"})
        parse_fail(path, line_no, "header must be 'time,code,label'");

    MarkerStream markers;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 3)
            fail(Errc::nonuniform_row,
                 path + ":" + std::to_string(line_no) + ": expected 3 fields");
        Marker m;
        m.time_s = parse_double(fields[0], path, line_no);
        if (m.time_s < 0.0) parse_fail(path, line_no, "marker time must be nonnegative");
        m.code = static_cast<std::uint32_t>(parse_uint(fields[1], path, line_no));
        try {
            m.label = marker_label_from_string(fields[2]);
        } catch (const Error& e) {
            parse_fail(path, line_no, e.what());
        }
        if (code_for(m.label) != m.code)
            parse_fail(path, line_no, "code " + fields[1] + " does not match label " + fields[2]);
        markers.push_back(m);
    }
    sort_markers(markers);
    return markers;
}

void write_markers_csv(const MarkerStream& markers, const std::string& path) {
    MarkerStream sorted = markers;
    sort_markers(sorted);
    std::ofstream out = open_for_write(path);
    out << "time,code,label\n";
    for (const Marker& m : sorted)
        out << format_double(m.time_s) << ',' << m.code << ',' << to_string(m.label) << '\n';
    if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
}

namespace {

// Pulls whitespace-separated tokens off an already-open stream, tracking a
// rough line counter for error messages.
struct TokenReader {
    std::istream& in;
    const std::string& path;

    std::string next(const char* what) {
        std::string tok;
        if (!(in >> tok)) fail(Errc::parse_error, path + ": truncated file, expected " + std::string(what));
        return tok;
    }
    double next_double(const char* what) {
        const std::string tok = next(what);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail(Errc::parse_error, path + ": expected a number for " + std::string(what));
        return v;
    }
    std::size_t next_size(const char* what) {
        const std::string tok = next(what);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail(Errc::parse_error, path + ": expected a dimension for " + std::string(what));
        return v;
    }
};

std::string read_header_line(std::istream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) fail(Errc::parse_error, path + ": empty model file");
    strip_cr(line);
    return line;
}

} // namespace

void save_csp_model(const CspModel& model, const std::string& path) {
    const std::size_t rows = model.projection.rows();
    const std::size_t cols = model.projection.cols();
    if (rows != 2 * model.n_pairs || model.eigenvalues.size() != rows ||
        model.channel_names.size() != cols)
        fail(Errc::dim_mismatch, "CSP model fields are inconsistent");
    std::ofstream out = open_for_write(path);
    out << "CSPMODEL v1\n" << rows << ' ' << cols << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c) out << ' ';
            out << format_double(model.projection(r, c));
        }
        out << '\n';
    }
    out << "eigenvalues";
    for (double v : model.eigenvalues) out << ' ' << format_double(v);
    out << "\nchannels";
    for (const auto& name : model.channel_names) out << ' ' << name;
    out << "\npairs " << model.n_pairs << "\nridge " << format_double(model.ridge) << '\n';
    if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
}

CspModel load_csp_model(const std::string& path) {
    std::ifstream in = open_for_read(path);
    if (read_header_line(in, path) != "CSPMODEL v1")
        fail(Errc::version_mismatch, path + ": expected 'CSPMODEL v1' header");
    TokenReader tok{in, path};
    const std::size_t rows = tok.next_size("row count");
    const std::size_t cols = tok.next_size("column count");
    if (rows == 0 || cols == 0 || rows % 2 != 0 || rows > cols)
        fail(Errc::dim_mismatch, path + ": bad projection dimensions " + std::to_string(rows) +
                                     " x " + std::to_string(cols));
    CspModel model;
    model.projection = Matrix(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) model.projection(r, c) = tok.next_double("matrix entry");

    if (tok.next("'eigenvalues'") != "eigenvalues")
        fail(Errc::parse_error, path + ": expected 'eigenvalues' line");
    model.eigenvalues.resize(rows);
    for (double& v : model.eigenvalues) v = tok.next_double("eigenvalue");

    if (tok.next("'channels'") != "channels")
        fail(Errc::parse_error, path + ": expected 'channels' line");
    model.channel_names.resize(cols);
    for (std::string& name : model.channel_names) name = tok.next("channel name");

    if (tok.next("'pairs'") != "pairs") fail(Errc::parse_error, path + ": expected 'pairs' line");
    model.n_pairs = tok.next_size("pair count");
    if (model.n_pairs * 2 != rows)
        fail(Errc::dim_mismatch, path + ": pair count does not match projection rows");

    if (tok.next("'ridge'") != "ridge") fail(Errc::parse_error, path + ": expected 'ridge' line");
    model.ridge = tok.next_double("ridge");
    if (!all_finite(model.projection))
        fail(Errc::parse_error, path + ": non-finite projection entry");
    return model;
}

void save_lda_model(const LdaModel& model, const std::string& path) {
    if (model.weights.empty()) fail(Errc::dim_mismatch, "LDA model has no weights");
    std::ofstream out = open_for_write(path);
    out << "LDAMODEL v1\n" << model.weights.size() << '\n';
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
        if (i) out << ' ';
        out << format_double(model.weights[i]);
    }
    out << "\nbias " << format_double(model.bias) << "\nscale " << format_double(model.score_scale)
        << '\n';
    if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
}

LdaModel load_lda_model(const std::string& path) {
    std::ifstream in = open_for_read(path);
    if (read_header_line(in, path) != "LDAMODEL v1")
        fail(Errc::version_mismatch, path + ": expected 'LDAMODEL v1' header");
    TokenReader tok{in, path};
    const std::size_t d = tok.next_size("weight count");
    if (d == 0) fail(Errc::dim_mismatch, path + ": weight count must be positive");
    LdaModel model;
    model.weights.resize(d);
    for (double& w : model.weights) w = tok.next_double("weight");
    if (tok.next("'bias'") != "bias") fail(Errc::parse_error, path + ": expected 'bias' line");
    model.bias = tok.next_double("bias");
    if (tok.next("'scale'") != "scale") fail(Errc::parse_error, path + ": expected 'scale' line");
    model.score_scale = tok.next_double("scale");
    if (!(model.score_scale > 0.0))
        fail(Errc::parse_error, path + ": scale must be positive");
    return model;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in = open_for_read(path);
    TokenReader tok{in, path};
    const std::size_t rows = tok.next_size("row count");
    const std::size_t cols = tok.next_size("column count");
    if (rows == 0 || cols == 0) fail(Errc::dim_mismatch, path + ": empty matrix");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = tok.next_double("matrix entry");
    return m;
}

void write_matrix_file(const Matrix& m, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << format_double(m(r, c));
        }
        out << '\n';
    }
    if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
}

} // namespace bci
