#pragma once

#include "bci/csp.hpp"
#include "bci/lda.hpp"
#include "bci/types.hpp"

#include <string>

namespace bci {

// Signal CSV: header "time,<ch1>,...,<chN>", then "t,v1,...,vN" rows with a
// strictly increasing, uniform time column (step 1/fs within 1e-6 s). The
// sample rate is inferred from the time column, so at least two rows are
// required. Values are written with 17 significant digits, which makes the
// write/read pair an exact round trip.
SignalBuffer read_signal_csv(const std::string& path);
void write_signal_csv(const SignalBuffer& buffer, const std::string& path);

// Marker CSV: header "time,code,label"; the stream comes back sorted by
// time (ties by code). A row whose code and label disagree is a PARSE_ERROR.
MarkerStream read_markers_csv(const std::string& path);
void write_markers_csv(const MarkerStream& markers, const std::string& path);

// Model files: "CSPMODEL v1" / "LDAMODEL v1" header, dimension line,
// whitespace-separated matrix rows, then labeled trailing lines
// (eigenvalues/channels/pairs/ridge for CSP, bias/scale for LDA).
void save_csp_model(const CspModel& model, const std::string& path);
CspModel load_csp_model(const std::string& path);
void save_lda_model(const LdaModel& model, const std::string& path);
LdaModel load_lda_model(const std::string& path);

// Bare matrix file: "R C" dimension line followed by R whitespace-separated
// rows; used for covariance matrices referenced from session spec files.
Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const Matrix& m, const std::string& path);

// 17-significant-digit decimal formatting shared by every text format.
std::string format_double(double v);

} // namespace bci
