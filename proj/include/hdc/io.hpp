#pragma once

#include "hdc/formats.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hdc::io {

// Matrix Market coordinate files. Accepted: real/integer/pattern fields,
// general/symmetric/skew-symmetric storage, square matrices. Symmetric
// variants are expanded to full storage; duplicate coordinates are summed.
CooMatrix read_matrix_market(std::istream& in);
CooMatrix read_matrix_market(const std::string& path);

void write_matrix_market(const CooMatrix& m, std::ostream& out);
void write_matrix_market(const CooMatrix& m, const std::string& path);
void write_matrix_market(const CsrMatrix& m, std::ostream& out);
void write_matrix_market(const CsrMatrix& m, const std::string& path);

// One benchmark or analysis result. Unknown / not-applicable numeric
// fields are NaN (bl: 0).
struct ReportRow {
    std::string matrix;
    std::string kernel;
    real_t theta = 0.0;
    index_t bl = 0;
    int workers = 0;
    index_t n = 0;
    index_t nnz = 0;
    real_t alpha = 0.0;
    real_t beta = 0.0;
    real_t time_s = 0.0;
    real_t gflops = 0.0;
    real_t rp_vs_csr = 0.0;
    real_t rp_est = 0.0;
    real_t rel_err = 0.0;
};

extern const char* const report_header;

// CSV with the fixed report_header column order. Floating-point fields use
// shortest round-trip formatting, so write/read is lossless.
void write_report(const std::vector<ReportRow>& rows, std::ostream& out);
void write_report(const std::vector<ReportRow>& rows, const std::string& path);
std::vector<ReportRow> read_report(std::istream& in);
std::vector<ReportRow> read_report(const std::string& path);

}  // namespace hdc::io
