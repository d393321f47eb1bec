#include "hdc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace hdc::io {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void bad_file(const std::string& what) {
    throw std::runtime_error("matrix market: " + what);
}

// Next non-blank line; false at end of stream.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line))
        if (!blank(line)) return true;
    return false;
}

enum class Field { real, integer, pattern };
enum class Symmetry { general, symmetric, skew_symmetric };

struct Banner {
    Field field;
    Symmetry symmetry;
};

Banner parse_banner(const std::string& line) {
    std::istringstream iss(line);
    std::string tag, object, format, field, symmetry;
    iss >> tag >> object >> format >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket") bad_file("missing %%MatrixMarket banner");
    if (lower(object) != "matrix") bad_file("unsupported object '" + object + "'");
    if (lower(format) != "coordinate") bad_file("unsupported format '" + format + "'");
    Banner b;
    const std::string f = lower(field);
    if (f == "real") b.field = Field::real;
    else if (f == "integer") b.field = Field::integer;
    else if (f == "pattern") b.field = Field::pattern;
    else bad_file("unsupported field '" + field + "'");
    const std::string s = lower(symmetry);
    if (s == "general") b.symmetry = Symmetry::general;
    else if (s == "symmetric") b.symmetry = Symmetry::symmetric;
    else if (s == "skew-symmetric") b.symmetry = Symmetry::skew_symmetric;
    else bad_file("unsupported symmetry '" + symmetry + "'");
    return b;
}

}  // namespace

CooMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) bad_file("empty input");
    const Banner banner = parse_banner(line);

    do {
        if (!next_line(in, line)) bad_file("missing size line");
    } while (line[line.find_first_not_of(" \t\r")] == '%');

    long long rows = 0, cols = 0, declared = 0;
    {
        std::istringstream iss(line);
        if (!(iss >> rows >> cols >> declared)) bad_file("malformed size line '" + line + "'");
        std::string extra;
        if (iss >> extra) bad_file("trailing tokens on size line");
        if (rows < 0 || cols < 0 || declared < 0) bad_file("negative size");
        if (rows != cols)
            bad_file("matrix is " + std::to_string(rows) + " x " + std::to_string(cols) +
                     ", only square matrices are supported");
        if (rows > std::numeric_limits<index_t>::max())
            bad_file("dimension exceeds index range");
    }

    std::vector<CooEntry> entries;
    entries.reserve(static_cast<std::size_t>(declared));
    for (long long k = 0; k < declared; ++k) {
        if (!next_line(in, line)) bad_file("expected " + std::to_string(declared) +
                                           " entries, got " + std::to_string(k));
        std::istringstream iss(line);
        long long i = 0, j = 0;
        double v = 1.0;
        if (!(iss >> i >> j)) bad_file("malformed entry line '" + line + "'");
        if (banner.field != Field::pattern && !(iss >> v))
            bad_file("missing value on entry line '" + line + "'");
        std::string extra;
        if (iss >> extra) bad_file("trailing tokens on entry line '" + line + "'");
        if (i < 1 || i > rows || j < 1 || j > cols)
            bad_file("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside declared size");
        const index_t row = static_cast<index_t>(i - 1);
        const index_t col = static_cast<index_t>(j - 1);
        entries.push_back(CooEntry{row, col, v});
        if (row != col) {
            if (banner.symmetry == Symmetry::symmetric)
                entries.push_back(CooEntry{col, row, v});
            else if (banner.symmetry == Symmetry::skew_symmetric)
                entries.push_back(CooEntry{col, row, -v});
        }
    }
    if (next_line(in, line)) bad_file("trailing content after " + std::to_string(declared) +
                                      " entries");
    return CooMatrix(static_cast<index_t>(rows), static_cast<index_t>(cols), std::move(entries));
}

CooMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_matrix_market(in);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

// Shortest decimal form that round-trips the exact double.
std::string format_value(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void check_stream(const std::ostream& out, const char* what) {
    if (!out) throw std::runtime_error(std::string(what) + ": write failed");
}

}  // namespace

void write_matrix_market(const CooMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.n_rows() << ' ' << m.n_cols() << ' ' << m.entries().size() << '\n';
    for (const CooEntry& e : m.entries())
        out << e.row + 1 << ' ' << e.col + 1 << ' ' << format_value(e.value) << '\n';
    check_stream(out, "write_matrix_market");
}

void write_matrix_market(const CooMatrix& m, const std::string& path) {
    auto out = open_out(path);
    write_matrix_market(m, out);
}

void write_matrix_market(const CsrMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.n() << ' ' << m.n() << ' ' << m.values().size() << '\n';
    for (index_t i = 0; i < m.n(); ++i)
        for (index_t k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k)
            out << i + 1 << ' ' << m.col_ind()[k] + 1 << ' ' << format_value(m.values()[k])
                << '\n';
    check_stream(out, "write_matrix_market");
}

void write_matrix_market(const CsrMatrix& m, const std::string& path) {
    auto out = open_out(path);
    write_matrix_market(m, out);
}

const char* const report_header =
    "matrix,kernel,theta,bl,workers,n,nnz,alpha,beta,time_s,gflops,rp_vs_csr,rp_est,rel_err";

void write_report(const std::vector<ReportRow>& rows, std::ostream& out) {
    out << report_header << '\n';
    for (const ReportRow& r : rows) {
        out << r.matrix << ',' << r.kernel << ',' << format_value(r.theta) << ',' << r.bl << ','
            << r.workers << ',' << r.n << ',' << r.nnz << ',' << format_value(r.alpha) << ','
            << format_value(r.beta) << ',' << format_value(r.time_s) << ','
            << format_value(r.gflops) << ',' << format_value(r.rp_vs_csr) << ','
            << format_value(r.rp_est) << ',' << format_value(r.rel_err) << '\n';
    }
    check_stream(out, "write_report");
}

void write_report(const std::vector<ReportRow>& rows, const std::string& path) {
    auto out = open_out(path);
    write_report(rows, out);
}

namespace {

[[noreturn]] void bad_report(const std::string& what) {
    throw std::runtime_error("report: " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_real(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        bad_report("bad numeric field '" + s + "'");
    return v;
}

long long parse_int(const std::string& s) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        bad_report("bad integer field '" + s + "'");
    return v;
}

}  // namespace

std::vector<ReportRow> read_report(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) bad_report("empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != report_header) bad_report("unexpected header '" + line + "'");
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line)) continue;
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != 14) bad_report("expected 14 fields, got " + std::to_string(f.size()));
        ReportRow r;
        r.matrix = f[0];
        r.kernel = f[1];
        r.theta = parse_real(f[2]);
        r.bl = static_cast<index_t>(parse_int(f[3]));
        r.workers = static_cast<int>(parse_int(f[4]));
        r.n = static_cast<index_t>(parse_int(f[5]));
        r.nnz = static_cast<index_t>(parse_int(f[6]));
        r.alpha = parse_real(f[7]);
        r.beta = parse_real(f[8]);
        r.time_s = parse_real(f[9]);
        r.gflops = parse_real(f[10]);
        r.rp_vs_csr = parse_real(f[11]);
        r.rp_est = parse_real(f[12]);
        r.rel_err = parse_real(f[13]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ReportRow> read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_report(in);
}

}  // namespace hdc::io
