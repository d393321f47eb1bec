#include "hdc/formats.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace hdc {

namespace {

void check_nonnegative_dim(index_t n, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + ": negative dimension");
}

}  // namespace

CooMatrix::CooMatrix(index_t n_rows, index_t n_cols, std::vector<CooEntry> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
    check_nonnegative_dim(n_rows_, "CooMatrix");
    check_nonnegative_dim(n_cols_, "CooMatrix");
    for (const CooEntry& e : entries_) {
        if (e.row < 0 || e.row >= n_rows_ || e.col < 0 || e.col >= n_cols_)
            throw std::out_of_range("CooMatrix: entry (" + std::to_string(e.row) + ", " +
                                    std::to_string(e.col) + ") outside " +
                                    std::to_string(n_rows_) + " x " + std::to_string(n_cols_));
    }
    std::stable_sort(entries_.begin(), entries_.end(), [](const CooEntry& a, const CooEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    // Sum duplicates in place.
    std::size_t out = 0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (out > 0 && entries_[out - 1].row == entries_[k].row &&
            entries_[out - 1].col == entries_[k].col) {
            entries_[out - 1].value += entries_[k].value;
        } else {
            entries_[out++] = entries_[k];
        }
    }
    entries_.resize(out);
}

CsrMatrix::CsrMatrix(index_t n, std::vector<real_t> values, std::vector<index_t> col_ind,
                     std::vector<index_t> row_ptr)
    : n_(n), values_(std::move(values)), col_ind_(std::move(col_ind)), row_ptr_(std::move(row_ptr)) {
    check_nonnegative_dim(n_, "CsrMatrix");
    if (values_.size() != col_ind_.size())
        throw std::invalid_argument("CsrMatrix: values / col_ind length mismatch");
    if (row_ptr_.size() != static_cast<std::size_t>(n_) + 1)
        throw std::invalid_argument("CsrMatrix: row_ptr must have n + 1 entries");
    if (row_ptr_.front() != 0 || row_ptr_.back() != static_cast<index_t>(values_.size()))
        throw std::invalid_argument("CsrMatrix: row_ptr endpoints do not match value count");
    for (index_t i = 0; i < n_; ++i) {
        if (row_ptr_[i] > row_ptr_[i + 1])
            throw std::invalid_argument("CsrMatrix: row_ptr not monotone at row " + std::to_string(i));
        for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            if (col_ind_[k] < 0 || col_ind_[k] >= n_)
                throw std::out_of_range("CsrMatrix: column index out of range in row " +
                                        std::to_string(i));
            if (k > row_ptr_[i] && col_ind_[k - 1] >= col_ind_[k])
                throw std::invalid_argument("CsrMatrix: columns not strictly ascending in row " +
                                            std::to_string(i));
        }
    }
}

CsrMatrix CsrMatrix::from_coo(const CooMatrix& coo) {
    if (!coo.square())
        throw std::invalid_argument("CsrMatrix::from_coo: matrix must be square");
    const index_t n = coo.n_rows();
    if (coo.entries().size() > static_cast<std::size_t>(std::numeric_limits<index_t>::max()))
        throw std::overflow_error("CsrMatrix::from_coo: entry count exceeds index range");
    std::vector<index_t> row_ptr(static_cast<std::size_t>(n) + 1, 0);
    for (const CooEntry& e : coo.entries()) ++row_ptr[e.row + 1];
    for (index_t i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
    std::vector<real_t> values;
    std::vector<index_t> col_ind;
    values.reserve(coo.entries().size());
    col_ind.reserve(coo.entries().size());
    // CooMatrix is already (row, col) sorted and duplicate free.
    for (const CooEntry& e : coo.entries()) {
        values.push_back(e.value);
        col_ind.push_back(e.col);
    }
    return CsrMatrix(n, std::move(values), std::move(col_ind), std::move(row_ptr));
}

RowRange diag_rows(index_t n, index_t offset) {
    return RowRange{std::max<index_t>(0, -offset), std::min<index_t>(n, n - offset)};
}

DiaMatrix::DiaMatrix(index_t n, std::vector<index_t> offsets, std::vector<real_t> lanes)
    : n_(n), offsets_(std::move(offsets)), lanes_(std::move(lanes)) {
    check_nonnegative_dim(n_, "DiaMatrix");
    if (lanes_.size() != offsets_.size() * static_cast<std::size_t>(n_))
        throw std::invalid_argument("DiaMatrix: lane storage must be n_diags * n values");
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
        if (offsets_[k] <= -n_ || offsets_[k] >= n_)
            throw std::out_of_range("DiaMatrix: offset " + std::to_string(offsets_[k]) +
                                    " outside matrix of size " + std::to_string(n_));
        if (k > 0 && offsets_[k - 1] >= offsets_[k])
            throw std::invalid_argument("DiaMatrix: offsets must be strictly ascending");
        // Zero fill required outside the diagonal's valid row range.
        const RowRange r = diag_rows(n_, offsets_[k]);
        const real_t* lane = lanes_.data() + k * static_cast<std::size_t>(n_);
        for (index_t i = 0; i < r.first; ++i)
            if (lane[i] != 0.0)
                throw std::invalid_argument("DiaMatrix: lane value outside valid rows");
        for (index_t i = r.last; i < n_; ++i)
            if (lane[i] != 0.0)
                throw std::invalid_argument("DiaMatrix: lane value outside valid rows");
    }
}

std::span<const real_t> DiaMatrix::lane(index_t k) const {
    if (k < 0 || k >= n_diags()) throw std::out_of_range("DiaMatrix::lane: bad lane index");
    return std::span<const real_t>(lanes_.data() + static_cast<std::size_t>(k) * n_,
                                   static_cast<std::size_t>(n_));
}

HdcMatrix::HdcMatrix(index_t n, DiaMatrix dia, CsrMatrix csr, real_t theta)
    : n_(n), dia_(std::move(dia)), csr_(std::move(csr)), theta_(theta) {
    if (dia_.n() != n_ || csr_.n() != n_)
        throw std::invalid_argument("HdcMatrix: part dimensions disagree");
    if (!(theta_ >= 0.0 && theta_ <= 1.0))
        throw std::invalid_argument("HdcMatrix: theta must be in [0, 1]");
}

MHdcMatrix::MHdcMatrix(index_t n, index_t bl, std::vector<index_t> dia_ptr,
                       std::vector<index_t> dia_offsets, std::vector<real_t> segments,
                       CsrMatrix csr, real_t theta)
    : n_(n),
      bl_(bl),
      dia_ptr_(std::move(dia_ptr)),
      dia_offsets_(std::move(dia_offsets)),
      segments_(std::move(segments)),
      csr_(std::move(csr)),
      theta_(theta) {
    check_nonnegative_dim(n_, "MHdcMatrix");
    if (bl_ < 1) throw std::invalid_argument("MHdcMatrix: block width must be >= 1");
    if (csr_.n() != n_) throw std::invalid_argument("MHdcMatrix: CSR part dimension disagrees");
    if (!(theta_ >= 0.0 && theta_ <= 1.0))
        throw std::invalid_argument("MHdcMatrix: theta must be in [0, 1]");
    const index_t blocks = n_ == 0 ? 0 : (n_ + bl_ - 1) / bl_;
    if (dia_ptr_.size() != static_cast<std::size_t>(blocks) + 1)
        throw std::invalid_argument("MHdcMatrix: dia_ptr must have n_blocks + 1 entries");
    if (dia_ptr_.front() != 0 || dia_ptr_.back() != static_cast<index_t>(dia_offsets_.size()))
        throw std::invalid_argument("MHdcMatrix: dia_ptr endpoints do not match segment count");
    for (std::size_t ib = 0; ib + 1 < dia_ptr_.size(); ++ib) {
        if (dia_ptr_[ib] > dia_ptr_[ib + 1])
            throw std::invalid_argument("MHdcMatrix: dia_ptr not monotone");
        for (index_t k = dia_ptr_[ib] + 1; k < dia_ptr_[ib + 1]; ++k)
            if (dia_offsets_[k - 1] >= dia_offsets_[k])
                throw std::invalid_argument("MHdcMatrix: offsets must ascend within a block");
    }
    if (segments_.size() != dia_offsets_.size() * static_cast<std::size_t>(bl_))
        throw std::invalid_argument("MHdcMatrix: segment storage must be n_segments * bl values");
    for (const index_t off : dia_offsets_)
        if (off <= -n_ || off >= n_)
            throw std::out_of_range("MHdcMatrix: offset outside matrix");
}

std::span<const real_t> MHdcMatrix::segment(index_t k) const {
    if (k < 0 || k >= n_segments())
        throw std::out_of_range("MHdcMatrix::segment: bad segment index");
    return std::span<const real_t>(segments_.data() + static_cast<std::size_t>(k) * bl_,
                                   static_cast<std::size_t>(bl_));
}

index_t nnz(const CooMatrix& m) { return static_cast<index_t>(m.entries().size()); }

index_t nnz(const CsrMatrix& m) { return static_cast<index_t>(m.values().size()); }

index_t nnz(const DiaMatrix& m) {
    index_t count = 0;
    for (const real_t v : m.lanes())
        if (v != 0.0) ++count;
    return count;
}

index_t nnz(const HdcMatrix& m) { return nnz(m.dia()) + nnz(m.csr()); }

index_t nnz(const MHdcMatrix& m) {
    index_t count = 0;
    for (const real_t v : m.segments())
        if (v != 0.0) ++count;
    return count + nnz(m.csr());
}

namespace {

real_t ratio_nnz_n(index_t nonzeros, index_t n) {
    if (n == 0) throw std::invalid_argument("avg_row_nnz: empty matrix");
    return static_cast<real_t>(nonzeros) / static_cast<real_t>(n);
}

}  // namespace

real_t avg_row_nnz(const CsrMatrix& m) { return ratio_nnz_n(nnz(m), m.n()); }
real_t avg_row_nnz(const HdcMatrix& m) { return ratio_nnz_n(nnz(m), m.n()); }
real_t avg_row_nnz(const MHdcMatrix& m) { return ratio_nnz_n(nnz(m), m.n()); }

index_t dense_cap() {
    if (const char* env = std::getenv("HDCMV_DENSE_CAP")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v < 0)
            throw std::invalid_argument("HDCMV_DENSE_CAP: not a nonnegative integer");
        return static_cast<index_t>(v);
    }
    return 10000;
}

namespace {

index_t checked_dense_n(index_t n, index_t cap) {
    const index_t limit = cap < 0 ? dense_cap() : cap;
    if (n > limit)
        throw std::length_error("reconstruct_dense: n = " + std::to_string(n) +
                                " exceeds cap " + std::to_string(limit));
    return n;
}

}  // namespace

DenseGrid reconstruct_dense(const CooMatrix& m, index_t cap) {
    if (!m.square())
        throw std::invalid_argument("reconstruct_dense: matrix must be square");
    DenseGrid g(checked_dense_n(m.n_rows(), cap));
    for (const CooEntry& e : m.entries()) g.at(e.row, e.col) += e.value;
    return g;
}

DenseGrid reconstruct_dense(const CsrMatrix& m, index_t cap) {
    DenseGrid g(checked_dense_n(m.n(), cap));
    for (index_t i = 0; i < m.n(); ++i)
        for (index_t k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k)
            g.at(i, m.col_ind()[k]) += m.values()[k];
    return g;
}

DenseGrid reconstruct_dense(const DiaMatrix& m, index_t cap) {
    DenseGrid g(checked_dense_n(m.n(), cap));
    for (index_t k = 0; k < m.n_diags(); ++k) {
        const index_t off = m.offsets()[k];
        const RowRange r = diag_rows(m.n(), off);
        const auto lane = m.lane(k);
        for (index_t i = r.first; i < r.last; ++i)
            if (lane[i] != 0.0) g.at(i, i + off) += lane[i];
    }
    return g;
}

DenseGrid reconstruct_dense(const HdcMatrix& m, index_t cap) {
    DenseGrid g = reconstruct_dense(m.dia(), cap);
    const DenseGrid rest = reconstruct_dense(m.csr(), cap);
    for (std::size_t k = 0; k < g.data.size(); ++k) g.data[k] += rest.data[k];
    return g;
}

DenseGrid reconstruct_dense(const MHdcMatrix& m, index_t cap) {
    DenseGrid g = reconstruct_dense(m.csr(), cap);
    for (index_t ib = 0; ib < m.n_blocks(); ++ib) {
        const index_t row0 = ib * m.bl();
        const index_t rows = std::min(m.bl(), m.n() - row0);
        for (index_t k = m.dia_ptr()[ib]; k < m.dia_ptr()[ib + 1]; ++k) {
            const index_t off = m.dia_offsets()[k];
            const auto seg = m.segment(k);
            for (index_t r = 0; r < rows; ++r) {
                const index_t i = row0 + r;
                const index_t j = i + off;
                if (j < 0 || j >= m.n()) {
                    if (seg[r] != 0.0)
                        throw std::out_of_range("reconstruct_dense: segment value off matrix");
                    continue;
                }
                if (seg[r] != 0.0) g.at(i, j) += seg[r];
            }
        }
    }
    return g;
}

}  // namespace hdc
