#pragma once

#include "hdc/types.hpp"

#include <span>
#include <vector>

namespace hdc {

struct CooEntry {
    index_t row;
    index_t col;
    real_t value;
};

// Triplet form used at the ingestion boundary. Construction normalizes the
// entry list: sorted by (row, col), duplicate coordinates summed, bounds
// checked against the declared shape.
class CooMatrix {
public:
    CooMatrix(index_t n_rows, index_t n_cols, std::vector<CooEntry> entries);

    index_t n_rows() const { return n_rows_; }
    index_t n_cols() const { return n_cols_; }
    bool square() const { return n_rows_ == n_cols_; }
    const std::vector<CooEntry>& entries() const { return entries_; }

private:
    index_t n_rows_;
    index_t n_cols_;
    std::vector<CooEntry> entries_;
};

// Compressed sparse rows over a square matrix: values and column indices in
// row order, plus a row pointer of length n+1. Construction validates the
// row pointer shape, column bounds and per-row column ordering.
class CsrMatrix {
public:
    CsrMatrix(index_t n, std::vector<real_t> values, std::vector<index_t> col_ind,
              std::vector<index_t> row_ptr);

    static CsrMatrix from_coo(const CooMatrix& coo);

    index_t n() const { return n_; }
    std::span<const real_t> values() const { return values_; }
    std::span<const index_t> col_ind() const { return col_ind_; }
    std::span<const index_t> row_ptr() const { return row_ptr_; }

private:
    index_t n_;
    std::vector<real_t> values_;
    std::vector<index_t> col_ind_;
    std::vector<index_t> row_ptr_;
};

// Diagonal storage: each stored diagonal keeps a full-length lane of n
// values (zero filled outside the diagonal's valid row range) plus its
// offset. A diagonal's offset is col - row; lanes are kept in ascending
// offset order.
class DiaMatrix {
public:
    DiaMatrix(index_t n, std::vector<index_t> offsets, std::vector<real_t> lanes);

    index_t n() const { return n_; }
    index_t n_diags() const { return static_cast<index_t>(offsets_.size()); }
    std::span<const index_t> offsets() const { return offsets_; }
    std::span<const real_t> lanes() const { return lanes_; }
    std::span<const real_t> lane(index_t k) const;

private:
    index_t n_;
    std::vector<index_t> offsets_;
    std::vector<real_t> lanes_;  // n_diags * n, lane k at [k*n, (k+1)*n)
};

// Row range [first, last) a diagonal with the given offset intersects.
struct RowRange {
    index_t first;
    index_t last;
};
RowRange diag_rows(index_t n, index_t offset);

// Hybrid split: densely populated whole diagonals in a DIA part, every
// remaining entry in a CSR part of the same shape. theta records the
// population threshold the split was built with.
class HdcMatrix {
public:
    HdcMatrix(index_t n, DiaMatrix dia, CsrMatrix csr, real_t theta);

    index_t n() const { return n_; }
    const DiaMatrix& dia() const { return dia_; }
    const CsrMatrix& csr() const { return csr_; }
    real_t theta() const { return theta_; }

private:
    index_t n_;
    DiaMatrix dia_;
    CsrMatrix csr_;
    real_t theta_;
};

// Hybrid split with per-row-block diagonal selection. Rows are partitioned
// into blocks of width bl (the last block may be shorter). Block ib owns the
// diagonal segments dia_ptr[ib] .. dia_ptr[ib+1]; segment k stores bl values
// indexed locally (row i maps to slot i - ib*bl) with offset dia_offsets[k].
// Everything not captured by a selected segment lives in the CSR part.
class MHdcMatrix {
public:
    MHdcMatrix(index_t n, index_t bl, std::vector<index_t> dia_ptr,
               std::vector<index_t> dia_offsets, std::vector<real_t> segments,
               CsrMatrix csr, real_t theta);

    index_t n() const { return n_; }
    index_t bl() const { return bl_; }
    index_t n_blocks() const { return static_cast<index_t>(dia_ptr_.size()) - 1; }
    index_t n_segments() const { return static_cast<index_t>(dia_offsets_.size()); }
    std::span<const index_t> dia_ptr() const { return dia_ptr_; }
    std::span<const index_t> dia_offsets() const { return dia_offsets_; }
    std::span<const real_t> segments() const { return segments_; }
    std::span<const real_t> segment(index_t k) const;
    const CsrMatrix& csr() const { return csr_; }
    real_t theta() const { return theta_; }

private:
    index_t n_;
    index_t bl_;
    std::vector<index_t> dia_ptr_;
    std::vector<index_t> dia_offsets_;
    std::vector<real_t> segments_;  // n_segments * bl, segment k at [k*bl, (k+1)*bl)
    CsrMatrix csr_;
    real_t theta_;
};

// Stored nonzero count of the original matrix (explicit zero fill in lanes
// and segments does not count).
index_t nnz(const CooMatrix& m);
index_t nnz(const CsrMatrix& m);
index_t nnz(const DiaMatrix& m);
index_t nnz(const HdcMatrix& m);
index_t nnz(const MHdcMatrix& m);

real_t avg_row_nnz(const CsrMatrix& m);
real_t avg_row_nnz(const HdcMatrix& m);
real_t avg_row_nnz(const MHdcMatrix& m);

// Row-major n x n scratch grid used by the small-matrix reference path.
struct DenseGrid {
    index_t n = 0;
    std::vector<real_t> data;

    explicit DenseGrid(index_t n_in)
        : n(n_in), data(static_cast<std::size_t>(n_in) * static_cast<std::size_t>(n_in), 0.0) {}

    real_t& at(index_t i, index_t j) { return data[static_cast<std::size_t>(i) * n + j]; }
    real_t at(index_t i, index_t j) const { return data[static_cast<std::size_t>(i) * n + j]; }
};

// Largest n reconstruct_dense accepts when cap < 0: the HDCMV_DENSE_CAP
// environment variable if set, otherwise 10000.
index_t dense_cap();

DenseGrid reconstruct_dense(const CooMatrix& m, index_t cap = -1);
DenseGrid reconstruct_dense(const CsrMatrix& m, index_t cap = -1);
DenseGrid reconstruct_dense(const DiaMatrix& m, index_t cap = -1);
DenseGrid reconstruct_dense(const HdcMatrix& m, index_t cap = -1);
DenseGrid reconstruct_dense(const MHdcMatrix& m, index_t cap = -1);

}  // namespace hdc
