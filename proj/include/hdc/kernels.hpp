#pragma once

#include "hdc/formats.hpp"

#include <algorithm>
#include <span>

namespace hdc {

// Row-block partition used by the cache-blocked kernels. The last block is
// shortened to the matrix end when bl does not divide n.
struct BlockPlan {
    index_t n = 0;
    index_t bl = 0;
    index_t n_blocks = 0;

    static BlockPlan rows(index_t n, index_t bl);

    index_t begin(index_t ib) const { return ib * bl; }
    index_t end(index_t ib) const { return std::min((ib + 1) * bl, n); }
    index_t length(index_t ib) const { return end(ib) - begin(ib); }
};

// All kernels overwrite y with m*x. workers selects the OpenMP thread
// count; workers <= 0 means the runtime default. Every kernel accumulates
// each y[i] in the same fixed order regardless of workers, so results are
// bitwise reproducible across thread counts.
void spmv_csr(const CsrMatrix& m, std::span<const real_t> x, std::span<real_t> y,
              int workers = 0);
void spmv_dia(const DiaMatrix& m, std::span<const real_t> x, std::span<real_t> y,
              int workers = 0);
void spmv_bdia(const DiaMatrix& m, const BlockPlan& plan, std::span<const real_t> x,
               std::span<real_t> y, int workers = 0);
void spmv_hdc(const HdcMatrix& m, std::span<const real_t> x, std::span<real_t> y,
              int workers = 0);
void spmv_bhdc(const HdcMatrix& m, const BlockPlan& plan, std::span<const real_t> x,
               std::span<real_t> y, int workers = 0);
void spmv_mhdc(const MHdcMatrix& m, std::span<const real_t> x, std::span<real_t> y,
               int workers = 0);

// Allocating conveniences.
DenseVector spmv_csr(const CsrMatrix& m, const DenseVector& x, int workers = 0);
DenseVector spmv_dia(const DiaMatrix& m, const DenseVector& x, int workers = 0);
DenseVector spmv_bdia(const DiaMatrix& m, const BlockPlan& plan, const DenseVector& x,
                      int workers = 0);
DenseVector spmv_hdc(const HdcMatrix& m, const DenseVector& x, int workers = 0);
DenseVector spmv_bhdc(const HdcMatrix& m, const BlockPlan& plan, const DenseVector& x,
                      int workers = 0);
DenseVector spmv_mhdc(const MHdcMatrix& m, const DenseVector& x, int workers = 0);

}  // namespace hdc
