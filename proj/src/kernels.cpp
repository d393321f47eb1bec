#include "hdc/kernels.hpp"

#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace hdc {

namespace {

int resolve_workers(int workers) {
#if defined(_OPENMP)
    return workers > 0 ? workers : omp_get_max_threads();
#else
    return workers > 0 ? workers : 1;
#endif
}

void check_vectors(index_t n, std::span<const real_t> x, std::span<real_t> y, const char* what) {
    if (x.size() != static_cast<std::size_t>(n) || y.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument(std::string(what) + ": x and y must have length n");
}

void check_plan(const BlockPlan& plan, index_t n, const char* what) {
    if (plan.n != n || plan.bl < 1 || plan.n_blocks != (n == 0 ? 0 : (n + plan.bl - 1) / plan.bl))
        throw std::invalid_argument(std::string(what) + ": block plan does not match matrix");
}

}  // namespace

BlockPlan BlockPlan::rows(index_t n, index_t bl) {
    if (n < 0) throw std::invalid_argument("BlockPlan: negative row count");
    if (bl < 1) throw std::invalid_argument("BlockPlan: block width must be >= 1");
    return BlockPlan{n, bl, n == 0 ? 0 : (n + bl - 1) / bl};
}

void spmv_csr(const CsrMatrix& m, std::span<const real_t> x, std::span<real_t> y, int workers) {
    const index_t n = m.n();
    check_vectors(n, x, y, "spmv_csr");
    const real_t* const val = m.values().data();
    const index_t* const col = m.col_ind().data();
    const index_t* const rp = m.row_ptr().data();
    const real_t* const xp = x.data();
    real_t* const yp = y.data();
    const int nt = resolve_workers(workers);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (index_t i = 0; i < n; ++i) {
        real_t sum = 0.0;
        for (index_t k = rp[i]; k < rp[i + 1]; ++k) sum += val[k] * xp[col[k]];
        yp[i] = sum;
    }
}

void spmv_dia(const DiaMatrix& m, std::span<const real_t> x, std::span<real_t> y, int workers) {
    const index_t n = m.n();
    check_vectors(n, x, y, "spmv_dia");
    const index_t n_diags = m.n_diags();
    const index_t* const off = m.offsets().data();
    const real_t* const lanes = m.lanes().data();
    const real_t* const xp = x.data();
    real_t* const yp = y.data();
    const int nt = resolve_workers(workers);
#pragma omp parallel num_threads(nt)
    {
#pragma omp for schedule(static)
        for (index_t i = 0; i < n; ++i) yp[i] = 0.0;
        // Lane after lane over the full vector; the implicit barrier after
        // each loop keeps the per-row accumulation order fixed.
        for (index_t k = 0; k < n_diags; ++k) {
            const index_t o = off[k];
            const RowRange r = diag_rows(n, o);
            const real_t* const lane = lanes + static_cast<std::size_t>(k) * n;
#pragma omp for schedule(static)
            for (index_t i = r.first; i < r.last; ++i) yp[i] += lane[i] * xp[i + o];
        }
    }
}

void spmv_bdia(const DiaMatrix& m, const BlockPlan& plan, std::span<const real_t> x,
               std::span<real_t> y, int workers) {
    const index_t n = m.n();
    check_vectors(n, x, y, "spmv_bdia");
    check_plan(plan, n, "spmv_bdia");
    const index_t n_diags = m.n_diags();
    const index_t* const off = m.offsets().data();
    const real_t* const lanes = m.lanes().data();
    const real_t* const xp = x.data();
    real_t* const yp = y.data();
    const int nt = resolve_workers(workers);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (index_t ib = 0; ib < plan.n_blocks; ++ib) {
        const index_t row0 = plan.begin(ib);
        const index_t row1 = plan.end(ib);
        for (index_t i = row0; i < row1; ++i) yp[i] = 0.0;
        for (index_t k = 0; k < n_diags; ++k) {
            const index_t o = off[k];
            const index_t first = std::max(row0, -o);
            const index_t last = std::min(row1, n - o);
            const real_t* const lane = lanes + static_cast<std::size_t>(k) * n;
            for (index_t i = first; i < last; ++i) yp[i] += lane[i] * xp[i + o];
        }
    }
}

void spmv_hdc(const HdcMatrix& m, std::span<const real_t> x, std::span<real_t> y, int workers) {
    const index_t n = m.n();
    check_vectors(n, x, y, "spmv_hdc");
    const CsrMatrix& rest = m.csr();
    const real_t* const val = rest.values().data();
    const index_t* const col = rest.col_ind().data();
    const index_t* const rp = rest.row_ptr().data();
    const index_t n_diags = m.dia().n_diags();
    const index_t* const off = m.dia().offsets().data();
    const real_t* const lanes = m.dia().lanes().data();
    const real_t* const xp = x.data();
    real_t* const yp = y.data();
    const int nt = resolve_workers(workers);
#pragma omp parallel num_threads(nt)
    {
        // CSR remainder first, then the diagonal lanes on top.
#pragma omp for schedule(static)
        for (index_t i = 0; i < n; ++i) {
            real_t sum = 0.0;
            for (index_t k = rp[i]; k < rp[i + 1]; ++k) sum += val[k] * xp[col[k]];
            yp[i] = sum;
        }
        for (index_t k = 0; k < n_diags; ++k) {
            const index_t o = off[k];
            const RowRange r = diag_rows(n, o);
            const real_t* const lane = lanes + static_cast<std::size_t>(k) * n;
#pragma omp for schedule(static)
            for (index_t i = r.first; i < r.last; ++i) yp[i] += lane[i] * xp[i + o];
        }
    }
}

void spmv_bhdc(const HdcMatrix& m, const BlockPlan& plan, std::span<const real_t> x,
               std::span<real_t> y, int workers) {
    const index_t n = m.n();
    check_vectors(n, x, y, "spmv_bhdc");
    check_plan(plan, n, "spmv_bhdc");
    const CsrMatrix& rest = m.csr();
    const real_t* const val = rest.values().data();
    const index_t* const col = rest.col_ind().data();
    const index_t* const rp = rest.row_ptr().data();
    const index_t n_diags = m.dia().n_diags();
    const index_t* const off = m.dia().offsets().data();
    const real_t* const lanes = m.dia().lanes().data();
    const real_t* const xp = x.data();
    real_t* const yp = y.data();
    const int nt = resolve_workers(workers);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (index_t ib = 0; ib < plan.n_blocks; ++ib) {
        const index_t row0 = plan.begin(ib);
        const index_t row1 = plan.end(ib);
        for (index_t i = row0; i < row1; ++i) {
            real_t sum = 0.0;
            for (index_t k = rp[i]; k < rp[i + 1]; ++k) sum += val[k] * xp[col[k]];
            yp[i] = sum;
        }
        for (index_t k = 0; k < n_diags; ++k) {
            const index_t o = off[k];
            const index_t first = std::max(row0, -o);
            const index_t last = std::min(row1, n - o);
            const real_t* const lane = lanes + static_cast<std::size_t>(k) * n;
            for (index_t i = first; i < last; ++i) yp[i] += lane[i] * xp[i + o];
        }
    }
}

void spmv_mhdc(const MHdcMatrix& m, std::span<const real_t> x, std::span<real_t> y, int workers) {
    const index_t n = m.n();
    check_vectors(n, x, y, "spmv_mhdc");
    const CsrMatrix& rest = m.csr();
    const real_t* const val = rest.values().data();
    const index_t* const col = rest.col_ind().data();
    const index_t* const rp = rest.row_ptr().data();
    const index_t bl = m.bl();
    const index_t n_blocks = m.n_blocks();
    const index_t* const dia_ptr = m.dia_ptr().data();
    const index_t* const off = m.dia_offsets().data();
    const real_t* const segs = m.segments().data();
    const real_t* const xp = x.data();
    real_t* const yp = y.data();
    const int nt = resolve_workers(workers);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (index_t ib = 0; ib < n_blocks; ++ib) {
        const index_t row0 = ib * bl;
        const index_t row1 = std::min(row0 + bl, n);
        for (index_t i = row0; i < row1; ++i) {
            real_t sum = 0.0;
            for (index_t k = rp[i]; k < rp[i + 1]; ++k) sum += val[k] * xp[col[k]];
            yp[i] = sum;
        }
        // This block's own segments, locally indexed.
        for (index_t k = dia_ptr[ib]; k < dia_ptr[ib + 1]; ++k) {
            const index_t o = off[k];
            const index_t first = std::max(row0, -o);
            const index_t last = std::min(row1, n - o);
            const real_t* const seg = segs + static_cast<std::size_t>(k) * bl;
            for (index_t i = first; i < last; ++i) yp[i] += seg[i - row0] * xp[i + o];
        }
    }
}

DenseVector spmv_csr(const CsrMatrix& m, const DenseVector& x, int workers) {
    DenseVector y(static_cast<std::size_t>(m.n()));
    spmv_csr(m, x, y, workers);
    return y;
}

DenseVector spmv_dia(const DiaMatrix& m, const DenseVector& x, int workers) {
    DenseVector y(static_cast<std::size_t>(m.n()));
    spmv_dia(m, x, y, workers);
    return y;
}

DenseVector spmv_bdia(const DiaMatrix& m, const BlockPlan& plan, const DenseVector& x,
                      int workers) {
    DenseVector y(static_cast<std::size_t>(m.n()));
    spmv_bdia(m, plan, x, y, workers);
    return y;
}

DenseVector spmv_hdc(const HdcMatrix& m, const DenseVector& x, int workers) {
    DenseVector y(static_cast<std::size_t>(m.n()));
    spmv_hdc(m, x, y, workers);
    return y;
}

DenseVector spmv_bhdc(const HdcMatrix& m, const BlockPlan& plan, const DenseVector& x,
                      int workers) {
    DenseVector y(static_cast<std::size_t>(m.n()));
    spmv_bhdc(m, plan, x, y, workers);
    return y;
}

DenseVector spmv_mhdc(const MHdcMatrix& m, const DenseVector& x, int workers) {
    DenseVector y(static_cast<std::size_t>(m.n()));
    spmv_mhdc(m, x, y, workers);
    return y;
}

}  // namespace hdc
