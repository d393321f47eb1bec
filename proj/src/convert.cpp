#include "hdc/convert.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace hdc {

namespace {

// Population test for a diagonal: count filled slots against slot count.
bool dense_enough(index_t count, index_t slots, real_t theta) {
    return static_cast<real_t>(count) / static_cast<real_t>(slots) >= theta;
}

void check_theta(real_t theta, const char* what) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument(std::string(what) + ": theta must be in [0, 1]");
}

std::vector<OffsetCount> sorted_counts(const std::unordered_map<index_t, index_t>& tally) {
    std::vector<OffsetCount> out;
    out.reserve(tally.size());
    for (const auto& [offset, count] : tally) out.push_back(OffsetCount{offset, count});
    std::sort(out.begin(), out.end(),
              [](const OffsetCount& a, const OffsetCount& b) { return a.offset < b.offset; });
    return out;
}

}  // namespace

index_t DiagonalCensus::total() const {
    index_t sum = 0;
    for (const auto& block : per_block)
        for (const OffsetCount& oc : block) sum += oc.count;
    return sum;
}

DiagonalCensus census_blocked(const CsrMatrix& m, index_t bl) {
    if (bl < 1) throw std::invalid_argument("census_blocked: block width must be >= 1");
    const index_t n = m.n();
    DiagonalCensus census;
    census.n = n;
    census.bl = bl;
    census.n_blocks = n == 0 ? 0 : (n + bl - 1) / bl;
    census.per_block.resize(static_cast<std::size_t>(census.n_blocks));
    std::unordered_map<index_t, index_t> tally;
    for (index_t ib = 0; ib < census.n_blocks; ++ib) {
        tally.clear();
        const index_t row0 = ib * bl;
        const index_t row1 = std::min(row0 + bl, n);
        for (index_t i = row0; i < row1; ++i)
            for (index_t k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k)
                ++tally[m.col_ind()[k] - i];
        census.per_block[ib] = sorted_counts(tally);
    }
    return census;
}

DiagonalCensus census_global(const CsrMatrix& m) {
    if (m.n() == 0) {
        DiagonalCensus census;
        census.n = 0;
        return census;
    }
    return census_blocked(m, m.n());
}

DiaMatrix to_dia(const CsrMatrix& m) {
    const index_t n = m.n();
    const DiagonalCensus census = census_global(m);
    std::vector<index_t> offsets;
    if (!census.per_block.empty()) {
        offsets.reserve(census.per_block[0].size());
        for (const OffsetCount& oc : census.per_block[0]) offsets.push_back(oc.offset);
    }
    std::vector<real_t> lanes(offsets.size() * static_cast<std::size_t>(n), 0.0);
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k) {
            const index_t off = m.col_ind()[k] - i;
            const auto lane_it = std::lower_bound(offsets.begin(), offsets.end(), off);
            const std::size_t lane = static_cast<std::size_t>(lane_it - offsets.begin());
            lanes[lane * static_cast<std::size_t>(n) + i] = m.values()[k];
        }
    }
    return DiaMatrix(n, std::move(offsets), std::move(lanes));
}

HdcMatrix to_hdc(const CsrMatrix& m, real_t theta) {
    check_theta(theta, "to_hdc");
    const index_t n = m.n();
    const DiagonalCensus census = census_global(m);

    std::vector<index_t> selected;
    if (!census.per_block.empty())
        for (const OffsetCount& oc : census.per_block[0])
            if (dense_enough(oc.count, n, theta)) selected.push_back(oc.offset);

    std::vector<real_t> lanes(selected.size() * static_cast<std::size_t>(n), 0.0);
    std::vector<real_t> rest_values;
    std::vector<index_t> rest_cols;
    std::vector<index_t> rest_row_ptr(static_cast<std::size_t>(n) + 1, 0);
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k) {
            const index_t off = m.col_ind()[k] - i;
            const auto it = std::lower_bound(selected.begin(), selected.end(), off);
            if (it != selected.end() && *it == off) {
                const std::size_t lane = static_cast<std::size_t>(it - selected.begin());
                lanes[lane * static_cast<std::size_t>(n) + i] = m.values()[k];
            } else {
                rest_values.push_back(m.values()[k]);
                rest_cols.push_back(m.col_ind()[k]);
            }
        }
        rest_row_ptr[i + 1] = static_cast<index_t>(rest_values.size());
    }
    return HdcMatrix(n, DiaMatrix(n, std::move(selected), std::move(lanes)),
                     CsrMatrix(n, std::move(rest_values), std::move(rest_cols),
                               std::move(rest_row_ptr)),
                     theta);
}

MHdcMatrix to_mhdc(const CsrMatrix& m, real_t theta, index_t bl) {
    check_theta(theta, "to_mhdc");
    if (bl < 1) throw std::invalid_argument("to_mhdc: block width must be >= 1");
    const index_t n = m.n();
    const DiagonalCensus census = census_blocked(m, bl);

    // Per block, the offsets dense enough within that block (ascending).
    std::vector<index_t> dia_ptr;
    dia_ptr.reserve(static_cast<std::size_t>(census.n_blocks) + 1);
    dia_ptr.push_back(0);
    std::vector<index_t> dia_offsets;
    for (index_t ib = 0; ib < census.n_blocks; ++ib) {
        const index_t block_len = std::min(bl, n - ib * bl);
        for (const OffsetCount& oc : census.per_block[ib])
            if (dense_enough(oc.count, block_len, theta)) dia_offsets.push_back(oc.offset);
        dia_ptr.push_back(static_cast<index_t>(dia_offsets.size()));
    }

    std::vector<real_t> segments(dia_offsets.size() * static_cast<std::size_t>(bl), 0.0);
    std::vector<real_t> rest_values;
    std::vector<index_t> rest_cols;
    std::vector<index_t> rest_row_ptr(static_cast<std::size_t>(n) + 1, 0);
    for (index_t ib = 0; ib < census.n_blocks; ++ib) {
        const index_t row0 = ib * bl;
        const index_t row1 = std::min(row0 + bl, n);
        const auto block_first = dia_offsets.begin() + dia_ptr[ib];
        const auto block_last = dia_offsets.begin() + dia_ptr[ib + 1];
        for (index_t i = row0; i < row1; ++i) {
            for (index_t k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k) {
                const index_t off = m.col_ind()[k] - i;
                const auto it = std::lower_bound(block_first, block_last, off);
                if (it != block_last && *it == off) {
                    const std::size_t seg = static_cast<std::size_t>(it - dia_offsets.begin());
                    segments[seg * static_cast<std::size_t>(bl) + (i - row0)] = m.values()[k];
                } else {
                    rest_values.push_back(m.values()[k]);
                    rest_cols.push_back(m.col_ind()[k]);
                }
            }
            rest_row_ptr[i + 1] = static_cast<index_t>(rest_values.size());
        }
    }
    return MHdcMatrix(n, bl, std::move(dia_ptr), std::move(dia_offsets), std::move(segments),
                      CsrMatrix(n, std::move(rest_values), std::move(rest_cols),
                                std::move(rest_row_ptr)),
                      theta);
}

namespace {

HybridRates rates_impl(index_t dia_nnz, index_t csr_nnz, index_t slots, const char* what) {
    const index_t total = dia_nnz + csr_nnz;
    if (total == 0) throw std::invalid_argument(std::string(what) + ": matrix has no nonzeros");
    HybridRates r;
    r.beta = static_cast<real_t>(csr_nnz) / static_cast<real_t>(total);
    r.alpha = slots == 0 ? 1.0 : static_cast<real_t>(dia_nnz) / static_cast<real_t>(slots);
    r.dia_slots = slots;
    return r;
}

}  // namespace

HybridRates rates(const HdcMatrix& m) {
    return rates_impl(nnz(m.dia()), nnz(m.csr()), m.dia().n_diags() * m.n(), "rates");
}

HybridRates rates(const MHdcMatrix& m) {
    index_t slots = 0;
    for (index_t ib = 0; ib < m.n_blocks(); ++ib) {
        const index_t block_len = std::min(m.bl(), m.n() - ib * m.bl());
        slots += (m.dia_ptr()[ib + 1] - m.dia_ptr()[ib]) * block_len;
    }
    return rates_impl(nnz(m) - nnz(m.csr()), nnz(m.csr()), slots, "rates");
}

}  // namespace hdc
