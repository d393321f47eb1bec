#pragma once

#include "hdc/formats.hpp"

namespace hdc {

struct OffsetCount {
    index_t offset;
    index_t count;

    friend bool operator==(const OffsetCount&, const OffsetCount&) = default;
};

// Nonzero count per diagonal, either for the whole matrix (one block of
// width n) or per row block of width bl. Offsets are ascending within each
// block; diagonals a block never touches are absent.
struct DiagonalCensus {
    index_t n = 0;
    index_t bl = 0;
    index_t n_blocks = 0;
    std::vector<std::vector<OffsetCount>> per_block;

    index_t total() const;
};

DiagonalCensus census_global(const CsrMatrix& m);
DiagonalCensus census_blocked(const CsrMatrix& m, index_t bl);

// Every populated diagonal becomes a lane.
DiaMatrix to_dia(const CsrMatrix& m);

// Diagonals whose population count / n >= theta go to the DIA part; the
// rest of the entries form the CSR remainder.
HdcMatrix to_hdc(const CsrMatrix& m, real_t theta);

// Per block ib of width bl_ib (= bl except possibly the last), diagonals
// whose in-block count / bl_ib >= theta become local segments; the rest of
// the entries form the CSR remainder.
MHdcMatrix to_mhdc(const CsrMatrix& m, real_t theta, index_t bl);

// Occupancy of a hybrid split. beta is the share of nonzeros left in the
// CSR part; alpha is the filling rate of the diagonal slots; dia_slots is
// the number of value slots the diagonal part stores (selected diagonals
// times their block lengths).
struct HybridRates {
    real_t alpha;
    real_t beta;
    index_t dia_slots;
};

HybridRates rates(const HdcMatrix& m);
HybridRates rates(const MHdcMatrix& m);

}  // namespace hdc
