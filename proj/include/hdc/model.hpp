#pragma once

#include "hdc/types.hpp"

namespace hdc::model {

// Inputs to the data-volume and speedup estimates. All volumes are derived
// per row and scaled by n; rates are dimensionless.
struct ModelInputs {
    real_t b_fp = 8.0;    // bytes per matrix/vector value
    real_t b_int = 4.0;   // bytes per index
    real_t n = 0.0;       // rows
    real_t c = 0.0;       // average nonzeros per row
    real_t n_diag = 0.0;  // diagonals touched by the DIA-style part
    real_t gamma = 1.0;   // effective x loads per row per diagonal, in (0, 1]
    real_t alpha = 1.0;   // diagonal-slot filling rate, in (0, 1]
    real_t beta = 0.0;    // share of nonzeros in the CSR remainder, in [0, 1]
    real_t v_x = 1.0;     // x values loaded per row by the CSR-style parts, >= 1

    real_t b() const { return b_int / b_fp; }
};

enum class ModelKernel { csr, dia, bdia, bhdc, mhdc };

// Bytes moved per multiplication, split by stream.
struct VolumeBreakdown {
    real_t matrix_bytes = 0.0;
    real_t x_bytes = 0.0;
    real_t y_bytes = 0.0;

    real_t total() const { return matrix_bytes + x_bytes + y_bytes; }
};

VolumeBreakdown volume(ModelKernel k, const ModelInputs& in);

// Predicted runtime ratios (volume of the reference kernel over volume of
// the contender; > 1 means the contender should be faster).
real_t speedup_dia_over_csr(const ModelInputs& in);
real_t speedup_bdia_over_csr(const ModelInputs& in);
real_t speedup_bdia_over_dia(const ModelInputs& in);
real_t speedup_hybrid_over_csr(const ModelInputs& in);

// Smallest diagonal filling rate at which the hybrid kernels can beat CSR.
real_t alpha_threshold(real_t b);

// Signed relative deviation of an estimated ratio from a measured one.
real_t model_error(real_t rp_est, real_t rp_exe);

// Runtime a volume implies on a memory channel of the given bandwidth.
real_t predicted_time_s(const VolumeBreakdown& v, real_t bytes_per_s);

}  // namespace hdc::model
