#pragma once

#include "hdc/formats.hpp"

#include <string>

namespace hdc {

// Banded test matrices from regular-grid stencils:
//   p3_1d: offsets {0, +-1}
//   p5_2d: offsets {0, +-1, +-n_x},   n_x = floor(sqrt(n))
//   p7_3d: offsets {0, +-1, +-n_x, +-n_x^2},  n_x = floor(cbrt(n))
enum class StencilKind { p3_1d, p5_2d, p7_3d };

StencilKind stencil_kind_from_string(const std::string& name);
std::string to_string(StencilKind kind);

// Nominal diagonal count (3, 5 or 7) and the per-diagonal x-reuse factor
// the ratio models use for the kind.
index_t stencil_n_diag(StencilKind kind);
real_t stencil_gamma(StencilKind kind);

// Offsets actually populated for a given n (duplicates collapse for tiny n).
std::vector<index_t> stencil_offsets(StencilKind kind, index_t n);

// Every in-range position on the stencil's offsets is populated with the
// deterministic value 1 + ((i*31 + j*17) mod 7).
CsrMatrix gen_stencil(StencilKind kind, index_t n);

// The 8x8 fixture matrix used throughout the tests: 20 entries, values
// 1..20 in row order, populated diagonals at offsets -7, -4, 0, 2, 5.
CsrMatrix example_matrix();

}  // namespace hdc
