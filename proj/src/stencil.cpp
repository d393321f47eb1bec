#include "hdc/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace hdc {

StencilKind stencil_kind_from_string(const std::string& name) {
    if (name == "p3_1d") return StencilKind::p3_1d;
    if (name == "p5_2d") return StencilKind::p5_2d;
    if (name == "p7_3d") return StencilKind::p7_3d;
    throw std::invalid_argument("unknown stencil kind: " + name);
}

std::string to_string(StencilKind kind) {
    switch (kind) {
        case StencilKind::p3_1d: return "p3_1d";
        case StencilKind::p5_2d: return "p5_2d";
        case StencilKind::p7_3d: return "p7_3d";
    }
    throw std::invalid_argument("unknown stencil kind");
}

index_t stencil_n_diag(StencilKind kind) {
    switch (kind) {
        case StencilKind::p3_1d: return 3;
        case StencilKind::p5_2d: return 5;
        case StencilKind::p7_3d: return 7;
    }
    throw std::invalid_argument("unknown stencil kind");
}

real_t stencil_gamma(StencilKind kind) {
    switch (kind) {
        case StencilKind::p3_1d: return 1.0 / 3.0;
        case StencilKind::p5_2d: return 1.0 / 5.0;
        case StencilKind::p7_3d: return 3.0 / 7.0;
    }
    throw std::invalid_argument("unknown stencil kind");
}

namespace {

// Largest integer whose square (cube) does not exceed n. Seeded from the
// floating-point root, then fixed up exactly; comparisons in 64 bit so the
// probe cannot overflow near the index range limit.
index_t floor_sqrt(index_t n) {
    index_t r = std::max<index_t>(0, static_cast<index_t>(std::sqrt(static_cast<double>(n))) - 2);
    while (static_cast<std::int64_t>(r + 1) * (r + 1) <= static_cast<std::int64_t>(n)) ++r;
    return r;
}

index_t floor_cbrt(index_t n) {
    index_t r = std::max<index_t>(0, static_cast<index_t>(std::cbrt(static_cast<double>(n))) - 2);
    while (static_cast<std::int64_t>(r + 1) * (r + 1) * (r + 1) <= static_cast<std::int64_t>(n))
        ++r;
    return r;
}

}  // namespace

std::vector<index_t> stencil_offsets(StencilKind kind, index_t n) {
    if (n < 1) throw std::invalid_argument("stencil_offsets: n must be >= 1");
    std::vector<index_t> magnitudes{0, 1};
    if (kind == StencilKind::p5_2d) {
        magnitudes.push_back(floor_sqrt(n));
    } else if (kind == StencilKind::p7_3d) {
        const index_t nx = floor_cbrt(n);
        magnitudes.push_back(nx);
        magnitudes.push_back(nx * nx);
    }
    std::vector<index_t> offsets;
    for (const index_t m : magnitudes) {
        offsets.push_back(m);
        if (m != 0) offsets.push_back(-m);
    }
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    // Offsets as large as n never intersect the matrix.
    std::erase_if(offsets, [n](index_t off) { return off <= -n || off >= n; });
    return offsets;
}

namespace {

real_t stencil_value(index_t i, index_t j) {
    const std::int64_t mix = static_cast<std::int64_t>(i) * 31 + static_cast<std::int64_t>(j) * 17;
    return static_cast<real_t>(1 + mix % 7);
}

}  // namespace

CsrMatrix gen_stencil(StencilKind kind, index_t n) {
    const std::vector<index_t> offsets = stencil_offsets(kind, n);
    std::vector<index_t> row_ptr(static_cast<std::size_t>(n) + 1, 0);
    std::size_t total = 0;
    for (const index_t off : offsets) {
        const RowRange r = diag_rows(n, off);
        total += static_cast<std::size_t>(r.last - r.first);
        for (index_t i = r.first; i < r.last; ++i) ++row_ptr[i + 1];
    }
    for (index_t i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
    std::vector<real_t> values(total);
    std::vector<index_t> col_ind(total);
    std::vector<index_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
    // Offsets ascend, so each row's columns come out ascending.
    for (const index_t off : offsets) {
        const RowRange r = diag_rows(n, off);
        for (index_t i = r.first; i < r.last; ++i) {
            const index_t slot = cursor[i]++;
            col_ind[slot] = i + off;
            values[slot] = stencil_value(i, i + off);
        }
    }
    return CsrMatrix(n, std::move(values), std::move(col_ind), std::move(row_ptr));
}

CsrMatrix example_matrix() {
    std::vector<real_t> values(20);
    for (int k = 0; k < 20; ++k) values[k] = static_cast<real_t>(k + 1);
    std::vector<index_t> col_ind{0, 2, 5, 1, 3, 6, 2, 4, 7, 3, 0, 4, 6, 5, 7, 2, 6, 0, 3, 7};
    std::vector<index_t> row_ptr{0, 3, 6, 9, 10, 13, 15, 17, 20};
    return CsrMatrix(8, std::move(values), std::move(col_ind), std::move(row_ptr));
}

}  // namespace hdc
