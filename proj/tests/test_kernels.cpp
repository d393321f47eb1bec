#include "hdc/kernels.hpp"

#include "hdc/convert.hpp"
#include "hdc/stencil.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>
#include <stdexcept>

using namespace hdc;

namespace {

// All six kernels on every format derived from the same matrix.
std::vector<DenseVector> run_all(const CsrMatrix& m, const DenseVector& x, real_t theta,
                                 index_t bl, int workers) {
    const DiaMatrix dia = to_dia(m);
    const HdcMatrix hdc_m = to_hdc(m, theta);
    const MHdcMatrix mhdc_m = to_mhdc(m, theta, bl);
    const BlockPlan plan = BlockPlan::rows(m.n(), bl);
    return {
        spmv_csr(m, x, workers),        spmv_dia(dia, x, workers),
        spmv_bdia(dia, plan, x, workers), spmv_hdc(hdc_m, x, workers),
        spmv_bhdc(hdc_m, plan, x, workers), spmv_mhdc(mhdc_m, x, workers),
    };
}

}  // namespace

TEST_SUITE_BEGIN("kernels");

TEST_CASE("fixture product is exact on every kernel") {
    const CsrMatrix m = example_matrix();
    DenseVector x(8);
    for (index_t i = 0; i < 8; ++i) x[i] = static_cast<real_t>(i + 1);
    const DenseVector want{25, 70, 133, 40, 162, 204, 167, 254};
    for (const auto& y : run_all(m, x, 0.6, 4, 1)) {
        REQUIRE(y.size() == 8);
        for (index_t i = 0; i < 8; ++i) CHECK(y[i] == want[i]);
    }
}

TEST_CASE("block plan clamps the final block") {
    const BlockPlan p = BlockPlan::rows(10, 4);
    CHECK(p.n_blocks == 3);
    CHECK(p.begin(2) == 8);
    CHECK(p.end(2) == 10);
    CHECK(p.length(2) == 2);
    const BlockPlan wide = BlockPlan::rows(3, 100);
    CHECK(wide.n_blocks == 1);
    CHECK(wide.end(0) == 3);
    CHECK(BlockPlan::rows(0, 4).n_blocks == 0);
    CHECK_THROWS_AS(BlockPlan::rows(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(BlockPlan::rows(-1, 2), std::invalid_argument);
}

TEST_CASE("kernels agree with the dense oracle on random matrices") {
    std::mt19937 rng(123);
    for (int rep = 0; rep < 20; ++rep) {
        const index_t n = 8 + static_cast<index_t>(rng() % 56);
        const double density = 0.02 + 0.2 * std::uniform_real_distribution<>(0, 1)(rng);
        const CsrMatrix m = CsrMatrix::from_coo(oracles::random_matrix(n, density, rng));
        const DenseVector x = oracles::random_x(n, rng);
        const DenseVector ref = oracles::dense_multiply(reconstruct_dense(m), x);
        const real_t theta = std::uniform_real_distribution<real_t>(0.1, 0.9)(rng);
        const index_t bl = 1 + static_cast<index_t>(rng() % (n + 3));
        for (const auto& y : run_all(m, x, theta, bl, 1))
            CHECK(oracles::max_rel_err(y, ref) <= 1e-13);
    }
}

TEST_CASE("corner entries and extreme offsets stay in range") {
    std::mt19937 rng(99);
    for (const index_t n : {1, 2, 3, 8, 17}) {
        std::vector<CooEntry> entries{{0, n - 1, 2.0}, {n - 1, 0, 3.0}, {0, 0, 1.0},
                                      {n - 1, n - 1, 4.0}};
        const CsrMatrix m = CsrMatrix::from_coo(CooMatrix(n, n, std::move(entries)));
        const DenseVector x = oracles::random_x(n, rng);
        const DenseVector ref = oracles::dense_multiply(reconstruct_dense(m), x);
        for (const index_t bl : {index_t{1}, index_t{2}, n, static_cast<index_t>(n + 5)}) {
            for (const auto& y : run_all(m, x, 0.5, bl, 2))
                CHECK(oracles::max_rel_err(y, ref) <= 1e-13);
        }
    }
}

TEST_CASE("worker count does not change the bits") {
    std::mt19937 rng(31415);
    const CsrMatrix m = CsrMatrix::from_coo(oracles::random_matrix(100, 0.1, rng));
    const DenseVector x = oracles::random_x(100, rng);
    const auto base = run_all(m, x, 0.5, 7, 1);
    for (const int workers : {2, 3, 8, 0}) {
        const auto other = run_all(m, x, 0.5, 7, workers);
        for (std::size_t k = 0; k < base.size(); ++k)
            CHECK(oracles::bitwise_equal(base[k], other[k]));
    }
}

TEST_CASE("per-row accumulation order is ascending by stored position") {
    // Row 0 sums 1e16, 1, then -1e16. In ascending column order the 1 is
    // absorbed, (1e16 + 1) - 1e16 = 0; summing the small term last would
    // give 1. Pins the stored-position traversal order.
    std::vector<CooEntry> entries{{0, 0, 1e16}, {0, 1, 1.0}, {0, 2, -1e16}, {1, 1, 1.0},
                                  {2, 2, 1.0}};
    const CsrMatrix m = CsrMatrix::from_coo(CooMatrix(3, 3, std::move(entries)));
    const DenseVector x(3, 1.0);
    CHECK(spmv_csr(m, x)[0] == 0.0);
    // to_dia lanes ascend by offset = column here, so the lane-by-lane
    // accumulation hits the same order.
    CHECK(spmv_dia(to_dia(m), x)[0] == 0.0);
    CHECK(spmv_bdia(to_dia(m), BlockPlan::rows(3, 2), x)[0] == 0.0);
}

TEST_CASE("empty and trivial matrices") {
    const CsrMatrix empty(0, {}, {}, {0});
    DenseVector none;
    CHECK_NOTHROW(spmv_csr(empty, none, none));
    CHECK_NOTHROW(spmv_dia(to_dia(empty), none, none));
    CHECK_NOTHROW(spmv_mhdc(to_mhdc(empty, 0.5, 4), none, none));

    const CsrMatrix one(1, {2.5}, {0}, {0, 1});
    DenseVector x{2.0};
    CHECK(spmv_csr(one, x)[0] == 5.0);
    CHECK(spmv_bdia(to_dia(one), BlockPlan::rows(1, 1), x)[0] == 5.0);
    CHECK(spmv_mhdc(to_mhdc(one, 1.0, 1), x)[0] == 5.0);
}

TEST_CASE("dimension and plan validation") {
    const CsrMatrix m = example_matrix();
    DenseVector short_x(4, 1.0);
    DenseVector y(8, 0.0);
    CHECK_THROWS_AS(spmv_csr(m, short_x, y), std::invalid_argument);
    DenseVector x(8, 1.0);
    DenseVector short_y(4, 0.0);
    CHECK_THROWS_AS(spmv_csr(m, x, short_y), std::invalid_argument);

    const DiaMatrix d = to_dia(m);
    const BlockPlan wrong_n = BlockPlan::rows(9, 4);
    CHECK_THROWS_AS(spmv_bdia(d, wrong_n, x, y), std::invalid_argument);
    BlockPlan corrupt = BlockPlan::rows(8, 4);
    corrupt.n_blocks = 1;
    CHECK_THROWS_AS(spmv_bdia(d, corrupt, x, y), std::invalid_argument);
    CHECK_THROWS_AS(spmv_bhdc(to_hdc(m, 0.5), wrong_n, x, y), std::invalid_argument);
}

TEST_SUITE_END();
