#include "hdc/convert.hpp"
#include "hdc/stencil.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>
#include <stdexcept>

using namespace hdc;

TEST_SUITE_BEGIN("convert");

TEST_CASE("global census of the fixture") {
    const DiagonalCensus c = census_global(example_matrix());
    CHECK(c.n == 8);
    CHECK(c.bl == 8);
    CHECK(c.n_blocks == 1);
    REQUIRE(c.per_block.size() == 1);
    const std::vector<OffsetCount> want{{-7, 1}, {-4, 3}, {0, 8}, {2, 5}, {5, 3}};
    CHECK(c.per_block[0] == want);
    CHECK(c.total() == 20);
}

TEST_CASE("blocked census of the fixture") {
    const DiagonalCensus c = census_blocked(example_matrix(), 4);
    CHECK(c.bl == 4);
    CHECK(c.n_blocks == 2);
    REQUIRE(c.per_block.size() == 2);
    const std::vector<OffsetCount> want0{{0, 4}, {2, 3}, {5, 3}};
    const std::vector<OffsetCount> want1{{-7, 1}, {-4, 3}, {0, 4}, {2, 2}};
    CHECK(c.per_block[0] == want0);
    CHECK(c.per_block[1] == want1);
    CHECK(c.total() == 20);
    CHECK_THROWS_AS(census_blocked(example_matrix(), 0), std::invalid_argument);
}

TEST_CASE("blocked census with full-width blocks equals the global one") {
    std::mt19937 rng(20240811);
    for (int rep = 0; rep < 5; ++rep) {
        const CsrMatrix m = CsrMatrix::from_coo(oracles::random_matrix(40, 0.1, rng));
        const DiagonalCensus global = census_global(m);
        const DiagonalCensus blocked = census_blocked(m, 40);
        CHECK(global.per_block == blocked.per_block);
    }
}

TEST_CASE("dia conversion reproduces the fixture lanes") {
    const DiaMatrix d = to_dia(example_matrix());
    REQUIRE(d.n_diags() == 5);
    const std::vector<index_t> offsets{-7, -4, 0, 2, 5};
    for (index_t k = 0; k < 5; ++k) CHECK(d.offsets()[k] == offsets[k]);
    const std::vector<real_t> lanes{
        0, 0, 0, 0, 0,  0, 0,  18,  // -7
        0, 0, 0, 0, 11, 0, 16, 19,  // -4
        1, 4, 7, 10, 12, 14, 17, 20,  // 0
        2, 5, 8, 0, 13, 15, 0, 0,  // 2
        3, 6, 9, 0, 0, 0, 0, 0,  // 5
    };
    REQUIRE(d.lanes().size() == lanes.size());
    for (std::size_t k = 0; k < lanes.size(); ++k) CHECK(d.lanes()[k] == lanes[k]);
    CHECK(nnz(d) == 20);
}

TEST_CASE("hybrid split of the fixture at theta 0.6") {
    const HdcMatrix h = to_hdc(example_matrix(), 0.6);
    CHECK(h.theta() == 0.6);
    REQUIRE(h.dia().n_diags() == 2);
    CHECK(h.dia().offsets()[0] == 0);
    CHECK(h.dia().offsets()[1] == 2);
    const std::vector<real_t> lane0{1, 4, 7, 10, 12, 14, 17, 20};
    const std::vector<real_t> lane2{2, 5, 8, 0, 13, 15, 0, 0};
    for (index_t i = 0; i < 8; ++i) {
        CHECK(h.dia().lane(0)[i] == lane0[i]);
        CHECK(h.dia().lane(1)[i] == lane2[i]);
    }
    const std::vector<real_t> rest_val{3, 6, 9, 11, 16, 18, 19};
    const std::vector<index_t> rest_col{5, 6, 7, 0, 2, 0, 3};
    const std::vector<index_t> rest_ptr{0, 1, 2, 3, 3, 4, 4, 5, 7};
    REQUIRE(nnz(h.csr()) == 7);
    for (index_t k = 0; k < 7; ++k) {
        CHECK(h.csr().values()[k] == rest_val[k]);
        CHECK(h.csr().col_ind()[k] == rest_col[k]);
    }
    for (index_t i = 0; i <= 8; ++i) CHECK(h.csr().row_ptr()[i] == rest_ptr[i]);
    CHECK(nnz(h) == 20);

    const HybridRates r = rates(h);
    CHECK(r.beta == 0.35);
    CHECK(r.alpha == 0.8125);
    CHECK(r.dia_slots == 16);
}

TEST_CASE("per-block split of the fixture at theta 0.6, bl 4") {
    const MHdcMatrix m = to_mhdc(example_matrix(), 0.6, 4);
    CHECK(m.bl() == 4);
    CHECK(m.n_blocks() == 2);
    const std::vector<index_t> dia_ptr{0, 3, 5};
    const std::vector<index_t> offsets{0, 2, 5, -4, 0};
    REQUIRE(m.dia_ptr().size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(m.dia_ptr()[k] == dia_ptr[k]);
    REQUIRE(m.n_segments() == 5);
    for (index_t k = 0; k < 5; ++k) CHECK(m.dia_offsets()[k] == offsets[k]);
    const std::vector<real_t> segments{
        1, 4, 7, 10,   // block 0, offset 0
        2, 5, 8, 0,    // block 0, offset 2
        3, 6, 9, 0,    // block 0, offset 5
        11, 0, 16, 19, // block 1, offset -4
        12, 14, 17, 20 // block 1, offset 0
    };
    REQUIRE(m.segments().size() == segments.size());
    for (std::size_t k = 0; k < segments.size(); ++k) CHECK(m.segments()[k] == segments[k]);

    const std::vector<real_t> rest_val{13, 15, 18};
    const std::vector<index_t> rest_col{6, 7, 0};
    const std::vector<index_t> rest_ptr{0, 0, 0, 0, 0, 1, 2, 2, 3};
    REQUIRE(nnz(m.csr()) == 3);
    for (index_t k = 0; k < 3; ++k) {
        CHECK(m.csr().values()[k] == rest_val[k]);
        CHECK(m.csr().col_ind()[k] == rest_col[k]);
    }
    for (index_t i = 0; i <= 8; ++i) CHECK(m.csr().row_ptr()[i] == rest_ptr[i]);
    CHECK(nnz(m) == 20);

    const HybridRates r = rates(m);
    CHECK(r.beta == 0.15);
    CHECK(r.alpha == 0.85);
    CHECK(r.dia_slots == 20);
}

TEST_CASE("threshold comparison keeps exact boundary diagonals") {
    // Offset 0 fills 2 of 4 slots: kept at theta = 0.5, dropped just above.
    std::vector<CooEntry> entries{{0, 0, 1.0}, {1, 1, 1.0}, {0, 3, 2.0}};
    const CsrMatrix m = CsrMatrix::from_coo(CooMatrix(4, 4, std::move(entries)));
    CHECK(to_hdc(m, 0.5).dia().n_diags() == 1);
    CHECK(to_hdc(m, 0.5000001).dia().n_diags() == 0);
    CHECK(to_hdc(m, 0.0).dia().n_diags() == 2);
}

TEST_CASE("short final block uses its actual length for the threshold") {
    // n = 5, bl = 4: block 1 is a single row. Its lone diagonal entry fills
    // 1 of 1 slots and must be selected even at theta = 1.
    std::vector<CooEntry> entries;
    for (index_t i = 0; i < 5; ++i) entries.push_back(CooEntry{i, i, 2.0});
    const CsrMatrix m = CsrMatrix::from_coo(CooMatrix(5, 5, std::move(entries)));
    const MHdcMatrix mh = to_mhdc(m, 1.0, 4);
    REQUIRE(mh.n_blocks() == 2);
    CHECK(mh.dia_ptr()[1] - mh.dia_ptr()[0] == 1);
    CHECK(mh.dia_ptr()[2] - mh.dia_ptr()[1] == 1);
    CHECK(nnz(mh.csr()) == 0);
    // Slot accounting uses the actual block length too: 4 + 1, not 4 + 4.
    const HybridRates r = rates(mh);
    CHECK(r.dia_slots == 5);
    CHECK(r.alpha == 1.0);
    CHECK(r.beta == 0.0);
}

TEST_CASE("splits partition the nonzeros exactly") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const index_t n = 16 + static_cast<index_t>(rng() % 48);
        const CsrMatrix m = CsrMatrix::from_coo(oracles::random_matrix(n, 0.15, rng));
        const DenseGrid ref = reconstruct_dense(m);
        for (const real_t theta : {0.0, 0.3, 0.5, 1.0}) {
            const HdcMatrix h = to_hdc(m, theta);
            CHECK(nnz(h.dia()) + nnz(h.csr()) == nnz(m));
            CHECK(reconstruct_dense(h).data == ref.data);
            for (const index_t bl : {1, 3, 7, 64}) {
                const MHdcMatrix mh = to_mhdc(m, theta, bl);
                CHECK(nnz(mh) == nnz(m));
                CHECK(reconstruct_dense(mh).data == ref.data);
            }
        }
    }
}

TEST_CASE("rates rejects empty matrices and handles an empty dia part") {
    const CsrMatrix empty(3, {}, {}, {0, 0, 0, 0});
    CHECK_THROWS_AS(rates(to_hdc(empty, 0.5)), std::invalid_argument);

    // All mass off-diagonal and sparse: nothing selected, alpha defaults 1.
    std::vector<CooEntry> entries{{0, 2, 1.0}};
    const CsrMatrix m = CsrMatrix::from_coo(CooMatrix(3, 3, std::move(entries)));
    const HybridRates r = rates(to_hdc(m, 0.9));
    CHECK(r.beta == 1.0);
    CHECK(r.alpha == 1.0);
    CHECK(r.dia_slots == 0);
}

TEST_CASE("parameter validation") {
    const CsrMatrix m = example_matrix();
    CHECK_THROWS_AS(to_hdc(m, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(to_hdc(m, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(to_mhdc(m, 0.5, 0), std::invalid_argument);
}

TEST_SUITE_END();
