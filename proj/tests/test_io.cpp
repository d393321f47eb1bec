#include "hdc/io.hpp"

#include "hdc/stencil.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace hdc;

TEST_SUITE_BEGIN("io");

TEST_CASE("matrix market round trip is value exact") {
    std::mt19937 rng(555);
    CooMatrix original = oracles::random_matrix(30, 0.08, rng);
    // Values that stress the formatter.
    std::vector<CooEntry> entries = original.entries();
    entries.push_back({0, 29, 1.0 / 3.0});
    entries.push_back({29, 0, -2.5e-17});
    entries.push_back({15, 15, 1e300});
    const CooMatrix m(30, 30, std::move(entries));

    std::stringstream buf;
    io::write_matrix_market(m, buf);
    const CooMatrix back = io::read_matrix_market(buf);
    REQUIRE(back.entries().size() == m.entries().size());
    for (std::size_t k = 0; k < m.entries().size(); ++k) {
        CHECK(back.entries()[k].row == m.entries()[k].row);
        CHECK(back.entries()[k].col == m.entries()[k].col);
        CHECK(back.entries()[k].value == m.entries()[k].value);
    }
}

TEST_CASE("csr overload streams the same entries") {
    const CsrMatrix m = example_matrix();
    std::stringstream buf;
    io::write_matrix_market(m, buf);
    const CsrMatrix back = CsrMatrix::from_coo(io::read_matrix_market(buf));
    REQUIRE(nnz(back) == 20);
    for (index_t k = 0; k < 20; ++k) {
        CHECK(back.values()[k] == m.values()[k]);
        CHECK(back.col_ind()[k] == m.col_ind()[k]);
    }
}

TEST_CASE("symmetric storage expands to both triangles") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "% lower triangle only\n"
        "3 3 3\n"
        "1 1 2.0\n"
        "3 1 -1.5\n"
        "3 3 4.0\n");
    const CooMatrix m = io::read_matrix_market(in);
    REQUIRE(m.entries().size() == 4);
    const DenseGrid g = reconstruct_dense(m);
    CHECK(g.at(0, 0) == 2.0);
    CHECK(g.at(2, 0) == -1.5);
    CHECK(g.at(0, 2) == -1.5);
    CHECK(g.at(2, 2) == 4.0);
}

TEST_CASE("skew-symmetric storage negates the mirror") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real skew-symmetric\n"
        "2 2 1\n"
        "2 1 3.0\n");
    const DenseGrid g = reconstruct_dense(io::read_matrix_market(in));
    CHECK(g.at(1, 0) == 3.0);
    CHECK(g.at(0, 1) == -3.0);
}

TEST_CASE("pattern and integer fields") {
    std::istringstream pat(
        "%%MatrixMarket matrix coordinate pattern general\n"
        "2 2 2\n"
        "1 2\n"
        "2 1\n");
    const CooMatrix p = io::read_matrix_market(pat);
    CHECK(p.entries()[0].value == 1.0);
    CHECK(p.entries()[1].value == 1.0);

    std::istringstream integers(
        "%%MatrixMarket matrix coordinate integer general\n"
        "2 2 1\n"
        "1 1 -7\n");
    CHECK(io::read_matrix_market(integers).entries()[0].value == -7.0);
}

TEST_CASE("duplicates are summed, whitespace and comments tolerated") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real general\n"
        "% a comment\n"
        "\n"
        "  3 3 3\n"
        "\n"
        "1 1 1.0\n"
        "  1   1   2.5 \n"
        "3 3 1e2\n");
    const CooMatrix m = io::read_matrix_market(in);
    REQUIRE(m.entries().size() == 2);
    CHECK(m.entries()[0].value == 3.5);
    CHECK(m.entries()[1].value == 100.0);
}

TEST_CASE("malformed inputs are rejected") {
    const auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(io::read_matrix_market(in), std::runtime_error);
    };
    reject("");
    reject("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
    reject("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n");
    reject("%%MatrixMarket matrix coordinate real hermitian\n1 1 1\n1 1 1\n");
    reject("%%MatrixMarket vector coordinate real general\n1 1 1\n1 1 1\n");
    reject("not a banner\n1 1 1\n1 1 1\n");
    reject("%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1\n");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1\n");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1 9\n");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n1 2 1\n");
    reject("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1 1\n");
}

TEST_CASE("file variants report unopenable paths") {
    CHECK_THROWS_AS(io::read_matrix_market("/nonexistent/dir/m.mtx"), std::runtime_error);
    CHECK_THROWS_AS(io::write_matrix_market(example_matrix(), "/nonexistent/dir/m.mtx"),
                    std::runtime_error);
}

TEST_CASE("report rows round trip including NaN") {
    std::vector<io::ReportRow> rows(2);
    rows[0] = {"p3_1d_n1000", "mhdc", 0.6, 50, 4, 1000, 2998, 0.998, 0.001,
               1.25e-5, 0.4797, 1.31, 1.29, -0.0152671755725191};
    rows[1].matrix = "whatever.mtx";
    rows[1].kernel = "csr";
    rows[1].theta = std::nan("");
    rows[1].rp_est = std::nan("");
    rows[1].time_s = 0.125;

    std::stringstream buf;
    io::write_report(rows, buf);
    const std::string text = buf.str();
    CHECK(text.find(io::report_header) == 0);

    const std::vector<io::ReportRow> back = io::read_report(buf);
    REQUIRE(back.size() == 2);
    CHECK(back[0].matrix == "p3_1d_n1000");
    CHECK(back[0].kernel == "mhdc");
    CHECK(back[0].theta == 0.6);
    CHECK(back[0].bl == 50);
    CHECK(back[0].workers == 4);
    CHECK(back[0].n == 1000);
    CHECK(back[0].nnz == 2998);
    CHECK(back[0].alpha == 0.998);
    CHECK(back[0].beta == 0.001);
    CHECK(back[0].time_s == 1.25e-5);
    CHECK(back[0].gflops == 0.4797);
    CHECK(back[0].rp_vs_csr == 1.31);
    CHECK(back[0].rp_est == 1.29);
    CHECK(back[0].rel_err == -0.0152671755725191);
    CHECK(std::isnan(back[1].theta));
    CHECK(std::isnan(back[1].rp_est));
    CHECK(back[1].time_s == 0.125);
}

TEST_CASE("report parsing validates the layout") {
    {
        std::istringstream in("bogus header\n");
        CHECK_THROWS_AS(io::read_report(in), std::runtime_error);
    }
    {
        std::istringstream in(std::string(io::report_header) + "\na,b,0.5\n");
        CHECK_THROWS_AS(io::read_report(in), std::runtime_error);
    }
    {
        std::istringstream in(std::string(io::report_header) +
                              "\nm,csr,x,0,1,8,20,0,0,1,1,1,1,0\n");
        CHECK_THROWS_AS(io::read_report(in), std::runtime_error);
    }
    {
        // Trailing blank line is fine.
        std::istringstream in(std::string(io::report_header) +
                              "\nm,csr,0.5,0,1,8,20,0,0,1,1,1,1,0\n\n");
        CHECK(io::read_report(in).size() == 1);
    }
}

TEST_SUITE_END();
