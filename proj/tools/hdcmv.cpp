// Command-line front end: stencil generation, split analysis, kernel
// timing, the streaming micro-benchmark and the closed-form predictors.

#include "hdc/bench.hpp"
#include "hdc/convert.hpp"
#include "hdc/io.hpp"
#include "hdc/kernels.hpp"
#include "hdc/model.hpp"
#include "hdc/stencil.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr hdc::real_t kVerifyTol = 1e-13;
constexpr hdc::real_t kNaN = std::numeric_limits<hdc::real_t>::quiet_NaN();

// A kernel result that disagrees with the CSR reference.
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

hdc::DenseVector make_x(hdc::index_t n) {
    hdc::DenseVector x(static_cast<std::size_t>(n));
    for (hdc::index_t i = 0; i < n; ++i) x[i] = 1.0 + static_cast<hdc::real_t>(i % 8) / 8.0;
    return x;
}

hdc::real_t rel_component_err(hdc::real_t got, hdc::real_t want) {
    const hdc::real_t scale = std::max(std::fabs(got), std::fabs(want));
    if (scale == 0.0) return 0.0;
    return std::fabs(got - want) / scale;
}

void verify_against_csr(const std::string& kernel, const hdc::DenseVector& got,
                        const hdc::DenseVector& want) {
    hdc::real_t worst = 0.0;
    std::size_t worst_at = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const hdc::real_t err = rel_component_err(got[i], want[i]);
        if (err > worst) {
            worst = err;
            worst_at = i;
        }
    }
    if (worst > kVerifyTol)
        throw VerifyError("verification failed: kernel " + kernel + " deviates from csr at row " +
                          std::to_string(worst_at) + ": got " + fmt6(got[worst_at]) +
                          ", expected " + fmt6(want[worst_at]) + " (rel err " + fmt6(worst) + ")");
}

struct LoadedMatrix {
    hdc::CsrMatrix csr;
    std::string name;
    std::optional<hdc::StencilKind> stencil;  // set when generated on the fly
};

LoadedMatrix load_matrix(const std::string& in_path, const std::string& gen_kind,
                         hdc::index_t gen_n) {
    if (!in_path.empty()) {
        hdc::CooMatrix coo = hdc::io::read_matrix_market(in_path);
        return LoadedMatrix{hdc::CsrMatrix::from_coo(coo), in_path, std::nullopt};
    }
    const hdc::StencilKind kind = hdc::stencil_kind_from_string(gen_kind);
    return LoadedMatrix{hdc::gen_stencil(kind, gen_n),
                        hdc::to_string(kind) + "_n" + std::to_string(gen_n), kind};
}

int run_gen(const std::string& kind_name, hdc::index_t n, const std::string& out_path) {
    const hdc::StencilKind kind = hdc::stencil_kind_from_string(kind_name);
    const hdc::CsrMatrix m = hdc::gen_stencil(kind, n);
    hdc::io::write_matrix_market(m, out_path);
    std::cout << "wrote " << out_path << ": " << hdc::to_string(kind) << ", n = " << m.n()
              << ", nnz = " << hdc::nnz(m) << "\n";
    return 0;
}

int run_analyze(const std::string& in_path, std::vector<double> thetas,
                std::vector<hdc::index_t> bls, const std::string& out_path) {
    const hdc::CooMatrix coo = hdc::io::read_matrix_market(in_path);
    const hdc::CsrMatrix m = hdc::CsrMatrix::from_coo(coo);
    const hdc::DiagonalCensus census = hdc::census_global(m);
    const hdc::index_t n_diag_total =
        census.per_block.empty() ? 0 : static_cast<hdc::index_t>(census.per_block[0].size());
    std::cout << "matrix " << in_path << ": n = " << m.n() << ", nnz = " << hdc::nnz(m)
              << ", populated diagonals = " << n_diag_total
              << ", avg row nnz = " << fmt6(hdc::avg_row_nnz(m)) << "\n";

    std::vector<hdc::io::ReportRow> rows;
    std::cout << "kernel   theta      bl    n_diag     alpha      beta    rp_est\n";
    for (const double theta : thetas) {
        const hdc::HdcMatrix h = hdc::to_hdc(m, theta);
        const hdc::HybridRates r = hdc::rates(h);
        hdc::model::ModelInputs in;
        in.b_int = hdc::index_bytes;
        in.n = static_cast<hdc::real_t>(m.n());
        in.c = hdc::avg_row_nnz(m);
        in.alpha = r.alpha;
        in.beta = r.beta;
        const hdc::real_t rp = hdc::model::speedup_hybrid_over_csr(in);
        std::printf("%-8s %5.3f %7s %9lld %9s %9s %9s\n", "hdc", theta, "-",
                    static_cast<long long>(h.dia().n_diags()), fmt6(r.alpha).c_str(),
                    fmt6(r.beta).c_str(), fmt6(rp).c_str());
        rows.push_back({in_path, "hdc", theta, 0, 0, m.n(), hdc::nnz(m), r.alpha, r.beta, kNaN,
                        kNaN, kNaN, rp, kNaN});
        for (const hdc::index_t bl : bls) {
            const hdc::MHdcMatrix mh = hdc::to_mhdc(m, theta, bl);
            const hdc::HybridRates mr = hdc::rates(mh);
            hdc::model::ModelInputs min = in;
            min.alpha = mr.alpha;
            min.beta = mr.beta;
            const hdc::real_t mrp = hdc::model::speedup_hybrid_over_csr(min);
            std::printf("%-8s %5.3f %7lld %9lld %9s %9s %9s\n", "mhdc", theta,
                        static_cast<long long>(bl), static_cast<long long>(mh.n_segments()),
                        fmt6(mr.alpha).c_str(), fmt6(mr.beta).c_str(), fmt6(mrp).c_str());
            rows.push_back({in_path, "mhdc", theta, bl, 0, m.n(), hdc::nnz(m), mr.alpha, mr.beta,
                            kNaN, kNaN, kNaN, mrp, kNaN});
        }
    }
    if (!out_path.empty()) {
        hdc::io::write_report(rows, out_path);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

struct BenchOptions {
    std::string in_path;
    std::string gen_kind;
    hdc::index_t gen_n = 0;
    std::string kernel = "mhdc";
    double theta = 0.6;
    hdc::index_t bl = 100;
    int workers = 0;
    int n_loops = 20;
    int n_ites = 1000;
    bool verify = false;
    std::string out_path;
};

int run_bench(const BenchOptions& opt) {
    const LoadedMatrix loaded = load_matrix(opt.in_path, opt.gen_kind, opt.gen_n);
    const hdc::CsrMatrix& m = loaded.csr;
    const hdc::index_t n = m.n();
    const hdc::index_t nz = hdc::nnz(m);
    const hdc::DenseVector x = make_x(n);
    hdc::DenseVector y(static_cast<std::size_t>(n), 0.0);

    // Build the requested format and a timing thunk over it.
    std::optional<hdc::DiaMatrix> dia;
    std::optional<hdc::HdcMatrix> hdcm;
    std::optional<hdc::MHdcMatrix> mhdcm;
    const hdc::BlockPlan plan = hdc::BlockPlan::rows(n, opt.bl);
    std::function<void()> run;
    hdc::real_t alpha = kNaN;
    hdc::real_t beta = kNaN;
    hdc::real_t theta_used = kNaN;
    hdc::index_t bl_used = 0;
    if (opt.kernel == "csr") {
        run = [&] { hdc::spmv_csr(m, x, y, opt.workers); };
    } else if (opt.kernel == "dia" || opt.kernel == "bdia") {
        dia.emplace(hdc::to_dia(m));
        if (dia->n_diags() > 0)
            alpha = static_cast<hdc::real_t>(nz) /
                    (static_cast<hdc::real_t>(dia->n_diags()) * static_cast<hdc::real_t>(n));
        beta = 0.0;
        if (opt.kernel == "dia") {
            run = [&] { hdc::spmv_dia(*dia, x, y, opt.workers); };
        } else {
            bl_used = opt.bl;
            run = [&] { hdc::spmv_bdia(*dia, plan, x, y, opt.workers); };
        }
    } else if (opt.kernel == "hdc" || opt.kernel == "bhdc") {
        hdcm.emplace(hdc::to_hdc(m, opt.theta));
        const hdc::HybridRates r = hdc::rates(*hdcm);
        alpha = r.alpha;
        beta = r.beta;
        theta_used = opt.theta;
        if (opt.kernel == "hdc") {
            run = [&] { hdc::spmv_hdc(*hdcm, x, y, opt.workers); };
        } else {
            bl_used = opt.bl;
            run = [&] { hdc::spmv_bhdc(*hdcm, plan, x, y, opt.workers); };
        }
    } else {  // mhdc
        mhdcm.emplace(hdc::to_mhdc(m, opt.theta, opt.bl));
        const hdc::HybridRates r = hdc::rates(*mhdcm);
        alpha = r.alpha;
        beta = r.beta;
        theta_used = opt.theta;
        bl_used = opt.bl;
        run = [&] { hdc::spmv_mhdc(*mhdcm, x, y, opt.workers); };
    }

    hdc::DenseVector y_ref(static_cast<std::size_t>(n), 0.0);
    hdc::spmv_csr(m, x, y_ref, opt.workers);
    if (opt.verify) {
        run();
        verify_against_csr(opt.kernel, y, y_ref);
        std::cout << "verify: " << opt.kernel << " matches csr within " << fmt6(kVerifyTol)
                  << "\n";
    }

    const hdc::bench::TimingConfig cfg{opt.n_loops, opt.n_ites, opt.workers};
    const hdc::real_t flops = 2.0 * static_cast<hdc::real_t>(nz);
    const hdc::bench::Measurement meas = hdc::bench::time_kernel(run, cfg, flops);

    std::vector<hdc::io::ReportRow> rows;
    hdc::real_t rp_exe = 1.0;
    hdc::real_t csr_time = meas.best_time_s;
    if (opt.kernel != "csr") {
        const hdc::bench::Measurement base = hdc::bench::time_kernel(
            [&] { hdc::spmv_csr(m, x, y, opt.workers); }, cfg, flops);
        csr_time = base.best_time_s;
        rp_exe = base.best_time_s / meas.best_time_s;
        rows.push_back({loaded.name, "csr", kNaN, 0, opt.workers, n, nz, kNaN, kNaN,
                        base.best_time_s, base.gflops, 1.0, 1.0, 0.0});
    }

    // Model-side estimate of the same ratio.
    hdc::real_t rp_est = kNaN;
    hdc::model::ModelInputs in;
    in.b_int = hdc::index_bytes;
    in.n = static_cast<hdc::real_t>(n);
    in.c = static_cast<hdc::real_t>(nz) / static_cast<hdc::real_t>(n);
    if (opt.kernel == "csr") {
        rp_est = 1.0;
    } else if (opt.kernel == "hdc" || opt.kernel == "bhdc" || opt.kernel == "mhdc") {
        in.alpha = alpha;
        in.beta = beta;
        rp_est = hdc::model::speedup_hybrid_over_csr(in);
    } else if (loaded.stencil) {
        in.n_diag = static_cast<hdc::real_t>(hdc::stencil_n_diag(*loaded.stencil));
        in.gamma = hdc::stencil_gamma(*loaded.stencil);
        rp_est = opt.kernel == "dia" ? hdc::model::speedup_dia_over_csr(in)
                                     : hdc::model::speedup_bdia_over_csr(in);
    }
    const hdc::real_t rel_err = std::isnan(rp_est) ? kNaN : hdc::model::model_error(rp_est, rp_exe);

    rows.push_back({loaded.name, opt.kernel, theta_used, bl_used, opt.workers, n, nz, alpha, beta,
                    meas.best_time_s, meas.gflops, rp_exe, rp_est, rel_err});

    std::cout << "matrix " << loaded.name << ": n = " << n << ", nnz = " << nz << "\n";
    if (opt.kernel != "csr")
        std::cout << "csr     best " << fmt6(csr_time) << " s, "
                  << fmt6(hdc::bench::flop_rate_gflops(nz, csr_time)) << " Gflop/s\n";
    std::cout << opt.kernel << (opt.kernel.size() < 4 ? "    " : "   ") << " best "
              << fmt6(meas.best_time_s) << " s, " << fmt6(meas.gflops) << " Gflop/s\n";
    std::cout << "speedup vs csr: measured " << fmt6(rp_exe) << ", estimated " << fmt6(rp_est)
              << ", model error " << fmt6(rel_err) << "\n";
    if (!opt.out_path.empty()) {
        hdc::io::write_report(rows, opt.out_path);
        std::cout << "wrote " << opt.out_path << "\n";
    }
    return 0;
}

int run_membench(hdc::index_t n, const std::string& mode_name, int workers, int n_loops,
                 int n_ites) {
    const hdc::bench::MemMode mode = hdc::bench::mem_mode_from_string(mode_name);
    const hdc::bench::TimingConfig cfg{n_loops, n_ites, workers};
    const hdc::bench::Measurement meas = hdc::bench::membench(n, mode, cfg);
    const hdc::real_t bytes = mode == hdc::bench::MemMode::direct
                                  ? hdc::bench::mem_bytes_direct
                                  : hdc::bench::mem_bytes_indirect;
    std::cout << "membench " << mode_name << ": n = " << n << ", " << fmt6(bytes)
              << " bytes/element\n";
    std::cout << "best " << fmt6(meas.best_time_s) << " s, "
              << fmt6(meas.bytes_per_s / 1e9) << " GB/s\n";
    return 0;
}

struct PredictOptions {
    std::string stencil;
    double c = 50.0;
    double alpha = 1.0;
    double beta = 0.0;
    double v_x = 1.0;
    double b_ratio = 0.5;
};

int run_predict(const PredictOptions& opt) {
    hdc::model::ModelInputs in;
    in.b_fp = 8.0;
    in.b_int = 8.0 * opt.b_ratio;
    if (!opt.stencil.empty()) {
        const hdc::StencilKind kind = hdc::stencil_kind_from_string(opt.stencil);
        in.n_diag = static_cast<hdc::real_t>(hdc::stencil_n_diag(kind));
        in.gamma = hdc::stencil_gamma(kind);
        std::cout << "stencil " << opt.stencil << ": n_diag = " << in.n_diag
                  << ", gamma = " << fmt6(in.gamma) << ", b = " << fmt6(opt.b_ratio) << "\n";
        std::cout << "RP(DIA/CSR)   = " << fmt6(hdc::model::speedup_dia_over_csr(in)) << "\n";
        std::cout << "RP(B-DIA/CSR) = " << fmt6(hdc::model::speedup_bdia_over_csr(in)) << "\n";
        std::cout << "RP(B-DIA/DIA) = " << fmt6(hdc::model::speedup_bdia_over_dia(in)) << "\n";
        return 0;
    }
    in.c = opt.c;
    in.alpha = opt.alpha;
    in.beta = opt.beta;
    in.v_x = opt.v_x;
    std::cout << "hybrid split: c = " << fmt6(opt.c) << ", alpha = " << fmt6(opt.alpha)
              << ", beta = " << fmt6(opt.beta) << ", v_x = " << fmt6(opt.v_x)
              << ", b = " << fmt6(opt.b_ratio) << "\n";
    std::cout << "RP(hybrid/CSR) = " << fmt6(hdc::model::speedup_hybrid_over_csr(in)) << "\n";
    std::cout << "alpha threshold (RP > 1 needs alpha above this) = "
              << fmt6(hdc::model::alpha_threshold(in.b())) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagonal-aware sparse matrix-vector multiplication toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a stencil matrix as Matrix Market");
    std::string gen_kind;
    long long gen_n = 0;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "Stencil kind")
        ->required()
        ->check(CLI::IsMember({"p3_1d", "p5_2d", "p7_3d"}));
    gen->add_option("--n", gen_n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "Output .mtx path")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Census a matrix and sweep split parameters");
    std::string an_in, an_out;
    std::vector<double> an_thetas{0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<long long> an_bls{10, 50, 100, 500, 1000, 5000, 10000};
    analyze->add_option("--in", an_in, "Input .mtx path")->required();
    analyze->add_option("--theta", an_thetas, "Population thresholds to sweep")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--bl", an_bls, "Block widths to sweep")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    analyze->add_option("--out", an_out, "CSV report path");

    // bench
    auto* bench = app.add_subcommand("bench", "Time a kernel against the CSR baseline");
    BenchOptions bo;
    long long bench_n = 0;
    long long bench_bl = 100;
    bench->add_option("--in", bo.in_path, "Input .mtx path");
    bench->add_option("--gen", bo.gen_kind, "Generate this stencil instead of reading a file")
        ->check(CLI::IsMember({"p3_1d", "p5_2d", "p7_3d"}));
    bench->add_option("--n", bench_n, "Dimension for --gen")->check(CLI::PositiveNumber);
    bench->add_option("--kernel", bo.kernel, "Kernel to time")
        ->check(CLI::IsMember({"csr", "dia", "bdia", "hdc", "bhdc", "mhdc"}));
    bench->add_option("--theta", bo.theta, "Population threshold for hybrid splits")
        ->check(CLI::Range(0.0, 1.0));
    bench->add_option("--bl", bench_bl, "Row block width for blocked kernels")
        ->check(CLI::PositiveNumber);
    bench->add_option("--workers", bo.workers, "Thread count (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    bench->add_option("--n-loops", bo.n_loops, "Timed loops")->check(CLI::PositiveNumber);
    bench->add_option("--n-ites", bo.n_ites, "Calls per loop")->check(CLI::PositiveNumber);
    bench->add_flag("--verify", bo.verify, "Check the kernel against csr before timing");
    bench->add_option("--out", bo.out_path, "CSV report path");

    // membench
    auto* mem = app.add_subcommand("membench", "Streaming read/write micro-benchmark");
    long long mem_n = 0;
    std::string mem_mode = "direct";
    int mem_workers = 0, mem_loops = 20, mem_ites = 1000;
    mem->add_option("--n", mem_n, "Vector length")->required()->check(CLI::PositiveNumber);
    mem->add_option("--mode", mem_mode, "Access pattern")
        ->check(CLI::IsMember({"direct", "indirect"}));
    mem->add_option("--workers", mem_workers, "Thread count (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    mem->add_option("--n-loops", mem_loops, "Timed loops")->check(CLI::PositiveNumber);
    mem->add_option("--n-ites", mem_ites, "Calls per loop")->check(CLI::PositiveNumber);

    // predict
    auto* predict = app.add_subcommand("predict", "Closed-form speedup estimates");
    PredictOptions po;
    predict->add_option("--stencil", po.stencil, "Print the banded-kernel ratios for this kind")
        ->check(CLI::IsMember({"p3_1d", "p5_2d", "p7_3d"}));
    predict->add_option("--c", po.c, "Average nonzeros per row")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    predict->add_option("--alpha", po.alpha, "Diagonal filling rate")
        ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
    predict->add_option("--beta", po.beta, "CSR remainder share")->check(CLI::Range(0.0, 1.0));
    predict->add_option("--vx", po.v_x, "x loads per row for the hybrid part");
    predict->add_option("--b-ratio", po.b_ratio, "Index byte size over value byte size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Normalize CLI11's exit-code zoo: help is success, anything else
        // is a usage error.
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return run_gen(gen_kind, static_cast<hdc::index_t>(gen_n), gen_out);
        if (analyze->parsed()) {
            std::vector<hdc::index_t> bls(an_bls.begin(), an_bls.end());
            return run_analyze(an_in, an_thetas, bls, an_out);
        }
        if (bench->parsed()) {
            if (bo.in_path.empty() == bo.gen_kind.empty())
                throw CLI::ValidationError("bench", "exactly one of --in / --gen is required");
            if (!bo.gen_kind.empty() && bench_n < 1)
                throw CLI::ValidationError("bench", "--gen requires --n");
            bo.gen_n = static_cast<hdc::index_t>(bench_n);
            bo.bl = static_cast<hdc::index_t>(bench_bl);
            return run_bench(bo);
        }
        if (mem->parsed())
            return run_membench(static_cast<hdc::index_t>(mem_n), mem_mode, mem_workers,
                                mem_loops, mem_ites);
        if (predict->parsed()) return run_predict(po);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const VerifyError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
