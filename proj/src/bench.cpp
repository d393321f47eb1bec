#include "hdc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace hdc::bench {

namespace {

using clock_type = std::chrono::steady_clock;

int resolve_workers(int workers) {
#if defined(_OPENMP)
    return workers > 0 ? workers : omp_get_max_threads();
#else
    return workers > 0 ? workers : 1;
#endif
}

void check_config(const TimingConfig& cfg) {
    if (cfg.n_loops < 1 || cfg.n_ites < 1)
        throw std::invalid_argument("timing: n_loops and n_ites must be >= 1");
}

}  // namespace

Measurement summarize(std::vector<real_t> loop_times_s, real_t flops_per_call) {
    if (loop_times_s.empty()) throw std::invalid_argument("summarize: no loop times");
    Measurement m;
    m.best_time_s = *std::min_element(loop_times_s.begin(), loop_times_s.end());
    m.loop_times_s = std::move(loop_times_s);
    if (flops_per_call > 0.0 && m.best_time_s > 0.0)
        m.gflops = flops_per_call / m.best_time_s / 1e9;
    return m;
}

Measurement time_kernel(const std::function<void()>& kernel, const TimingConfig& cfg,
                        real_t flops_per_call) {
    check_config(cfg);
    if (!kernel) throw std::invalid_argument("time_kernel: empty kernel");
    // One untimed loop so cold caches and page faults do not land in the
    // measurement.
    for (int ite = 0; ite < cfg.n_ites; ++ite) kernel();
    std::vector<real_t> loop_times(static_cast<std::size_t>(cfg.n_loops));
    for (int loop = 0; loop < cfg.n_loops; ++loop) {
        const auto t0 = clock_type::now();
        for (int ite = 0; ite < cfg.n_ites; ++ite) kernel();
        const auto t1 = clock_type::now();
        loop_times[loop] =
            std::chrono::duration<real_t>(t1 - t0).count() / static_cast<real_t>(cfg.n_ites);
    }
    return summarize(std::move(loop_times), flops_per_call);
}

MemMode mem_mode_from_string(const std::string& name) {
    if (name == "direct") return MemMode::direct;
    if (name == "indirect") return MemMode::indirect;
    throw std::invalid_argument("unknown memory mode: " + name);
}

Measurement membench(index_t n, MemMode mode, const TimingConfig& cfg) {
    check_config(cfg);
    if (n < 1) throw std::invalid_argument("membench: n must be >= 1");
    std::vector<real_t> a(static_cast<std::size_t>(n), 1.0);
    std::vector<real_t> b(static_cast<std::size_t>(n), 1.0);
    std::vector<real_t> c(static_cast<std::size_t>(n), 0.0);
    std::vector<std::int32_t> idx;
    if (mode == MemMode::indirect) {
        idx.resize(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
    }
    const int nt = resolve_workers(cfg.workers);
    const real_t* const ap = a.data();
    const real_t* const bp = b.data();
    real_t* const cp = c.data();
    const std::int32_t* const ip = idx.data();

    std::function<void()> body;
    if (mode == MemMode::direct) {
        body = [=] {
#pragma omp parallel for schedule(static) num_threads(nt)
            for (index_t i = 0; i < n; ++i) cp[i] += ap[i] * bp[i];
        };
    } else {
        body = [=] {
#pragma omp parallel for schedule(static) num_threads(nt)
            for (index_t i = 0; i < n; ++i) cp[i] += ap[i] * bp[ip[i]];
        };
    }

    Measurement m = time_kernel(body, cfg, 2.0 * static_cast<real_t>(n));
    // Every call adds exactly 1.0 to each slot (warm-up loop included).
    const real_t calls =
        static_cast<real_t>(cfg.n_ites) * (static_cast<real_t>(cfg.n_loops) + 1.0);
    for (index_t i = 0; i < n; ++i)
        if (c[static_cast<std::size_t>(i)] != calls)
            throw std::runtime_error("membench: result check failed at element " +
                                     std::to_string(i));
    const real_t bytes_per_elem = mode == MemMode::direct ? mem_bytes_direct : mem_bytes_indirect;
    if (m.best_time_s > 0.0)
        m.bytes_per_s = bytes_per_elem * static_cast<real_t>(n) / m.best_time_s;
    return m;
}

real_t flop_rate_gflops(index_t nnz, real_t time_s) {
    if (!(time_s > 0.0)) throw std::invalid_argument("flop_rate_gflops: time must be positive");
    return 2.0 * static_cast<real_t>(nnz) / time_s / 1e9;
}

}  // namespace hdc::bench
