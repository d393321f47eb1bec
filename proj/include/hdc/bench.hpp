#pragma once

#include "hdc/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hdc::bench {

struct TimingConfig {
    int n_loops = 20;
    int n_ites = 1000;
    int workers = 0;  // <= 0: runtime default
};

struct Measurement {
    real_t best_time_s = 0.0;          // minimum loop average
    std::vector<real_t> loop_times_s;  // per-loop averages, one per loop
    real_t gflops = 0.0;
    real_t bytes_per_s = 0.0;
};

// Reduce recorded per-loop averages to a Measurement; best = minimum.
Measurement summarize(std::vector<real_t> loop_times_s, real_t flops_per_call = 0.0);

// One untimed warm-up loop of n_ites calls, then n_loops timed loops of
// n_ites back-to-back calls each; a loop's time is its per-call average.
Measurement time_kernel(const std::function<void()>& kernel, const TimingConfig& cfg,
                        real_t flops_per_call = 0.0);

// Streaming micro-benchmark, C[i] += A[i] * B[i]:
//   direct:   B read contiguously          -> 32 bytes per element
//   indirect: B read through an int32 index vector I (I[i] = i)
//             -> 36 bytes per element
enum class MemMode { direct, indirect };

MemMode mem_mode_from_string(const std::string& name);

inline constexpr real_t mem_bytes_direct = 32.0;
inline constexpr real_t mem_bytes_indirect = 36.0;

// Times the chosen variant on vectors of length n and fills bytes_per_s
// from the mode's per-element traffic. The result array is checked against
// the call count before returning.
Measurement membench(index_t n, MemMode mode, const TimingConfig& cfg);

// 2*nnz flops per multiplication, in Gflop/s.
real_t flop_rate_gflops(index_t nnz, real_t time_s);

}  // namespace hdc::bench
