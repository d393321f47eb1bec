#include "hdc/model.hpp"

#include <stdexcept>

namespace hdc::model {

namespace {

void check_bytes(const ModelInputs& in) {
    if (!(in.b_fp > 0.0) || !(in.b_int > 0.0))
        throw std::invalid_argument("model: byte sizes must be positive");
}

void check_banded(const ModelInputs& in) {
    check_bytes(in);
    if (!(in.n_diag >= 1.0)) throw std::invalid_argument("model: n_diag must be >= 1");
    if (!(in.gamma > 0.0 && in.gamma <= 1.0))
        throw std::invalid_argument("model: gamma must be in (0, 1]");
}

void check_hybrid(const ModelInputs& in) {
    check_bytes(in);
    if (!(in.c >= 0.0)) throw std::invalid_argument("model: c must be >= 0");
    if (!(in.alpha > 0.0 && in.alpha <= 1.0))
        throw std::invalid_argument("model: alpha must be in (0, 1]");
    if (!(in.beta >= 0.0 && in.beta <= 1.0))
        throw std::invalid_argument("model: beta must be in [0, 1]");
    if (!(in.v_x >= 1.0)) throw std::invalid_argument("model: v_x must be >= 1");
}

}  // namespace

VolumeBreakdown volume(ModelKernel k, const ModelInputs& in) {
    const real_t b = in.b();
    const real_t scale = in.b_fp * in.n;
    VolumeBreakdown v;
    switch (k) {
        case ModelKernel::csr:
            // Values, column indices and one row-pointer slot per row; x
            // traffic shrinks by the reuse factor gamma; y written once.
            check_banded(in);
            v.matrix_bytes = scale * (in.n_diag + b * in.n_diag + b);
            v.x_bytes = scale * in.gamma * in.n_diag;
            v.y_bytes = scale;
            break;
        case ModelKernel::dia:
            // Full lanes; x re-read per lane sweep; y re-read and re-written
            // per lane on top of the initial store.
            check_banded(in);
            v.matrix_bytes = scale * in.n_diag;
            v.x_bytes = scale * in.n_diag;
            v.y_bytes = scale * (1.0 + 2.0 * in.n_diag);
            break;
        case ModelKernel::bdia:
            // Full lanes, but blocking keeps x and y resident: x shrinks by
            // gamma, y is written once.
            check_banded(in);
            v.matrix_bytes = scale * in.n_diag;
            v.x_bytes = scale * in.gamma * in.n_diag;
            v.y_bytes = scale;
            break;
        case ModelKernel::bhdc:
        case ModelKernel::mhdc:
            // CSR remainder carries the share beta of the c nonzeros per
            // row (values + indices + row pointer); the diagonal part
            // stores its share at filling rate alpha.
            check_hybrid(in);
            v.matrix_bytes =
                scale * (in.beta * (in.c + b * in.c) + b + (1.0 - in.beta) * in.c / in.alpha);
            v.x_bytes = scale * in.v_x;
            v.y_bytes = scale;
            break;
    }
    return v;
}

real_t speedup_dia_over_csr(const ModelInputs& in) {
    check_banded(in);
    const real_t b = in.b();
    return 1.0 + (b * (in.n_diag + 1.0) - (3.0 - in.gamma) * in.n_diag) / (4.0 * in.n_diag + 1.0);
}

real_t speedup_bdia_over_csr(const ModelInputs& in) {
    check_banded(in);
    const real_t b = in.b();
    return 1.0 + b * (in.n_diag + 1.0) / ((1.0 + in.gamma) * in.n_diag + 1.0);
}

real_t speedup_bdia_over_dia(const ModelInputs& in) {
    check_banded(in);
    return 1.0 + (3.0 - in.gamma) * in.n_diag / ((1.0 + in.gamma) * in.n_diag + 1.0);
}

real_t speedup_hybrid_over_csr(const ModelInputs& in) {
    check_hybrid(in);
    const real_t b = in.b();
    const real_t kept = 1.0 - in.beta;
    const real_t saved = b * kept * in.c - kept * (1.0 / in.alpha - 1.0) * in.c;
    const real_t hybrid = in.beta * (in.c + b * in.c) + b + kept * in.c / in.alpha + in.v_x + 1.0;
    return 1.0 + saved / hybrid;
}

real_t alpha_threshold(real_t b) {
    if (!(b > 0.0)) throw std::invalid_argument("alpha_threshold: b must be positive");
    return 1.0 / (b + 1.0);
}

real_t model_error(real_t rp_est, real_t rp_exe) {
    if (!(rp_exe > 0.0)) throw std::invalid_argument("model_error: measured ratio must be positive");
    return (rp_est - rp_exe) / rp_exe;
}

real_t predicted_time_s(const VolumeBreakdown& v, real_t bytes_per_s) {
    if (!(bytes_per_s > 0.0))
        throw std::invalid_argument("predicted_time_s: bandwidth must be positive");
    return v.total() / bytes_per_s;
}

}  // namespace hdc::model
