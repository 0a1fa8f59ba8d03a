#pragma once

// Internal transform kernels for the sparse-state engine: a power-of-two FFT,
// a Bluestein fallback for arbitrary dimensions, a grouped gather that slices
// a state by all registers except the transform target, and a fused path for
// dimension-2 registers.

#include <complex>
#include <cstdint>
#include <vector>

#include "exord/state.hpp"

namespace exord::detail {

using cplx = std::complex<double>;

bool is_pow2(std::uint32_t n);

// In-place unnormalized FFT, n a power of two, sign = +1 or -1 in the
// exponent e^{sign*2*pi*i*v*w/n}.
void fft_pow2(cplx* data, std::uint32_t n, int sign);

// One plan per (dimension, direction); reused across the groups of one op.
class DftPlan {
public:
    DftPlan(std::uint32_t dim, int sign);

    std::uint32_t dim() const { return dim_; }

    // Direct evaluation beats the FFT path for groups with at most this
    // many nonzero inputs.
    std::uint32_t direct_nnz_limit() const { return direct_nnz_limit_; }

    // out[0..dim) = unnormalized DFT of the sparse input (values, amps).
    void transform_sparse_direct(const std::uint32_t* values, const cplx* amps, std::size_t nnz,
                                 cplx* out) const;

    // out[0..dim) = unnormalized DFT of the dense scratch input.
    void transform_dense(cplx* in_out) const;

    double output_scale() const { return inv_sqrt_dim_; }

private:
    std::uint32_t dim_;
    int sign_;
    double inv_sqrt_dim_;
    std::vector<cplx> twiddle_;        // e^{sign*2*pi*i*t/dim}
    std::vector<cplx> roots_;          // e^{+2*pi*i*t/L} for the FFT length in use
    std::vector<std::uint32_t> bitrev_; // permutation for the natural-order pow2 path
    bool pow2_ = false;
    std::uint32_t direct_nnz_limit_ = 0;

    // Bluestein machinery (dim not a power of two). The convolution runs
    // decimation-in-frequency forward and decimation-in-time inverse, so no
    // reordering pass is needed; the kernel spectrum is stored permuted.
    std::uint32_t conv_len_ = 0;
    std::vector<cplx> chirp_;      // e^{sign*pi*i*n^2/dim}, n in [0, dim)
    std::vector<cplx> kernel_fft_; // permuted FFT of the wrapped conjugate chirp
    mutable std::vector<cplx> work_;
};

// CSR slicing of a state's entries by "rest" (the packed key with the target
// register removed). Group order is first-seen, so downstream entry order is
// deterministic.
struct GroupedEntries {
    std::vector<std::uint64_t> group_rest; // rest key per group
    std::vector<std::uint32_t> offsets;    // size groups+1
    std::vector<std::uint32_t> values;     // target-register value per item
    std::vector<cplx> amps;
};

// Returns a reference to thread-local scratch overwritten by the next call.
GroupedEntries& gather_by_rest(const std::vector<Entry>& entries, const RegisterLayout& layout,
                               std::size_t reg);

// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to a dimension-2 register,
// pairing entries in one pass. Returns the squared norm of the emitted state.
double apply_two_level(SparseState& state, std::size_t reg, cplx m00, cplx m01, cplx m10, cplx m11);

// Applies a per-group dense kernel to a register of dimension D: the functor
// receives (in_values, in_amps, nnz, out_dense) and must fill out_dense[0..D).
// Returns the squared norm of the emitted state, accumulated on the fly.
template <typename Kernel>
double transform_register(SparseState& state, std::size_t reg, double emit_scale, Kernel&& kernel) {
    const auto& layout = state.layout();
    const std::uint64_t stride = layout.stride(reg);
    const std::uint32_t dim = static_cast<std::uint32_t>(layout.dimension(reg));
    const GroupedEntries& groups = gather_by_rest(state.entries(), layout, reg);

    static thread_local std::vector<Entry> out;
    out.clear();
    out.reserve(state.entries().size() + groups.group_rest.size());
    std::vector<cplx> dense(dim);
    const double prune_sq = kPruneThreshold * kPruneThreshold;
    const double scale_sq = emit_scale * emit_scale;
    double norm_sum = 0.0, norm_comp = 0.0;

    for (std::size_t g = 0; g < groups.group_rest.size(); ++g) {
        const std::uint32_t begin = groups.offsets[g];
        const std::uint32_t count = groups.offsets[g + 1] - begin;
        kernel(groups.values.data() + begin, groups.amps.data() + begin, count, dense.data());
        const std::uint64_t rest = groups.group_rest[g];
        for (std::uint32_t w = 0; w < dim; ++w) {
            const double re = dense[w].real();
            const double im = dense[w].imag();
            const double n2 = (re * re + im * im) * scale_sq;
            if (n2 < prune_sq) continue;
            const double y = n2 - norm_comp;
            const double t = norm_sum + y;
            norm_comp = (t - norm_sum) - y;
            norm_sum = t;
            out.push_back({rest + w * stride, re * emit_scale, im * emit_scale});
        }
    }
    state.mutable_entries().swap(out);
    return norm_sum;
}

} // namespace exord::detail
