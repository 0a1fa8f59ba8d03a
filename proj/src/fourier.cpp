#include "fourier_internal.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace exord::detail {

bool is_pow2(std::uint32_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

std::vector<cplx> make_roots(std::uint32_t n) {
    std::vector<cplx> roots(std::max<std::uint32_t>(n / 2, 1));
    for (std::uint32_t t = 0; t < roots.size(); ++t) {
        const double ang = 2.0 * std::numbers::pi * t / n;
        roots[t] = {std::cos(ang), std::sin(ang)};
    }
    return roots;
}

std::vector<std::uint32_t> make_bitrev(std::uint32_t n) {
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 1, j = 0; i < n; ++i) {
        std::uint32_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        perm[i] = j;
    }
    return perm;
}

// Radix-2 butterflies over precomputed roots; the table form keeps the loop
// free of a sequential twiddle recurrence so it vectorizes.
template <int Sign>
void butterfly_pass(double* d, std::uint32_t n, const double* roots, std::uint32_t len) {
    const std::uint32_t half = len >> 1;
    const std::uint32_t stride = n / len;
    for (std::uint32_t i = 0; i < n; i += len) {
        double* a = d + 2 * i;
        double* b = d + 2 * (i + half);
        for (std::uint32_t k = 0; k < half; ++k) {
            const double wre = roots[2 * k * stride];
            const double wim = Sign > 0 ? roots[2 * k * stride + 1] : -roots[2 * k * stride + 1];
            const double bre = b[2 * k] * wre - b[2 * k + 1] * wim;
            const double bim = b[2 * k] * wim + b[2 * k + 1] * wre;
            const double are = a[2 * k];
            const double aim = a[2 * k + 1];
            a[2 * k] = are + bre;
            a[2 * k + 1] = aim + bim;
            b[2 * k] = are - bre;
            b[2 * k + 1] = aim - bim;
        }
    }
}

// Decimation in frequency: natural input, bit-reversed output, no
// reordering pass.
template <int Sign>
void fft_dif_permuted(cplx* data, std::uint32_t n, const cplx* roots) {
    double* d = reinterpret_cast<double*>(data);
    const double* r = reinterpret_cast<const double*>(roots);
    for (std::uint32_t len = n; len >= 2; len >>= 1) {
        const std::uint32_t half = len >> 1;
        const std::uint32_t stride = n / len;
        for (std::uint32_t i = 0; i < n; i += len) {
            double* a = d + 2 * i;
            double* b = d + 2 * (i + half);
            for (std::uint32_t k = 0; k < half; ++k) {
                const double wre = r[2 * k * stride];
                const double wim = Sign > 0 ? r[2 * k * stride + 1] : -r[2 * k * stride + 1];
                const double are = a[2 * k];
                const double aim = a[2 * k + 1];
                const double bre = b[2 * k];
                const double bim = b[2 * k + 1];
                a[2 * k] = are + bre;
                a[2 * k + 1] = aim + bim;
                const double dre = are - bre;
                const double dim = aim - bim;
                b[2 * k] = dre * wre - dim * wim;
                b[2 * k + 1] = dre * wim + dim * wre;
            }
        }
    }
}

// Decimation in time: bit-reversed input, natural output.
template <int Sign>
void fft_dit_from_permuted(cplx* data, std::uint32_t n, const cplx* roots) {
    double* d = reinterpret_cast<double*>(data);
    const double* r = reinterpret_cast<const double*>(roots);
    for (std::uint32_t len = 2; len <= n; len <<= 1) {
        butterfly_pass<Sign>(d, n, r, len);
    }
}

} // namespace

void fft_pow2(cplx* data, std::uint32_t n, int sign) {
    if (n <= 1) return;
    const auto roots = make_roots(n);
    const auto perm = make_bitrev(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (i < perm[i]) std::swap(data[i], data[perm[i]]);
    }
    if (sign > 0) {
        fft_dit_from_permuted<+1>(data, n, roots.data());
    } else {
        fft_dit_from_permuted<-1>(data, n, roots.data());
    }
}

DftPlan::DftPlan(std::uint32_t dim, int sign)
    : dim_(dim), sign_(sign), inv_sqrt_dim_(1.0 / std::sqrt(static_cast<double>(dim))) {
    twiddle_.resize(dim_);
    for (std::uint32_t t = 0; t < dim_; ++t) {
        const double ang = sign_ * 2.0 * std::numbers::pi * t / dim_;
        twiddle_[t] = {std::cos(ang), std::sin(ang)};
    }
    pow2_ = is_pow2(dim_);
    if (pow2_) {
        roots_ = make_roots(dim_);
        bitrev_ = make_bitrev(dim_);
        std::uint32_t log2d = 0;
        while ((1u << log2d) < dim_) ++log2d;
        direct_nnz_limit_ = std::max<std::uint32_t>(2, log2d);
        return;
    }
    conv_len_ = 1;
    while (conv_len_ < 2 * dim_ - 1) conv_len_ <<= 1;
    roots_ = make_roots(conv_len_);
    chirp_.resize(dim_);
    for (std::uint32_t n = 0; n < dim_; ++n) {
        // n^2 mod 2D keeps the angle argument small and exact
        const std::uint64_t sq = (static_cast<std::uint64_t>(n) * n) % (2ull * dim_);
        const double ang = sign_ * std::numbers::pi * static_cast<double>(sq) / dim_;
        chirp_[n] = {std::cos(ang), std::sin(ang)};
    }
    kernel_fft_.assign(conv_len_, cplx(0.0, 0.0));
    kernel_fft_[0] = std::conj(chirp_[0]);
    for (std::uint32_t n = 1; n < dim_; ++n) {
        kernel_fft_[n] = std::conj(chirp_[n]);
        kernel_fft_[conv_len_ - n] = std::conj(chirp_[n]);
    }
    fft_dif_permuted<+1>(kernel_fft_.data(), conv_len_, roots_.data());
    // Bluestein needs roughly three length-L FFTs.
    const std::uint64_t fft_cost = 3ull * conv_len_ * (32 - __builtin_clz(conv_len_));
    direct_nnz_limit_ = std::max<std::uint32_t>(2, static_cast<std::uint32_t>(fft_cost / dim_));
    work_.resize(conv_len_);
}

void DftPlan::transform_sparse_direct(const std::uint32_t* values, const cplx* amps,
                                      std::size_t nnz, cplx* out) const {
    for (std::uint32_t w = 0; w < dim_; ++w) out[w] = {0.0, 0.0};
    double* o = reinterpret_cast<double*>(out);
    const double* tw = reinterpret_cast<const double*>(twiddle_.data());
    for (std::size_t i = 0; i < nnz; ++i) {
        const std::uint32_t v = values[i];
        const double are = amps[i].real(), aim = amps[i].imag();
        std::uint32_t idx = 0;
        for (std::uint32_t w = 0; w < dim_; ++w) {
            const double tre = tw[2 * idx], tim = tw[2 * idx + 1];
            o[2 * w] += are * tre - aim * tim;
            o[2 * w + 1] += are * tim + aim * tre;
            idx += v;
            if (idx >= dim_) idx -= dim_;
        }
    }
}

void DftPlan::transform_dense(cplx* in_out) const {
    if (pow2_) {
        for (std::uint32_t i = 0; i < dim_; ++i) {
            const std::uint32_t j = bitrev_[i];
            if (i < j) std::swap(in_out[i], in_out[j]);
        }
        if (sign_ > 0) {
            fft_dit_from_permuted<+1>(in_out, dim_, roots_.data());
        } else {
            fft_dit_from_permuted<-1>(in_out, dim_, roots_.data());
        }
        return;
    }
    // Bluestein: X_k = c_k * sum_v (x_v c_v) conj(c_{k-v}); the circular
    // convolution runs DIF forward and DIT inverse, so the intermediate
    // spectra stay in bit-reversed order throughout.
    for (std::uint32_t n = 0; n < dim_; ++n) {
        const cplx x = in_out[n];
        work_[n] = {x.real() * chirp_[n].real() - x.imag() * chirp_[n].imag(),
                    x.real() * chirp_[n].imag() + x.imag() * chirp_[n].real()};
    }
    for (std::uint32_t n = dim_; n < conv_len_; ++n) work_[n] = {0.0, 0.0};
    fft_dif_permuted<+1>(work_.data(), conv_len_, roots_.data());
    for (std::uint32_t n = 0; n < conv_len_; ++n) {
        const cplx a = work_[n], b = kernel_fft_[n];
        work_[n] = {a.real() * b.real() - a.imag() * b.imag(),
                    a.real() * b.imag() + a.imag() * b.real()};
    }
    fft_dit_from_permuted<-1>(work_.data(), conv_len_, roots_.data());
    const double inv_len = 1.0 / conv_len_;
    for (std::uint32_t k = 0; k < dim_; ++k) {
        const cplx w = work_[k] * inv_len;
        in_out[k] = {w.real() * chirp_[k].real() - w.imag() * chirp_[k].imag(),
                     w.real() * chirp_[k].imag() + w.imag() * chirp_[k].real()};
    }
}

GroupedEntries& gather_by_rest(const std::vector<Entry>& entries, const RegisterLayout& layout,
                               std::size_t reg) {
    const std::uint64_t stride = layout.stride(reg);
    const std::uint32_t dim = static_cast<std::uint32_t>(layout.dimension(reg));
    const std::uint64_t rest_space = layout.total_dimension() / dim;

    // Reused across op applications; gathers at the million-entry scale would
    // otherwise spend their time faulting in fresh pages.
    static thread_local GroupedEntries result;
    static thread_local std::vector<std::uint32_t> entry_gid;
    static thread_local std::vector<std::uint32_t> entry_val;
    static thread_local std::vector<std::int32_t> gid_of_rest;

    result.group_rest.clear();
    result.offsets.clear();
    const std::size_t n = entries.size();
    entry_gid.resize(n);
    entry_val.resize(n);

    // rest index = (key / (stride*dim)) * stride + key % stride, a dense
    // value in [0, total/dim)
    const bool fast = layout.total_dimension() < (1ull << 32);
    constexpr std::uint64_t kDenseRestCap = 1ull << 26;

    if (rest_space <= kDenseRestCap) {
        if (gid_of_rest.size() < rest_space) gid_of_rest.resize(rest_space);
        std::fill(gid_of_rest.begin(), gid_of_rest.begin() + rest_space, -1);
        const FastDiv32 div_block(fast ? static_cast<std::uint32_t>(stride * dim) : 1);
        const FastDiv32 div_stride(fast ? static_cast<std::uint32_t>(stride) : 1);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t key = entries[i].key;
            std::uint64_t hi, low, v;
            if (fast) {
                const std::uint32_t k32 = static_cast<std::uint32_t>(key);
                hi = div_block.divide(k32);
                const std::uint32_t rem = k32 - static_cast<std::uint32_t>(hi) *
                                                    static_cast<std::uint32_t>(stride * dim);
                v = div_stride.divide(rem);
                low = rem - v * stride;
            } else {
                hi = key / (stride * dim);
                const std::uint64_t rem = key % (stride * dim);
                v = rem / stride;
                low = rem % stride;
            }
            const std::uint64_t restidx = hi * stride + low;
            std::int32_t gid = gid_of_rest[restidx];
            if (gid < 0) {
                gid = static_cast<std::int32_t>(result.group_rest.size());
                gid_of_rest[restidx] = gid;
                result.group_rest.push_back(key - v * stride);
            }
            entry_gid[i] = static_cast<std::uint32_t>(gid);
            entry_val[i] = static_cast<std::uint32_t>(v);
        }
    } else {
        std::unordered_map<std::uint64_t, std::uint32_t> rest_map;
        rest_map.reserve(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t key = entries[i].key;
            const std::uint64_t v = (key / stride) % dim;
            const std::uint64_t rest = key - v * stride;
            auto [it, inserted] =
                rest_map.try_emplace(rest, static_cast<std::uint32_t>(result.group_rest.size()));
            if (inserted) result.group_rest.push_back(rest);
            entry_gid[i] = it->second;
            entry_val[i] = static_cast<std::uint32_t>(v);
        }
    }

    const std::size_t groups = result.group_rest.size();
    result.offsets.assign(groups + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++result.offsets[entry_gid[i] + 1];
    for (std::size_t g = 0; g < groups; ++g) result.offsets[g + 1] += result.offsets[g];

    result.values.resize(n);
    result.amps.resize(n);
    std::vector<std::uint32_t> cursor(result.offsets.begin(), result.offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t pos = cursor[entry_gid[i]]++;
        result.values[pos] = entry_val[i];
        result.amps[pos] = {entries[i].re, entries[i].im};
    }
    return result;
}

double apply_two_level(SparseState& state, std::size_t reg, cplx m00, cplx m01, cplx m10,
                       cplx m11) {
    const auto& layout = state.layout();
    const std::uint64_t stride = layout.stride(reg);
    const std::uint64_t rest_space = layout.total_dimension() / 2;
    const auto& entries = state.entries();
    const std::size_t n = entries.size();

    // Epoch-stamped slots (epoch<<32 | entry index) avoid clearing the whole
    // rest space per call and touch one cache line per probe.
    static thread_local std::vector<std::uint64_t> slots;
    static thread_local std::uint32_t epoch = 0;
    static thread_local std::vector<Entry> out;
    // entry status: 0 = unpaired with v=0, 1 = unpaired with v=1, 2 = paired
    static thread_local std::vector<std::uint8_t> status;
    static thread_local std::vector<std::uint32_t> restidx_of;

    const bool dense_slots =
        rest_space <= (1ull << 26) && layout.total_dimension() < (1ull << 32);
    if (dense_slots) {
        if (slots.size() < rest_space) {
            slots.assign(rest_space, 0);
            epoch = 0;
        }
        if (++epoch == 0) {
            std::fill(slots.begin(), slots.end(), 0);
            epoch = 1;
        }
    }

    out.clear();
    out.reserve(2 * n + 4);
    status.resize(n);
    const double prune_sq = kPruneThreshold * kPruneThreshold;
    double norm_sum = 0.0, norm_comp = 0.0;

    auto emit_pair = [&](std::uint64_t rest_key, cplx in0, cplx in1) {
        const cplx out0 = m00 * in0 + m01 * in1;
        const cplx out1 = m10 * in0 + m11 * in1;
        const double n0 = std::norm(out0);
        const double n1 = std::norm(out1);
        if (n0 >= prune_sq) {
            const double y = n0 - norm_comp;
            const double t = norm_sum + y;
            norm_comp = (t - norm_sum) - y;
            norm_sum = t;
            out.push_back({rest_key, out0.real(), out0.imag()});
        }
        if (n1 >= prune_sq) {
            const double y = n1 - norm_comp;
            const double t = norm_sum + y;
            norm_comp = (t - norm_sum) - y;
            norm_sum = t;
            out.push_back({rest_key + stride, out1.real(), out1.imag()});
        }
    };

    if (dense_slots) {
        const FastDiv32 div_block(static_cast<std::uint32_t>(stride * 2));
        const FastDiv32 div_stride(static_cast<std::uint32_t>(stride));

        // Upstream emit order makes most partners adjacent; handle those in a
        // streaming sweep. A straggler pair needs one entry of each register
        // value, so a one-sided leftover set skips the slot table entirely.
        restidx_of.resize(n);
        std::size_t strag_v0 = 0, strag_v1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t k32 = static_cast<std::uint32_t>(entries[i].key);
            const std::uint32_t hi = div_block.divide(k32);
            const std::uint32_t rem = k32 - hi * static_cast<std::uint32_t>(stride * 2);
            const std::uint32_t v = div_stride.divide(rem);
            const std::uint32_t low = rem - v * static_cast<std::uint32_t>(stride);
            restidx_of[i] = hi * static_cast<std::uint32_t>(stride) + low;
            if (v == 0 && i + 1 < n && entries[i + 1].key == entries[i].key + stride) {
                status[i] = 2;
                status[i + 1] = 2;
                emit_pair(entries[i].key, entries[i].amplitude(), entries[i + 1].amplitude());
                ++i;
                continue;
            }
            status[i] = static_cast<std::uint8_t>(v);
            if (v == 0) {
                ++strag_v0;
            } else {
                ++strag_v1;
            }
        }
        if (strag_v0 > 0 && strag_v1 > 0) {
            const std::uint64_t tag = static_cast<std::uint64_t>(epoch) << 32;
            for (std::size_t i = 0; i < n; ++i) {
                if (status[i] == 2) continue;
                const std::uint32_t restidx = restidx_of[i];
                const std::uint64_t slot = slots[restidx];
                if ((slot >> 32) != epoch) {
                    slots[restidx] = tag | static_cast<std::uint32_t>(i);
                } else {
                    const std::uint32_t j = static_cast<std::uint32_t>(slot);
                    const Entry& first = entries[j];
                    const Entry& second = entries[i];
                    status[j] = 2;
                    status[i] = 2;
                    // partner keys are rest and rest+stride; the smaller is v=0
                    const bool second_is_v1 = second.key > first.key;
                    const cplx in0 = second_is_v1 ? first.amplitude() : second.amplitude();
                    const cplx in1 = second_is_v1 ? second.amplitude() : first.amplitude();
                    emit_pair(second_is_v1 ? first.key : second.key, in0, in1);
                }
            }
        }
    } else {
        std::unordered_map<std::uint64_t, std::uint32_t> first_of_rest;
        first_of_rest.reserve(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t v = (entries[i].key / stride) % 2;
            const std::uint64_t rest_key = entries[i].key - v * stride;
            status[i] = static_cast<std::uint8_t>(v);
            auto [it, inserted] = first_of_rest.try_emplace(rest_key, static_cast<std::uint32_t>(i));
            if (inserted) continue;
            const Entry& first = entries[it->second];
            const Entry& second = entries[i];
            status[it->second] = 2;
            status[i] = 2;
            const cplx in0 = v == 1 ? first.amplitude() : second.amplitude();
            const cplx in1 = v == 1 ? second.amplitude() : first.amplitude();
            emit_pair(rest_key, in0, in1);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (status[i] == 2) continue;
        const Entry& e = entries[i];
        if (status[i] == 0) {
            emit_pair(e.key, e.amplitude(), {0.0, 0.0});
        } else {
            emit_pair(e.key - stride, {0.0, 0.0}, e.amplitude());
        }
    }
    state.mutable_entries().swap(out);
    return norm_sum;
}

} // namespace exord::detail
