#pragma once

// Shared test utilities: a dense reference simulator (independent of the
// sparse engine's gather/FFT/fast-division machinery), random program and
// state generators, and closeness assertions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "exord/group.hpp"
#include "exord/program.hpp"
#include "exord/rng.hpp"
#include "exord/state.hpp"

namespace testutil {

using cplx = std::complex<double>;
using namespace exord;

inline std::vector<cplx> dense_from_state(const SparseState& state) {
    std::vector<cplx> dense(state.layout().total_dimension(), cplx(0.0, 0.0));
    for (const auto& e : state.entries()) {
        dense[e.key] = e.amplitude();
    }
    return dense;
}

// Reference op application on a full state vector, written from the op
// definitions with plain integer arithmetic.
inline std::vector<cplx> dense_apply(const RegisterLayout& layout, const std::vector<cplx>& in,
                                     const PrimitiveOp& op) {
    const std::uint64_t total = layout.total_dimension();
    std::vector<cplx> out(total, cplx(0.0, 0.0));
    std::visit(
        [&](const auto& concrete) {
            using T = std::decay_t<decltype(concrete)>;
            if constexpr (std::is_same_v<T, FourierTransformOp>) {
                const std::uint64_t D = layout.dimension(concrete.reg);
                const std::uint64_t S = layout.stride(concrete.reg);
                const double sign = concrete.inverse ? -1.0 : 1.0;
                const double scale = 1.0 / std::sqrt(static_cast<double>(D));
                for (std::uint64_t p = 0; p < total; ++p) {
                    if (in[p] == cplx(0.0, 0.0)) continue;
                    const std::uint64_t v = (p / S) % D;
                    const std::uint64_t rest = p - v * S;
                    for (std::uint64_t w = 0; w < D; ++w) {
                        const double ang = sign * 2.0 * std::numbers::pi *
                                           static_cast<double>((v * w) % D) / static_cast<double>(D);
                        out[rest + w * S] += in[p] * cplx(std::cos(ang), std::sin(ang)) * scale;
                    }
                }
            } else if constexpr (std::is_same_v<T, GroupExponentiationOp>) {
                const std::uint64_t Dc = layout.dimension(concrete.control_reg);
                const std::uint64_t Sc = layout.stride(concrete.control_reg);
                const std::uint64_t St = layout.stride(concrete.target_reg);
                const std::uint64_t Dt = layout.dimension(concrete.target_reg);
                for (std::uint64_t p = 0; p < total; ++p) {
                    if (in[p] == cplx(0.0, 0.0)) continue;
                    const std::uint64_t a = (p / Sc) % Dc;
                    const std::uint64_t gi = (p / St) % Dt;
                    const GroupElement g = concrete.group.element_at(static_cast<std::uint32_t>(gi));
                    const GroupElement moved =
                        concrete.group.mul(g, concrete.group.pow(concrete.base, a));
                    const std::uint64_t gi2 = concrete.group.index_of(moved);
                    out[p - gi * St + gi2 * St] += in[p];
                }
            } else if constexpr (std::is_same_v<T, PermutationMarkOp>) {
                const std::uint64_t Sf = layout.stride(concrete.flag_reg);
                for (std::uint64_t p = 0; p < total; ++p) {
                    if (in[p] == cplx(0.0, 0.0)) continue;
                    if (concrete.oracle.evaluate(layout, p)) {
                        const std::uint64_t f = (p / Sf) % 2;
                        out[f == 0 ? p + Sf : p - Sf] += in[p];
                    } else {
                        out[p] += in[p];
                    }
                }
            } else if constexpr (std::is_same_v<T, PhasePredicateOp>) {
                for (std::uint64_t p = 0; p < total; ++p) {
                    out[p] = concrete.oracle.evaluate(layout, p) ? in[p] * concrete.phase : in[p];
                }
            } else if constexpr (std::is_same_v<T, PhaseZeroOp>) {
                out = in;
                out[0] *= concrete.phase;
            } else if constexpr (std::is_same_v<T, GlobalPhaseOp>) {
                for (std::uint64_t p = 0; p < total; ++p) out[p] = in[p] * concrete.phase;
            } else if constexpr (std::is_same_v<T, CoinRotationOp>) {
                const std::uint64_t S = layout.stride(concrete.reg);
                const double c = std::cos(concrete.angle), s = std::sin(concrete.angle);
                for (std::uint64_t p = 0; p < total; ++p) {
                    if (in[p] == cplx(0.0, 0.0)) continue;
                    const std::uint64_t v = (p / S) % 2;
                    if (v == 0) {
                        out[p] += c * in[p];
                        out[p + S] += s * in[p];
                    } else {
                        out[p - S] += -s * in[p];
                        out[p] += c * in[p];
                    }
                }
            }
        },
        op);
    return out;
}

inline std::vector<cplx> dense_run(const RegisterLayout& layout, std::vector<cplx> state,
                                   const ReversibleProgram& prog) {
    for (const auto& op : prog.ops()) {
        state = dense_apply(layout, state, op);
    }
    return state;
}

inline double max_abs_difference(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

inline double max_state_difference(const SparseState& a, const SparseState& b) {
    return max_abs_difference(dense_from_state(a), dense_from_state(b));
}

// Random layout with 2..4 registers of small mixed dimensions; always ends
// with a dimension-2 flag register so mark/rotation ops have a target.
inline RegisterLayout random_layout(SeededRng& rng) {
    const std::size_t extra = 1 + rng.next_below(2);
    std::vector<RegisterSpec> regs;
    regs.push_back({"k", static_cast<std::uint32_t>(2 + rng.next_below(7)), RegisterRole::FourierIndex});
    for (std::size_t i = 0; i < extra; ++i) {
        regs.push_back({"r" + std::to_string(i), static_cast<std::uint32_t>(1 + rng.next_below(5)),
                        RegisterRole::Coin});
    }
    regs.push_back({"flag", 2, RegisterRole::Flag});
    return RegisterLayout(std::move(regs));
}

inline SparseState random_state(const RegisterLayout& layout, SeededRng& rng) {
    const std::uint64_t total = layout.total_dimension();
    const std::uint64_t support = 1 + rng.next_below(std::min<std::uint64_t>(total, 12));
    std::vector<std::pair<BasisIndex, cplx>> amps;
    std::vector<bool> used(total, false);
    while (amps.size() < support) {
        const std::uint64_t p = rng.next_below(total);
        if (used[p]) continue;
        used[p] = true;
        amps.emplace_back(layout.unpack(p),
                          cplx(rng.next_unit() * 2.0 - 1.0, rng.next_unit() * 2.0 - 1.0));
    }
    return SparseState::from_amplitudes(layout, std::move(amps), /*normalize=*/true);
}

inline std::complex<double> random_unit_phase(SeededRng& rng) {
    const double ang = rng.next_unit() * 2.0 * std::numbers::pi;
    return {std::cos(ang), std::sin(ang)};
}

inline PredicateOracle random_oracle(const RegisterLayout& layout, SeededRng& rng,
                                     std::size_t exclude_reg = SIZE_MAX) {
    std::vector<std::size_t> regs;
    for (std::size_t i = 0; i < layout.register_count(); ++i) {
        if (i != exclude_reg) regs.push_back(i);
    }
    const std::size_t reg = regs[rng.next_below(regs.size())];
    const std::uint64_t dim = layout.dimension(reg);
    switch (rng.next_below(4)) {
    case 0: return PredicateOracle::never();
    case 1: return PredicateOracle::always();
    case 2: return PredicateOracle::value_equals(reg, rng.next_below(dim));
    default: return PredicateOracle::value_at_least(reg, rng.next_below(dim + 1));
    }
}

inline PrimitiveOp random_op(const RegisterLayout& layout, SeededRng& rng) {
    const std::size_t flag_reg = layout.register_count() - 1; // dimension 2 by construction
    switch (rng.next_below(6)) {
    case 0:
        return FourierTransformOp{rng.next_below(layout.register_count()), rng.next_below(2) == 1};
    case 1:
        return PermutationMarkOp{flag_reg, random_oracle(layout, rng, flag_reg)};
    case 2:
        return PhasePredicateOp{random_oracle(layout, rng), random_unit_phase(rng)};
    case 3:
        return PhaseZeroOp{random_unit_phase(rng)};
    case 4:
        return GlobalPhaseOp{random_unit_phase(rng)};
    default:
        return CoinRotationOp{flag_reg, (rng.next_unit() * 2.0 - 1.0) * std::numbers::pi};
    }
}

inline ReversibleProgram random_program(const RegisterLayout& layout, SeededRng& rng,
                                        std::size_t max_ops = 6) {
    ReversibleProgram prog(layout);
    const std::size_t count = 1 + rng.next_below(max_ops);
    for (std::size_t i = 0; i < count; ++i) {
        prog.append(random_op(layout, rng));
    }
    return prog;
}

} // namespace testutil
