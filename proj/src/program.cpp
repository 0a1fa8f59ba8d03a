#include "exord/program.hpp"

#include <cmath>
#include <optional>
#include <algorithm>

#include "fourier_internal.hpp"

namespace exord {

namespace {

using detail::cplx;

void require_unit_phase(std::complex<double> phase, const char* what) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
        throw ParameterError(std::string(what) + " needs a unit-modulus phase");
    }
}

void require_register(const RegisterLayout& layout, std::size_t reg, const char* what) {
    if (reg >= layout.register_count()) {
        throw LayoutError(std::string(what) + ": register index out of range");
    }
}

std::optional<double> apply_fourier(SparseState& state, const FourierTransformOp& op,
                                    OpCounters* counters) {
    const auto& layout = state.layout();
    require_register(layout, op.reg, "fourier");
    if (counters && layout.reg(op.reg).role == RegisterRole::FourierIndex) {
        counters->fourier_exact += 1;
    }
    const std::uint32_t dim = static_cast<std::uint32_t>(layout.dimension(op.reg));
    if (dim == 1) return std::nullopt;
    if (dim == 2) {
        const double h = 1.0 / std::sqrt(2.0);
        return detail::apply_two_level(state, op.reg, {h, 0}, {h, 0}, {h, 0}, {-h, 0});
    }
    const detail::DftPlan plan(dim, op.inverse ? -1 : +1);
    return detail::transform_register(
        state, op.reg, plan.output_scale(),
        [&](const std::uint32_t* values, const cplx* amps, std::size_t nnz, cplx* out) {
            if (nnz <= plan.direct_nnz_limit()) {
                plan.transform_sparse_direct(values, amps, nnz, out);
            } else {
                std::fill(out, out + dim, cplx(0.0, 0.0));
                for (std::size_t i = 0; i < nnz; ++i) out[values[i]] = amps[i];
                plan.transform_dense(out);
            }
        });
}

std::optional<double> apply_rotation(SparseState& state, const CoinRotationOp& op) {
    const auto& layout = state.layout();
    require_register(layout, op.reg, "rotation");
    if (layout.dimension(op.reg) != 2) {
        throw LayoutError("rotation target register must have dimension 2");
    }
    const double c = std::cos(op.angle);
    const double s = std::sin(op.angle);
    return detail::apply_two_level(state, op.reg, {c, 0}, {-s, 0}, {s, 0}, {c, 0});
}

void apply_group_exponentiation(SparseState& state, const GroupExponentiationOp& op) {
    const auto& layout = state.layout();
    require_register(layout, op.control_reg, "group-exponentiation");
    require_register(layout, op.target_reg, "group-exponentiation");
    if (op.control_reg == op.target_reg) {
        throw LayoutError("group-exponentiation needs distinct control and target registers");
    }
    if (layout.dimension(op.target_reg) != op.group.order()) {
        throw LayoutError("target register dimension must equal the group order");
    }
    if (!op.group.contains(op.base)) {
        throw GroupError("exponentiation base is not a group element");
    }

    const std::uint32_t m = static_cast<std::uint32_t>(layout.dimension(op.control_reg));
    std::vector<GroupElement> pow_code(m);
    GroupElement acc = op.group.identity();
    for (std::uint32_t a = 0; a < m; ++a) {
        pow_code[a] = acc;
        if (a + 1 < m) acc = op.group.mul(acc, op.base);
    }

    const auto fast = op.group.fast_ops();
    const FastDiv32 div_mod(fast.modulus >= 2 ? fast.modulus : 1);
    const RegisterExtractor control(layout, op.control_reg);
    const RegisterExtractor target(layout, op.target_reg);
    const std::uint64_t tstride = layout.stride(op.target_reg);

    for (auto& e : state.mutable_entries()) {
        const std::uint32_t a = control.value(e.key);
        const std::uint32_t gi = target.value(e.key);
        const std::uint32_t code = fast.index_to_code[gi];
        const std::uint32_t pc = pow_code[a];
        std::uint32_t prod;
        if (fast.mul_table != nullptr) {
            prod = fast.mul_table[static_cast<std::size_t>(code) * fast.code_bound + pc];
        } else if (fast.modulus >= 2) {
            const std::uint64_t p = static_cast<std::uint64_t>(code) * pc;
            // p < 2^32 at desk scale, so the 32-bit fast division applies
            const std::uint32_t p32 = static_cast<std::uint32_t>(p);
            prod = p32 - div_mod.divide(p32) * fast.modulus;
        } else {
            prod = op.group.mul(code, pc);
        }
        const std::uint32_t gi2 = static_cast<std::uint32_t>(fast.code_to_index[prod]);
        e.key = e.key - static_cast<std::uint64_t>(gi) * tstride + static_cast<std::uint64_t>(gi2) * tstride;
    }
}

void apply_mark(SparseState& state, const PermutationMarkOp& op) {
    const auto& layout = state.layout();
    require_register(layout, op.flag_reg, "permutation-mark");
    if (layout.dimension(op.flag_reg) != 2) {
        throw LayoutError("mark flag register must have dimension 2");
    }
    if (op.oracle.references_register(op.flag_reg)) {
        throw LayoutError("mark oracle must not read the flag register");
    }
    op.oracle.validate_against(layout);
    const OracleEvaluator eval(op.oracle, layout);
    const RegisterExtractor flag(layout, op.flag_reg);
    const std::uint64_t fstride = layout.stride(op.flag_reg);
    for (auto& e : state.mutable_entries()) {
        if (!eval(e.key)) continue;
        e.key = (flag.value(e.key) == 0) ? e.key + fstride : e.key - fstride;
    }
}

void apply_phase_predicate(SparseState& state, const PhasePredicateOp& op) {
    require_unit_phase(op.phase, "phase-predicate");
    op.oracle.validate_against(state.layout());
    const OracleEvaluator eval(op.oracle, state.layout());
    const double pre = op.phase.real(), pim = op.phase.imag();
    for (auto& e : state.mutable_entries()) {
        if (!eval(e.key)) continue;
        const double re = e.re * pre - e.im * pim;
        e.im = e.re * pim + e.im * pre;
        e.re = re;
    }
}

void apply_phase_zero(SparseState& state, const PhaseZeroOp& op) {
    require_unit_phase(op.phase, "phase-zero");
    for (auto& e : state.mutable_entries()) {
        if (e.key != 0) continue;
        const double re = e.re * op.phase.real() - e.im * op.phase.imag();
        e.im = e.re * op.phase.imag() + e.im * op.phase.real();
        e.re = re;
        break;
    }
}

void apply_global_phase(SparseState& state, const GlobalPhaseOp& op) {
    require_unit_phase(op.phase, "global-phase");
    const double pre = op.phase.real(), pim = op.phase.imag();
    for (auto& e : state.mutable_entries()) {
        const double re = e.re * pre - e.im * pim;
        e.im = e.re * pim + e.im * pre;
        e.re = re;
    }
}

// Returns the post-op squared norm when the op recomputed amplitudes
// (transforms and rotations, which also prune at emit time); permutations
// and unit phases leave every modulus in place and return nothing.
std::optional<double> apply_op_inplace(SparseState& state, const PrimitiveOp& op,
                                       OpCounters* counters) {
    if (counters) counters->ops_applied += 1;
    return std::visit(
        [&](const auto& concrete) -> std::optional<double> {
            using T = std::decay_t<decltype(concrete)>;
            if constexpr (std::is_same_v<T, FourierTransformOp>) {
                return apply_fourier(state, concrete, counters);
            } else if constexpr (std::is_same_v<T, GroupExponentiationOp>) {
                apply_group_exponentiation(state, concrete);
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PermutationMarkOp>) {
                apply_mark(state, concrete);
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PhasePredicateOp>) {
                apply_phase_predicate(state, concrete);
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PhaseZeroOp>) {
                apply_phase_zero(state, concrete);
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, GlobalPhaseOp>) {
                apply_global_phase(state, concrete);
                return std::nullopt;
            } else {
                return apply_rotation(state, concrete);
            }
        },
        op);
}

} // namespace

SparseState apply_op(const SparseState& state, const PrimitiveOp& op, OpCounters* counters) {
    SparseState result = state;
    const auto norm = apply_op_inplace(result, op, counters);
    if (norm.has_value()) {
        if (std::abs(*norm - 1.0) > kNormTolerance) {
            throw InternalError("op lost unitarity: |norm^2 - 1| = " +
                                std::to_string(std::abs(*norm - 1.0)));
        }
    } else {
        result.prune_and_check_norm();
    }
    return result;
}

PrimitiveOp invert_op(const PrimitiveOp& op) {
    return std::visit(
        [](const auto& concrete) -> PrimitiveOp {
            using T = std::decay_t<decltype(concrete)>;
            if constexpr (std::is_same_v<T, FourierTransformOp>) {
                return FourierTransformOp{concrete.reg, !concrete.inverse};
            } else if constexpr (std::is_same_v<T, GroupExponentiationOp>) {
                return GroupExponentiationOp{concrete.control_reg, concrete.target_reg,
                                             concrete.group, concrete.group.inv(concrete.base)};
            } else if constexpr (std::is_same_v<T, PermutationMarkOp>) {
                return concrete; // involution
            } else if constexpr (std::is_same_v<T, PhasePredicateOp>) {
                return PhasePredicateOp{concrete.oracle, std::conj(concrete.phase)};
            } else if constexpr (std::is_same_v<T, PhaseZeroOp>) {
                return PhaseZeroOp{std::conj(concrete.phase)};
            } else if constexpr (std::is_same_v<T, GlobalPhaseOp>) {
                return GlobalPhaseOp{std::conj(concrete.phase)};
            } else {
                return CoinRotationOp{concrete.reg, -concrete.angle};
            }
        },
        op);
}

std::string op_name(const PrimitiveOp& op) {
    return std::visit(
        [](const auto& concrete) -> std::string {
            using T = std::decay_t<decltype(concrete)>;
            if constexpr (std::is_same_v<T, FourierTransformOp>) {
                return concrete.inverse ? "fourier-inverse" : "fourier";
            } else if constexpr (std::is_same_v<T, GroupExponentiationOp>) {
                return "group-exponentiation";
            } else if constexpr (std::is_same_v<T, PermutationMarkOp>) {
                return "permutation-mark";
            } else if constexpr (std::is_same_v<T, PhasePredicateOp>) {
                return "phase-predicate";
            } else if constexpr (std::is_same_v<T, PhaseZeroOp>) {
                return "phase-zero";
            } else if constexpr (std::is_same_v<T, GlobalPhaseOp>) {
                return "global-phase";
            } else {
                return "coin-rotation";
            }
        },
        op);
}

ReversibleProgram::ReversibleProgram(RegisterLayout layout, std::vector<PrimitiveOp> ops)
    : layout_(std::move(layout)), ops_(std::move(ops)) {}

ReversibleProgram& ReversibleProgram::append(PrimitiveOp op) {
    ops_.push_back(std::move(op));
    return *this;
}

ReversibleProgram& ReversibleProgram::append(const ReversibleProgram& other) {
    if (other.layout_ != layout_) {
        throw LayoutError("cannot append a program with a different layout");
    }
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    return *this;
}

ReversibleProgram ReversibleProgram::inverse() const {
    ReversibleProgram inv(layout_);
    inv.ops_.reserve(ops_.size());
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        inv.ops_.push_back(invert_op(*it));
    }
    return inv;
}

SparseState run_program(const SparseState& state, const ReversibleProgram& prog,
                        OpCounters* counters) {
    if (state.layout() != prog.layout()) {
        throw LayoutError("state and program layouts differ");
    }
    SparseState current = state;
    for (const auto& op : prog.ops()) {
        // Transforms return their freshly accumulated norm; permutations and
        // unit phases preserve every modulus, so no extra pass is needed.
        const auto norm = apply_op_inplace(current, op, counters);
        if (norm.has_value() && std::abs(*norm - 1.0) > kNormTolerance) {
            throw InternalError("op lost unitarity: |norm^2 - 1| = " +
                                std::to_string(std::abs(*norm - 1.0)));
        }
    }
    current.check_norm();
    return current;
}

SparseState run_program_from_zero(const ReversibleProgram& prog, OpCounters* counters) {
    return run_program(SparseState::zero_state(prog.layout()), prog, counters);
}

} // namespace exord
