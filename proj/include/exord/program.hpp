#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "exord/group.hpp"
#include "exord/predicate.hpp"
#include "exord/state.hpp"

namespace exord {

// Exact Fourier transform of the register's dimension D:
// |v> -> (1/sqrt(D)) sum_w e^{+-2*pi*i*v*w/D} |w>.
struct FourierTransformOp {
    std::size_t reg = 0;
    bool inverse = false;
};

// |a>|g> -> |a>|g * base^a>. The target register holds enumeration indices
// of the group; its dimension must equal |G|.
struct GroupExponentiationOp {
    std::size_t control_reg = 0;
    std::size_t target_reg = 1;
    CyclicGroupHandle group;
    GroupElement base = 1;
};

// XORs the oracle value into a dimension-2 flag register; an involution.
// The oracle must not read the flag register itself.
struct PermutationMarkOp {
    std::size_t flag_reg = 0;
    PredicateOracle oracle;
};

// S_chi^phase: multiplies amplitudes of oracle-true tuples by a unit phase.
struct PhasePredicateOp {
    PredicateOracle oracle;
    std::complex<double> phase{1.0, 0.0};
};

// S_0^phase: multiplies the all-zero basis tuple by a unit phase.
struct PhaseZeroOp {
    std::complex<double> phase{1.0, 0.0};
};

struct GlobalPhaseOp {
    std::complex<double> phase{1.0, 0.0};
};

// Real rotation on a dimension-2 register:
// |0> -> cos|0> + sin|1>, |1> -> -sin|0> + cos|1>.
struct CoinRotationOp {
    std::size_t reg = 0;
    double angle = 0.0;
};

using PrimitiveOp = std::variant<FourierTransformOp, GroupExponentiationOp, PermutationMarkOp,
                                 PhasePredicateOp, PhaseZeroOp, GlobalPhaseOp, CoinRotationOp>;

PrimitiveOp invert_op(const PrimitiveOp& op);
std::string op_name(const PrimitiveOp& op);

struct OpCounters {
    // Applications of the exact Fourier transform (or its inverse) on
    // fourier-index registers. Dimension-2 coin transforms are ordinary
    // Hadamards and do not count.
    std::uint64_t fourier_exact = 0;
    std::uint64_t ops_applied = 0;

    // Cost convention: one exact Fourier transform = three standard QFTs.
    std::uint64_t standard_qft_units() const { return 3 * fourier_exact; }

    OpCounters& operator+=(const OpCounters& other) {
        fourier_exact += other.fourier_exact;
        ops_applied += other.ops_applied;
        return *this;
    }
};

SparseState apply_op(const SparseState& state, const PrimitiveOp& op, OpCounters* counters = nullptr);

// An invertible sequence of primitive operations over one layout; the
// simulator's notion of a measurement-free algorithm.
class ReversibleProgram {
public:
    explicit ReversibleProgram(RegisterLayout layout) : layout_(std::move(layout)) {}
    ReversibleProgram(RegisterLayout layout, std::vector<PrimitiveOp> ops);

    const RegisterLayout& layout() const { return layout_; }
    const std::vector<PrimitiveOp>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }

    ReversibleProgram& append(PrimitiveOp op);
    ReversibleProgram& append(const ReversibleProgram& other); // layouts must match

    // Reversed list of inverted ops; program followed by inverse() acts as
    // the identity.
    ReversibleProgram inverse() const;

private:
    RegisterLayout layout_;
    std::vector<PrimitiveOp> ops_;
};

// Sequential application with a norm check and prune after every op.
SparseState run_program(const SparseState& state, const ReversibleProgram& prog,
                        OpCounters* counters = nullptr);
SparseState run_program_from_zero(const ReversibleProgram& prog, OpCounters* counters = nullptr);

} // namespace exord
