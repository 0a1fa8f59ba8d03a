#include "exord/amplification.hpp"

#include <cmath>

namespace exord {

namespace {

void require_unit(std::complex<double> phase, const char* name) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
        throw ParameterError(std::string(name) + " must have unit modulus");
    }
}

constexpr double kBoostCheckTolerance = 1e-9;

ReversibleProgram boost(const ReversibleProgram& A, const PredicateOracle& chi,
                        std::complex<double> phase, double expected, bool check) {
    if (check) {
        const double measured = success_probability(run_program_from_zero(A), chi);
        if (std::abs(measured - expected) > kBoostCheckTolerance) {
            throw BoostPreconditionError(measured, expected,
                                         "prepared success probability is " + std::to_string(measured) +
                                             ", boost expects " + std::to_string(expected));
        }
    }
    return amplified_program(A, chi, AmplificationConfig{phase, phase, 1});
}

} // namespace

IterateAmplitudes iterate_amplitudes(double a, std::uint32_t j) {
    if (!(a > 0.0 && a < 1.0)) {
        throw ParameterError("iterate amplitudes need a in (0,1)");
    }
    IterateAmplitudes result;
    result.a = a;
    result.theta = std::asin(std::sqrt(a));
    const double angle = (2.0 * j + 1.0) * result.theta;
    result.k = std::sin(angle) / std::sqrt(a);
    result.l = std::cos(angle) / std::sqrt(1.0 - a);
    return result;
}

ReversibleProgram build_Q(const ReversibleProgram& A, const PredicateOracle& chi,
                          const AmplificationConfig& config) {
    require_unit(config.phi, "phi");
    require_unit(config.psi, "psi");
    chi.validate_against(A.layout());
    ReversibleProgram q(A.layout());
    q.append(PhasePredicateOp{chi, config.psi});
    q.append(A.inverse());
    q.append(PhaseZeroOp{config.phi});
    q.append(A);
    q.append(GlobalPhaseOp{{-1.0, 0.0}});
    return q;
}

ReversibleProgram amplified_program(const ReversibleProgram& A, const PredicateOracle& chi,
                                    const AmplificationConfig& config) {
    ReversibleProgram prog = A;
    const ReversibleProgram q = build_Q(A, chi, config);
    for (std::uint32_t i = 0; i < config.iterations; ++i) {
        prog.append(q);
    }
    return prog;
}

ReversibleProgram exact_boost_half(const ReversibleProgram& A, const PredicateOracle& chi,
                                   bool check_precondition) {
    // sqrt(-1) taken as +i; the conjugate choice works by symmetry
    return boost(A, chi, {0.0, 1.0}, 0.5, check_precondition);
}

ReversibleProgram exact_boost_quarter(const ReversibleProgram& A, const PredicateOracle& chi,
                                      bool check_precondition) {
    return boost(A, chi, {-1.0, 0.0}, 0.25, check_precondition);
}

} // namespace exord
