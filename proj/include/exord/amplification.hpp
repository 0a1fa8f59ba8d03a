#pragma once

#include <complex>
#include <cstdint>

#include "exord/program.hpp"

namespace exord {

// Phases of the amplitude amplification operator: phi sits on the zero-state
// phase S_0, psi on the marking phase S_chi. Both must have unit modulus.
struct AmplificationConfig {
    std::complex<double> phi{-1.0, 0.0};
    std::complex<double> psi{-1.0, 0.0};
    std::uint32_t iterations = 1;
};

// Closed-form amplitudes of the iterate Q^j A|0> for phases -1:
// good component k = sin((2j+1)theta)/sqrt(a), bad l = cos((2j+1)theta)/sqrt(1-a),
// with sin^2(theta) = a.
struct IterateAmplitudes {
    double a = 0.0;
    double theta = 0.0;
    double k = 1.0;
    double l = 1.0;

    double success_probability() const { return a * k * k; }
};

IterateAmplitudes iterate_amplitudes(double a, std::uint32_t j);

// One amplification step: the composite program
// [S_chi^psi, A^-1, S_0^phi, A, global phase -1], i.e. -A S_0 A^-1 S_chi
// applied right to left.
ReversibleProgram build_Q(const ReversibleProgram& A, const PredicateOracle& chi,
                          const AmplificationConfig& config);

// A followed by `iterations` copies of Q.
ReversibleProgram amplified_program(const ReversibleProgram& A, const PredicateOracle& chi,
                                    const AmplificationConfig& config);

// One Q with phases sqrt(-1) = +i: takes success probability exactly 1/2 to 1.
// The precondition check is advisory; with check_precondition the prepared
// probability is simulated first and a BoostPreconditionError carrying the
// measured value is thrown when it is not 1/2 within 1e-9.
ReversibleProgram exact_boost_half(const ReversibleProgram& A, const PredicateOracle& chi,
                                   bool check_precondition = true);

// One Q with phases -1: takes success probability exactly 1/4 to 1.
ReversibleProgram exact_boost_quarter(const ReversibleProgram& A, const PredicateOracle& chi,
                                      bool check_precondition = true);

} // namespace exord
