#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exord/amplification.hpp"
#include "exord/applications.hpp"
#include "exord/oracle.hpp"
#include "helpers.hpp"

using namespace exord;
using testutil::cplx;

namespace {

struct Prep {
    ReversibleProgram program;
    PredicateOracle good;
};

// Single-register rotation preparing success probability a on coin==1.
Prep synthetic_prep(double a) {
    RegisterLayout layout({{"coin", 2, RegisterRole::Coin}});
    ReversibleProgram prog(layout);
    prog.append(CoinRotationOp{0, std::asin(std::sqrt(a))});
    return {std::move(prog), PredicateOracle::value_equals(0, 1)};
}

// Same success probability spread over a three-register layout.
Prep synthetic_prep_wide(double a) {
    RegisterLayout layout({{"aux", 3, RegisterRole::Coin},
                           {"coin", 2, RegisterRole::Coin},
                           {"pad", 2, RegisterRole::Coin}});
    ReversibleProgram prog(layout);
    prog.append(FourierTransformOp{0, false});
    prog.append(CoinRotationOp{1, std::asin(std::sqrt(a))});
    prog.append(FourierTransformOp{2, false});
    return {std::move(prog), PredicateOracle::value_equals(1, 1)};
}

} // namespace

TEST_CASE("build_Q composes S_chi, A-inverse, S_0, A, global minus") {
    auto [A, chi] = synthetic_prep(0.5);
    const auto q = build_Q(A, chi, AmplificationConfig{{-1.0, 0.0}, {-1.0, 0.0}, 1});
    REQUIRE(q.size() == 2 * A.size() + 3);
    CHECK(op_name(q.ops().front()) == "phase-predicate");
    CHECK(op_name(q.ops()[1 + A.size()]) == "phase-zero");
    CHECK(op_name(q.ops().back()) == "global-phase");
}

TEST_CASE("trivial phases make Q a global sign: success unchanged") {
    auto [A, chi] = synthetic_prep(0.37);
    const auto amped = amplified_program(A, chi, AmplificationConfig{{1.0, 0.0}, {1.0, 0.0}, 1});
    const auto out = run_program_from_zero(amped);
    CHECK(std::abs(success_probability(out, chi) - 0.37) < 1e-12);
}

TEST_CASE("Q built then inverted is the identity") {
    auto [A, chi] = synthetic_prep(0.3);
    const auto q = build_Q(A, chi, AmplificationConfig{{0.0, 1.0}, {0.0, 1.0}, 1});
    SeededRng rng(17);
    const auto state = testutil::random_state(A.layout(), rng);
    const auto round = run_program(run_program(state, q), q.inverse());
    CHECK(testutil::max_state_difference(state, round) < kInverseTolerance);
}

TEST_CASE("one Grover step from a=1/2 lands at sin^2(3 theta) = 1/2") {
    auto [A, chi] = synthetic_prep(0.5);
    const auto amped = amplified_program(A, chi, AmplificationConfig{{-1.0, 0.0}, {-1.0, 0.0}, 1});
    const auto out = run_program_from_zero(amped);
    const auto expect = iterate_amplitudes(0.5, 1);
    CHECK(std::abs(expect.success_probability() - 0.5) < 1e-12);
    CHECK(std::abs(success_probability(out, chi) - expect.success_probability()) < 1e-12);
}

TEST_CASE("exact boost from one half reaches certainty") {
    auto [A, chi] = synthetic_prep(0.5);
    const auto boosted = exact_boost_half(A, chi);
    const auto out = run_program_from_zero(boosted);
    CHECK(success_probability(out, chi) >= 1.0 - 1e-12);
}

TEST_CASE("exact boost from one half on a procedure-P preparation") {
    const auto group = CyclicGroupHandle::prime_field(7);
    // x = 2 has order 3 in F_7^*; the oracle certifies a = 1/2 exactly
    CHECK(exact_p_success_probability(3, 6) == ExactProbability::half());
    auto [P, chi] = build_P(group, 2, 3);
    CHECK(std::abs(success_probability(run_program_from_zero(P), chi) - 0.5) < 1e-12);
    const auto boosted = exact_boost_half(P, chi);
    const auto out = run_program_from_zero(boosted);
    CHECK(success_probability(out, chi) >= 1.0 - 1e-12);
}

TEST_CASE("boosting a zero good component leaves it at zero") {
    auto [A, ignored] = synthetic_prep(0.5);
    const auto never = PredicateOracle::never();
    const auto boosted = exact_boost_half(A, never, /*check_precondition=*/false);
    const auto out = run_program_from_zero(boosted);
    CHECK(success_probability(out, never) == 0.0);
}

TEST_CASE("the advisory precondition check rejects a wrong preparation") {
    auto [A, chi] = synthetic_prep(0.3);
    try {
        exact_boost_half(A, chi);
        FAIL("expected a precondition error");
    } catch (const BoostPreconditionError& e) {
        CHECK(std::abs(e.measured_probability - 0.3) < 1e-12);
        CHECK(e.expected_probability == 0.5);
    }
    CHECK_THROWS_AS(exact_boost_quarter(A, chi), BoostPreconditionError);
    // disabled check: the boost still runs, it just is not exact
    const auto boosted = exact_boost_half(A, chi, false);
    const auto out = run_program_from_zero(boosted);
    CHECK(success_probability(out, chi) < 1.0 - 1e-3);
}

TEST_CASE("exact boost from one quarter reaches certainty") {
    auto [A, chi] = synthetic_prep(0.25);
    const auto out = run_program_from_zero(exact_boost_quarter(A, chi));
    CHECK(success_probability(out, chi) >= 1.0 - 1e-12);
}

TEST_CASE("quarter boost on a three-register layout") {
    auto [A, chi] = synthetic_prep_wide(0.25);
    CHECK(std::abs(success_probability(run_program_from_zero(A), chi) - 0.25) < 1e-12);
    const auto out = run_program_from_zero(exact_boost_quarter(A, chi));
    CHECK(success_probability(out, chi) >= 1.0 - 1e-12);
}

TEST_CASE("quarter boost applied at a=1/2 lands at 1/2, and the check rejects") {
    auto [A, chi] = synthetic_prep(0.5);
    CHECK_THROWS_AS(exact_boost_quarter(A, chi), BoostPreconditionError);
    const auto out = run_program_from_zero(exact_boost_quarter(A, chi, false));
    // closed form at a = 1/2: sin^2(3 pi/4) = 1/2
    CHECK(std::abs(success_probability(out, chi) - 0.5) < 1e-12);
}

TEST_CASE("iterate amplitudes closed form") {
    const auto identity_case = iterate_amplitudes(0.63, 0);
    CHECK(std::abs(identity_case.k - 1.0) < 1e-12);
    CHECK(std::abs(identity_case.l - 1.0) < 1e-12);

    const auto quarter = iterate_amplitudes(0.25, 1);
    CHECK(std::abs(quarter.k - 2.0) < 1e-12); // sin(pi/2)/sqrt(1/4)
    CHECK(std::abs(quarter.success_probability() - 1.0) < 1e-12);

    const auto half_two = iterate_amplitudes(0.5, 2);
    CHECK(std::abs(half_two.success_probability() - 0.5) < 1e-12);

    CHECK_THROWS_AS(iterate_amplitudes(0.0, 1), ParameterError);
    CHECK_THROWS_AS(iterate_amplitudes(1.0, 1), ParameterError);
    CHECK_THROWS_AS(iterate_amplitudes(-0.5, 1), ParameterError);
}

TEST_CASE("closed-form iterates match the simulated amplitudes (50 random cases)") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        SeededRng rng(6000 + trial);
        const double a = 0.05 + rng.next_unit() * 0.9;
        const std::uint32_t j = static_cast<std::uint32_t>(rng.next_below(11));
        auto [A, chi] = trial % 2 == 0 ? synthetic_prep(a) : synthetic_prep_wide(a);

        const auto expect = iterate_amplitudes(a, j);
        CHECK(std::abs(expect.a * expect.k * expect.k + (1.0 - expect.a) * expect.l * expect.l - 1.0) <
              1e-12);

        const auto base = run_program_from_zero(A);
        const auto iterated = run_program_from_zero(
            amplified_program(A, chi, AmplificationConfig{{-1.0, 0.0}, {-1.0, 0.0}, j}));
        const OracleEvaluator eval(chi, A.layout());
        for (const auto& e : base.entries()) {
            const double factor = eval(e.key) ? expect.k : expect.l;
            CHECK(std::abs(iterated.amplitude(e.key) - factor * e.amplitude()) < 1e-10);
        }
    }
}

TEST_CASE("measurement statistics ignore the global phase") {
    auto [A, chi] = synthetic_prep(0.5);
    auto boosted = exact_boost_half(A, chi);
    auto with_phase = boosted;
    with_phase.append(GlobalPhaseOp{{0.0, -1.0}});
    const auto plain = run_program_from_zero(boosted);
    const auto phased = run_program_from_zero(with_phase);
    for (std::uint32_t v = 0; v < 2; ++v) {
        const auto p = PredicateOracle::value_equals(0, v);
        CHECK(std::abs(success_probability(plain, p) - success_probability(phased, p)) < 1e-14);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SeededRng ra(seed), rb(seed);
        CHECK(measure(plain, {0}, ra).outcome == measure(phased, {0}, rb).outcome);
    }
}

TEST_CASE("amplification config validates unit phases") {
    auto [A, chi] = synthetic_prep(0.5);
    CHECK_THROWS_AS(build_Q(A, chi, AmplificationConfig{{0.5, 0.0}, {1.0, 0.0}, 1}), ParameterError);
}
