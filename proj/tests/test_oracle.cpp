#include <doctest.h>

#include "exord/oracle.hpp"
#include "exord/order_finding.hpp"
#include "helpers.hpp"

using namespace exord;

namespace {

// Smallest prime p with r | p-1, plus an element of order exactly r in F_p^*.
std::pair<CyclicGroupHandle, GroupElement> group_with_element_of_order(std::uint64_t r) {
    for (std::uint32_t p = 2;; ++p) {
        if (!trial_division_is_prime(p) || (p - 1) % r != 0) continue;
        const auto field = CyclicGroupHandle::prime_field(p);
        for (GroupElement g : field.elements()) {
            if (brute_order(field, g) == p - 1) {
                return {field, field.pow(g, (p - 1) / r)};
            }
        }
    }
}

} // namespace

TEST_CASE("exact probabilities reduce and stay in range") {
    CHECK(ExactProbability(2, 4) == ExactProbability::half());
    CHECK(ExactProbability(3, 9).to_string() == "1/3");
    CHECK(ExactProbability(0, 7) == ExactProbability::zero());
    CHECK_THROWS_AS(ExactProbability(3, 2), ParameterError);
    CHECK_THROWS_AS(ExactProbability(1, 0), ParameterError);
    const auto sum = ExactProbability(1, 6) + ExactProbability(1, 3);
    CHECK(sum == ExactProbability::half());
    CHECK(std::abs(sum.to_double() - 0.5) < 1e-15);
}

TEST_CASE("brute order on the worked examples") {
    CHECK(brute_order(CyclicGroupHandle::units_mod_n(15), 2) == 4);
    CHECK(brute_order(CyclicGroupHandle::units_mod_n(15), 1) == 1);
    CHECK(brute_order(CyclicGroupHandle::prime_field(7), 3) == 6);
}

TEST_CASE("gamma distribution puts weight 1/r on multiples of m/r") {
    const auto d84 = gamma_distribution(8, 4);
    for (std::uint64_t k = 0; k < 8; ++k) {
        CHECK(d84[k] == (k % 2 == 0 ? ExactProbability(1, 4) : ExactProbability::zero()));
    }
    const auto uniform = gamma_distribution(6, 6);
    for (const auto& p : uniform) CHECK(p == ExactProbability(1, 6));
    const auto d62 = gamma_distribution(6, 2);
    CHECK(d62[0] == ExactProbability::half());
    CHECK(d62[3] == ExactProbability::half());
    CHECK(d62[1] == ExactProbability::zero());
    CHECK_THROWS_AS(gamma_distribution(8, 3), ParameterError);
}

TEST_CASE("gamma distribution matches the simulated sampling marginal for every m up to 128") {
    for (std::uint64_t m = 2; m <= 128; ++m) {
        for (std::uint64_t r = 1; r <= m; ++r) {
            if (m % r != 0) continue;
            auto [group, x] = group_with_element_of_order(r);
            const RegisterLayout layout(
                {{"k", static_cast<std::uint32_t>(m), RegisterRole::FourierIndex},
                 {"g", static_cast<std::uint32_t>(group.order()), RegisterRole::GroupElement}});
            ReversibleProgram prog(layout);
            prog.append(FourierTransformOp{0, false});
            prog.append(GroupExponentiationOp{0, 1, group, x});
            prog.append(FourierTransformOp{0, false});
            const auto state = run_program_from_zero(prog);
            std::vector<double> marginal(m, 0.0);
            for (const auto& e : state.entries()) {
                marginal[layout.value_at(e.key, 0)] += e.norm_sq();
            }
            const auto expected = gamma_distribution(m, r);
            double worst = 0.0;
            for (std::uint64_t k = 0; k < m; ++k) {
                worst = std::max(worst, std::abs(marginal[k] - expected[k].to_double()));
            }
            CHECK(worst < 1e-12);
        }
    }
}

TEST_CASE("exact hit probability: even quotient at j = -1") {
    CHECK(exact_success_probability(1, 2, 4, -1) == ExactProbability::half());
    CHECK(exact_success_probability(2, 4, 8, -1) == ExactProbability::half());
    CHECK(exact_success_probability(3, 6, 36, -1) == ExactProbability::half());
}

TEST_CASE("exact hit probability: odd quotient at the covering j") {
    CHECK(exact_success_probability(1, 3, 6, 1) == ExactProbability::half());
    CHECK(exact_success_probability(2, 6, 12, 2) == ExactProbability::half()); // d*m/r = 4
    CHECK(exact_success_probability(1, 5, 5, 0) == ExactProbability::half());  // d*m/r = 1
}

TEST_CASE("exact hit probability vanishes at d = r and validates arguments") {
    for (std::int32_t j = -1; j <= 5; ++j) {
        CHECK(exact_success_probability(4, 4, 8, j) == ExactProbability::zero());
    }
    CHECK_THROWS_AS(exact_success_probability(3, 4, 8, 0), ParameterError);  // d does not divide r
    CHECK_THROWS_AS(exact_success_probability(1, 3, 8, 0), ParameterError);  // r does not divide m
    CHECK_THROWS_AS(exact_success_probability(1, 2, 4, -2), ParameterError);
}

TEST_CASE("exact hit probability matches the simulated flag weight over full sweeps") {
    for (std::uint64_t m = 2; m <= 36; ++m) {
        std::int32_t j_max = 0;
        while ((1ull << (j_max + 1)) <= m) ++j_max;
        for (std::uint64_t r = 2; r <= m; ++r) {
            if (m % r != 0) continue;
            auto [group, x] = group_with_element_of_order(r);
            const OrderInstance inst(group, x, m);
            for (std::uint64_t d = 1; d <= r; ++d) {
                if (r % d != 0) continue;
                for (std::int32_t j = -1; j <= j_max; ++j) {
                    auto [prog, oracle] = build_Uj(inst, ChiParams{d, m, j});
                    const auto psi = run_program_from_zero(prog);
                    const double simulated = success_probability(psi, oracle);
                    const double exact = exact_success_probability(d, r, m, j).to_double();
                    CHECK(std::abs(simulated - exact) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("primitive roots by enumeration") {
    const auto f7 = CyclicGroupHandle::prime_field(7);
    CHECK(primitive_roots(f7) == std::vector<GroupElement>{3, 5});
    const auto f5 = CyclicGroupHandle::prime_field(5);
    CHECK(primitive_roots(f5) == std::vector<GroupElement>{2, 3});
    const auto f3 = CyclicGroupHandle::prime_field(3);
    CHECK(primitive_roots(f3) == std::vector<GroupElement>{2});
}

TEST_CASE("trial division") {
    CHECK(trial_division_is_prime(2));
    CHECK(trial_division_is_prime(13));
    CHECK(trial_division_is_prime(997));
    CHECK_FALSE(trial_division_is_prime(1));
    CHECK_FALSE(trial_division_is_prime(15));
    CHECK_FALSE(trial_division_is_prime(561)); // Carmichael
}
