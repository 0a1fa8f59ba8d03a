#include <doctest.h>

#include <array>
#include <complex>
#include <map>
#include <numbers>

#include "exord/errors.hpp"
#include "exord/group.hpp"
#include "exord/program.hpp"
#include "exord/state.hpp"
#include "helpers.hpp"

using namespace exord;
using testutil::cplx;

namespace {

RegisterLayout single_register(std::uint32_t dim, RegisterRole role = RegisterRole::FourierIndex) {
    return RegisterLayout({{"k", dim, role}});
}

SparseState basis_state(const RegisterLayout& layout, std::vector<std::uint32_t> values) {
    return SparseState::from_amplitudes(layout, {{BasisIndex{std::move(values)}, {1.0, 0.0}}});
}

} // namespace

TEST_CASE("layout invariants") {
    CHECK_THROWS_AS(RegisterLayout({{"a", 0, RegisterRole::Coin}}), LayoutError);
    CHECK_THROWS_AS(RegisterLayout({{"a", 2, RegisterRole::Coin}, {"a", 3, RegisterRole::Coin}}),
                    LayoutError);
    const RegisterLayout layout(
        {{"k", 4, RegisterRole::FourierIndex}, {"g", 3, RegisterRole::GroupElement}});
    CHECK(layout.total_dimension() == 12);
    CHECK(layout.stride(0) == 3);
    CHECK(layout.stride(1) == 1);
    CHECK(layout.index_of("g") == 1);
    CHECK_THROWS_AS(layout.index_of("nope"), LayoutError);
}

TEST_CASE("basis index pack/unpack round-trips") {
    const RegisterLayout layout({{"a", 5, RegisterRole::Coin},
                                 {"b", 3, RegisterRole::Coin},
                                 {"c", 7, RegisterRole::Coin}});
    for (std::uint64_t p = 0; p < layout.total_dimension(); ++p) {
        CHECK(layout.pack(layout.unpack(p)) == p);
    }
    CHECK_THROWS_AS(layout.pack(BasisIndex{{5, 0, 0}}), LayoutError);
    CHECK_THROWS_AS(layout.pack(BasisIndex{{0, 0}}), LayoutError);
}

TEST_CASE("fast division matches plain division") {
    SeededRng rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.next_below(1u << 20));
        const FastDiv32 fd(d);
        const std::uint32_t x = static_cast<std::uint32_t>(rng.next_u64());
        CHECK(fd.divide(x) == x / d);
    }
    for (std::uint32_t d : {1u, 2u, 3u, 997u, 65536u, UINT32_MAX}) {
        const FastDiv32 fd(d);
        for (std::uint32_t x : {0u, 1u, d - 1, d, d + 1, UINT32_MAX - 1, UINT32_MAX}) {
            CHECK(fd.divide(x) == x / d);
        }
    }
}

TEST_CASE("fourier on dimension 2 gives the uniform pair") {
    const auto layout = single_register(2);
    const auto out = apply_op(basis_state(layout, {0}), FourierTransformOp{0, false});
    const double c = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitude(BasisIndex{{0}}) - cplx(c, 0)) < 1e-12);
    CHECK(std::abs(out.amplitude(BasisIndex{{1}}) - cplx(c, 0)) < 1e-12);
}

TEST_CASE("fourier on dimension 4 basis |1> has the quarter phases") {
    const auto layout = single_register(4);
    const auto out = apply_op(basis_state(layout, {1}), FourierTransformOp{0, false});
    CHECK(std::abs(out.amplitude(BasisIndex{{0}}) - cplx(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(out.amplitude(BasisIndex{{1}}) - cplx(0.0, 0.5)) < 1e-12);
    CHECK(std::abs(out.amplitude(BasisIndex{{2}}) - cplx(-0.5, 0.0)) < 1e-12);
    CHECK(std::abs(out.amplitude(BasisIndex{{3}}) - cplx(0.0, -0.5)) < 1e-12);
}

TEST_CASE("phase-zero multiplies only the all-zero tuple") {
    const auto layout = single_register(2);
    const auto plus = apply_op(basis_state(layout, {0}), FourierTransformOp{0, false});
    const auto out = apply_op(plus, PhaseZeroOp{{0.0, 1.0}});
    const double c = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitude(BasisIndex{{0}}) - cplx(0.0, c)) < 1e-12);
    CHECK(std::abs(out.amplitude(BasisIndex{{1}}) - cplx(c, 0.0)) < 1e-12);
}

TEST_CASE("group exponentiation maps |3>|1> to |3>|8> for x=2 mod 15") {
    const auto group = CyclicGroupHandle::units_mod_n(15);
    const RegisterLayout layout({{"a", 8, RegisterRole::FourierIndex},
                                 {"g", static_cast<std::uint32_t>(group.order()),
                                  RegisterRole::GroupElement}});
    const auto in = basis_state(layout, {3, group.index_of(1)});
    const auto out = apply_op(in, GroupExponentiationOp{0, 1, group, 2});
    CHECK(std::abs(out.amplitude(BasisIndex{{3, group.index_of(8)}}) - cplx(1.0, 0.0)) < 1e-12);
    CHECK(out.support_size() == 1);
}

TEST_CASE("group exponentiation rejects non-members and mismatched registers") {
    const auto group = CyclicGroupHandle::units_mod_n(15);
    CHECK_THROWS_AS(group.index_of(3), GroupError); // gcd(3,15) > 1
    const RegisterLayout layout({{"a", 4, RegisterRole::FourierIndex},
                                 {"g", static_cast<std::uint32_t>(group.order()),
                                  RegisterRole::GroupElement}});
    const auto in = basis_state(layout, {0, 0});
    CHECK_THROWS_AS(apply_op(in, GroupExponentiationOp{0, 1, group, 3}), GroupError);
    const RegisterLayout bad({{"a", 4, RegisterRole::FourierIndex},
                              {"g", 5, RegisterRole::GroupElement}});
    CHECK_THROWS_AS(apply_op(basis_state(bad, {0, 0}), GroupExponentiationOp{0, 1, group, 2}),
                    LayoutError);
    CHECK_THROWS_AS(apply_op(in, GroupExponentiationOp{0, 5, group, 2}), LayoutError);
}

TEST_CASE("empty program is the identity") {
    SeededRng rng(11);
    const auto layout = testutil::random_layout(rng);
    const auto state = testutil::random_state(layout, rng);
    const auto out = run_program(state, ReversibleProgram(layout));
    CHECK(testutil::max_state_difference(state, out) == 0.0);
}

TEST_CASE("program followed by its inverse is the identity (100 random cases)") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SeededRng rng(1000 + seed);
        const auto layout = testutil::random_layout(rng);
        const auto prog = testutil::random_program(layout, rng);
        const auto state = testutil::random_state(layout, rng);
        const auto there = run_program(state, prog);
        const auto back = run_program(there, prog.inverse());
        CHECK(testutil::max_state_difference(state, back) < kInverseTolerance);
    }
}

TEST_CASE("every primitive op preserves the norm (100 random cases)") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SeededRng rng(2000 + seed);
        const auto layout = testutil::random_layout(rng);
        const auto state = testutil::random_state(layout, rng);
        const auto op = testutil::random_op(layout, rng);
        const auto out = apply_op(state, op);
        CHECK(std::abs(out.norm_sq() - 1.0) < kNormTolerance);
    }
}

TEST_CASE("sparse engine agrees with the dense reference (60 random programs)") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        SeededRng rng(3000 + seed);
        const auto layout = testutil::random_layout(rng);
        const auto prog = testutil::random_program(layout, rng);
        const auto state = testutil::random_state(layout, rng);
        const auto sparse = run_program(state, prog);
        const auto dense = testutil::dense_run(layout, testutil::dense_from_state(state), prog);
        CHECK(testutil::max_abs_difference(testutil::dense_from_state(sparse), dense) < 1e-12);
    }
}

TEST_CASE("pruning never shifts success probabilities materially") {
    // The dense reference never prunes; the sparse engine prunes at 1e-14
    // after every op.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SeededRng rng(4000 + seed);
        const auto layout = testutil::random_layout(rng);
        const auto prog = testutil::random_program(layout, rng);
        const auto state = testutil::random_state(layout, rng);
        const auto oracle = testutil::random_oracle(layout, rng);
        const auto sparse = run_program(state, prog);
        const auto dense = testutil::dense_run(layout, testutil::dense_from_state(state), prog);
        OracleEvaluator eval(oracle, layout);
        double dense_weight = 0.0;
        for (std::uint64_t p = 0; p < dense.size(); ++p) {
            if (eval(p)) dense_weight += std::norm(dense[p]);
        }
        CHECK(std::abs(success_probability(sparse, oracle) - dense_weight) < 1e-10);
    }
}

TEST_CASE("fourier sampling for x=4 mod 15 with m=2 matches the direct evaluation") {
    const auto group = CyclicGroupHandle::units_mod_n(15);
    const std::uint64_t m = 2;
    const RegisterLayout layout({{"k", 2, RegisterRole::FourierIndex},
                                 {"g", static_cast<std::uint32_t>(group.order()),
                                  RegisterRole::GroupElement}});
    ReversibleProgram prog(layout);
    prog.append(FourierTransformOp{0, false});
    prog.append(GroupExponentiationOp{0, 1, group, 4});
    prog.append(FourierTransformOp{0, false});
    const auto state = run_program_from_zero(prog);

    // (1/m) sum_{a,k} e^{2 pi i a k / m} |k>|x^a>, evaluated independently
    std::map<std::uint64_t, cplx> expected;
    for (std::uint64_t a = 0; a < m; ++a) {
        const GroupElement xa = group.pow(4, a);
        for (std::uint64_t k = 0; k < m; ++k) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(a * k % m) / m;
            expected[layout.pack(BasisIndex{{static_cast<std::uint32_t>(k), group.index_of(xa)}})] +=
                cplx(std::cos(ang), std::sin(ang)) / static_cast<double>(m);
        }
    }
    for (const auto& [key, amp] : expected) {
        CHECK(std::abs(state.amplitude(key) - amp) < 1e-12);
    }
    // |Gamma_k|^2 = 1/r = 1/2 on both k values
    for (std::uint32_t k = 0; k < 2; ++k) {
        const auto weight = success_probability(state, PredicateOracle::value_equals(0, k));
        CHECK(std::abs(weight - 0.5) < 1e-12);
    }
}

TEST_CASE("success probability basics") {
    const auto layout = single_register(8);
    auto uniform = apply_op(basis_state(layout, {0}), FourierTransformOp{0, false});
    CHECK(success_probability(uniform, PredicateOracle::never()) == 0.0);
    CHECK(std::abs(success_probability(uniform, PredicateOracle::always()) - 1.0) < 1e-12);
    CHECK(std::abs(success_probability(uniform, PredicateOracle::value_at_least(0, 4)) - 0.5) < 1e-12);
}

TEST_CASE("measuring a deterministic state returns its value under any seed") {
    const auto layout = single_register(8);
    const auto state = basis_state(layout, {5});
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 999ull}) {
        SeededRng rng(seed);
        const auto result = measure(state, {0}, rng);
        CHECK(result.outcome[0] == 5);
        CHECK(result.collapsed.support_size() == 1);
    }
}

TEST_CASE("measuring the uniform four-state spreads evenly over seeds") {
    const auto layout = single_register(4);
    const auto uniform = apply_op(basis_state(layout, {0}), FourierTransformOp{0, false});
    std::array<int, 4> counts{};
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        SeededRng rng(seed);
        counts[measure(uniform, {0}, rng).outcome[0]] += 1;
    }
    for (int c : counts) {
        CHECK(std::abs(c / 1000.0 - 0.25) < 0.06);
    }
}

TEST_CASE("identical seeds give identical measurement outcomes") {
    SeededRng gen(31);
    const auto layout = testutil::random_layout(gen);
    const auto state = testutil::random_state(layout, gen);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SeededRng a(seed), b(seed);
        const auto ra = measure(state, {0}, a);
        const auto rb = measure(state, {0}, b);
        CHECK(ra.outcome == rb.outcome);
    }
}

TEST_CASE("measurement collapse keeps only the observed branch, renormalized") {
    const auto layout = RegisterLayout({{"k", 2, RegisterRole::FourierIndex},
                                        {"g", 3, RegisterRole::GroupElement}});
    const auto state = SparseState::from_amplitudes(
        layout, {{BasisIndex{{0, 1}}, {0.6, 0.0}}, {BasisIndex{{1, 2}}, {0.0, 0.8}}});
    SeededRng rng(5);
    const auto result = measure(state, {0}, rng);
    CHECK(result.collapsed.support_size() == 1);
    CHECK(std::abs(result.collapsed.norm_sq() - 1.0) < 1e-12);
    const auto& entry = result.collapsed.entries().front();
    CHECK(layout.value_at(entry.key, 0) == result.outcome[0]);
}

TEST_CASE("measuring an empty state reports an internal error") {
    const auto layout = single_register(4);
    SparseState empty(layout);
    SeededRng rng(0);
    CHECK_THROWS_AS(measure(empty, {0}, rng), InternalError);
}

TEST_CASE("fourier involution and double application") {
    for (std::uint32_t dim : {2u, 3u, 4u, 5u, 7u, 12u}) {
        const auto layout = single_register(dim);
        for (std::uint32_t v = 0; v < dim; ++v) {
            const auto start = basis_state(layout, {v});
            const auto round =
                apply_op(apply_op(start, FourierTransformOp{0, false}), FourierTransformOp{0, true});
            CHECK(testutil::max_state_difference(start, round) < 1e-12);

            // F^2 |v> = |-v mod D> up to a global phase
            const auto twice =
                apply_op(apply_op(start, FourierTransformOp{0, false}), FourierTransformOp{0, false});
            CHECK(twice.support_size() == 1);
            CHECK(layout.value_at(twice.entries().front().key, 0) == (dim - v) % dim);
            CHECK(std::abs(std::abs(twice.entries().front().amplitude()) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("state construction rejects duplicates and zero vectors") {
    const auto layout = single_register(4);
    CHECK_THROWS_AS(SparseState::from_amplitudes(
                        layout, {{BasisIndex{{1}}, {0.7, 0.0}}, {BasisIndex{{1}}, {0.7, 0.0}}}),
                    LayoutError);
    CHECK_THROWS_AS(SparseState::from_amplitudes(layout, {}, true), ParameterError);
}

TEST_CASE("ops on missing registers raise layout errors") {
    const auto layout = single_register(4);
    const auto state = basis_state(layout, {0});
    CHECK_THROWS_AS(apply_op(state, FourierTransformOp{3, false}), LayoutError);
    CHECK_THROWS_AS(apply_op(state, CoinRotationOp{0, 0.5}), LayoutError); // dim 4, not 2
}

TEST_CASE("wide layouts beyond 32-bit packing use the generic paths") {
    // total dimension 2^34 forces the hash-map gather and pairing fallbacks
    const RegisterLayout layout({{"a", 1u << 11, RegisterRole::FourierIndex},
                                 {"b", 1u << 11, RegisterRole::Coin},
                                 {"c", 1u << 11, RegisterRole::Coin},
                                 {"d", 2, RegisterRole::Flag}});
    REQUIRE(layout.total_dimension() == (1ull << 34));
    const double h = 1.0 / std::sqrt(2.0);

    auto state = basis_state(layout, {7, 1000, 2000, 0});
    state = apply_op(state, FourierTransformOp{3, false}); // pairless two-level
    CHECK(state.support_size() == 2);
    CHECK(std::abs(state.amplitude(BasisIndex{{7, 1000, 2000, 0}}) - cplx(h, 0)) < 1e-12);
    CHECK(std::abs(state.amplitude(BasisIndex{{7, 1000, 2000, 1}}) - cplx(h, 0)) < 1e-12);

    state = apply_op(state, FourierTransformOp{3, false}); // paired two-level
    CHECK(state.support_size() == 1);
    CHECK(std::abs(state.amplitude(BasisIndex{{7, 1000, 2000, 0}}) - cplx(1, 0)) < 1e-10);

    state = apply_op(state, FourierTransformOp{0, false}); // hash-map gather
    CHECK(state.support_size() == (1u << 11));
    state = apply_op(state, FourierTransformOp{0, true});
    CHECK(state.support_size() == 1);
    CHECK(std::abs(state.amplitude(BasisIndex{{7, 1000, 2000, 0}}) - cplx(1, 0)) < 1e-10);
}
