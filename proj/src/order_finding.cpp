#include "exord/order_finding.hpp"

#include <stdexcept>

namespace exord {

namespace {

std::uint32_t floor_log2(std::uint64_t v) {
    std::uint32_t r = 0;
    while (v >>= 1) ++r;
    return r;
}

} // namespace

OrderInstance::OrderInstance(CyclicGroupHandle group_, GroupElement x_, std::uint64_t m_)
    : group(std::move(group_)), x(x_), m(m_) {
    if (m == 0) throw ParameterError("order multiple m must be >= 1");
    if (!group.contains(x)) throw GroupError("element is not in the group");
    if (group.pow(x, m) != group.identity()) {
        throw ParameterError("m is not a multiple of the order: x^m != identity");
    }
}

RegisterLayout order_finding_layout(const OrderInstance& inst) {
    return RegisterLayout({
        {"k", static_cast<std::uint32_t>(inst.m), RegisterRole::FourierIndex},
        {"g", static_cast<std::uint32_t>(inst.group.order()), RegisterRole::GroupElement},
        {"b", 2, RegisterRole::Coin},
        {"flag", 2, RegisterRole::Flag},
    });
}

std::pair<ReversibleProgram, PredicateOracle> build_Uj(const OrderInstance& inst,
                                                       const ChiParams& params) {
    if (params.m != inst.m) {
        throw ParameterError("chi parameters use a different modulus than the instance");
    }
    const RegisterLayout layout = order_finding_layout(inst);
    const std::size_t k_reg = 0, g_reg = 1, b_reg = 2, flag_reg = 3;
    ReversibleProgram prog(layout);
    prog.append(FourierTransformOp{k_reg, false});
    prog.append(GroupExponentiationOp{k_reg, g_reg, inst.group, inst.x});
    prog.append(FourierTransformOp{k_reg, false});
    prog.append(FourierTransformOp{b_reg, false});
    prog.append(PermutationMarkOp{flag_reg, PredicateOracle::order_chi(k_reg, b_reg, params)});
    return {std::move(prog), PredicateOracle::flag_set(flag_reg)};
}

std::uint64_t update_divisor(std::uint64_t d, std::uint64_t k, std::uint64_t m) {
    if (m == 0 || (d * k) % m == 0) {
        throw std::logic_error("update_divisor requires d*k != 0 (mod m)");
    }
    return lcm_u64(d, m / gcd_u64(m, k));
}

OrderResult find_order(const OrderInstance& inst, SeededRng& rng) {
    OrderResult result;
    result.trace.seed = rng.seed();
    if (inst.m == 1) {
        result.order = 1;
        return result;
    }

    const std::int32_t j_max = static_cast<std::int32_t>(floor_log2(inst.m));
    const std::size_t k_reg = 0;
    std::uint64_t d = 1;

    // ceil(log2 r) growing rounds plus the terminating all-fail sweep; the
    // guard only trips on a broken engine.
    const std::uint32_t max_rounds = floor_log2(inst.m) + 4;

    while (true) {
        result.trace.rounds += 1;
        const std::uint32_t round = result.trace.rounds;
        std::uint32_t updates = 0;
        for (std::int32_t j = -1; j <= j_max; ++j) {
            const ChiParams params{d, inst.m, j};
            auto [prep, flag_oracle] = build_Uj(inst, params);
            SparseState psi = run_program_from_zero(prep, &result.trace.counters);
            const double pre_boost = success_probability(psi, flag_oracle);
            // One Q with phases sqrt(-1), applied at every j without the
            // advisory a=1/2 check; the measured k is validated classically.
            const ReversibleProgram q =
                build_Q(prep, flag_oracle, AmplificationConfig{{0.0, 1.0}, {0.0, 1.0}, 1});
            const SparseState boosted = run_program(psi, q, &result.trace.counters);
            const auto measured = measure(boosted, {k_reg}, rng);
            const std::uint64_t k = measured.outcome[0];
            const std::uint64_t rep_dk = (d * k) % inst.m;

            OrderRoundRecord record;
            record.round = round;
            record.j = j;
            record.measured_k = k;
            record.rep_dk = rep_dk;
            record.d_before = d;
            record.d_after = d;
            record.pre_boost_probability = pre_boost;
            if (rep_dk != 0) {
                d = update_divisor(d, k, inst.m);
                record.d_after = d;
                ++updates;
            }
            result.trace.records.push_back(record);
        }
        if (updates == 0) break;
        if (round > max_rounds) {
            throw InternalError("order finding exceeded the round bound; divisor stuck at " +
                                std::to_string(d));
        }
    }
    result.order = d;
    return result;
}

} // namespace exord
