#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "exord/amplification.hpp"
#include "exord/group.hpp"
#include "exord/program.hpp"
#include "exord/rng.hpp"

namespace exord {

// An order-finding problem: element x of a finite abelian group together
// with a known multiple m of its order.
struct OrderInstance {
    CyclicGroupHandle group;
    GroupElement x;
    std::uint64_t m;

    OrderInstance(CyclicGroupHandle group_, GroupElement x_, std::uint64_t m_);
};

struct OrderRoundRecord {
    std::uint32_t round = 0;
    std::int32_t j = -1;
    std::uint64_t measured_k = 0;
    std::uint64_t rep_dk = 0;
    std::uint64_t d_before = 1;
    std::uint64_t d_after = 1;
    double pre_boost_probability = 0.0;
};

struct OrderTrace {
    std::vector<OrderRoundRecord> records;
    std::uint32_t rounds = 0;
    OpCounters counters;
    std::uint64_t seed = 0;
};

struct OrderResult {
    std::uint64_t order = 1;
    OrderTrace trace;
};

// The four-register sampling layout |k>|g>|b>|flag| for an instance.
RegisterLayout order_finding_layout(const OrderInstance& inst);

// U_j: |0>|0>|0>|0> -> (1/sqrt(2)) sum_{k,b} |k>|Gamma_k>|b>|chi_j(k,b)>,
// returned together with the flag=1 oracle the boost amplifies.
std::pair<ReversibleProgram, PredicateOracle> build_Uj(const OrderInstance& inst,
                                                       const ChiParams& params);

// Replaces d by lcm(d, m/gcd(m,k)); requires d*k != 0 (mod m). The result
// divides the order whenever d does and k is a sample from the Gamma support,
// and it is always a strict multiple of d, so at least 2d.
std::uint64_t update_divisor(std::uint64_t d, std::uint64_t k, std::uint64_t m);

// Exact order finding: sweeps j = -1..floor(log2 m) per round, boosts U_j
// with phases sqrt(-1), measures the k register, and climbs the divisor d.
// Terminates after the first complete sweep with no successful update.
OrderResult find_order(const OrderInstance& inst, SeededRng& rng);

} // namespace exord
