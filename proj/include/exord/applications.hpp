#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exord/order_finding.hpp"

namespace exord {

// ---- derandomized primality testing ----

struct PrimalityCandidateRecord {
    std::uint64_t x = 0;
    // gcd-witness | euler-violation | euler-plus-one | order-not-maximal | order-maximal
    std::string outcome;
    std::uint64_t order = 0; // when an order-finding run happened
};

struct PrimalityVerdict {
    enum class Kind { Prime, Composite, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::uint64_t n = 0;
    std::uint64_t witness = 0;        // certifying x (Prime) or the witness x (Composite)
    std::uint64_t witness_gcd = 0;    // gcd(x, n) when > 1
    std::uint64_t witness_residue = 0; // x^((n-1)/2) mod n for Euler violations
    std::string detail;
    std::vector<PrimalityCandidateRecord> candidates;
    OpCounters counters;
    std::uint64_t seed = 0;

    bool is_prime() const { return kind == Kind::Prime; }
    bool is_composite() const { return kind == Kind::Composite; }
    bool is_inconclusive() const { return kind == Kind::Inconclusive; }
};

struct PrimalityOptions {
    // Explicit candidate sweep; when empty the default ascending prime
    // candidates 2, 3, 5, ... below n are used.
    std::vector<std::uint64_t> candidates;
    std::uint32_t max_candidates = 64;
    bool randomize_order = false; // shuffle the sweep with the seeded stream
};

// n composite when gcd(x,n) > 1 or x^((n-1)/2) != +-1 (mod n); when the power
// is -1 the order of x is computed with known multiple m = n-1, and order
// n-1 certifies primality.
PrimalityVerdict primality_test(std::uint64_t n, SeededRng& rng, const PrimalityOptions& options = {});

// ---- exact primitive-element finding ----

// The B_r rotation: |0> -> sqrt(1 - m/(2(m-r)))|0> + sqrt(m/(2(m-r)))|1>.
// Needs 1 <= r < m and r | m, which keeps the rotation real.
PrimitiveOp build_Br(std::uint64_t r, std::uint64_t m, std::size_t coin_reg = 1);

// Procedure P: uniform superposition over G, the B_r coin, and the mark
// chi(y, b) = [y outside <x> and b = 1], whose weight is exactly 1/2.
// Returns the preparation program and the flag oracle to amplify.
std::pair<ReversibleProgram, PredicateOracle> build_P(const CyclicGroupHandle& group,
                                                      GroupElement x, std::uint64_t r);

// Splits (a, b) into coprime (u, v) with u | a, v | b and u*v = lcm(a, b),
// using only gcds (no factoring).
std::pair<std::uint64_t, std::uint64_t> coprime_split(std::uint64_t a, std::uint64_t b);

// z = x^(r_x/u) * y^(r_y/v) for the coprime split (u, v): order(z) = lcm(r_x, r_y).
GroupElement combine_elements(const CyclicGroupHandle& group, GroupElement x, std::uint64_t r_x,
                              GroupElement y, std::uint64_t r_y);

struct PrimitiveRoundRecord {
    GroupElement x = 1;
    std::uint64_t r_x = 1;
    GroupElement y = 1;
    std::uint64_t r_y = 1;
    GroupElement combined = 1;
    std::uint64_t new_order = 1;
    double pre_boost_probability = 0.0;
};

struct PrimitiveTrace {
    GroupElement start = 1;
    std::uint64_t start_order = 1;
    std::vector<PrimitiveRoundRecord> rounds;
    OpCounters counters;
    std::uint64_t seed = 0;
};

struct PrimitiveResult {
    GroupElement generator = 1;
    PrimitiveTrace trace;
};

// Finds a generator of a field's unit group: order via exact order finding,
// then rounds of (P-sample y outside <x>, order of y, combine) until the
// order reaches q-1. Field backends only.
PrimitiveResult find_primitive(const CyclicGroupHandle& group, std::optional<GroupElement> start,
                               SeededRng& rng);

} // namespace exord
