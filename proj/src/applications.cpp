#include "exord/applications.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace exord {

namespace {

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) {
            result = static_cast<std::uint64_t>((static_cast<unsigned __int128>(result) * base) % mod);
        }
        base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % mod);
        exp >>= 1;
    }
    return result;
}

std::vector<std::uint64_t> default_candidate_sweep(std::uint64_t n, std::uint32_t max_candidates) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t c = 2; c < n && primes.size() < max_candidates; ++c) {
        bool prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(c);
    }
    return primes;
}

// Largest divisor of n whose primes all divide s.
std::uint64_t shared_prime_part(std::uint64_t n, std::uint64_t s) {
    std::uint64_t part = 1;
    std::uint64_t g = gcd_u64(n, s);
    while (g > 1) {
        n /= g;
        part *= g;
        g = gcd_u64(n, g);
    }
    return part;
}

std::uint32_t ceil_log2(std::uint64_t v) {
    std::uint32_t r = 0;
    while ((1ull << r) < v) ++r;
    return r;
}

} // namespace

PrimalityVerdict primality_test(std::uint64_t n, SeededRng& rng, const PrimalityOptions& options) {
    if (n < 2) throw ParameterError("primality testing needs n >= 2");
    PrimalityVerdict verdict;
    verdict.n = n;
    verdict.seed = rng.seed();

    if (n == 2) {
        verdict.kind = PrimalityVerdict::Kind::Prime;
        verdict.witness = 1; // identity of Z_2^*, order 1 = n-1
        verdict.detail = "n=2";
        return verdict;
    }
    if (n % 2 == 0) {
        verdict.kind = PrimalityVerdict::Kind::Composite;
        verdict.witness = 2;
        verdict.witness_gcd = 2;
        verdict.detail = "even";
        return verdict;
    }

    std::vector<std::uint64_t> sweep =
        options.candidates.empty() ? default_candidate_sweep(n, options.max_candidates)
                                   : options.candidates;
    if (options.randomize_order) {
        for (std::size_t i = sweep.size(); i > 1; --i) {
            std::swap(sweep[i - 1], sweep[rng.next_below(i)]);
        }
    }

    for (std::uint64_t x : sweep) {
        if (x < 2 || x >= n) {
            throw ParameterError("primality candidates must satisfy 1 < x < n");
        }
        PrimalityCandidateRecord record;
        record.x = x;
        const std::uint64_t g = gcd_u64(x, n);
        if (g > 1) {
            record.outcome = "gcd-witness";
            verdict.candidates.push_back(record);
            verdict.kind = PrimalityVerdict::Kind::Composite;
            verdict.witness = x;
            verdict.witness_gcd = g;
            verdict.detail = "gcd(" + std::to_string(x) + "," + std::to_string(n) + ") = " + std::to_string(g);
            return verdict;
        }
        const std::uint64_t residue = powmod_u64(x, (n - 1) / 2, n);
        if (residue != 1 && residue != n - 1) {
            record.outcome = "euler-violation";
            verdict.candidates.push_back(record);
            verdict.kind = PrimalityVerdict::Kind::Composite;
            verdict.witness = x;
            verdict.witness_residue = residue;
            verdict.detail = std::to_string(x) + "^((n-1)/2) = " + std::to_string(residue) +
                             " is neither 1 nor n-1";
            return verdict;
        }
        if (residue == 1) {
            record.outcome = "euler-plus-one";
            verdict.candidates.push_back(record);
            continue;
        }
        // residue = -1, so x^(n-1) = 1 and m = n-1 is a valid multiple
        const OrderInstance inst(CyclicGroupHandle::units_mod_n(static_cast<std::uint32_t>(n)),
                                 static_cast<GroupElement>(x), n - 1);
        const OrderResult order = find_order(inst, rng);
        verdict.counters += order.trace.counters;
        record.order = order.order;
        if (order.order == n - 1) {
            record.outcome = "order-maximal";
            verdict.candidates.push_back(record);
            verdict.kind = PrimalityVerdict::Kind::Prime;
            verdict.witness = x;
            verdict.detail = "order(" + std::to_string(x) + ") = n-1";
            return verdict;
        }
        record.outcome = "order-not-maximal";
        verdict.candidates.push_back(record);
    }

    verdict.kind = PrimalityVerdict::Kind::Inconclusive;
    verdict.detail = "candidate sweep exhausted without a certificate";
    return verdict;
}

PrimitiveOp build_Br(std::uint64_t r, std::uint64_t m, std::size_t coin_reg) {
    if (r < 1 || r >= m) throw ParameterError("B_r rotation needs 1 <= r < m");
    if (m % r != 0) throw ParameterError("B_r rotation needs r | m");
    const double s = static_cast<double>(m) / (2.0 * static_cast<double>(m - r));
    if (s > 1.0) throw ParameterError("B_r rotation target amplitude exceeds 1");
    return CoinRotationOp{coin_reg, std::asin(std::sqrt(s))};
}

std::pair<ReversibleProgram, PredicateOracle> build_P(const CyclicGroupHandle& group,
                                                      GroupElement x, std::uint64_t r) {
    const std::uint64_t m = group.order();
    if (r >= m) throw std::logic_error("procedure P needs r < |G|: x is already a generator");
    if (group.pow(x, r) != group.identity()) {
        throw ParameterError("r is not the order of x");
    }

    auto outside = std::make_shared<std::vector<std::uint8_t>>(m, 1);
    GroupElement acc = group.identity();
    for (std::uint64_t t = 0; t < r; ++t) {
        (*outside)[group.index_of(acc)] = 0;
        acc = group.mul(acc, x);
    }

    const RegisterLayout layout({
        {"y", static_cast<std::uint32_t>(m), RegisterRole::FourierIndex},
        {"b", 2, RegisterRole::Coin},
        {"flag", 2, RegisterRole::Flag},
    });
    const std::size_t y_reg = 0, b_reg = 1, flag_reg = 2;
    ReversibleProgram prog(layout);
    prog.append(FourierTransformOp{y_reg, false});
    prog.append(build_Br(r, m, b_reg));
    prog.append(PermutationMarkOp{flag_reg, PredicateOracle::coset_coin(y_reg, b_reg, outside)});
    return {std::move(prog), PredicateOracle::flag_set(flag_reg)};
}

std::pair<std::uint64_t, std::uint64_t> coprime_split(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) throw ParameterError("coprime split needs positive inputs");
    // Shared-prime parts carry the full exponents from each side.
    const std::uint64_t big_a = shared_prime_part(a, b);
    const std::uint64_t big_b = shared_prime_part(b, a);
    const std::uint64_t pure_a = a / big_a;
    const std::uint64_t pure_b = b / big_b;
    // Of the shared primes, those with a strictly larger exponent in a stay
    // on the a side, strictly larger in b on the b side, ties go to a.
    const std::uint64_t g = gcd_u64(big_a, big_b);
    const std::uint64_t a_heavy = big_a / g; // supported on primes where a wins
    const std::uint64_t b_heavy = big_b / g;
    const std::uint64_t u_shared = shared_prime_part(big_a, a_heavy);
    const std::uint64_t v_shared = shared_prime_part(big_b, b_heavy);
    std::uint64_t ties = big_a / u_shared; // primes with equal exponents go to the a side
    ties /= shared_prime_part(ties, b_heavy);
    return {pure_a * u_shared * ties, pure_b * v_shared};
}

GroupElement combine_elements(const CyclicGroupHandle& group, GroupElement x, std::uint64_t r_x,
                              GroupElement y, std::uint64_t r_y) {
    const auto [u, v] = coprime_split(r_x, r_y);
    const GroupElement xs = group.pow(x, r_x / u);
    const GroupElement ys = group.pow(y, r_y / v);
    return group.mul(xs, ys);
}

PrimitiveResult find_primitive(const CyclicGroupHandle& group, std::optional<GroupElement> start,
                               SeededRng& rng) {
    if (group.backend() == GroupBackend::UnitsModN) {
        throw GroupError("primitive finding needs a field backend (fp or fpk)");
    }
    const std::uint64_t m = group.order(); // q - 1
    PrimitiveResult result;
    result.trace.seed = rng.seed();

    GroupElement x = start.has_value()
                         ? *start
                         : group.element_at(static_cast<std::uint32_t>(rng.next_below(m)));
    if (!group.contains(x)) throw GroupError("start element is not in the group");

    OrderResult order = find_order(OrderInstance(group, x, m), rng);
    result.trace.counters += order.trace.counters;
    result.trace.start = x;
    result.trace.start_order = order.order;
    std::uint64_t r = order.order;

    const std::uint32_t max_rounds = ceil_log2(m + 1) + 2;
    const std::size_t y_reg = 0;
    while (r < m) {
        if (result.trace.rounds.size() >= max_rounds) {
            throw InternalError("primitive finding exceeded the round bound");
        }
        auto [prep, flag_oracle] = build_P(group, x, r);
        SparseState psi = run_program_from_zero(prep, &result.trace.counters);
        const double pre_boost = success_probability(psi, flag_oracle);
        const ReversibleProgram q =
            build_Q(prep, flag_oracle, AmplificationConfig{{0.0, 1.0}, {0.0, 1.0}, 1});
        const SparseState boosted = run_program(psi, q, &result.trace.counters);
        const auto measured = measure(boosted, {y_reg}, rng);
        const GroupElement y = group.element_at(measured.outcome[0]);

        const OrderResult y_order = find_order(OrderInstance(group, y, m), rng);
        result.trace.counters += y_order.trace.counters;
        const GroupElement combined = combine_elements(group, x, r, y, y_order.order);
        const std::uint64_t new_order = lcm_u64(r, y_order.order);

        PrimitiveRoundRecord record;
        record.x = x;
        record.r_x = r;
        record.y = y;
        record.r_y = y_order.order;
        record.combined = combined;
        record.new_order = new_order;
        record.pre_boost_probability = pre_boost;
        result.trace.rounds.push_back(record);

        x = combined;
        r = new_order;
    }
    result.generator = x;
    return result;
}

} // namespace exord
