#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "exord/registers.hpp"

namespace exord {

// Parameters of the order-finding marking predicate chi_j: the current
// divisor d of the order, the modulus m, and the sweep index j >= -1.
struct ChiParams {
    std::uint64_t d = 1;
    std::uint64_t m = 1;
    std::int32_t j = -1;
};

// Smallest nonnegative representative of v mod m (rep of the zero class is 0).
std::uint64_t rep(std::int64_t v, std::uint64_t m);

// chi_j(k, b) = 1  iff  rep(d*k) >= m/2  or  (b = 1 and 0 < rep(d*k) <= 2^j).
bool chi_j(std::uint64_t k, std::uint32_t b, const ChiParams& params);

// A total boolean function on basis tuples, described by structured
// parameters rather than closures so it can be serialized into traces.
class PredicateOracle {
public:
    enum class Kind {
        Never,
        Always,
        ValueEquals,   // reg_a == value
        ValueAtLeast,  // reg_a >= value
        FlagSet,       // reg_a == 1 (marking flag)
        OrderChi,      // chi_j(k = reg_a, b = reg_b)
        CosetCoin,     // reg_a indexes an element outside a subgroup and reg_b == 1
    };

    static PredicateOracle never();
    static PredicateOracle always();
    static PredicateOracle value_equals(std::size_t reg, std::uint64_t value);
    static PredicateOracle value_at_least(std::size_t reg, std::uint64_t value);
    static PredicateOracle flag_set(std::size_t flag_reg);
    static PredicateOracle order_chi(std::size_t k_reg, std::size_t b_reg, ChiParams params);
    // outside_subgroup[i] is true when the element with enumeration index i
    // lies outside the subgroup.
    static PredicateOracle coset_coin(std::size_t element_reg, std::size_t coin_reg,
                                      std::shared_ptr<const std::vector<std::uint8_t>> outside_subgroup);

    Kind kind() const { return kind_; }
    const ChiParams& chi_params() const { return chi_; }
    bool references_register(std::size_t reg) const;

    void validate_against(const RegisterLayout& layout) const;
    bool evaluate(const RegisterLayout& layout, std::uint64_t packed) const;
    bool evaluate(const RegisterLayout& layout, const BasisIndex& idx) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::Never;
    std::size_t reg_a_ = 0;
    std::size_t reg_b_ = 0;
    std::uint64_t value_ = 0;
    ChiParams chi_;
    std::shared_ptr<const std::vector<std::uint8_t>> mask_;

    friend struct OracleEvaluator;
};

// Loop-friendly evaluator: resolves register strides once and tabulates
// chi_j over (k, b) so the per-entry work is extraction plus a load.
struct OracleEvaluator {
    OracleEvaluator(const PredicateOracle& oracle, const RegisterLayout& layout);

    bool operator()(std::uint64_t packed) const {
        switch (oracle->kind()) {
        case PredicateOracle::Kind::Never:
            return false;
        case PredicateOracle::Kind::Always:
            return true;
        case PredicateOracle::Kind::ValueEquals:
            return reg_a.value(packed) == value;
        case PredicateOracle::Kind::ValueAtLeast:
            return reg_a.value(packed) >= value;
        case PredicateOracle::Kind::FlagSet:
            return reg_a.value(packed) == 1;
        case PredicateOracle::Kind::OrderChi:
            return chi_table[reg_a.value(packed) * 2 + reg_b.value(packed)] != 0;
        case PredicateOracle::Kind::CosetCoin:
            return reg_b.value(packed) == 1 && (*mask)[reg_a.value(packed)] != 0;
        }
        return false;
    }

    const PredicateOracle* oracle;
    RegisterExtractor reg_a;
    RegisterExtractor reg_b;
    std::uint64_t value = 0;
    const std::vector<std::uint8_t>* mask = nullptr;
    std::vector<std::uint8_t> chi_table;
};

} // namespace exord
