#include "exord/predicate.hpp"

#include <sstream>

namespace exord {

std::uint64_t rep(std::int64_t v, std::uint64_t m) {
    if (m == 0) throw ParameterError("rep needs modulus m >= 1");
    const std::int64_t sm = static_cast<std::int64_t>(m);
    std::int64_t r = v % sm;
    if (r < 0) r += sm;
    return static_cast<std::uint64_t>(r);
}

bool chi_j(std::uint64_t k, std::uint32_t b, const ChiParams& params) {
    const std::uint64_t r = (params.d * k) % params.m;
    // rep(dk) >= m/2, with m/2 taken as a rational bound: 2*rep >= m.
    if (2 * r >= params.m) return true;
    if (b == 1 && params.j >= 0 && r > 0) {
        // r <= 2^j; from j >= 63 every r < m qualifies
        if (params.j >= 63 || r <= (1ull << params.j)) return true;
    }
    return false;
}

PredicateOracle PredicateOracle::never() {
    PredicateOracle o;
    o.kind_ = Kind::Never;
    return o;
}

PredicateOracle PredicateOracle::always() {
    PredicateOracle o;
    o.kind_ = Kind::Always;
    return o;
}

PredicateOracle PredicateOracle::value_equals(std::size_t reg, std::uint64_t value) {
    PredicateOracle o;
    o.kind_ = Kind::ValueEquals;
    o.reg_a_ = reg;
    o.value_ = value;
    return o;
}

PredicateOracle PredicateOracle::value_at_least(std::size_t reg, std::uint64_t value) {
    PredicateOracle o;
    o.kind_ = Kind::ValueAtLeast;
    o.reg_a_ = reg;
    o.value_ = value;
    return o;
}

PredicateOracle PredicateOracle::flag_set(std::size_t flag_reg) {
    PredicateOracle o;
    o.kind_ = Kind::FlagSet;
    o.reg_a_ = flag_reg;
    return o;
}

PredicateOracle PredicateOracle::order_chi(std::size_t k_reg, std::size_t b_reg, ChiParams params) {
    if (params.m == 0) throw ParameterError("chi_j needs m >= 1");
    PredicateOracle o;
    o.kind_ = Kind::OrderChi;
    o.reg_a_ = k_reg;
    o.reg_b_ = b_reg;
    o.chi_ = params;
    return o;
}

PredicateOracle PredicateOracle::coset_coin(
    std::size_t element_reg, std::size_t coin_reg,
    std::shared_ptr<const std::vector<std::uint8_t>> outside_subgroup) {
    if (!outside_subgroup) throw ParameterError("coset_coin needs a membership mask");
    PredicateOracle o;
    o.kind_ = Kind::CosetCoin;
    o.reg_a_ = element_reg;
    o.reg_b_ = coin_reg;
    o.mask_ = std::move(outside_subgroup);
    return o;
}

bool PredicateOracle::references_register(std::size_t reg) const {
    switch (kind_) {
    case Kind::Never:
    case Kind::Always:
        return false;
    case Kind::ValueEquals:
    case Kind::ValueAtLeast:
    case Kind::FlagSet:
        return reg_a_ == reg;
    case Kind::OrderChi:
    case Kind::CosetCoin:
        return reg_a_ == reg || reg_b_ == reg;
    }
    return false;
}

void PredicateOracle::validate_against(const RegisterLayout& layout) const {
    auto check = [&](std::size_t reg) {
        if (reg >= layout.register_count()) {
            throw LayoutError("predicate oracle references register " + std::to_string(reg) +
                              " but the layout has " + std::to_string(layout.register_count()));
        }
    };
    switch (kind_) {
    case Kind::Never:
    case Kind::Always:
        return;
    case Kind::ValueEquals:
    case Kind::ValueAtLeast:
    case Kind::FlagSet:
        check(reg_a_);
        return;
    case Kind::OrderChi:
    case Kind::CosetCoin:
        check(reg_a_);
        check(reg_b_);
        if (kind_ == Kind::CosetCoin && mask_ && mask_->size() != layout.dimension(reg_a_)) {
            throw LayoutError("coset mask size does not match the element register dimension");
        }
        return;
    }
}

bool PredicateOracle::evaluate(const RegisterLayout& layout, std::uint64_t packed) const {
    OracleEvaluator eval(*this, layout);
    return eval(packed);
}

bool PredicateOracle::evaluate(const RegisterLayout& layout, const BasisIndex& idx) const {
    return evaluate(layout, layout.pack(idx));
}

std::string PredicateOracle::describe() const {
    std::ostringstream out;
    switch (kind_) {
    case Kind::Never: out << "never"; break;
    case Kind::Always: out << "always"; break;
    case Kind::ValueEquals: out << "reg" << reg_a_ << "==" << value_; break;
    case Kind::ValueAtLeast: out << "reg" << reg_a_ << ">=" << value_; break;
    case Kind::FlagSet: out << "flag reg" << reg_a_ << "==1"; break;
    case Kind::OrderChi:
        out << "chi_j(d=" << chi_.d << ",m=" << chi_.m << ",j=" << chi_.j
            << "; k=reg" << reg_a_ << ",b=reg" << reg_b_ << ")";
        break;
    case Kind::CosetCoin:
        out << "outside-subgroup(reg" << reg_a_ << ") and reg" << reg_b_ << "==1";
        break;
    }
    return out.str();
}

OracleEvaluator::OracleEvaluator(const PredicateOracle& o, const RegisterLayout& layout)
    : oracle(&o) {
    o.validate_against(layout);
    switch (o.kind()) {
    case PredicateOracle::Kind::Never:
    case PredicateOracle::Kind::Always:
        break;
    case PredicateOracle::Kind::ValueEquals:
    case PredicateOracle::Kind::ValueAtLeast:
    case PredicateOracle::Kind::FlagSet:
        reg_a = RegisterExtractor(layout, o.reg_a_);
        value = o.value_;
        break;
    case PredicateOracle::Kind::OrderChi:
        reg_a = RegisterExtractor(layout, o.reg_a_);
        reg_b = RegisterExtractor(layout, o.reg_b_);
        chi_table.resize(2 * layout.dimension(o.reg_a_));
        for (std::uint64_t k = 0; k < layout.dimension(o.reg_a_); ++k) {
            chi_table[2 * k] = chi_j(k, 0, o.chi_) ? 1 : 0;
            chi_table[2 * k + 1] = chi_j(k, 1, o.chi_) ? 1 : 0;
        }
        break;
    case PredicateOracle::Kind::CosetCoin:
        reg_a = RegisterExtractor(layout, o.reg_a_);
        reg_b = RegisterExtractor(layout, o.reg_b_);
        mask = o.mask_.get();
        break;
    }
}

} // namespace exord
