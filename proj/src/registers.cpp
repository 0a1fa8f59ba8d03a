#include "exord/registers.hpp"

#include <limits>
#include <unordered_set>

namespace exord {

const char* register_role_name(RegisterRole role) {
    switch (role) {
    case RegisterRole::FourierIndex: return "fourier-index";
    case RegisterRole::GroupElement: return "group-element";
    case RegisterRole::Coin: return "coin";
    case RegisterRole::Flag: return "flag";
    }
    return "?";
}

RegisterLayout::RegisterLayout(std::vector<RegisterSpec> registers)
    : registers_(std::move(registers)) {
    if (registers_.empty()) {
        throw LayoutError("layout needs at least one register");
    }
    std::unordered_set<std::string> names;
    for (const auto& r : registers_) {
        if (r.dimension < 1) {
            throw LayoutError("register '" + r.name + "' has dimension 0");
        }
        if (!names.insert(r.name).second) {
            throw LayoutError("duplicate register name '" + r.name + "'");
        }
    }
    strides_.assign(registers_.size(), 1);
    total_dimension_ = 1;
    for (std::size_t i = registers_.size(); i-- > 0;) {
        strides_[i] = total_dimension_;
        const std::uint64_t dim = registers_[i].dimension;
        if (total_dimension_ > std::numeric_limits<std::uint64_t>::max() / dim) {
            throw LayoutError("total state dimension overflows 64 bits");
        }
        total_dimension_ *= dim;
    }
}

std::size_t RegisterLayout::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        if (registers_[i].name == name) return i;
    }
    throw LayoutError("no register named '" + name + "'");
}

std::uint64_t RegisterLayout::pack(const BasisIndex& idx) const {
    if (idx.values.size() != registers_.size()) {
        throw LayoutError("basis index has wrong number of components");
    }
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        if (idx.values[i] >= registers_[i].dimension) {
            throw LayoutError("basis value out of range for register '" + registers_[i].name + "'");
        }
        packed += idx.values[i] * strides_[i];
    }
    return packed;
}

BasisIndex RegisterLayout::unpack(std::uint64_t packed) const {
    BasisIndex idx;
    idx.values.resize(registers_.size());
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        idx.values[i] = static_cast<std::uint32_t>((packed / strides_[i]) % registers_[i].dimension);
    }
    return idx;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (registers_.size() != other.registers_.size()) return false;
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        if (registers_[i].name != other.registers_[i].name ||
            registers_[i].dimension != other.registers_[i].dimension ||
            registers_[i].role != other.registers_[i].role) {
            return false;
        }
    }
    return true;
}

FastDiv32::FastDiv32(std::uint32_t d) : divisor(d) {
    if (d == 0) throw ParameterError("FastDiv32 divisor must be nonzero");
    if (d == 1) return;
    shift = 0;
    while ((1ull << shift) < d) ++shift;
    // magic = floor(2^(32+shift) / d) + 1; exact for all 32-bit numerators.
    magic = ((static_cast<unsigned __int128>(1) << (32 + shift)) / d) + 1;
}

} // namespace exord
