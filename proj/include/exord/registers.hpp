#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exord/errors.hpp"

namespace exord {

enum class RegisterRole {
    FourierIndex, // the |k> register; transforms on it count as exact-QFT calls
    GroupElement, // holds indices into a group enumeration
    Coin,         // auxiliary dimension-2 register (|b>)
    Flag,         // dimension-2 marking register (|chi>)
};

const char* register_role_name(RegisterRole role);

struct RegisterSpec {
    std::string name;
    std::uint32_t dimension = 1;
    RegisterRole role = RegisterRole::Coin;
};

// One basis tuple, one value per register.
struct BasisIndex {
    std::vector<std::uint32_t> values;
};

// An ordered list of registers with fixed dimensions. Basis tuples are packed
// row-major into a single 64-bit index (first register varies slowest).
class RegisterLayout {
public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<RegisterSpec> registers);

    std::size_t register_count() const { return registers_.size(); }
    const RegisterSpec& reg(std::size_t i) const { return registers_.at(i); }
    const std::vector<RegisterSpec>& registers() const { return registers_; }

    std::size_t index_of(const std::string& name) const;

    std::uint64_t dimension(std::size_t i) const { return registers_.at(i).dimension; }
    std::uint64_t stride(std::size_t i) const { return strides_.at(i); }
    std::uint64_t total_dimension() const { return total_dimension_; }

    std::uint64_t pack(const BasisIndex& idx) const;
    BasisIndex unpack(std::uint64_t packed) const;
    std::uint64_t value_at(std::uint64_t packed, std::size_t i) const {
        return (packed / strides_[i]) % registers_[i].dimension;
    }

    bool operator==(const RegisterLayout& other) const;
    bool operator!=(const RegisterLayout& other) const { return !(*this == other); }

private:
    std::vector<RegisterSpec> registers_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t total_dimension_ = 1;
};

// Exact unsigned division by a fixed 32-bit divisor via multiply+shift
// (Granlund-Montgomery). Used in the hot sparse-state loops where the
// divisor is a register stride known per operation.
struct FastDiv32 {
    std::uint64_t magic = 0;
    int shift = 0;
    std::uint32_t divisor = 1;

    FastDiv32() = default;
    explicit FastDiv32(std::uint32_t d);

    std::uint32_t divide(std::uint32_t x) const {
        if (divisor == 1) return x;
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(x) * magic) >> (32 + shift));
    }
};

// Pulls one register's value out of packed keys. Uses FastDiv32 when every
// key of the layout fits in 32 bits, plain division otherwise.
struct RegisterExtractor {
    std::uint64_t stride = 1;
    std::uint32_t dim = 1;
    FastDiv32 div_stride;
    FastDiv32 div_dim;
    bool fast = false;

    RegisterExtractor() = default;
    RegisterExtractor(const RegisterLayout& layout, std::size_t reg_index) {
        stride = layout.stride(reg_index);
        dim = static_cast<std::uint32_t>(layout.dimension(reg_index));
        fast = layout.total_dimension() <= (1ull << 32) && stride <= UINT32_MAX;
        if (fast) {
            div_stride = FastDiv32(static_cast<std::uint32_t>(stride));
            div_dim = FastDiv32(dim);
        }
    }

    std::uint32_t value(std::uint64_t key) const {
        if (fast) {
            const std::uint32_t q = div_stride.divide(static_cast<std::uint32_t>(key));
            return q - div_dim.divide(q) * dim;
        }
        return static_cast<std::uint32_t>((key / stride) % dim);
    }
};

} // namespace exord
