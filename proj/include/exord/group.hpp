#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exord/errors.hpp"

namespace exord {

// Enumeration and membership stay desk-scale; larger groups are refused
// instead of approximated.
inline constexpr std::uint64_t kDeskScaleGroupCap = 1ull << 16;

enum class GroupBackend { UnitsModN, PrimeField, ExtensionField };

// Element codes: the residue for Z_n^* and F_p^*, the base-p packing of the
// coefficient vector for F_{p^k}^*.
using GroupElement = std::uint32_t;

// A finite abelian group given by one of three backends. Immutable and
// cheap to copy (shared representation).
class CyclicGroupHandle {
public:
    static CyclicGroupHandle units_mod_n(std::uint32_t n);
    static CyclicGroupHandle prime_field(std::uint32_t p);
    // Coefficients c_0..c_k of a monic irreducible polynomial over F_p; an
    // empty vector selects the built-in polynomial where one exists
    // (F_4, F_8, F_9, F_16, F_25, F_27).
    static CyclicGroupHandle extension_field(std::uint32_t p, std::uint32_t k,
                                             std::vector<std::uint32_t> poly = {});
    // Grammar: zn:<n> | fp:<p> | fpk:<p>,<k>[,<c0>,...,<ck>]
    static CyclicGroupHandle parse_spec(const std::string& spec);

    GroupBackend backend() const;
    std::uint64_t order() const;           // |G|
    GroupElement identity() const;
    bool contains(GroupElement code) const;
    GroupElement mul(GroupElement a, GroupElement b) const;
    GroupElement inv(GroupElement a) const;
    GroupElement pow(GroupElement a, std::uint64_t e) const;

    const std::vector<GroupElement>& elements() const;    // canonical enumeration
    std::uint32_t index_of(GroupElement code) const;      // inverse of elements()
    GroupElement element_at(std::uint32_t index) const;

    std::string spec_string() const;                      // round-trips through parse_spec
    std::string format_element(GroupElement code) const;

    // Field backends only.
    std::uint32_t characteristic() const;
    std::uint32_t extension_degree() const;
    const std::vector<std::uint32_t>& modulus_polynomial() const;

    bool operator==(const CyclicGroupHandle& other) const { return impl_ == other.impl_; }

    // Raw tables for hot loops; pointers stay valid while the handle lives.
    struct FastOps {
        GroupBackend backend = GroupBackend::UnitsModN;
        std::uint32_t modulus = 0;                    // residue backends
        std::uint32_t code_bound = 0;
        const std::int32_t* code_to_index = nullptr;  // -1 outside the group
        const GroupElement* index_to_code = nullptr;
        const std::uint32_t* mul_table = nullptr;     // [a*code_bound+b], small extension fields only
    };
    FastOps fast_ops() const;

private:
    struct Impl;
    explicit CyclicGroupHandle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// One field per line: "p k c_0,c_1,...,c_k" (monic, coefficients mod p).
// Blank lines and '#' comments are skipped.
std::vector<CyclicGroupHandle> parse_field_spec_records(std::istream& in);
CyclicGroupHandle load_field_spec_file(const std::string& path);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

} // namespace exord
