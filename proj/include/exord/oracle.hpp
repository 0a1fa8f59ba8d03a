#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "exord/group.hpp"

namespace exord {

using BigInt = boost::multiprecision::cpp_int;

// A probability as a reduced fraction of arbitrary-precision integers. The
// "exactly 1/2" claims are integer identities here, not float comparisons.
class ExactProbability {
public:
    ExactProbability() = default;
    ExactProbability(BigInt numerator, BigInt denominator);

    static ExactProbability zero() { return ExactProbability(0, 1); }
    static ExactProbability one() { return ExactProbability(1, 1); }
    static ExactProbability half() { return ExactProbability(1, 2); }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    ExactProbability operator+(const ExactProbability& other) const;
    ExactProbability operator*(const ExactProbability& other) const;
    bool operator==(const ExactProbability& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }
    bool operator!=(const ExactProbability& other) const { return !(*this == other); }

    double to_double() const;
    std::string to_string() const;

private:
    BigInt num_ = 0;
    BigInt den_ = 1;
};

// Least t >= 1 with x^t = identity, by iteration.
std::uint64_t brute_order(const CyclicGroupHandle& group, GroupElement x);

// |Gamma_k|^2 for k in [0, m): 1/r when (m/r) | k, otherwise 0. Requires r | m.
std::vector<ExactProbability> gamma_distribution(std::uint64_t m, std::uint64_t r);

// Exact flag=1 weight of |psi_j> for divisor d of the order r, multiple m,
// sweep index j: sum over the Gamma support and b of chi_j(k,b)/(2r).
ExactProbability exact_success_probability(std::uint64_t d, std::uint64_t r, std::uint64_t m,
                                           std::int32_t j);

// Exact chi=1 weight of procedure P's preparation for an element of order r
// in a group of order m: (1 - r/m) * m/(2(m-r)).
ExactProbability exact_p_success_probability(std::uint64_t r, std::uint64_t m);

// All elements of maximal order |G|, by enumeration. Desk-scale only.
std::vector<GroupElement> primitive_roots(const CyclicGroupHandle& group);

bool trial_division_is_prime(std::uint64_t n);

} // namespace exord
