#include "exord/oracle.hpp"

#include "exord/predicate.hpp"

namespace exord {

ExactProbability::ExactProbability(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) throw ParameterError("probability denominator is zero");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ < 0 || num_ > den_) {
        throw ParameterError("probability outside [0, 1]: " + to_string());
    }
}

ExactProbability ExactProbability::operator+(const ExactProbability& other) const {
    return ExactProbability(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

ExactProbability ExactProbability::operator*(const ExactProbability& other) const {
    return ExactProbability(num_ * other.num_, den_ * other.den_);
}

double ExactProbability::to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string ExactProbability::to_string() const {
    return num_.str() + "/" + den_.str();
}

std::uint64_t brute_order(const CyclicGroupHandle& group, GroupElement x) {
    if (!group.contains(x)) throw GroupError("element is not in the group");
    const GroupElement id = group.identity();
    GroupElement acc = x;
    std::uint64_t t = 1;
    while (acc != id) {
        acc = group.mul(acc, x);
        ++t;
        if (t > group.order()) {
            throw InternalError("element order exceeds the group order");
        }
    }
    return t;
}

std::vector<ExactProbability> gamma_distribution(std::uint64_t m, std::uint64_t r) {
    if (r == 0 || m == 0 || m % r != 0) {
        throw ParameterError("gamma distribution needs r | m");
    }
    const std::uint64_t step = m / r;
    std::vector<ExactProbability> dist(m, ExactProbability::zero());
    for (std::uint64_t k = 0; k < m; k += step) {
        dist[k] = ExactProbability(1, BigInt(r));
    }
    return dist;
}

ExactProbability exact_success_probability(std::uint64_t d, std::uint64_t r, std::uint64_t m,
                                           std::int32_t j) {
    if (r == 0 || m == 0 || m % r != 0) throw ParameterError("need r | m");
    if (d == 0 || r % d != 0) throw ParameterError("need d | r");
    if (j < -1) throw ParameterError("need j >= -1");
    const std::uint64_t step = m / r;
    const ChiParams params{d, m, j};
    // Gamma support: k = t*(m/r), each of weight 1/r; the coin superposition
    // contributes 1/2 per b.
    std::uint64_t marked = 0; // counts (k, b) pairs with chi_j = 1
    for (std::uint64_t t = 0; t < r; ++t) {
        const std::uint64_t k = t * step;
        for (std::uint32_t b = 0; b <= 1; ++b) {
            if (chi_j(k, b, params)) ++marked;
        }
    }
    return ExactProbability(BigInt(marked), BigInt(2) * r);
}

ExactProbability exact_p_success_probability(std::uint64_t r, std::uint64_t m) {
    if (r == 0 || r >= m || m % r != 0) throw ParameterError("need r | m and r < m");
    const ExactProbability outside(BigInt(m - r), BigInt(m));
    const ExactProbability coin(BigInt(m), BigInt(2) * (m - r));
    return outside * coin;
}

std::vector<GroupElement> primitive_roots(const CyclicGroupHandle& group) {
    if (group.order() > 4096) {
        throw ParameterError("primitive-root enumeration is capped at group order 4096");
    }
    std::vector<GroupElement> roots;
    for (GroupElement g : group.elements()) {
        if (brute_order(group, g) == group.order()) roots.push_back(g);
    }
    return roots;
}

bool trial_division_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

} // namespace exord
