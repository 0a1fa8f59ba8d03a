#include "exord/group.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace exord {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u64(a, b) * b;
}

namespace {

bool small_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Built-in monic irreducible polynomials, c_0..c_k.
std::vector<std::uint32_t> builtin_polynomial(std::uint32_t p, std::uint32_t k) {
    if (p == 2 && k == 2) return {1, 1, 1};          // x^2 + x + 1
    if (p == 2 && k == 3) return {1, 1, 0, 1};       // x^3 + x + 1
    if (p == 2 && k == 4) return {1, 1, 0, 0, 1};    // x^4 + x + 1
    if (p == 3 && k == 2) return {2, 2, 1};          // x^2 + 2x + 2
    if (p == 3 && k == 3) return {1, 2, 0, 1};       // x^3 + 2x + 1
    if (p == 5 && k == 2) return {2, 1, 1};          // x^2 + x + 2
    return {};
}

struct PolyModContext {
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    std::vector<std::uint32_t> poly; // c_0..c_k, monic

    // Packed codes are base-p digit strings of the coefficient vector.
    std::vector<std::uint32_t> unpack(std::uint32_t code) const {
        std::vector<std::uint32_t> c(k, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            c[i] = code % p;
            code /= p;
        }
        return c;
    }

    std::uint32_t pack(const std::vector<std::uint32_t>& c) const {
        std::uint32_t code = 0;
        for (std::uint32_t i = k; i-- > 0;) {
            code = code * p + (i < c.size() ? c[i] % p : 0);
        }
        return code;
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        const auto ca = unpack(a);
        const auto cb = unpack(b);
        std::vector<std::uint32_t> prod(2 * k - 1, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            if (ca[i] == 0) continue;
            for (std::uint32_t j = 0; j < k; ++j) {
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            }
        }
        // Reduce modulo the monic polynomial: x^k = -(c_0 + ... + c_{k-1} x^{k-1}).
        for (std::uint32_t deg = 2 * k - 2; deg >= k && deg < prod.size(); --deg) {
            const std::uint32_t lead = prod[deg];
            if (lead == 0) continue;
            prod[deg] = 0;
            for (std::uint32_t i = 0; i < k; ++i) {
                const std::uint32_t sub = (lead * poly[i]) % p;
                prod[deg - k + i] = (prod[deg - k + i] + p - sub) % p;
            }
        }
        prod.resize(k);
        return pack(prod);
    }
};

// Brute-force irreducibility over F_p: no monic divisor of degree 1..k/2.
bool polynomial_is_irreducible(std::uint32_t p, std::uint32_t k,
                               const std::vector<std::uint32_t>& poly) {
    auto poly_mod = [&](std::vector<std::uint32_t> num, const std::vector<std::uint32_t>& den) {
        const std::size_t dd = den.size() - 1;
        while (num.size() > dd) {
            const std::uint32_t lead = num.back();
            if (lead != 0) {
                // den is monic
                const std::size_t off = num.size() - 1 - dd;
                for (std::size_t i = 0; i <= dd; ++i) {
                    const std::uint32_t sub = (lead * den[i]) % p;
                    num[off + i] = (num[off + i] + p - sub) % p;
                }
            }
            num.pop_back();
        }
        return num;
    };
    for (std::uint32_t deg = 1; deg <= k / 2; ++deg) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < deg; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint32_t> div(deg + 1, 0);
            std::uint64_t c = code;
            for (std::uint32_t i = 0; i < deg; ++i) {
                div[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            div[deg] = 1; // monic
            auto rem = poly_mod(poly, div);
            if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t v) { return v == 0; })) {
                return false;
            }
        }
    }
    return true;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t n) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = n, new_r = a;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw GroupError("element is not invertible");
    if (t < 0) t += n;
    return static_cast<std::uint32_t>(t);
}

} // namespace

struct CyclicGroupHandle::Impl {
    GroupBackend backend = GroupBackend::UnitsModN;
    std::uint32_t n = 0; // modulus for UnitsModN / PrimeField
    PolyModContext field;
    std::vector<GroupElement> elements;
    std::vector<std::int32_t> index_lookup; // code -> index, -1 outside
    std::uint64_t group_order = 0;
    std::vector<std::uint32_t> code_mul_table; // small extension fields only

    bool is_member(GroupElement code) const {
        return code < index_lookup.size() && index_lookup[code] >= 0;
    }
};

CyclicGroupHandle CyclicGroupHandle::units_mod_n(std::uint32_t n) {
    if (n < 2) throw GroupError("units-mod-n needs n >= 2");
    if (n > kDeskScaleGroupCap) throw GroupError("modulus exceeds the desk-scale cap 2^16");
    auto impl = std::make_shared<Impl>();
    impl->backend = GroupBackend::UnitsModN;
    impl->n = n;
    impl->index_lookup.assign(n, -1);
    for (std::uint32_t a = 1; a < n; ++a) {
        if (std::gcd(a, n) == 1) {
            impl->index_lookup[a] = static_cast<std::int32_t>(impl->elements.size());
            impl->elements.push_back(a);
        }
    }
    impl->group_order = impl->elements.size();
    return CyclicGroupHandle(std::move(impl));
}

CyclicGroupHandle CyclicGroupHandle::prime_field(std::uint32_t p) {
    if (!small_is_prime(p)) throw GroupError("fp backend needs a prime modulus");
    auto handle = units_mod_n(p);
    auto impl = std::make_shared<Impl>(*handle.impl_);
    impl->backend = GroupBackend::PrimeField;
    return CyclicGroupHandle(std::move(impl));
}

CyclicGroupHandle CyclicGroupHandle::extension_field(std::uint32_t p, std::uint32_t k,
                                                     std::vector<std::uint32_t> poly) {
    if (!small_is_prime(p)) throw GroupError("fpk backend needs a prime characteristic");
    if (k < 1) throw GroupError("fpk backend needs degree k >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kDeskScaleGroupCap) throw GroupError("field size exceeds the desk-scale cap 2^16");
    }
    if (k == 1) {
        if (!poly.empty()) throw GroupError("degree-1 fields take no modulus polynomial");
        auto handle = prime_field(p);
        auto impl = std::make_shared<Impl>(*handle.impl_);
        impl->backend = GroupBackend::ExtensionField;
        impl->field.p = p;
        impl->field.k = 1;
        return CyclicGroupHandle(std::move(impl));
    }
    if (poly.empty()) {
        poly = builtin_polynomial(p, k);
        if (poly.empty()) {
            throw GroupError("no built-in polynomial for p=" + std::to_string(p) +
                             ", k=" + std::to_string(k) + "; supply one");
        }
    }
    if (poly.size() != k + 1) {
        throw GroupError("modulus polynomial needs k+1 coefficients c_0..c_k");
    }
    for (auto& c : poly) c %= p;
    if (poly[k] != 1) throw GroupError("modulus polynomial must be monic");
    if (!polynomial_is_irreducible(p, k, poly)) {
        throw GroupError("modulus polynomial is reducible over F_p");
    }

    auto impl = std::make_shared<Impl>();
    impl->backend = GroupBackend::ExtensionField;
    impl->field.p = p;
    impl->field.k = k;
    impl->field.poly = poly;
    impl->index_lookup.assign(q, -1);
    for (std::uint32_t code = 1; code < q; ++code) {
        impl->index_lookup[code] = static_cast<std::int32_t>(impl->elements.size());
        impl->elements.push_back(code);
    }
    impl->group_order = impl->elements.size();
    if (q <= 1024) {
        impl->code_mul_table.resize(q * q);
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                impl->code_mul_table[a * q + b] = impl->field.mul(a, b);
            }
        }
    }
    return CyclicGroupHandle(std::move(impl));
}

CyclicGroupHandle::FastOps CyclicGroupHandle::fast_ops() const {
    FastOps ops;
    ops.backend = impl_->backend;
    ops.modulus = impl_->n;
    ops.code_bound = static_cast<std::uint32_t>(impl_->index_lookup.size());
    ops.code_to_index = impl_->index_lookup.data();
    ops.index_to_code = impl_->elements.data();
    ops.mul_table = impl_->code_mul_table.empty() ? nullptr : impl_->code_mul_table.data();
    return ops;
}

GroupBackend CyclicGroupHandle::backend() const { return impl_->backend; }
std::uint64_t CyclicGroupHandle::order() const { return impl_->group_order; }

GroupElement CyclicGroupHandle::identity() const { return 1; }

bool CyclicGroupHandle::contains(GroupElement code) const { return impl_->is_member(code); }

GroupElement CyclicGroupHandle::mul(GroupElement a, GroupElement b) const {
    if (!impl_->is_member(a) || !impl_->is_member(b)) {
        throw GroupError("element outside the group");
    }
    if (impl_->backend == GroupBackend::ExtensionField && impl_->field.k > 1) {
        return impl_->field.mul(a, b);
    }
    return static_cast<GroupElement>((static_cast<std::uint64_t>(a) * b) % impl_->n);
}

GroupElement CyclicGroupHandle::pow(GroupElement a, std::uint64_t e) const {
    GroupElement result = identity();
    GroupElement base = a;
    if (!impl_->is_member(a)) throw GroupError("element outside the group");
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

GroupElement CyclicGroupHandle::inv(GroupElement a) const {
    if (!impl_->is_member(a)) throw GroupError("element outside the group");
    if (impl_->backend == GroupBackend::ExtensionField && impl_->field.k > 1) {
        // a^(q-2), since a^(q-1) = 1 for nonzero a
        return pow(a, impl_->group_order - 1);
    }
    return mod_inverse(a, impl_->n);
}

const std::vector<GroupElement>& CyclicGroupHandle::elements() const { return impl_->elements; }

std::uint32_t CyclicGroupHandle::index_of(GroupElement code) const {
    if (!impl_->is_member(code)) throw GroupError("element outside the group");
    return static_cast<std::uint32_t>(impl_->index_lookup[code]);
}

GroupElement CyclicGroupHandle::element_at(std::uint32_t index) const {
    if (index >= impl_->elements.size()) throw GroupError("element index out of range");
    return impl_->elements[index];
}

std::uint32_t CyclicGroupHandle::characteristic() const {
    if (impl_->backend == GroupBackend::UnitsModN) {
        throw GroupError("units-mod-n backend has no field characteristic");
    }
    return impl_->backend == GroupBackend::PrimeField ? impl_->n : impl_->field.p;
}

std::uint32_t CyclicGroupHandle::extension_degree() const {
    return impl_->backend == GroupBackend::ExtensionField ? impl_->field.k : 1;
}

const std::vector<std::uint32_t>& CyclicGroupHandle::modulus_polynomial() const {
    return impl_->field.poly;
}

std::string CyclicGroupHandle::spec_string() const {
    switch (impl_->backend) {
    case GroupBackend::UnitsModN:
        return "zn:" + std::to_string(impl_->n);
    case GroupBackend::PrimeField:
        return "fp:" + std::to_string(impl_->n);
    case GroupBackend::ExtensionField: {
        std::string s = "fpk:" + std::to_string(impl_->field.p) + "," + std::to_string(impl_->field.k);
        for (auto c : impl_->field.poly) s += "," + std::to_string(c);
        return s;
    }
    }
    return "?";
}

std::string CyclicGroupHandle::format_element(GroupElement code) const {
    if (impl_->backend != GroupBackend::ExtensionField || impl_->field.k == 1) {
        return std::to_string(code);
    }
    const auto coeffs = impl_->field.unpack(code);
    std::string s;
    bool first = true;
    for (std::uint32_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (!first) s += "+";
        first = false;
        if (i == 0) {
            s += std::to_string(coeffs[i]);
        } else {
            if (coeffs[i] != 1) s += std::to_string(coeffs[i]) + "*";
            s += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    if (s.empty()) s = "0";
    return s + " [" + std::to_string(code) + "]";
}

CyclicGroupHandle CyclicGroupHandle::parse_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw GroupError("group spec must look like zn:<n>, fp:<p> or fpk:<p>,<k>[,<poly>]");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    std::vector<std::uint64_t> nums;
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw GroupError("empty number in group spec '" + spec + "'");
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &pos);
        } catch (const std::exception&) {
            throw GroupError("bad number '" + tok + "' in group spec");
        }
        if (pos != tok.size()) throw GroupError("bad number '" + tok + "' in group spec");
        nums.push_back(v);
    }
    auto u32 = [](std::uint64_t v) {
        if (v > UINT32_MAX) throw GroupError("group spec value too large");
        return static_cast<std::uint32_t>(v);
    };
    if (kind == "zn") {
        if (nums.size() != 1) throw GroupError("zn spec needs exactly one modulus");
        return units_mod_n(u32(nums[0]));
    }
    if (kind == "fp") {
        if (nums.size() != 1) throw GroupError("fp spec needs exactly one prime");
        return prime_field(u32(nums[0]));
    }
    if (kind == "fpk") {
        if (nums.size() < 2) throw GroupError("fpk spec needs p and k");
        const std::uint32_t p = u32(nums[0]);
        const std::uint32_t k = u32(nums[1]);
        std::vector<std::uint32_t> poly;
        for (std::size_t i = 2; i < nums.size(); ++i) poly.push_back(u32(nums[i]));
        if (!poly.empty() && poly.size() != k + 1) {
            throw GroupError("fpk spec polynomial needs k+1 coefficients");
        }
        return extension_field(p, k, std::move(poly));
    }
    throw GroupError("unknown group kind '" + kind + "'");
}

std::vector<CyclicGroupHandle> parse_field_spec_records(std::istream& in) {
    std::vector<CyclicGroupHandle> fields;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ls(line);
        std::uint32_t p = 0, k = 0;
        std::string coeffs;
        if (!(ls >> p)) continue; // blank line
        if (!(ls >> k >> coeffs)) {
            throw GroupError("malformed field record '" + line + "' (want: p k c0,c1,...,ck)");
        }
        std::vector<std::uint32_t> poly;
        std::stringstream cs(coeffs);
        std::string tok;
        while (std::getline(cs, tok, ',')) {
            poly.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        }
        fields.push_back(CyclicGroupHandle::extension_field(p, k, std::move(poly)));
    }
    return fields;
}

CyclicGroupHandle load_field_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GroupError("cannot open field spec file '" + path + "'");
    auto fields = parse_field_spec_records(in);
    if (fields.empty()) throw GroupError("field spec file '" + path + "' has no records");
    return fields.front();
}

} // namespace exord
