#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "exord/predicate.hpp"
#include "exord/registers.hpp"
#include "exord/rng.hpp"

namespace exord {

// Amplitudes below this modulus are floating-point dust from cancellations
// and get dropped; genuine amplitudes at desk scale sit far above it.
inline constexpr double kPruneThreshold = 1e-14;
// Allowed drift of the squared norm from 1 after any program application.
inline constexpr double kNormTolerance = 1e-12;
// Per-amplitude tolerance for program-inverse identities.
inline constexpr double kInverseTolerance = 1e-10;

struct Entry {
    std::uint64_t key; // packed basis tuple
    double re;
    double im;

    std::complex<double> amplitude() const { return {re, im}; }
    double norm_sq() const { return re * re + im * im; }
};

// Normalized sparse complex state over a register layout. Entries carry
// distinct packed keys; the entry order is deterministic for a given op
// sequence (first-seen group order inside transforms), which keeps seeded
// measurement reproducible.
class SparseState {
public:
    explicit SparseState(RegisterLayout layout) : layout_(std::move(layout)) {}

    static SparseState zero_state(const RegisterLayout& layout);
    // Entries are normalized if requested; duplicate keys are rejected.
    static SparseState from_amplitudes(const RegisterLayout& layout,
                                       std::vector<std::pair<BasisIndex, std::complex<double>>> amps,
                                       bool normalize = false);

    const RegisterLayout& layout() const { return layout_; }
    std::size_t support_size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    std::vector<Entry>& mutable_entries() { return entries_; }

    std::complex<double> amplitude(const BasisIndex& idx) const;
    std::complex<double> amplitude(std::uint64_t packed) const;

    // Compensated sum of squared moduli.
    double norm_sq() const;

    void prune(double threshold = kPruneThreshold);
    void check_norm(double tolerance = kNormTolerance) const;
    // Single pass over the entries: drops dust and validates the norm.
    void prune_and_check_norm(double threshold = kPruneThreshold,
                              double tolerance = kNormTolerance);

private:
    RegisterLayout layout_;
    std::vector<Entry> entries_;
};

double success_probability(const SparseState& state, const PredicateOracle& oracle);

struct MeasureResult {
    std::vector<std::uint32_t> outcome; // one value per measured register
    SparseState collapsed;
};

// Samples the selected registers from the marginal distribution and collapses.
// Identical seed stream, identical outcome.
MeasureResult measure(const SparseState& state, std::span<const std::size_t> register_indices,
                      SeededRng& rng);
MeasureResult measure(const SparseState& state, std::initializer_list<std::size_t> register_indices,
                      SeededRng& rng);

} // namespace exord
