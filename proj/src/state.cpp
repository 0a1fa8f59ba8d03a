#include "exord/state.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "exord/errors.hpp"

namespace exord {

SparseState SparseState::zero_state(const RegisterLayout& layout) {
    SparseState s(layout);
    s.entries_.push_back({0, 1.0, 0.0});
    return s;
}

SparseState SparseState::from_amplitudes(
    const RegisterLayout& layout,
    std::vector<std::pair<BasisIndex, std::complex<double>>> amps, bool normalize) {
    SparseState s(layout);
    std::unordered_set<std::uint64_t> seen;
    for (const auto& [idx, amp] : amps) {
        const std::uint64_t key = layout.pack(idx);
        if (!seen.insert(key).second) {
            throw LayoutError("duplicate basis index in state construction");
        }
        s.entries_.push_back({key, amp.real(), amp.imag()});
    }
    if (normalize) {
        const double n = std::sqrt(s.norm_sq());
        if (n == 0.0) throw ParameterError("cannot normalize the zero vector");
        for (auto& e : s.entries_) {
            e.re /= n;
            e.im /= n;
        }
    }
    s.prune();
    s.check_norm();
    return s;
}

std::complex<double> SparseState::amplitude(const BasisIndex& idx) const {
    return amplitude(layout_.pack(idx));
}

std::complex<double> SparseState::amplitude(std::uint64_t packed) const {
    for (const auto& e : entries_) {
        if (e.key == packed) return e.amplitude();
    }
    return {0.0, 0.0};
}

double SparseState::norm_sq() const {
    // Kahan summation: plain accumulation over multi-million-entry states
    // can drift past the 1e-12 norm budget.
    double sum = 0.0, comp = 0.0;
    for (const auto& e : entries_) {
        const double y = e.norm_sq() - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

void SparseState::prune(double threshold) {
    const double t2 = threshold * threshold;
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [t2](const Entry& e) { return e.norm_sq() < t2; }),
                   entries_.end());
}

void SparseState::check_norm(double tolerance) const {
    const double n = norm_sq();
    if (std::abs(n - 1.0) > tolerance) {
        throw InternalError("state norm drifted: |norm^2 - 1| = " + std::to_string(std::abs(n - 1.0)));
    }
}

void SparseState::prune_and_check_norm(double threshold, double tolerance) {
    const double t2 = threshold * threshold;
    double sum = 0.0, comp = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const double n2 = entries_[i].norm_sq();
        if (n2 < t2) continue;
        const double y = n2 - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (kept != i) entries_[kept] = entries_[i];
        ++kept;
    }
    entries_.resize(kept);
    if (std::abs(sum - 1.0) > tolerance) {
        throw InternalError("state norm drifted: |norm^2 - 1| = " + std::to_string(std::abs(sum - 1.0)));
    }
}

double success_probability(const SparseState& state, const PredicateOracle& oracle) {
    OracleEvaluator eval(oracle, state.layout());
    double sum = 0.0, comp = 0.0;
    for (const auto& e : state.entries()) {
        if (!eval(e.key)) continue;
        const double y = e.norm_sq() - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

MeasureResult measure(const SparseState& state, std::span<const std::size_t> register_indices,
                      SeededRng& rng) {
    const auto& layout = state.layout();
    if (register_indices.empty()) {
        throw LayoutError("measure needs at least one register");
    }
    std::vector<RegisterExtractor> extract;
    extract.reserve(register_indices.size());
    for (std::size_t reg : register_indices) {
        if (reg >= layout.register_count()) {
            throw LayoutError("measured register index out of range");
        }
        extract.emplace_back(layout, reg);
    }

    auto project = [&](std::uint64_t key) {
        std::uint64_t p = 0;
        for (const auto& ex : extract) {
            p = p * ex.dim + ex.value(key);
        }
        return p;
    };

    std::uint64_t proj_space = 1;
    for (const auto& ex : extract) proj_space *= ex.dim;
    const bool dense = proj_space <= (1ull << 22);

    // Marginal over the measured registers; the cumulative walk runs in
    // ascending projected order (dense) or first-seen order, both
    // deterministic for a given op history.
    std::vector<double> dense_marginal;
    std::unordered_map<std::uint64_t, std::size_t> slot_of;
    std::vector<std::pair<std::uint64_t, double>> sparse_marginal;
    double total = 0.0;
    if (dense) {
        dense_marginal.assign(proj_space, 0.0);
        for (const auto& e : state.entries()) {
            dense_marginal[project(e.key)] += e.norm_sq();
        }
        for (double w : dense_marginal) total += w;
    } else {
        for (const auto& e : state.entries()) {
            const std::uint64_t p = project(e.key);
            auto [it, inserted] = slot_of.try_emplace(p, sparse_marginal.size());
            if (inserted) sparse_marginal.emplace_back(p, 0.0);
            sparse_marginal[it->second].second += e.norm_sq();
        }
        for (const auto& [k, w] : sparse_marginal) total += w;
    }
    if (total <= 0.0) {
        throw InternalError("measurement hit a zero-norm marginal");
    }

    const double u = rng.next_unit() * total;
    double cum = 0.0;
    std::uint64_t chosen = 0;
    if (dense) {
        for (std::uint64_t p = 0; p < proj_space; ++p) {
            if (dense_marginal[p] <= 0.0) continue;
            chosen = p; // falls back to the last populated value on fp edges
            cum += dense_marginal[p];
            if (u < cum) break;
        }
    } else {
        chosen = sparse_marginal.back().first;
        for (const auto& [k, w] : sparse_marginal) {
            cum += w;
            if (u < cum) {
                chosen = k;
                break;
            }
        }
    }

    MeasureResult result{{}, SparseState(layout)};
    result.outcome.resize(extract.size());
    {
        std::uint64_t p = chosen;
        for (std::size_t i = extract.size(); i-- > 0;) {
            result.outcome[i] = static_cast<std::uint32_t>(p % extract[i].dim);
            p /= extract[i].dim;
        }
    }

    auto& out = result.collapsed.mutable_entries();
    double kept = 0.0;
    for (const auto& e : state.entries()) {
        if (project(e.key) == chosen) {
            out.push_back(e);
            kept += e.norm_sq();
        }
    }
    const double scale = 1.0 / std::sqrt(kept);
    for (auto& e : out) {
        e.re *= scale;
        e.im *= scale;
    }
    return result;
}

MeasureResult measure(const SparseState& state, std::initializer_list<std::size_t> register_indices,
                      SeededRng& rng) {
    std::vector<std::size_t> regs(register_indices);
    return measure(state, std::span<const std::size_t>(regs), rng);
}

} // namespace exord
