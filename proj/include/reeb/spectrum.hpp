#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "reeb/model.hpp"

namespace reeb {

struct SpectrumEntry {
    std::int64_t rank = 0;
    std::int64_t m1 = 0, m2 = 0;
    Scalar action;
    std::optional<std::int64_t> index;
};

// visits the k_max smallest admissible actions m1*T1 + m2*T2 in increasing order
// (ties broken by (m1, m2) lexicographically); requires exact periods
void enumerate_actions(
    const TwoOrbitModel& model, std::int64_t k_max,
    const std::function<void(std::int64_t rank, std::int64_t m1, std::int64_t m2,
                             const Scalar& action)>& emit);

inline constexpr std::int64_t kDefaultSpectrumBudget = 20'000'000;

std::vector<SpectrumEntry> enumerate_spectrum(const TwoOrbitModel& model, std::int64_t k_max,
                                              bool with_index = false,
                                              std::int64_t max_entries = kDefaultSpectrumBudget);

// k-th spectral value of E(a,b) with the index identity re-verified at rank k;
// requires an irrational axis ratio (otherwise the spectrum is degenerate)
Scalar ech_spectral_invariant(const Scalar& a, const Scalar& b, std::int64_t k);

struct AsymptoticsRow {
    std::int64_t k = 0;
    Scalar value;     // N_k
    Scalar ratio;     // N_k^2 / (2k)
    Scalar deviation; // ratio - a*b
};

std::vector<AsymptoticsRow> volume_asymptotics(const Scalar& a, const Scalar& b,
                                               const std::vector<std::int64_t>& ks);

struct MonotonicityReport {
    bool strictly_increasing = true;
    std::int64_t first_tie_rank = -1; // rank of the first member of the first tied pair
    Scalar tie_action;
};

// entries must be sorted by action (as produced by enumerate_spectrum)
MonotonicityReport monotonicity_check(const std::vector<SpectrumEntry>& entries);

} // namespace reeb
