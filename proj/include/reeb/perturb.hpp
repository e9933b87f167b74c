#pragma once

#include <cstdint>
#include <vector>

#include "reeb/rational.hpp"

namespace reeb {

// Decomposition of the m-fold cover of a degenerate orbit with rotation number
// a/b after a small perturbation: the surviving core orbit with multiplicity
// m0 plus b-strand braided orbits with multiplicities parts[k], subject to
// m0 + b * sum(parts) = m.  For integer rotation (b = 1) the core is not
// distinguished and m0 is forced to 0.
struct PerturbationConfig {
    std::int64_t a = 0;
    std::int64_t b = 1;
    std::int64_t m = 1;  // total multiplicity of the degenerate orbit
    std::int64_t m0 = 0; // multiplicity of the surviving core orbit
    std::vector<std::int64_t> parts; // multiplicities of the braided orbits

    void validate() const; // throws std::invalid_argument
    std::int64_t parts_sum() const;
};

// builds a config with m computed from the strand-count constraint
PerturbationConfig make_config(std::int64_t a, std::int64_t b, std::int64_t m0,
                               std::vector<std::int64_t> parts);

// writhe of the limiting weighted braid: a(b-1) sum m_k^2 + 2 a m0 sum m_k
// + a b sum_{k != k'} m_k m_k'
std::int64_t limit_writhe(const PerturbationConfig& cfg);

struct IntInterval {
    std::int64_t lo = 0, hi = 0;
    bool operator==(const IntInterval&) const = default;
};

// All achievable values of the total perturbed Conley-Zehnder sum minus the
// degenerate one.  Terms whose limiting rotation number is an integer x may
// land on any of floor+ceil in {2x-1, 2x, 2x+1}; all other terms are pinned.
IntInterval cz_defect_range(const PerturbationConfig& cfg);

struct LocalBoundReport {
    std::int64_t max_abs_defect = 0;
    std::int64_t bound = 0; // 2m
    bool pass = false;
};

// worst case of |-(limit writhe) - (perturbed CZ sum) + (degenerate CZ sum)|
// over the defect range, against the bound 2m
LocalBoundReport local_defect_bound(const PerturbationConfig& cfg);

struct GlobalBoundReport {
    IntInterval shift;              // achievable total index shift I' - I
    std::int64_t max_abs_shift = 0;
    std::int64_t bound = 0;         // 2 (sum of alpha m's + sum of beta m's)
    bool pass = false;
};

// index shift of a perturbed orbit-set pair: each alpha config contributes its
// writhe plus CZ defect, each beta config subtracts the same expression
GlobalBoundReport global_shift_bound(const std::vector<PerturbationConfig>& alphas,
                                     const std::vector<PerturbationConfig>& betas);

// residual of the exact cancellation between the limit writhe and the two
// smoothed Conley-Zehnder centers: writhe + core/braid center - degenerate
// center; zero for every valid configuration
Rational center_cancellation_residual(const PerturbationConfig& cfg);

// all valid configurations with |a| <= a_max, b <= b_max, m <= m_max, in a
// fixed deterministic order
std::vector<PerturbationConfig> enumerate_configs(std::int64_t a_max, std::int64_t b_max,
                                                  std::int64_t m_max);

} // namespace reeb
