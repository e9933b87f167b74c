#include "reeb/perturb.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "reeb/index.hpp"
#include "reeb/scalar.hpp"

namespace reeb {

std::int64_t PerturbationConfig::parts_sum() const {
    std::int64_t s = 0;
    for (std::int64_t p : parts) s += p;
    return s;
}

void PerturbationConfig::validate() const {
    if (b < 1) throw std::invalid_argument("perturbation config needs b >= 1");
    if (std::gcd(a < 0 ? -a : a, b) != 1)
        throw std::invalid_argument("perturbation config needs gcd(|a|, b) = 1");
    if (m < 1) throw std::invalid_argument("perturbation config needs m >= 1");
    if (m0 < 0) throw std::invalid_argument("core multiplicity must be nonnegative");
    if (b == 1 && m0 != 0)
        throw std::invalid_argument("integer rotation keeps no distinguished core: m0 = 0");
    for (std::int64_t p : parts)
        if (p < 1) throw std::invalid_argument("braided multiplicities must be positive");
    if (m0 + b * parts_sum() != m)
        throw std::invalid_argument("strand count violated: m0 + b * sum(parts) != m");
}

PerturbationConfig make_config(std::int64_t a, std::int64_t b, std::int64_t m0,
                               std::vector<std::int64_t> parts) {
    PerturbationConfig cfg;
    cfg.a = a;
    cfg.b = b;
    cfg.m0 = m0;
    cfg.parts = std::move(parts);
    cfg.m = m0 + b * cfg.parts_sum();
    cfg.validate();
    return cfg;
}

std::int64_t limit_writhe(const PerturbationConfig& cfg) {
    cfg.validate();
    std::int64_t s = cfg.parts_sum(), s2 = 0;
    for (std::int64_t p : cfg.parts) s2 += p * p;
    return cfg.a * (cfg.b - 1) * s2 + 2 * cfg.a * cfg.m0 * s + cfg.a * cfg.b * (s * s - s2);
}

IntInterval cz_defect_range(const PerturbationConfig& cfg) {
    cfg.validate();
    const Scalar theta = Scalar::rational(Rational(cfg.a, cfg.b));
    const std::int64_t degenerate = cz_total(theta, cfg.m);

    // perturbed centers: the core keeps rotation near a/b, each braided orbit
    // has integer limit rotation a per cover
    std::int64_t center = cz_total(theta, cfg.m0);
    for (std::int64_t p : cfg.parts) center += cfg.a * p * (p + 1);
    center -= degenerate;

    // one +/-1 ambiguity per term whose limit rotation is an integer: core
    // covers with b | l, and every braided cover
    const std::int64_t radius = cfg.m0 / cfg.b + cfg.parts_sum();
    return {center - radius, center + radius};
}

LocalBoundReport local_defect_bound(const PerturbationConfig& cfg) {
    const IntInterval r = cz_defect_range(cfg);
    const std::int64_t w = limit_writhe(cfg);
    LocalBoundReport rep;
    rep.max_abs_defect = std::max(std::abs(-w - r.lo), std::abs(-w - r.hi));
    rep.bound = 2 * cfg.m;
    rep.pass = rep.max_abs_defect <= rep.bound;
    return rep;
}

GlobalBoundReport global_shift_bound(const std::vector<PerturbationConfig>& alphas,
                                     const std::vector<PerturbationConfig>& betas) {
    GlobalBoundReport rep;
    std::int64_t lo = 0, hi = 0, total = 0;
    for (const auto& cfg : alphas) {
        const IntInterval r = cz_defect_range(cfg);
        const std::int64_t w = limit_writhe(cfg);
        lo += w + r.lo;
        hi += w + r.hi;
        total += cfg.m;
    }
    for (const auto& cfg : betas) {
        const IntInterval r = cz_defect_range(cfg);
        const std::int64_t w = limit_writhe(cfg);
        lo -= w + r.hi;
        hi -= w + r.lo;
        total += cfg.m;
    }
    rep.shift = {lo, hi};
    rep.max_abs_shift = std::max(std::abs(lo), std::abs(hi));
    rep.bound = 2 * total;
    rep.pass = rep.max_abs_shift <= rep.bound;
    return rep;
}

Rational center_cancellation_residual(const PerturbationConfig& cfg) {
    cfg.validate();
    const Rational rot(cfg.a, cfg.b);
    const std::int64_t s = cfg.parts_sum();
    std::int64_t sq = 0;
    for (std::int64_t p : cfg.parts) sq += p * (p + 1);

    const Rational core = rot * Rational(cfg.m0 * cfg.m0 + cfg.m0);
    const Rational perturbed_center = core + Rational(cfg.a * sq);
    const Rational degenerate_center =
        core + Rational(cfg.a * (2 * cfg.m0 + 1) * s + cfg.a * cfg.b * s * s);
    return Rational(limit_writhe(cfg)) + perturbed_center - degenerate_center;
}

namespace {
void partitions_into(std::int64_t total, std::int64_t max_part, std::vector<std::int64_t>& cur,
                     const std::function<void(const std::vector<std::int64_t>&)>& emit) {
    if (total == 0) {
        emit(cur);
        return;
    }
    for (std::int64_t p = std::min(total, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_into(total - p, p, cur, emit);
        cur.pop_back();
    }
}
} // namespace

std::vector<PerturbationConfig> enumerate_configs(std::int64_t a_max, std::int64_t b_max,
                                                  std::int64_t m_max) {
    if (a_max < 0 || b_max < 1 || m_max < 1)
        throw std::invalid_argument("enumerate_configs needs a_max >= 0, b_max >= 1, m_max >= 1");
    std::vector<PerturbationConfig> out;
    for (std::int64_t b = 1; b <= b_max; ++b)
        for (std::int64_t a = -a_max; a <= a_max; ++a) {
            if (std::gcd(a < 0 ? -a : a, b) != 1) continue;
            const std::int64_t m0_cap = (b == 1) ? 0 : m_max;
            for (std::int64_t m0 = 0; m0 <= m0_cap; ++m0)
                for (std::int64_t s = (m0 == 0) ? 1 : 0; m0 + b * s <= m_max; ++s) {
                    std::vector<std::int64_t> cur;
                    partitions_into(s, s == 0 ? 1 : s, cur,
                                    [&](const std::vector<std::int64_t>& parts) {
                                        out.push_back(make_config(a, b, m0, parts));
                                    });
                }
        }
    return out;
}

} // namespace reeb
