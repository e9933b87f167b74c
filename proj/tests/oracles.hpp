#pragma once

// Independent reference implementations used to cross-check the library: a
// direct generate-and-sort spectrum enumerator and a winding-angle crossing
// counter for braids.  Deliberately simple and slow.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "reeb/braid.hpp"
#include "reeb/model.hpp"
#include "reeb/spectrum.hpp"

namespace oracle {

inline std::vector<reeb::SpectrumEntry> brute_force_spectrum(const reeb::TwoOrbitModel& model,
                                                             std::int64_t k) {
    using reeb::Scalar;
    for (std::int64_t n = 4;; n *= 2) {
        Scalar bound = (model.T1 + model.T2) * Scalar(n);
        std::vector<reeb::SpectrumEntry> all;
        for (std::int64_t m1 = 0;; ++m1) {
            Scalar base = model.T1 * Scalar(m1);
            if (base > bound) break;
            for (std::int64_t m2 = 0;; ++m2) {
                Scalar act = base + model.T2 * Scalar(m2);
                if (act > bound) break;
                if (!reeb::admissible(model, m1, m2)) continue;
                all.push_back({0, m1, m2, act, std::nullopt});
            }
        }
        if ((std::int64_t)all.size() < k) continue;
        std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
            auto c = Scalar::compare(a.action, b.action);
            if (c != 0) return c < 0;
            if (a.m1 != b.m1) return a.m1 < b.m1;
            return a.m2 < b.m2;
        });
        all.resize((std::size_t)k);
        for (std::int64_t i = 0; i < k; ++i) all[(std::size_t)i].rank = i;
        return all;
    }
}

// Total rotation of all pairwise strand difference vectors, in full turns.
// For a single braid this is its writhe; across two braids it is twice the
// linking number.  Follows the closing permutations through the period wrap.
inline double winding_sum(const reeb::Braid& x, const reeb::Braid& y, bool cross_only) {
    double total = 0;
    auto diff_angle = [](std::complex<double> w0, std::complex<double> w1) {
        return std::arg(w1 * std::conj(w0));
    };
    for (int u = 0; u < x.strands; ++u)
        for (int v = 0; v < y.strands; ++v) {
            if (!cross_only && u == v) continue;
            for (int k = 0; k < x.samples; ++k) {
                std::complex<double> w0 = x.at(k, u) - y.at(k, v);
                std::complex<double> w1;
                if (k + 1 < x.samples) w1 = x.at(k + 1, u) - y.at(k + 1, v);
                else w1 = x.at(0, x.closing[(std::size_t)u]) - y.at(0, y.closing[(std::size_t)v]);
                total += diff_angle(w0, w1);
            }
        }
    return total / (2 * M_PI);
}

// writhe by winding: ordered pairwise turn total within one braid (each
// unordered pair contributes its relative turn twice, and one full relative
// turn is two crossings, so the factors cancel)
inline long long winding_writhe(const reeb::Braid& b) {
    return (long long)std::llround(winding_sum(b, b, false));
}

// linking by winding: turn total over the cross pairs
inline long long winding_linking(const reeb::Braid& a, const reeb::Braid& b) {
    return (long long)std::llround(winding_sum(a, b, true));
}

} // namespace oracle
