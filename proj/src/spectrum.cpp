#include "reeb/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "reeb/index.hpp"

namespace reeb {

namespace {

int sgn64(std::int64_t x) { return x > 0 ? 1 : x < 0 ? -1 : 0; }

// Actions are stored as integer pairs (u, v) with fixed denominators:
// action = u/D0 + (v/D1)*sqrt(d).  Comparisons square at most once; the fast
// path needs |du*D1| and |dv*D0| below 2^52 and d below 2^20, and falls back
// to arbitrary-precision rational comparison beyond that.
struct ActionField {
    std::int64_t d = 0;
    std::int64_t D0 = 1, D1 = 1;
    std::int64_t A0 = 0, A1 = 0; // T1 numerators over D0, D1
    std::int64_t B0 = 0, B1 = 0; // T2 numerators

    static ActionField make(const TwoOrbitModel& model) {
        if (!model.T1.is_exact() || !model.T2.is_exact())
            throw std::domain_error("spectrum: periods must be exact");
        const Scalar &a = model.T1, &b = model.T2;
        if (a.d() != 0 && b.d() != 0 && a.d() != b.d())
            throw field_error("spectrum: periods lie in distinct surd fields");
        ActionField f;
        f.d = a.d() != 0 ? a.d() : b.d();
        f.D0 = std::lcm(a.q0().den(), b.q0().den());
        f.D1 = std::lcm(a.q1().den(), b.q1().den());
        f.A0 = a.q0().num() * (f.D0 / a.q0().den());
        f.B0 = b.q0().num() * (f.D0 / b.q0().den());
        f.A1 = a.q1().num() * (f.D1 / a.q1().den());
        f.B1 = b.q1().num() * (f.D1 / b.q1().den());
        return f;
    }

    bool fast_ok(std::int64_t du, std::int64_t dv) const {
        constexpr std::int64_t lim = std::int64_t(1) << 52;
        return d < (std::int64_t(1) << 20) &&
               std::abs(du) < lim / D1 && std::abs(dv) < lim / D0;
    }

    // sign of (u1 - u2)/D0 + ((v1 - v2)/D1) sqrt(d)
    int cmp(std::int64_t u1, std::int64_t v1, std::int64_t u2, std::int64_t v2) const {
        std::int64_t du = u1 - u2, dv = v1 - v2;
        if (fast_ok(du, dv)) {
            std::int64_t U = du * D1, V = dv * D0;
            if (V == 0 || d == 0) return sgn64(U);
            if (U == 0) return sgn64(V);
            if ((U > 0) == (V > 0)) return sgn64(U);
            __int128 l = (__int128)U * U, r = (__int128)V * V * d;
            int s = l > r ? 1 : l < r ? -1 : 0;
            return U > 0 ? s : -s;
        }
        return sign_surd(Rational(du, D0), Rational(dv, D1), d);
    }

    std::int64_t at_u(std::int64_t m1, std::int64_t m2) const {
        __int128 u = (__int128)m1 * A0 + (__int128)m2 * B0;
        return narrow(u);
    }
    std::int64_t at_v(std::int64_t m1, std::int64_t m2) const {
        __int128 v = (__int128)m1 * A1 + (__int128)m2 * B1;
        return narrow(v);
    }
    Scalar action(std::int64_t m1, std::int64_t m2) const {
        return Scalar::surd(Rational(at_u(m1, m2), D0), Rational(at_v(m1, m2), D1), d);
    }

private:
    static std::int64_t narrow(__int128 x) {
        constexpr __int128 lim = (__int128)1 << 62;
        if (x <= -lim || x >= lim) throw std::overflow_error("spectrum: action overflow");
        return (std::int64_t)x;
    }
};

// admissible m1 values in a fixed column m2 form an arithmetic progression
struct ColumnProgression {
    std::int64_t start = 0, step = 1;
    bool empty = false;
};

ColumnProgression column_progression(const TwoOrbitModel& model, std::int64_t m2) {
    ColumnProgression cp;
    if (model.p == 1) return cp;
    std::int64_t p = model.p;
    std::int64_t rhs = ((-(__int128)m2 * model.h2) % p + p) % p;
    std::int64_t g = std::gcd(model.h1, p);
    if (rhs % g != 0) {
        cp.empty = true;
        return cp;
    }
    std::int64_t pg = p / g;
    if (pg == 1) return cp; // h1 generates everything: start 0, step 1
    // solve (h1/g) * m1 = rhs/g  (mod p/g)
    std::int64_t a = (model.h1 / g) % pg, b = rhs / g;
    std::int64_t inv = 1;
    { // extended gcd for the inverse; gcd(a, pg) = 1 by construction
        std::int64_t t = 0, newt = 1, r = pg, newr = a % pg;
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt;
            t = newt; newt = tmp;
            tmp = r - q * newr;
            r = newr; newr = tmp;
        }
        inv = ((t % pg) + pg) % pg;
    }
    cp.start = (std::int64_t)(((__int128)b * inv) % pg);
    cp.step = pg;
    return cp;
}

struct Cand {
    std::int64_t u, v, m1, m2;
};

} // namespace

void enumerate_actions(
    const TwoOrbitModel& model, std::int64_t k_max,
    const std::function<void(std::int64_t, std::int64_t, std::int64_t, const Scalar&)>& emit) {
    if (k_max < 0) throw std::domain_error("spectrum: negative count");
    model.validate();
    if (k_max == 0) return;
    ActionField f = ActionField::make(model);
    if (model.T1.sign() <= 0 || model.T2.sign() <= 0)
        throw std::domain_error("spectrum: periods must be positive");

    auto after = [&](const Cand& a, const Cand& b) { // priority_queue: true if a pops later
        int c = f.cmp(a.u, a.v, b.u, b.v);
        if (c != 0) return c > 0;
        if (a.m1 != b.m1) return a.m1 > b.m1;
        return a.m2 > b.m2;
    };
    std::priority_queue<Cand, std::vector<Cand>, decltype(after)> heap(after);

    std::int64_t next_col = 0;
    auto activate_one = [&]() {
        ColumnProgression cp = column_progression(model, next_col);
        if (!cp.empty)
            heap.push({f.at_u(cp.start, next_col), f.at_v(cp.start, next_col), cp.start, next_col});
        ++next_col;
    };
    // every element of column c has action >= c*T2, so pops are safe once the
    // heap minimum is strictly below that floor
    auto covered = [&]() {
        if (heap.empty()) return false;
        std::int64_t cu = f.at_u(0, next_col), cv = f.at_v(0, next_col);
        return f.cmp(cu, cv, heap.top().u, heap.top().v) > 0;
    };

    for (std::int64_t rank = 0; rank < k_max; ++rank) {
        while (!covered()) activate_one();
        Cand top = heap.top();
        heap.pop();
        emit(rank, top.m1, top.m2, f.action(top.m1, top.m2));
        ColumnProgression cp = column_progression(model, top.m2);
        std::int64_t nm1 = top.m1 + cp.step;
        heap.push({f.at_u(nm1, top.m2), f.at_v(nm1, top.m2), nm1, top.m2});
    }
}

std::vector<SpectrumEntry> enumerate_spectrum(const TwoOrbitModel& model, std::int64_t k_max,
                                              bool with_index, std::int64_t max_entries) {
    if (k_max > max_entries)
        throw resource_error("spectrum: requested " + std::to_string(k_max) +
                                 " entries exceeds budget of " + std::to_string(max_entries),
                             0);
    std::vector<SpectrumEntry> out;
    out.reserve((std::size_t)k_max);
    enumerate_actions(model, k_max,
                      [&](std::int64_t rank, std::int64_t m1, std::int64_t m2, const Scalar& act) {
                          out.push_back({rank, m1, m2, act, std::nullopt});
                      });
    if (with_index)
        for (auto& e : out) e.index = ech_index(model, e.m1, e.m2);
    return out;
}

Scalar ech_spectral_invariant(const Scalar& a, const Scalar& b, std::int64_t k) {
    if (k < 0) throw std::domain_error("spectral invariant: negative index");
    TwoOrbitModel model = ellipsoid_model(a, b);
    if ((a / b).is_rational())
        throw std::domain_error("spectral invariant: degenerate spectrum (rational axis ratio)");
    Scalar value;
    std::int64_t fm1 = 0, fm2 = 0;
    enumerate_actions(model, k + 1,
                      [&](std::int64_t, std::int64_t m1, std::int64_t m2, const Scalar& act) {
                          value = act;
                          fm1 = m1;
                          fm2 = m2;
                      });
    std::int64_t I = ech_index(model, fm1, fm2);
    if (I != 2 * k)
        throw std::logic_error("spectral invariant: rank " + std::to_string(k) +
                               " entry has index " + std::to_string(I));
    return value;
}

std::vector<AsymptoticsRow> volume_asymptotics(const Scalar& a, const Scalar& b,
                                               const std::vector<std::int64_t>& ks) {
    if (ks.empty()) throw std::domain_error("volume asymptotics: no sample points");
    for (std::int64_t k : ks)
        if (k < 1) throw std::domain_error("volume asymptotics: ranks must be >= 1");
    TwoOrbitModel model = ellipsoid_model(a, b);
    Scalar vol = a * b;

    std::vector<std::int64_t> sorted = ks;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<std::pair<std::int64_t, Scalar>> found;
    std::size_t next = 0;
    enumerate_actions(model, sorted.back() + 1,
                      [&](std::int64_t rank, std::int64_t, std::int64_t, const Scalar& act) {
                          while (next < sorted.size() && sorted[next] == rank) {
                              found.emplace_back(rank, act);
                              ++next;
                          }
                      });

    std::vector<AsymptoticsRow> rows;
    for (std::int64_t k : ks) {
        auto it = std::find_if(found.begin(), found.end(),
                               [&](const auto& p) { return p.first == k; });
        AsymptoticsRow row;
        row.k = k;
        row.value = it->second;
        row.ratio = row.value * row.value / Scalar(2 * k);
        row.deviation = row.ratio - vol;
        rows.push_back(row);
    }
    return rows;
}

MonotonicityReport monotonicity_check(const std::vector<SpectrumEntry>& entries) {
    MonotonicityReport rep;
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        auto ord = Scalar::compare(entries[i].action, entries[i + 1].action);
        if (ord > 0)
            throw std::invalid_argument("monotonicity: entries not sorted at rank " +
                                        std::to_string(entries[i].rank));
        if (ord == 0) {
            rep.strictly_increasing = false;
            rep.first_tie_rank = entries[i].rank;
            rep.tie_action = entries[i].action;
            return rep;
        }
    }
    return rep;
}

} // namespace reeb
