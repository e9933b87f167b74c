#include "reeb/braid.hpp"
#include "reeb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace reeb {

namespace {

constexpr double kMarginFactor = 0.2; // max relative motion per step, per pair

bool is_permutation_vec(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= (int)p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// position of strand j of `b` at step k+1, following the closing when k+1 wraps
std::complex<double> next_point(const Braid& b, int k, int j) {
    return (k + 1 < b.samples) ? b.at(k + 1, j) : b.at(0, b.closing[j]);
}

// Signed crossings of the pair (strand u of X, strand v of Y) over one period,
// counted on the piecewise-linear interpolant in the (time, Re z) diagram with
// the sign read off from which strand has the larger Im z at the crossing.
// X and Y may alias (self-pairs of one braid).  Throws resolution_error when a
// step moves the pair by more than kMarginFactor of its separation, so every
// reported crossing is certified transverse.
long long signed_crossings_pair(const Braid& X, int u, const Braid& Y, int v) {
    long long total = 0;
    for (int k = 0; k < X.samples; ++k) {
        const std::complex<double> d0 = X.at(k, u) - Y.at(k, v);
        const std::complex<double> d1 = next_point(X, k, u) - next_point(Y, k, v);
        const double s0 = std::abs(d0), s1 = std::abs(d1);
        const double step = std::abs(d1 - d0);
        if (s0 == 0.0 || s1 == 0.0)
            throw resolution_error("braid strands coincide at sample " + std::to_string(k));
        if (step > kMarginFactor * std::min(s0, s1))
            throw resolution_error(
                "braid sampling too coarse: relative motion " + std::to_string(step) +
                " exceeds margin at sample " + std::to_string(k));
        // a sample exactly on the axis is resolved by an infinitesimal rotation
        // of the projection: sign(x + eps*y) = sign(y) at x = 0.  This rule is
        // antisymmetric under swapping the pair, so the wrap segment (whose
        // difference vector is negated whenever the closing permutation flips
        // the label order) sees the same side as the segment it continues
        const double x0 = d0.real(), x1 = d1.real();
        const bool side0 = x0 != 0.0 ? x0 > 0.0 : d0.imag() > 0.0;
        const bool side1 = x1 != 0.0 ? x1 > 0.0 : d1.imag() > 0.0;
        if (side0 != side1) {
            const double t = x0 / (x0 - x1); // in [0,1): Re(d) is linear on the step
            const double y = d0.imag() + t * (d1.imag() - d0.imag());
            if (y == 0.0)
                throw resolution_error("unresolved crossing at sample " + std::to_string(k));
            total += (side0 == (y > 0.0)) ? +1 : -1;
        }
    }
    return total;
}

} // namespace

void Braid::validate() const {
    if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
    if (samples < 2) throw std::invalid_argument("braid needs at least two samples");
    if (!(period > 0.0)) throw std::invalid_argument("braid period must be positive");
    if (pts.size() != (std::size_t)samples * (std::size_t)strands)
        throw std::invalid_argument("braid sample array has wrong size");
    if (closing.size() != (std::size_t)strands || !is_permutation_vec(closing))
        throw std::invalid_argument("braid closing is not a permutation");
    for (const auto& z : pts)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("braid sample is not finite");

    // the glue step must look like one more sample step, not a jump
    double max_step = 0.0, scale = 0.0;
    for (int j = 0; j < strands; ++j)
        for (int k = 0; k + 1 < samples; ++k) {
            max_step = std::max(max_step, std::abs(at(k + 1, j) - at(k, j)));
            scale = std::max(scale, std::abs(at(k, j)));
        }
    const double allowance = std::max(5.0 * max_step, 1e-12 * (1.0 + scale));
    for (int j = 0; j < strands; ++j) {
        const double wrap = std::abs(at(0, closing[j]) - at(samples - 1, j));
        if (wrap > allowance)
            throw std::invalid_argument("braid closing inconsistent with strand continuation");
    }
}

Braid torus_braid(int a, int b, double radius, double phase, int samples, double period) {
    if (b < 1) throw std::invalid_argument("torus braid needs b >= 1");
    if (std::gcd(std::abs(a), b) != 1)
        throw std::invalid_argument("torus braid needs gcd(|a|, b) = 1");
    if (radius < 0.0 || (radius == 0.0 && b > 1))
        throw std::invalid_argument("torus braid radius must be positive for b > 1");
    if (!(period > 0.0)) throw std::invalid_argument("torus braid period must be positive");
    if (samples == 0) samples = std::max(64 * std::abs(a) * b, 64);
    if (samples < 2) throw std::invalid_argument("torus braid needs at least two samples");

    Braid br;
    br.strands = b;
    br.period = period;
    br.samples = samples;
    br.pts.resize((std::size_t)samples * (std::size_t)b);
    br.closing.resize(b);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int k = 0; k < samples; ++k)
        for (int j = 0; j < b; ++j) {
            const double ang = two_pi * (double(a) * k / samples + j) / b + phase;
            br.pts[(std::size_t)k * b + j] = std::polar(radius, ang);
        }
    for (int j = 0; j < b; ++j) br.closing[j] = ((j + a) % b + b) % b;
    br.validate();
    return br;
}

Braid core_braid(int samples, double period) {
    Braid br;
    br.strands = 1;
    br.period = period;
    br.samples = samples;
    br.pts.assign((std::size_t)samples, {0.0, 0.0});
    br.closing = {0};
    br.validate();
    return br;
}

long long writhe(const Braid& braid) {
    braid.validate();
    long long total = 0;
    for (int u = 0; u < braid.strands; ++u)
        for (int v = u + 1; v < braid.strands; ++v)
            total += signed_crossings_pair(braid, u, braid, v);
    return total;
}

long long linking(const Braid& x, const Braid& y) {
    x.validate();
    y.validate();
    if (x.samples != y.samples || x.period != y.period)
        throw std::invalid_argument("linking needs braids on the same time grid");
    long long total = 0;
    for (int u = 0; u < x.strands; ++u)
        for (int v = 0; v < y.strands; ++v)
            total += signed_crossings_pair(x, u, y, v);
    if (total % 2 != 0)
        throw std::logic_error("inter-braid crossing count is odd");
    return total / 2;
}

long long weighted_writhe(const WeightedBraid& components) {
    for (const auto& c : components)
        if (c.multiplicity < 1)
            throw std::invalid_argument("component multiplicity must be positive");
    long long total = 0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const long long mi = components[i].multiplicity;
        total += mi * mi * writhe(components[i].braid);
        for (std::size_t j = i + 1; j < components.size(); ++j)
            total += 2 * mi * components[j].multiplicity *
                     linking(components[i].braid, components[j].braid);
    }
    return total;
}

Braid disjoint_union(const std::vector<Braid>& parts) {
    if (parts.empty()) throw std::invalid_argument("disjoint_union needs at least one braid");
    Braid out;
    out.period = parts[0].period;
    out.samples = parts[0].samples;
    for (const auto& p : parts) {
        if (p.samples != out.samples || p.period != out.period)
            throw std::invalid_argument("disjoint_union needs braids on the same time grid");
        out.strands += p.strands;
    }
    out.pts.resize((std::size_t)out.samples * (std::size_t)out.strands);
    out.closing.resize(out.strands);
    int base = 0;
    for (const auto& p : parts) {
        for (int k = 0; k < out.samples; ++k)
            for (int j = 0; j < p.strands; ++j)
                out.pts[(std::size_t)k * out.strands + base + j] = p.at(k, j);
        for (int j = 0; j < p.strands; ++j) out.closing[base + j] = base + p.closing[j];
        base += p.strands;
    }
    out.validate();
    return out;
}

Braid parallel_pushoff(const Braid& braid, std::complex<double> offset) {
    Braid out = braid;
    for (auto& z : out.pts) z += offset;
    return out;
}

BraidLemmaReport verify_braid_lemmas(int a, int b) {
    if (b < 1 || std::gcd(std::abs(a), b) != 1)
        throw std::invalid_argument("braid lemmas need b >= 1 and gcd(|a|, b) = 1");
    const int n = std::max(64 * std::abs(a) * b, 256);
    const Braid alpha = torus_braid(a, b, 0.5, 0.0, n);
    const Braid beta = torus_braid(a, b, 0.8, 0.4, n);
    const Braid core = core_braid(n);

    BraidLemmaReport r;
    r.a = a;
    r.b = b;
    r.writhe_value = writhe(alpha);
    r.writhe_expected = (long long)a * (b - 1);
    r.core_linking = linking(core, alpha);
    r.core_expected = a;
    r.pair_linking = linking(alpha, beta);
    r.pair_expected = (b > 1) ? (long long)a * b : (long long)a;
    r.pass = r.writhe_value == r.writhe_expected && r.core_linking == r.core_expected &&
             r.pair_linking == r.pair_expected;
    return r;
}

void save_braid(const Braid& braid, const std::string& path) {
    braid.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << std::setprecision(17);
    out << braid.strands << ' ' << braid.period << ' ' << braid.samples << '\n';
    for (int k = 0; k < braid.samples; ++k) {
        for (int j = 0; j < braid.strands; ++j) {
            if (j) out << ' ';
            out << braid.at(k, j).real() << ' ' << braid.at(k, j).imag();
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Braid load_braid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Braid br;
    if (!(in >> br.strands >> br.period >> br.samples))
        throw std::runtime_error("bad braid header in " + path);
    if (br.strands < 1 || br.samples < 2)
        throw std::runtime_error("bad braid dimensions in " + path);
    br.pts.resize((std::size_t)br.samples * (std::size_t)br.strands);
    for (auto& z : br.pts) {
        double x, y;
        if (!(in >> x >> y)) throw std::runtime_error("truncated braid data in " + path);
        z = {x, y};
    }

    // recover the closing by nearest-point continuation; it must be an
    // unambiguous bijection or the file is under-sampled
    br.closing.assign(br.strands, -1);
    std::vector<char> used(br.strands, 0);
    for (int j = 0; j < br.strands; ++j) {
        const std::complex<double> tail = br.at(br.samples - 1, j);
        double best = std::numeric_limits<double>::infinity(), second = best;
        int arg = -1;
        for (int i = 0; i < br.strands; ++i) {
            const double dist = std::abs(br.at(0, i) - tail);
            if (dist < best) {
                second = best;
                best = dist;
                arg = i;
            } else if (dist < second) {
                second = dist;
            }
        }
        if (br.strands > 1 && !(2.0 * best < second))
            throw resolution_error("ambiguous braid closing for strand " + std::to_string(j));
        if (used[arg])
            throw resolution_error("braid closing is not a bijection");
        used[arg] = 1;
        br.closing[j] = arg;
    }
    br.validate();
    return br;
}

} // namespace reeb
