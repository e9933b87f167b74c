#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace reeb {

// Sampled braid in the solid torus S^1 x C: `strands` points per sample time on
// a uniform grid over [0, period), plus the permutation gluing t = period back
// to t = 0.  The piecewise-linear interpolant of the samples IS the geometric
// object all counts refer to.
struct Braid {
    int strands = 0;
    double period = 1.0;
    int samples = 0;
    std::vector<std::complex<double>> pts; // samples * strands, sample-major
    std::vector<int> closing;              // strand j continues as strand closing[j]

    std::complex<double> at(int k, int j) const {
        return pts[(std::size_t)k * (std::size_t)strands + (std::size_t)j];
    }

    // structural checks: shapes, a genuine permutation, finite coordinates,
    // continuation steps comparable to interior steps
    void validate() const;
};

// strands z_j(t) = radius * exp(i(2 pi (a t/T + j)/b + phase)), j = 0..b-1,
// closing j -> (j+a) mod b; requires gcd(|a|, b) = 1 and samples >= 64 |a| b
Braid torus_braid(int a, int b, double radius, double phase = 0.0, int samples = 0,
                  double period = 1.0);

// the constant strand at the origin
Braid core_braid(int samples, double period = 1.0);

// signed crossing count of the planar strand diagram (horizontal position vs
// time, signed by which strand lies above); throws resolution_error when the
// sampling cannot certify the count
long long writhe(const Braid& braid);

// half the signed inter-braid crossing count; braids must share the time grid
long long linking(const Braid& x, const Braid& y);

struct WeightedComponent {
    Braid braid;
    long long multiplicity = 1;
};
using WeightedBraid = std::vector<WeightedComponent>;

// sum of m_i^2 * writhe_i plus sum over ordered pairs of m_i m_j * linking_ij
long long weighted_writhe(const WeightedBraid& components);

// all strands of all parts as one braid on the shared grid
Braid disjoint_union(const std::vector<Braid>& parts);

// the same braid translated by a constant offset (the flat-framing push-off)
Braid parallel_pushoff(const Braid& braid, std::complex<double> offset);

struct BraidLemmaReport {
    int a = 0, b = 1;
    long long writhe_value = 0, writhe_expected = 0;
    long long core_linking = 0, core_expected = 0;
    long long pair_linking = 0, pair_expected = 0;
    bool pass = false;
};

// checks writhe = a(b-1), linking with the core = a, and linking of two
// parallel copies = ab (b > 1) or a (b = 1) on freshly sampled torus braids
BraidLemmaReport verify_braid_lemmas(int a, int b);

// text format: header "strands period samples", then one line per sample with
// 2*strands floats; the closing permutation is re-inferred on load by
// nearest-point continuation
void save_braid(const Braid& braid, const std::string& path);
Braid load_braid(const std::string& path);

} // namespace reeb
