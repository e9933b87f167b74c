#pragma once

#include <array>
#include <string>
#include <vector>

#include "reeb/index.hpp"

namespace reeb {

using Vec4 = std::array<double, 4>; // coordinates (x1, y1, x2, y2)
using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// one angular harmonic of the perturbation: coeff * cos/sin(k1 t1 + k2 t2)
struct TrigTerm {
    double coeff = 0;
    bool use_sin = false;
    int k1 = 0, k2 = 0;
};

// Degree-2 homogeneous defining function H of a star-shaped hypersurface
// Y = H^{-1}(1) in R^4: the ellipsoid quadratic pi(|z1|^2/a + |z2|^2/b) times
// 1 + eps*g with g a trigonometric polynomial in the two circle angles.  Each
// harmonic is realized smoothly as Re/Im(z1^k1 z2^k2) (negative exponents via
// conjugation) normalized by the matching power of the quadratic, so H stays
// smooth across the coordinate planes where the raw angles degenerate.
// Homogeneity and positivity are verified at construction.
class StarBody {
public:
    StarBody(double a, double b, double eps = 0.0, std::vector<TrigTerm> terms = {});

    double value(const Vec4& z) const;
    Vec4 gradient(const Vec4& z) const;
    Mat4 hessian(const Vec4& z) const;

    double axis_a() const { return a_; }
    double axis_b() const { return b_; }
    double strength() const { return eps_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }
    bool perturbed() const { return eps_ != 0.0 && !terms_.empty(); }

private:
    double a_, b_, eps_;
    std::vector<TrigTerm> terms_;
};

// grammar: "ellipsoid:a,b" or "ellipsoid:a,b;perturb:eps,expr" where expr is a
// +/- separated list of [coeff*]cos|sin(<int>*t1+<int>*t2) harmonics (either
// angle may be absent); numbers use the exact-scalar syntax
StarBody parse_body(const std::string& text);

// Hamiltonian field of H, which on the unit level equals the Reeb field of
// the restricted Liouville form; requires |H(z) - 1| <= 1e-9
Vec4 reeb_field(const StarBody& body, const Vec4& z);

// fixed-step eighth-order integration of the Reeb flow for the given time
// (negative time flows backward); step is the positive step size
Vec4 integrate_flow(const StarBody& body, Vec4 z, double time, double step);

struct PeriodicOrbitResult {
    int plane = 1; // 1: the z2 = 0 circle, 2: the z1 = 0 circle
    Vec4 start{};
    double period = 0;
    double period_error = 0;
    Mat2 monodromy{}; // linearized return map restricted to the contact plane
};

// locates the planar circle orbit, refines its period by return-map root
// finding with step-halving error control, and integrates the variational
// equations for the monodromy
PeriodicOrbitResult find_planar_orbit(const StarBody& body, int plane);

struct RotationResult {
    bool elliptic = false;
    bool degenerate = false; // |trace| at the parabolic boundary 2
    double theta = 0;
    double error = 0;
    double eig1 = 0, eig2 = 0; // real eigenvalues reported when hyperbolic
};

// rotation number in the constant off-plane coordinate frame: continuous
// winding of a linearized solution snapped to the monodromy eigenphase
RotationResult rotation_number(const StarBody& body, const PeriodicOrbitResult& orbit);

struct VolumeResult {
    double value = 0;
    double error = 0;
};

// integral of lambda ^ dlambda over Y, computed as half the surface integral
// of H^{-2} over the unit sphere with three refinement levels; base_resolution
// selects the coarsest grid (16 or 32 points per angular direction)
VolumeResult contact_volume(const StarBody& body, int base_resolution = 16);

// assembles the measured (vol, T1, T2, theta1, theta2) with p = 1 and unit
// linking into the six identities of the relation checker
RelationReport verify_theorem_relations(const StarBody& body, double tol);

} // namespace reeb
