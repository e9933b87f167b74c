#pragma once

#include <cstdint>
#include <vector>

#include "reeb/scalar.hpp"

namespace reeb {

// Closed-orbit data for a dynamically convex contact form with exactly two simple
// closed orbits.  Periods T1 < T2 (or equal), rotation numbers theta measured
// against the distinguished constant framing, quadratic self-pairings Q, framing
// offsets c, mutual pairing ell, and the order p of the ambient cyclic quotient
// with homology residues h1, h2.
struct TwoOrbitModel {
    std::int64_t p = 1;
    std::int64_t h1 = 0, h2 = 0;
    Scalar T1, T2;
    Scalar theta1, theta2;
    Rational Q1, Q2;
    Rational c1, c2;
    Rational ell;

    Scalar phi1() const { return Scalar::rational(Q1) + theta1; }
    Scalar phi2() const { return Scalar::rational(Q2) + theta2; }

    // throws std::domain_error / field_error on inconsistent data
    void validate() const;
};

// A formal multiset of the two simple orbits: orbit 1 with multiplicity m1 and
// orbit 2 with multiplicity m2 (either may be zero).
struct OrbitSet {
    std::int64_t m1 = 0;
    std::int64_t m2 = 0;

    OrbitSet() = default;
    OrbitSet(std::int64_t a, std::int64_t b);
};

// E(a,b): periods a and b, rotation numbers a/b and b/a, trivial quotient
TwoOrbitModel ellipsoid_model(const Scalar& a, const Scalar& b);

// whether m1*h1 + m2*h2 vanishes mod p (the orbit set is null-homologous)
bool admissible(const TwoOrbitModel& model, std::int64_t m1, std::int64_t m2);

} // namespace reeb
