#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reeb/model.hpp"

namespace reeb {

// floor(theta) + ceil(theta); equals 2*theta when theta is an integer (the
// degenerate convention).  Approximate input must not straddle an integer.
std::int64_t cz(const Scalar& theta);

// sum of cz(k*theta) for k = 1..m
std::int64_t cz_total(const Scalar& theta, std::int64_t m);

// total index of the orbit set (m1, m2): linear and quadratic pairing terms plus
// iterated rotation contributions.  The rational pairing terms must sum to an
// integer, otherwise the model data is inconsistent.
std::int64_t ech_index(const TwoOrbitModel& model, std::int64_t m1, std::int64_t m2);
std::int64_t ech_index(const TwoOrbitModel& model, const OrbitSet& set);

// deviation of the index from its quadratic-form approximation
// phi1*m1^2 + phi2*m2^2 + 2*ell*m1*m2; bounded by defect_bound_constant * (m1+m2)
Scalar index_quadratic_defect(const TwoOrbitModel& model, std::int64_t m1, std::int64_t m2);
Rational defect_bound_constant(const TwoOrbitModel& model);

// self-linking number of an orbit from its quadratic pairing and framing offset
Rational self_linking(const Rational& Q, const Rational& c);
// rotation number transported to the Seifert framing
Scalar seifert_rotation(const Scalar& theta, const Rational& sl);

struct RelationCheck {
    std::string id;
    Scalar left, right;
    bool pass;
    double deviation() const; // |left - right| recomputed from the stored sides
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    double tol = 0;
    bool all_pass() const;
};

// the six volume/rotation/linking identities tying vol, periods, phi and ell
RelationReport check_relations(const Scalar& vol, const TwoOrbitModel& model, double tol);

} // namespace reeb
