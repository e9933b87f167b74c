#include "reeb/index.hpp"

#include <cmath>
#include <stdexcept>

namespace reeb {

std::int64_t cz(const Scalar& theta) {
    if (theta.is_exact()) {
        std::int64_t f = theta.floor();
        return theta.is_integer() ? 2 * f : 2 * f + 1;
    }
    double lo = theta.approx_value() - theta.approx_radius();
    double hi = theta.approx_value() + theta.approx_radius();
    if (std::ceil(lo) <= std::floor(hi))
        throw precision_error("cz: interval [" + fmt_double17(lo) + ", " + fmt_double17(hi) +
                              "] contains an integer; rotation number unresolved");
    return 2 * (std::int64_t)std::floor(hi) + 1;
}

std::int64_t cz_total(const Scalar& theta, std::int64_t m) {
    if (m < 0) throw std::domain_error("cz_total: negative multiplicity");
    std::int64_t total = 0;
    Scalar k_theta = Scalar(0);
    for (std::int64_t k = 1; k <= m; ++k) {
        k_theta += theta;
        total += cz(k_theta);
    }
    return total;
}

std::int64_t ech_index(const TwoOrbitModel& model, std::int64_t m1, std::int64_t m2) {
    if (m1 < 0 || m2 < 0) throw std::domain_error("ech_index: negative multiplicity");
    if (!admissible(model, m1, m2))
        throw std::domain_error("ech_index: orbit set (" + std::to_string(m1) + ", " +
                                std::to_string(m2) + ") is not null-homologous mod p=" +
                                std::to_string(model.p));
    Rational M1(m1), M2(m2);
    Rational pairing = M1 * model.c1 + M2 * model.c2 + M1 * M1 * model.Q1 +
                       M2 * M2 * model.Q2 + Rational(2) * M1 * M2 * model.ell;
    if (!pairing.is_integer())
        throw std::domain_error("ech_index: pairing terms sum to non-integer " + pairing.str() +
                                "; model data inconsistent");
    return pairing.num() + cz_total(model.theta1, m1) + cz_total(model.theta2, m2);
}

std::int64_t ech_index(const TwoOrbitModel& model, const OrbitSet& set) {
    return ech_index(model, set.m1, set.m2);
}

Scalar index_quadratic_defect(const TwoOrbitModel& model, std::int64_t m1, std::int64_t m2) {
    Scalar I(ech_index(model, m1, m2));
    Scalar quad = model.phi1() * Scalar(m1) * Scalar(m1) + model.phi2() * Scalar(m2) * Scalar(m2) +
                  Scalar::rational(Rational(2) * Rational(m1) * Rational(m2) * model.ell);
    return I - quad;
}

Rational defect_bound_constant(const TwoOrbitModel& model) {
    return model.c1.abs() + model.c2.abs() + Rational(2);
}

Rational self_linking(const Rational& Q, const Rational& c) { return Q - c; }

Scalar seifert_rotation(const Scalar& theta, const Rational& sl) {
    return theta + Scalar::rational(sl);
}

double RelationCheck::deviation() const {
    Scalar diff = left - right;
    if (diff.is_exact()) return std::fabs(diff.to_double());
    return std::fabs(diff.approx_value());
}

bool RelationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

RelationReport check_relations(const Scalar& vol, const TwoOrbitModel& model, double tol) {
    if (tol < 0) throw std::domain_error("check_relations: negative tolerance");
    if (vol.sign() <= 0) throw std::domain_error("check_relations: volume must be positive");
    Scalar phi1 = model.phi1(), phi2 = model.phi2();
    for (const Scalar* phi : {&phi1, &phi2})
        if (phi->is_exact() ? phi->is_zero() : std::fabs(phi->approx_value()) == 0.0)
            throw std::domain_error("check_relations: vanishing rotation phi");

    RelationReport report;
    report.tol = tol;
    auto add = [&](const std::string& id, const Scalar& left, const Scalar& right) {
        RelationCheck c{id, left, right, false};
        c.pass = c.deviation() <= tol;
        report.checks.push_back(c);
    };
    add("vol=p*T1*T2", vol, Scalar(model.p) * model.T1 * model.T2);
    add("vol=T1^2/phi1", vol, model.T1 * model.T1 / phi1);
    add("vol=T2^2/phi2", vol, model.T2 * model.T2 / phi2);
    add("phi1=ell*T1/T2", phi1, Scalar::rational(model.ell) * model.T1 / model.T2);
    add("phi2=ell*T2/T1", phi2, Scalar::rational(model.ell) * model.T2 / model.T1);
    add("phi1*phi2=ell^2", phi1 * phi2, Scalar::rational(model.ell * model.ell));
    return report;
}

} // namespace reeb
