#include "reeb/model.hpp"

#include <numeric>
#include <stdexcept>

namespace reeb {

namespace {

std::int64_t mod_pos(std::int64_t x, std::int64_t p) {
    std::int64_t r = x % p;
    return r < 0 ? r + p : r;
}

} // namespace

OrbitSet::OrbitSet(std::int64_t a, std::int64_t b) : m1(a), m2(b) {
    if (a < 0 || b < 0) throw std::domain_error("orbit set: negative multiplicity");
}

void TwoOrbitModel::validate() const {
    if (p < 1) throw std::domain_error("model: quotient order must be >= 1");
    if (h1 < 0 || h1 >= p || h2 < 0 || h2 >= p)
        throw std::domain_error("model: homology residues must lie in [0, p)");
    for (const Scalar* T : {&T1, &T2})
        if (T->sign() <= 0) throw std::domain_error("model: periods must be positive");
    // ell arises from a pairing of the p-fold covers divided by l1*l2, so its
    // denominator must divide l1*l2
    std::int64_t l1 = p / std::gcd(h1, p);
    std::int64_t l2 = p / std::gcd(h2, p);
    if ((l1 * l2) % ell.den() != 0)
        throw std::domain_error("model: ell denominator incompatible with cover orders");
}

TwoOrbitModel ellipsoid_model(const Scalar& a, const Scalar& b) {
    if (!a.is_exact() || !b.is_exact())
        throw std::domain_error("ellipsoid: axes must be exact scalars");
    if (a.sign() <= 0 || b.sign() <= 0)
        throw std::domain_error("ellipsoid: axes must be positive");
    TwoOrbitModel m;
    m.p = 1;
    m.h1 = m.h2 = 0;
    m.T1 = a;
    m.T2 = b;
    m.theta1 = a / b;
    m.theta2 = b / a;
    m.Q1 = m.Q2 = Rational(0);
    m.c1 = m.c2 = Rational(1);
    m.ell = Rational(1);
    m.validate();
    return m;
}

bool admissible(const TwoOrbitModel& model, std::int64_t m1, std::int64_t m2) {
    if (m1 < 0 || m2 < 0) throw std::domain_error("admissible: negative multiplicity");
    return mod_pos(m1 * model.h1 + m2 * model.h2, model.p) == 0;
}

} // namespace reeb
