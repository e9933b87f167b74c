#include "reeb/dynamics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "reeb/errors.hpp"
#include "reeb/index.hpp"
#include "reeb/model.hpp"
#include "reeb/scalar.hpp"

using namespace reeb;

namespace {

const double kSqrt2 = std::sqrt(2.0);

double surface_scale(const StarBody& body, Vec4& z) {
    const double s = 1.0 / std::sqrt(body.value(z));
    for (auto& c : z) c *= s;
    return s;
}

// the contact form evaluated on a vector: lambda = (x dy - y dx) / 2 per factor
double contact_pairing(const Vec4& z, const Vec4& v) {
    return 0.5 * (z[0] * v[1] - z[1] * v[0] + z[2] * v[3] - z[3] * v[2]);
}

// the ambient symplectic pairing dx1^dy1 + dx2^dy2
double symplectic_pairing(const Vec4& u, const Vec4& v) {
    return u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2];
}

double dist4(const Vec4& u, const Vec4& v) {
    return std::hypot(std::hypot(u[0] - v[0], u[1] - v[1]),
                      std::hypot(u[2] - v[2], u[3] - v[3]));
}

} // namespace

TEST_CASE("body evaluation matches closed forms on ellipsoids") {
    StarBody e(1.0, kSqrt2);
    const double pi = 3.14159265358979323846;
    CHECK(e.value({1, 0, 0, 0}) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(e.value({0, 0, 1, 0}) == doctest::Approx(pi / kSqrt2).epsilon(1e-15));
    const Vec4 z{0.3, -0.7, 0.4, 1.1};
    const double expect = pi * (0.3 * 0.3 + 0.7 * 0.7) + pi / kSqrt2 * (0.4 * 0.4 + 1.1 * 1.1);
    CHECK(e.value(z) == doctest::Approx(expect).epsilon(1e-14));
    const Vec4 g = e.gradient(z);
    CHECK(g[0] == doctest::Approx(2 * pi * 0.3).epsilon(1e-14));
    CHECK(g[3] == doctest::Approx(2 * pi / kSqrt2 * 1.1).epsilon(1e-14));
    const Mat4 h = e.hessian(z);
    CHECK(h[0][0] == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(h[2][2] == doctest::Approx(2 * pi / kSqrt2).epsilon(1e-14));
    CHECK(h[0][2] == 0.0);
    CHECK(!e.perturbed());
}

TEST_CASE("derivatives agree with central differences on a perturbed body") {
    StarBody body = parse_body("ellipsoid:1.3,0.8; perturb:0.02, 0.7*cos(2*t1-3*t2) + 0.3*sin(2*t2)");
    REQUIRE(body.perturbed());
    const std::vector<Vec4> pts = {{0.7, -0.3, 0.45, 0.6}, {-0.2, 0.9, -0.5, 0.35},
                                   {1.1, 0.2, 0.3, -0.8}};
    const double h = 1e-4;
    for (const Vec4& z : pts) {
        const Vec4 g = body.gradient(z);
        const Mat4 hess = body.hessian(z);
        for (int i = 0; i < 4; ++i) {
            Vec4 zp = z, zm = z;
            zp[i] += h;
            zm[i] -= h;
            const double fd = (body.value(zp) - body.value(zm)) / (2 * h);
            CHECK(std::abs(g[i] - fd) <= 1e-6 * (1 + std::abs(g[i])));
            const Vec4 gp = body.gradient(zp), gm = body.gradient(zm);
            for (int j = 0; j < 4; ++j) {
                const double fd2 = (gp[j] - gm[j]) / (2 * h);
                CHECK(std::abs(hess[j][i] - fd2) <= 1e-6 * (1 + std::abs(hess[j][i])));
            }
        }
        // symmetry is exact by construction
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(hess[i][j] == hess[j][i]);
    }
}

TEST_CASE("body scaling invariants hold away from the origin") {
    StarBody body = parse_body("ellipsoid:2,0.9; perturb:0.05, cos(2*t1+2*t2) - 0.4*sin(3*t1)");
    std::mt19937 rng(5150u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        Vec4 z{u(rng), u(rng), u(rng), u(rng)};
        if (z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3] < 0.1) continue;
        const Vec4 z2{2 * z[0], 2 * z[1], 2 * z[2], 2 * z[3]};
        CHECK(std::abs(body.value(z2) - 4 * body.value(z)) <= 1e-12 * (1 + std::abs(body.value(z2))));
        const Vec4 g1 = body.gradient(z), g2 = body.gradient(z2);
        const Mat4 h1 = body.hessian(z), h2 = body.hessian(z2);
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(g2[i] - 2 * g1[i]) <= 1e-11 * (1 + std::abs(g2[i])));
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(h2[i][j] - h1[i][j]) <= 1e-11 * (1 + std::abs(h1[i][j])));
        }
    }
}

TEST_CASE("invalid bodies are rejected") {
    CHECK_THROWS_AS(StarBody(-1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(StarBody(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StarBody(1.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
    // a huge perturbation destroys positivity on the sphere
    CHECK_THROWS_AS(StarBody(1.0, 1.0, 50.0, {TrigTerm{1.0, false, 2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(StarBody(1.0, 1.0, 0.1, {TrigTerm{1.0, false, 17, 0}}), std::invalid_argument);
}

TEST_CASE("body grammar round-trips and rejects malformed input") {
    StarBody plain = parse_body("ellipsoid:1,sqrt2");
    CHECK(plain.axis_a() == 1.0);
    CHECK(plain.axis_b() == doctest::Approx(kSqrt2).epsilon(1e-15));
    CHECK(!plain.perturbed());

    StarBody rich = parse_body("ellipsoid:2,3; perturb:0.001, 0.5*cos(2*t1+2*t2) - sin(3*t2) + cos(t1-t2)");
    REQUIRE(rich.terms().size() == 3);
    CHECK(rich.strength() == 0.001);
    CHECK(rich.terms()[0].coeff == 0.5);
    CHECK(!rich.terms()[0].use_sin);
    CHECK(rich.terms()[0].k1 == 2);
    CHECK(rich.terms()[0].k2 == 2);
    CHECK(rich.terms()[1].coeff == -1.0);
    CHECK(rich.terms()[1].use_sin);
    CHECK(rich.terms()[1].k1 == 0);
    CHECK(rich.terms()[1].k2 == 3);
    CHECK(rich.terms()[2].k1 == 1);
    CHECK(rich.terms()[2].k2 == -1);

    CHECK_THROWS_AS(parse_body("ellipsoid:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_body("box:1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_body("ellipsoid:1,2;perturb:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_body("ellipsoid:1,2;perturb:0.1,tan(t1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_body("ellipsoid:1,2;perturb:0.1,cos()"), std::invalid_argument);
    CHECK_THROWS_AS(parse_body("ellipsoid:1,2;perturb:0.1,cos(2*t1"), std::invalid_argument);
}

TEST_CASE("field satisfies the defining contact identities") {
    StarBody e(1.0, kSqrt2);
    const double pi = 3.14159265358979323846;
    const Vec4 p{1.0 / std::sqrt(pi), 0, 0, 0};
    const Vec4 X = reeb_field(e, p);
    CHECK(std::abs(X[0]) <= 1e-12);
    CHECK(X[1] == doctest::Approx(2 * std::sqrt(pi)).epsilon(1e-14));
    CHECK(std::abs(X[2]) <= 1e-12);
    CHECK(std::abs(X[3]) <= 1e-12);

    StarBody body = parse_body("ellipsoid:1.4,0.9; perturb:0.01, cos(2*t1-2*t2) + 0.5*sin(2*t1)");
    std::mt19937 rng(424242u);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        Vec4 z{n(rng), n(rng), n(rng), n(rng)};
        if (z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3] < 0.1) continue;
        surface_scale(body, z);
        const Vec4 X = reeb_field(body, z);
        // the contact form eats the field to 1 on the unit level
        CHECK(std::abs(contact_pairing(z, X) - 1.0) <= 1e-10);
        // the field is symplectically orthogonal to every surface tangent
        const Vec4 g = body.gradient(z);
        Vec4 w{n(rng), n(rng), n(rng), n(rng)};
        const double g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
        const double proj = (w[0] * g[0] + w[1] * g[1] + w[2] * g[2] + w[3] * g[3]) / g2;
        for (int i = 0; i < 4; ++i) w[i] -= proj * g[i];
        CHECK(std::abs(symplectic_pairing(X, w)) <= 1e-9 * (1 + std::sqrt(g2)));
    }
    CHECK_THROWS_AS(reeb_field(body, Vec4{2, 2, 2, 2}), std::domain_error);
}

TEST_CASE("planar orbit periods reproduce the ellipsoid axes") {
    StarBody e(1.0, kSqrt2);
    const auto o1 = find_planar_orbit(e, 1);
    const auto o2 = find_planar_orbit(e, 2);
    CHECK(std::abs(o1.period - 1.0) <= 1e-12);
    CHECK(std::abs(o2.period - kSqrt2) <= 1e-12);
    CHECK(o1.period_error <= 1e-12);
    CHECK(o2.period_error <= 1e-12);
    CHECK(std::abs(e.value(o1.start) - 1.0) <= 1e-14);
    CHECK(std::abs(e.value(o2.start) - 1.0) <= 1e-14);
    const double det = o1.monodromy[0][0] * o1.monodromy[1][1] -
                       o1.monodromy[0][1] * o1.monodromy[1][0];
    CHECK(std::abs(det - 1.0) <= 1e-11);

    StarBody e23(2.0, 3.0);
    const auto p1 = find_planar_orbit(e23, 1);
    const auto p2 = find_planar_orbit(e23, 2);
    CHECK(std::abs(p1.period - 2.0) <= 1e-12);
    CHECK(std::abs(p2.period - 3.0) <= 1e-12);
    // rotation by 3/2 turns: the return map is exactly -Id
    CHECK(std::abs(p2.monodromy[0][0] + 1.0) <= 1e-12);
    CHECK(std::abs(p2.monodromy[0][1]) <= 1e-12);

    CHECK_THROWS_AS(find_planar_orbit(e, 3), std::invalid_argument);
}

TEST_CASE("rotation numbers snap to the ellipsoid frequency ratios") {
    StarBody e(1.0, kSqrt2);
    const auto r1 = rotation_number(e, find_planar_orbit(e, 1));
    const auto r2 = rotation_number(e, find_planar_orbit(e, 2));
    CHECK(r1.elliptic);
    CHECK(!r1.degenerate);
    CHECK(std::abs(r1.theta - 1.0 / kSqrt2) <= 1e-11);
    CHECK(std::abs(r2.theta - kSqrt2) <= 1e-11);
    CHECK(r1.error <= 1e-10);
    CHECK(r2.error <= 1e-10);

    StarBody e23(2.0, 3.0);
    const auto q1 = rotation_number(e23, find_planar_orbit(e23, 1));
    const auto q2 = rotation_number(e23, find_planar_orbit(e23, 2));
    CHECK(q1.elliptic);
    CHECK(std::abs(q1.theta - 2.0 / 3.0) <= 1e-11);
    CHECK(q2.degenerate);
    CHECK(!q2.elliptic);
    CHECK(q2.theta == 1.5);
    CHECK(q2.error <= 1e-7);
}

TEST_CASE("resonant round sphere is flagged degenerate") {
    StarBody round(1.0, 1.0);
    for (int plane : {1, 2}) {
        const auto r = rotation_number(round, find_planar_orbit(round, plane));
        CHECK(r.degenerate);
        CHECK(!r.elliptic);
        CHECK(r.theta == 1.0);
        CHECK(r.error <= 1e-7);
    }
}

TEST_CASE("hyperbolic return maps yield real eigenvalue pairs") {
    // synthetic monodromy with trace 3
    PeriodicOrbitResult o;
    o.plane = 1;
    o.period = 1.0;
    o.monodromy = {{{2.0, 1.0}, {1.0, 1.0}}};
    StarBody dummy(1.0, 2.0);
    const auto r = rotation_number(dummy, o);
    CHECK(!r.elliptic);
    CHECK(!r.degenerate);
    CHECK(r.eig1 == doctest::Approx((3.0 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(r.eig2 == doctest::Approx((3.0 - std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(r.eig1 * r.eig2 == doctest::Approx(1.0).epsilon(1e-13));

    // a resonant perturbation of the round sphere splits the orbit hyperbolic
    StarBody split = parse_body("ellipsoid:1,1; perturb:0.01, cos(2*t1-2*t2)");
    const auto orbit = find_planar_orbit(split, 1);
    CHECK(std::abs(orbit.period - 1.0) <= 1e-12);
    const double tr = orbit.monodromy[0][0] + orbit.monodromy[1][1];
    CHECK(tr > 2.0 + 1e-5);
    const auto h = rotation_number(split, orbit);
    CHECK(!h.elliptic);
    CHECK(!h.degenerate);
    CHECK(h.eig1 > 1.001);
    CHECK(h.eig1 * h.eig2 == doctest::Approx(1.0).epsilon(1e-8));

    // the opposite resonance keeps the trace at the degenerate boundary
    StarBody keep = parse_body("ellipsoid:1,1; perturb:0.01, cos(2*t1+2*t2)");
    const auto k = rotation_number(keep, find_planar_orbit(keep, 1));
    CHECK(k.degenerate);
    CHECK(k.theta == 1.0);
}

TEST_CASE("flow conserves the defining function over long times") {
    StarBody e(1.0, kSqrt2);
    Vec4 z{1, 0, 0, 0};
    surface_scale(e, z);
    const Vec4 w = integrate_flow(e, z, 100.0, 100.0 / 204800);
    CHECK(std::abs(e.value(w) - 1.0) <= 1e-9);
    const Vec4 back = integrate_flow(e, w, -100.0, 100.0 / 204800);
    CHECK(dist4(back, z) <= 1e-10);

    CHECK_THROWS_AS(integrate_flow(e, z, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_flow(e, z, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("flow is deterministic and respects the partial final step") {
    StarBody body = parse_body("ellipsoid:1.2,0.7; perturb:0.01, cos(2*t1+2*t2)");
    Vec4 z{0.5, 0.1, 0.4, -0.2};
    surface_scale(body, z);
    const Vec4 a = integrate_flow(body, z, 0.777, 0.01);
    const Vec4 b = integrate_flow(body, z, 0.777, 0.01);
    for (int i = 0; i < 4; ++i) CHECK(a[i] == b[i]);
    // a step larger than the interval collapses to one partial step
    const Vec4 c = integrate_flow(body, z, 0.003, 1.0);
    const Vec4 d = integrate_flow(body, z, 0.003, 0.003);
    CHECK(dist4(c, d) <= 1e-13);
}

TEST_CASE("contact volumes match products of ellipsoid axes") {
    StarBody e(1.0, kSqrt2);
    const auto v = contact_volume(e);
    CHECK(std::abs(v.value - kSqrt2) <= 1e-10);
    CHECK(v.error <= 1e-11);

    const auto v23 = contact_volume(StarBody(2.0, 3.0));
    CHECK(std::abs(v23.value - 6.0) <= 1e-9);
    const auto v11 = contact_volume(StarBody(1.0, 1.0));
    CHECK(std::abs(v11.value - 1.0) <= 1e-10);

    // scaling both axes by s scales the volume by s^2
    const double s = 1.3;
    const auto vs = contact_volume(StarBody(s * 1.0, s * kSqrt2));
    CHECK(std::abs(vs.value - s * s * kSqrt2) <= 1e-9);

    CHECK_THROWS_AS(contact_volume(e, 20), std::invalid_argument);
}

TEST_CASE("volume is stable under perturbation and resolution doubling") {
    StarBody p = parse_body("ellipsoid:1,sqrt2; perturb:0.001, cos(2*t1+2*t2)");
    const auto vp = contact_volume(p);
    CHECK(std::abs(vp.value - kSqrt2) <= 1e-4);

    const auto v16 = contact_volume(p, 16);
    const auto v32 = contact_volume(p, 32);
    CHECK(std::abs(v32.value - v16.value) <= v16.error);

    // bitwise determinism across fresh bodies
    StarBody q = parse_body("ellipsoid:1,sqrt2; perturb:0.001, cos(2*t1+2*t2)");
    const auto vq = contact_volume(q);
    CHECK(vq.value == vp.value);
    CHECK(vq.error == vp.error);
}

TEST_CASE("theorem relations verify on ellipsoids") {
    const auto rep = verify_theorem_relations(StarBody(1.0, kSqrt2), 1e-5);
    CHECK(rep.all_pass());
    REQUIRE(rep.checks.size() == 6);
    for (const auto& ch : rep.checks) {
        CHECK(ch.pass);
        CHECK(ch.deviation() <= 1e-10);
    }
    CHECK(verify_theorem_relations(StarBody(2.0, 3.0), 1e-5).all_pass());
}

TEST_CASE("theorem relations verify on random ellipsoids") {
    std::mt19937 rng(77231u);
    std::uniform_real_distribution<double> u(0.6, 2.5);
    for (int i = 0; i < 8; ++i) {
        const double a = u(rng), b = u(rng);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(verify_theorem_relations(StarBody(a, b), 1e-5).all_pass());
    }
}

TEST_CASE("mismatched volume fails the relation checks") {
    TwoOrbitModel m = ellipsoid_model(Scalar::rational(Rational(1)), parse_scalar("sqrt2"));
    const auto rep = check_relations(Scalar::rational(Rational(2)), m, 1e-5);
    CHECK(!rep.all_pass());
}

TEST_CASE("rotation numbers respond continuously to small perturbations") {
    const double theta0 = 1.0 / kSqrt2;
    for (double eps : {1e-4, 1e-3}) {
        char spec[96];
        std::snprintf(spec, sizeof spec, "ellipsoid:1,sqrt2; perturb:%g, cos(2*t1+2*t2)", eps);
        StarBody body = parse_body(spec);
        const auto o = find_planar_orbit(body, 1);
        CHECK(std::abs(o.period - 1.0) <= 1e-12); // the perturbation vanishes on the plane
        const auto r = rotation_number(body, o);
        CHECK(r.elliptic);
        CHECK(std::abs(r.theta - theta0) <= 10 * eps);
    }
}

TEST_CASE("orbits that leave the coordinate plane are rejected") {
    // a first-order harmonic pushes the flow off the x1-y1 plane
    StarBody body = parse_body("ellipsoid:1,2; perturb:0.05, cos(t2)");
    CHECK_THROWS_AS(find_planar_orbit(body, 1), std::domain_error);
    // the other plane stays invariant: the orbit is a non-circular closed curve
    const auto o = find_planar_orbit(body, 2);
    CHECK(std::abs(o.period - 2.0) <= 0.1);
    const double det = o.monodromy[0][0] * o.monodromy[1][1] -
                       o.monodromy[0][1] * o.monodromy[1][0];
    CHECK(std::abs(det - 1.0) <= 1e-8);
    const auto r = rotation_number(body, o);
    CHECK((r.elliptic || r.degenerate || (r.eig1 != 0.0)));
}
