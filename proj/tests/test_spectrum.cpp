#include "doctest.h"

#include "oracles.hpp"
#include "reeb/index.hpp"
#include "reeb/spectrum.hpp"

using namespace reeb;

namespace {
Scalar sqrt_of(std::int64_t d) { return Scalar::surd(Rational(0), Rational(1), d); }
}

TEST_CASE("first entries of E(1, sqrt 2)") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), sqrt_of(2));
    auto s = enumerate_spectrum(m, 5);
    REQUIRE(s.size() == 5);
    CHECK(s[0].action == Scalar(0));
    CHECK(s[1].action == Scalar(1));
    CHECK(s[2].action == sqrt_of(2));
    CHECK(s[3].action == Scalar(2));
    CHECK(s[4].action == Scalar(1) + sqrt_of(2));
    std::pair<std::int64_t, std::int64_t> pairs[] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}};
    for (int i = 0; i < 5; ++i) {
        CHECK(s[i].m1 == pairs[i].first);
        CHECK(s[i].m2 == pairs[i].second);
        CHECK(s[i].rank == i);
    }
}

TEST_CASE("round sphere ties break lexicographically") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), Scalar(1));
    auto s = enumerate_spectrum(m, 4);
    REQUIRE(s.size() == 4);
    CHECK(s[0].action == Scalar(0));
    CHECK(s[1].action == Scalar(1));
    CHECK(s[2].action == Scalar(1));
    CHECK(s[3].action == Scalar(2));
    CHECK(s[1].m1 == 0);
    CHECK(s[1].m2 == 1);
    CHECK(s[2].m1 == 1);
    CHECK(s[2].m2 == 0);

    auto rep = monotonicity_check(s);
    CHECK(!rep.strictly_increasing);
    CHECK(rep.first_tie_rank == 1);
    CHECK(rep.tie_action == Scalar(1));
}

TEST_CASE("quotient admissibility filters the spectrum") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), sqrt_of(2));
    m.p = 2;
    m.h1 = 1;
    m.h2 = 1;
    m.ell = Rational(1, 2);
    auto s = enumerate_spectrum(m, 3);
    REQUIRE(s.size() == 3);
    CHECK(s[0].action == Scalar(0));
    CHECK(s[1].action == Scalar(2));
    CHECK(s[2].action == Scalar(1) + sqrt_of(2));
}

TEST_CASE("heap enumeration matches generate-and-sort") {
    for (auto axes : {std::pair{Scalar(1), sqrt_of(2)}, {Scalar(1), Scalar(1)},
                      {Scalar::rational(Rational(3, 2)), sqrt_of(3)}}) {
        TwoOrbitModel m = ellipsoid_model(axes.first, axes.second);
        auto fast = enumerate_spectrum(m, 400);
        auto slow = oracle::brute_force_spectrum(m, 400);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i].m1 == slow[i].m1);
            CHECK(fast[i].m2 == slow[i].m2);
            CHECK(fast[i].action == slow[i].action);
        }
    }
    // quotient model too
    TwoOrbitModel q = ellipsoid_model(Scalar(1), sqrt_of(2));
    q.p = 3;
    q.h1 = 1;
    q.h2 = 2;
    q.ell = Rational(1, 3);
    auto fast = enumerate_spectrum(q, 200);
    auto slow = oracle::brute_force_spectrum(q, 200);
    for (std::size_t i = 0; i < fast.size(); ++i) {
        CHECK(fast[i].m1 == slow[i].m1);
        CHECK(fast[i].m2 == slow[i].m2);
        CHECK(fast[i].action == slow[i].action);
    }
}

TEST_CASE("prefix property of enumeration") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), sqrt_of(2));
    auto big = enumerate_spectrum(m, 300);
    auto small = enumerate_spectrum(m, 120);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(small[i].m1 == big[i].m1);
        CHECK(small[i].m2 == big[i].m2);
        CHECK(small[i].action == big[i].action);
    }
}

TEST_CASE("rank doubling under scaling") {
    // N_k(t a, t b) = t N_k(a, b) for rational t
    TwoOrbitModel m1 = ellipsoid_model(Scalar(1), sqrt_of(2));
    TwoOrbitModel m2 = ellipsoid_model(Scalar(2), Scalar(2) * sqrt_of(2));
    auto s1 = enumerate_spectrum(m1, 500), s2 = enumerate_spectrum(m2, 500);
    for (std::size_t i = 0; i < s1.size(); ++i)
        CHECK(s2[i].action == Scalar(2) * s1[i].action);
}

TEST_CASE("spectral invariant frozen values") {
    CHECK(ech_spectral_invariant(Scalar(1), sqrt_of(2), 0) == Scalar(0));
    CHECK(ech_spectral_invariant(Scalar(1), sqrt_of(2), 1) == Scalar(1));
    CHECK(ech_spectral_invariant(Scalar(1), sqrt_of(2), 4) == Scalar(1) + sqrt_of(2));
    CHECK_THROWS_AS((void)ech_spectral_invariant(Scalar(1), Scalar(1), 1), std::domain_error);
    CHECK_THROWS_AS((void)ech_spectral_invariant(Scalar(2), Scalar(3), 1), std::domain_error);
}

TEST_CASE("index identity along the spectrum") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), sqrt_of(2));
    auto s = enumerate_spectrum(m, 500, /*with_index=*/true);
    for (const auto& e : s) {
        REQUIRE(e.index.has_value());
        CHECK(*e.index == 2 * e.rank);
    }
}

TEST_CASE("volume asymptotics frozen value") {
    auto rows = volume_asymptotics(Scalar(1), sqrt_of(2), {1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].value == Scalar(1));
    CHECK(rows[0].ratio == Scalar::rational(Rational(1, 2)));
    CHECK(rows[0].deviation == Scalar::rational(Rational(1, 2)) - sqrt_of(2));

    auto more = volume_asymptotics(Scalar(1), sqrt_of(2), {10, 100, 1000});
    double prev = 1e9;
    for (const auto& r : more) {
        double dev = std::fabs(r.deviation.to_double());
        CHECK(dev < prev + 0.3); // broadly shrinking toward the volume
        prev = dev;
    }
    CHECK(std::fabs(more.back().deviation.to_double()) < 0.1);
}

TEST_CASE("monotonicity of the irrational spectrum") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), sqrt_of(2));
    auto s = enumerate_spectrum(m, 2000);
    auto rep = monotonicity_check(s);
    CHECK(rep.strictly_increasing);
    CHECK(rep.first_tie_rank == -1);
}

TEST_CASE("budget violations carry an offset") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), sqrt_of(2));
    try {
        (void)enumerate_spectrum(m, 100, false, /*max_entries=*/50);
        FAIL("expected resource_error");
    } catch (const resource_error& e) {
        CHECK(e.completed() == 0);
    }
}

TEST_CASE("spectrum requires exact positive periods") {
    TwoOrbitModel m = ellipsoid_model(Scalar(1), sqrt_of(2));
    m.T1 = Scalar::approximate(1.0, 1e-12);
    CHECK_THROWS_AS((void)enumerate_spectrum(m, 5), std::domain_error);
}
