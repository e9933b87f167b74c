#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "reeb/errors.hpp"
#include "reeb/rational.hpp"

namespace reeb {

// Number in a real quadratic field: q0 + q1*sqrt(d) with rational q0, q1 and a
// square-free radicand d >= 0 (d == 0 encodes a plain rational).  A Scalar can
// instead carry an approximate payload (value, error radius); the two kinds mix
// in arithmetic but never in comparisons.
class Scalar {
public:
    enum class Kind { exact, approx };

    Scalar() : kind_(Kind::exact), q0_(0), q1_(0), d_(0), val_(0), rad_(0) {}
    Scalar(std::int64_t n) : Scalar() { q0_ = Rational(n); }

    static Scalar rational(const Rational& r);
    // q1*sqrt(d) is normalized: square parts of d folded into q1, sqrt(1) folded into q0
    static Scalar surd(const Rational& q0, const Rational& q1, std::int64_t d);
    static Scalar approximate(double value, double radius);

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::exact; }
    bool is_rational() const { return kind_ == Kind::exact && d_ == 0; }
    bool is_integer() const { return is_rational() && q0_.is_integer(); }
    bool is_zero() const;

    // exact payload accessors; invalid for approximate scalars
    const Rational& q0() const { require_exact("q0"); return q0_; }
    const Rational& q1() const { require_exact("q1"); return q1_; }
    std::int64_t d() const { require_exact("d"); return d_; }

    double approx_value() const { require_approx("value"); return val_; }
    double approx_radius() const { require_approx("radius"); return rad_; }

    // certified sign; throws precision_error if an approximate interval straddles 0
    int sign() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    Scalar abs() const;

    // total order on exact values sharing a field (rationals embed in every field);
    // throws comparison_error when either side is approximate
    static std::strong_ordering compare(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }

    // exact only
    std::int64_t floor() const;
    std::int64_t ceil() const;

    // round-to-nearest double whose value is certified correct (exact kind);
    // approximate kind returns the stored value
    double to_double() const;
    // exact scalars converted to a tagged approximation with a certified radius
    Scalar as_approx() const;

    // canonical literal for exact values ("3/2", "0+1*sqrt(2)"); %.17g for approximate
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
    void require_exact(const char* what) const {
        if (kind_ != Kind::exact)
            throw comparison_error(std::string("scalar: exact payload '") + what +
                                   "' requested from approximate value");
    }
    void require_approx(const char* what) const {
        if (kind_ != Kind::approx)
            throw comparison_error(std::string("scalar: approximate payload '") + what +
                                   "' requested from exact value");
    }
    static std::int64_t combine_field(const Scalar& a, const Scalar& b, const char* op);

    Kind kind_;
    Rational q0_, q1_;
    std::int64_t d_;
    double val_, rad_;
};

// sign of u + v*sqrt(d), exact (d square-free, >= 0)
int sign_surd(const Rational& u, const Rational& v, std::int64_t d);

// strict literal parser: "q0+q1*sqrt(d)" with rational or decimal coefficients,
// also "q", "p/q", "sqrt(d)", "sqrtd", "q1*sqrt(d)" and leading signs
Scalar parse_scalar(const std::string& text);

// %.17g (shortest round-trip-safe within 17 significant digits)
std::string fmt_double17(double x);

} // namespace reeb
