#include "reeb/scalar.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace reeb {

using boost::multiprecision::cpp_int;

namespace {

constexpr std::int64_t kMaxRadicand = 1'000'000'000'000LL;

// pulls the largest square factor out of d; multiplies it into q1
std::int64_t square_free_part(std::int64_t d, Rational& q1) {
    if (d < 0) throw std::domain_error("surd: negative radicand");
    if (d > kMaxRadicand) throw std::domain_error("surd: radicand too large");
    std::int64_t rest = 1, root = 1;
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % p) continue;
        int e = 0;
        while (d % p == 0) { d /= p; ++e; }
        for (int i = 0; i < e / 2; ++i) root *= p;
        if (e % 2) rest *= p;
    }
    rest *= d; // leftover prime (or 1)
    if (root != 1) q1 = q1 * Rational(root);
    return rest;
}

double ulp_slop(double x) { return 4.0 * DBL_EPSILON * std::fabs(x) + 1e-307; }

// exact dyadic decomposition of a finite double: x = num/den, den a power of two
void dyadic_of_double(double x, cpp_int& num, cpp_int& den) {
    if (x == 0.0) { num = 0; den = 1; return; }
    int e;
    double f = std::frexp(x, &e); // |f| in [0.5, 1)
    auto m = (std::int64_t)std::ldexp(f, 53); // exact
    int sh = e - 53;
    if (sh >= 0) { num = cpp_int(m) << sh; den = 1; }
    else { num = m; den = cpp_int(1) << (-sh); }
}

// sign of (un/ud) + (vn/vd)*sqrt(d), arbitrary precision, ud,vd > 0
int sign_surd_big(const cpp_int& un, const cpp_int& ud,
                  const cpp_int& vn, const cpp_int& vd, std::int64_t d) {
    auto sgn = [](const cpp_int& x) { return x > 0 ? 1 : x < 0 ? -1 : 0; };
    if (vn == 0 || d == 0) return sgn(un);
    if (un == 0) return sgn(vn);
    int su = sgn(un), sv = sgn(vn);
    if (su == sv) return su;
    cpp_int t1 = un * vd, t2 = vn * ud;
    cpp_int diff = t1 * t1 - t2 * t2 * d;
    int s = sgn(diff);
    return su > 0 ? s : -s;
}

} // namespace

int sign_surd(const Rational& u, const Rational& v, std::int64_t d) {
    return sign_surd_big(cpp_int(u.num()), cpp_int(u.den()),
                         cpp_int(v.num()), cpp_int(v.den()), d);
}

Scalar Scalar::rational(const Rational& r) {
    Scalar s;
    s.q0_ = r;
    return s;
}

Scalar Scalar::surd(const Rational& q0, const Rational& q1, std::int64_t d) {
    Scalar s;
    s.q0_ = q0;
    s.q1_ = q1;
    s.d_ = d;
    if (s.d_ == 0 || s.q1_.is_zero()) { // sqrt(0) contributes nothing
        s.q1_ = Rational(0);
        s.d_ = 0;
        return s;
    }
    s.d_ = square_free_part(s.d_, s.q1_);
    if (s.d_ == 1) { // sqrt of a perfect square
        s.q0_ = s.q0_ + s.q1_;
        s.q1_ = Rational(0);
        s.d_ = 0;
    }
    return s;
}

Scalar Scalar::approximate(double value, double radius) {
    if (!std::isfinite(value) || !std::isfinite(radius) || radius < 0)
        throw std::domain_error("scalar: approximate payload must be finite, radius >= 0");
    Scalar s;
    s.kind_ = Kind::approx;
    s.val_ = value;
    s.rad_ = radius;
    return s;
}

bool Scalar::is_zero() const {
    if (kind_ == Kind::exact) return q0_.is_zero() && q1_.is_zero();
    return val_ == 0.0 && rad_ == 0.0;
}

int Scalar::sign() const {
    if (kind_ == Kind::exact)
        return q1_.is_zero() ? q0_.sign() : sign_surd(q0_, q1_, d_);
    if (std::fabs(val_) > rad_) return val_ > 0 ? 1 : -1;
    if (val_ == 0.0 && rad_ == 0.0) return 0;
    throw precision_error("scalar: sign of approximate value straddling zero");
}

std::int64_t Scalar::combine_field(const Scalar& a, const Scalar& b, const char* op) {
    if (a.d_ == 0) return b.d_;
    if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
    throw field_error(std::string("scalar: ") + op + " across distinct surd fields sqrt(" +
                      std::to_string(a.d_) + ") and sqrt(" + std::to_string(b.d_) + ")");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.kind_ == Scalar::Kind::exact && b.kind_ == Scalar::Kind::exact) {
        std::int64_t d = Scalar::combine_field(a, b, "addition");
        return Scalar::surd(a.q0_ + b.q0_, a.q1_ + b.q1_, d);
    }
    Scalar x = a.is_exact() ? a.as_approx() : a;
    Scalar y = b.is_exact() ? b.as_approx() : b;
    double v = x.val_ + y.val_;
    return Scalar::approximate(v, x.rad_ + y.rad_ + ulp_slop(v));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar Scalar::operator-() const {
    if (kind_ == Kind::exact) {
        Scalar s = *this;
        s.q0_ = -q0_;
        s.q1_ = -q1_;
        return s;
    }
    return approximate(-val_, rad_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.kind_ == Scalar::Kind::exact && b.kind_ == Scalar::Kind::exact) {
        std::int64_t d = Scalar::combine_field(a, b, "multiplication");
        Rational q0 = a.q0_ * b.q0_;
        if (!a.q1_.is_zero() && !b.q1_.is_zero())
            q0 = q0 + a.q1_ * b.q1_ * Rational(d);
        Rational q1 = a.q0_ * b.q1_ + a.q1_ * b.q0_;
        return Scalar::surd(q0, q1, d);
    }
    Scalar x = a.is_exact() ? a.as_approx() : a;
    Scalar y = b.is_exact() ? b.as_approx() : b;
    double v = x.val_ * y.val_;
    double rad = std::fabs(x.val_) * y.rad_ + std::fabs(y.val_) * x.rad_ + x.rad_ * y.rad_;
    return Scalar::approximate(v, rad + ulp_slop(v));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.kind_ == Scalar::Kind::exact && b.kind_ == Scalar::Kind::exact) {
        if (b.is_zero()) throw std::domain_error("scalar: division by zero");
        std::int64_t d = Scalar::combine_field(a, b, "division");
        // conjugate trick; b0^2 - b1^2 d vanishes only at b == 0 since d is square-free
        Rational denom = b.q0_ * b.q0_;
        if (!b.q1_.is_zero()) denom = denom - b.q1_ * b.q1_ * Rational(d);
        Scalar conj = Scalar::surd(b.q0_, -b.q1_, d);
        Scalar num = a * conj;
        return Scalar::surd(num.q0_ / denom, num.q1_ / denom, num.d_ == 0 ? d : num.d_);
    }
    Scalar x = a.is_exact() ? a.as_approx() : a;
    Scalar y = b.is_exact() ? b.as_approx() : b;
    if (std::fabs(y.val_) <= y.rad_)
        throw precision_error("scalar: division by approximate value straddling zero");
    double v = x.val_ / y.val_;
    double rad = (x.rad_ + std::fabs(v) * y.rad_) / (std::fabs(y.val_) - y.rad_);
    return Scalar::approximate(v, rad + ulp_slop(v));
}

Scalar Scalar::abs() const {
    if (kind_ == Kind::exact) return sign() < 0 ? -*this : *this;
    double lo = val_ - rad_, hi = val_ + rad_;
    if (lo >= 0) return *this;
    if (hi <= 0) return approximate(-val_, rad_);
    double top = std::fmax(-lo, hi);
    return approximate(top / 2, top / 2 + ulp_slop(top));
}

std::strong_ordering Scalar::compare(const Scalar& a, const Scalar& b) {
    if (a.kind_ != Kind::exact || b.kind_ != Kind::exact)
        throw comparison_error("scalar: comparison involving approximate value");
    std::int64_t d = combine_field(a, b, "comparison");
    int s = sign_surd(a.q0_ - b.q0_, a.q1_ - b.q1_, d);
    return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

std::int64_t Scalar::floor() const {
    require_exact("floor");
    if (d_ == 0) return q0_.floor();
    long double x = q0_.to_long_double() + q1_.to_long_double() * sqrtl((long double)d_);
    auto n = (std::int64_t)floorl(x);
    while (sign_surd(q0_ - Rational(n), q1_, d_) < 0) --n;
    while (sign_surd(q0_ - Rational(n + 1), q1_, d_) >= 0) ++n;
    return n;
}

std::int64_t Scalar::ceil() const {
    require_exact("ceil");
    if (d_ == 0) return q0_.ceil();
    return floor() + 1; // irrational when d != 0
}

double Scalar::to_double() const {
    if (kind_ == Kind::approx) return val_;
    long double s = d_ ? sqrtl((long double)d_) : 0.0L;
    long double y = q0_.to_long_double() + q1_.to_long_double() * s;
    long double mag = fabsl(q0_.to_long_double()) + fabsl(q1_.to_long_double()) * (s + 1) +
                      fabsl(y) + 1e-300L;
    long double err = mag * 4e-19L; // a few long-double ulps
    double lo = (double)(y - err), hi = (double)(y + err);
    if (lo == hi) return lo;

    // ambiguous band: walk to the certified nearest double with exact sign tests
    double c = (double)y;
    auto cmp_mid = [&](double u, double w) { // sign of (this - midpoint(u, w))
        cpp_int nu, du, nw, dw;
        dyadic_of_double(u, nu, du);
        dyadic_of_double(w, nw, dw);
        cpp_int mn = nu * dw + nw * du, md = 2 * du * dw;
        if (md < 0) { md = -md; mn = -mn; }
        cpp_int un = cpp_int(q0_.num()) * md - mn * q0_.den();
        cpp_int ud = cpp_int(q0_.den()) * md;
        return sign_surd_big(un, ud, cpp_int(q1_.num()), cpp_int(q1_.den()), d_);
    };
    for (int i = 0; i < 64; ++i) {
        double up = std::nextafter(c, HUGE_VAL), dn = std::nextafter(c, -HUGE_VAL);
        if (cmp_mid(c, up) > 0) { c = up; continue; }
        if (cmp_mid(dn, c) < 0) { c = dn; continue; }
        return c;
    }
    throw precision_error("scalar: certified rounding did not converge");
}

Scalar Scalar::as_approx() const {
    if (kind_ == Kind::approx) return *this;
    double v = to_double();
    return approximate(v, 2.0 * DBL_EPSILON * std::fabs(v) + 1e-307);
}

std::string Scalar::str() const {
    if (kind_ == Kind::approx) return fmt_double17(val_);
    if (d_ == 0) return q0_.str();
    std::string s = q0_.str();
    s += q1_.sign() < 0 ? "-" : "+";
    s += q1_.abs().str();
    s += "*sqrt(" + std::to_string(d_) + ")";
    return s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

std::string fmt_double17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---- literal parsing ----------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool eof() { skip_ws(); return i >= s.size(); }
    char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i;
        return true;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("surd literal '" + s + "': " + why +
                                    " (at offset " + std::to_string(i) + ")");
    }
};

std::int64_t parse_uint(Cursor& c, const char* what) {
    c.skip_ws();
    if (c.i >= c.s.size() || !std::isdigit((unsigned char)c.s[c.i])) c.fail(std::string("expected ") + what);
    std::int64_t v = 0;
    int digits = 0;
    while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) {
        if (++digits > 18) c.fail("number too long");
        v = v * 10 + (c.s[c.i] - '0');
        ++c.i;
    }
    return v;
}

// unsigned rational: "p", "p/q", or decimal "p.q"
Rational parse_unsigned_rational(Cursor& c) {
    std::int64_t whole = parse_uint(c, "a number");
    if (c.i < c.s.size() && c.s[c.i] == '/') {
        ++c.i;
        std::int64_t den = parse_uint(c, "a denominator");
        if (den == 0) c.fail("zero denominator");
        return Rational(whole, den);
    }
    if (c.i < c.s.size() && c.s[c.i] == '.') {
        ++c.i;
        std::size_t start = c.i;
        std::int64_t frac = parse_uint(c, "decimal digits");
        std::size_t ndig = c.i - start;
        std::int64_t pow10 = 1;
        for (std::size_t k = 0; k < ndig; ++k) {
            if (pow10 > 100'000'000'000'000'000LL / 10) c.fail("decimal too long");
            pow10 *= 10;
        }
        return Rational(whole) + Rational(frac, pow10);
    }
    return Rational(whole);
}

bool at_sqrt(Cursor& c) {
    c.skip_ws();
    return c.s.compare(c.i, 4, "sqrt") == 0;
}

std::int64_t parse_sqrt(Cursor& c) {
    c.skip_ws();
    c.i += 4; // "sqrt"
    if (c.eat('(')) {
        std::int64_t d = parse_uint(c, "a radicand");
        if (!c.eat(')')) c.fail("expected ')'");
        return d;
    }
    return parse_uint(c, "a radicand"); // shorthand sqrtN
}

struct Term {
    Rational coeff;
    std::int64_t d = 0; // 0: plain rational term
};

Term parse_term(Cursor& c, int sign) {
    Term t;
    if (at_sqrt(c)) {
        t.coeff = Rational(sign);
        t.d = parse_sqrt(c);
        return t;
    }
    Rational r = parse_unsigned_rational(c);
    t.coeff = sign < 0 ? -r : r;
    if (c.eat('*')) {
        if (!at_sqrt(c)) c.fail("expected sqrt after '*'");
        t.d = parse_sqrt(c);
    }
    return t;
}

} // namespace

Scalar parse_scalar(const std::string& text) {
    Cursor c{text};
    if (c.eof()) c.fail("empty");
    int sign = 1;
    if (c.eat('-')) sign = -1;
    else c.eat('+');
    Term first = parse_term(c, sign);

    Rational q0(0), q1(0);
    std::int64_t d = 0;
    auto absorb = [&](const Term& t) {
        if (t.d == 0) {
            q0 = q0 + t.coeff;
            return;
        }
        Scalar norm = Scalar::surd(Rational(0), t.coeff, t.d); // folds square factors
        if (norm.is_rational()) {
            q0 = q0 + norm.q0();
            return;
        }
        if (d != 0 && d != norm.d())
            throw std::invalid_argument("surd literal '" + text + "': two distinct radicands");
        d = norm.d();
        q1 = q1 + norm.q1();
    };
    absorb(first);

    if (!c.eof()) {
        int s2;
        if (c.eat('+')) s2 = 1;
        else if (c.eat('-')) s2 = -1;
        else c.fail("expected '+' or '-'");
        Term second = parse_term(c, s2);
        if (second.d == 0) c.fail("second term must be a sqrt term");
        absorb(second);
        if (!c.eof()) c.fail("trailing input");
    }
    return Scalar::surd(q0, q1, d);
}

} // namespace reeb
