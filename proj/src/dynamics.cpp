#include "reeb/dynamics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "reeb/errors.hpp"
#include "reeb/scalar.hpp"

namespace reeb {
namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- forward-mode jets: value, gradient, optional Hessian ---------------
//
// H is assembled from polynomials in the four coordinates and real powers of
// the base quadratic, so +, *, unary minus and pow with a real exponent are
// the only primitives needed.  Instantiating the same evaluation at double,
// Grad and Jet keeps one source of truth for H and its derivatives.

struct Grad {
    double v = 0;
    std::array<double, 4> g{};
};

Grad operator+(const Grad& a, const Grad& b) {
    Grad r;
    r.v = a.v + b.v;
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
    return r;
}

Grad operator-(const Grad& a) {
    Grad r;
    r.v = -a.v;
    for (int i = 0; i < 4; ++i) r.g[i] = -a.g[i];
    return r;
}

Grad operator-(const Grad& a, const Grad& b) { return a + (-b); }

Grad operator*(const Grad& a, const Grad& b) {
    Grad r;
    r.v = a.v * b.v;
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + b.g[i] * a.v;
    return r;
}

Grad pow_real(const Grad& u, double p) {
    Grad r;
    r.v = std::pow(u.v, p);
    const double d = p * std::pow(u.v, p - 1);
    for (int i = 0; i < 4; ++i) r.g[i] = d * u.g[i];
    return r;
}

struct Jet {
    double v = 0;
    std::array<double, 4> g{};
    std::array<std::array<double, 4>, 4> h{};
};

Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v + b.v;
    for (int i = 0; i < 4; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
    }
    return r;
}

Jet operator-(const Jet& a) {
    Jet r;
    r.v = -a.v;
    for (int i = 0; i < 4; ++i) {
        r.g[i] = -a.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = -a.h[i][j];
    }
    return r;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v * b.v;
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + b.g[i] * a.v;
    // fill one triangle and mirror so the Hessian stays symmetric bit for bit
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v =
                a.h[i][j] * b.v + b.h[i][j] * a.v + a.g[i] * b.g[j] + a.g[j] * b.g[i];
            r.h[i][j] = v;
            r.h[j][i] = v;
        }
    return r;
}

Jet pow_real(const Jet& u, double p) {
    Jet r;
    r.v = std::pow(u.v, p);
    const double d1 = p * std::pow(u.v, p - 1);
    const double d2 = p * (p - 1) * std::pow(u.v, p - 2);
    for (int i = 0; i < 4; ++i) r.g[i] = d1 * u.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = d1 * u.h[i][j] + d2 * u.g[i] * u.g[j];
            r.h[i][j] = v;
            r.h[j][i] = v;
        }
    return r;
}

inline double pow_real(double u, double p) { return std::pow(u, p); }

template <class J> J make_var(double v, int i);
template <> double make_var<double>(double v, int) { return v; }
template <> Grad make_var<Grad>(double v, int i) {
    Grad r;
    r.v = v;
    r.g[i] = 1;
    return r;
}
template <> Jet make_var<Jet>(double v, int i) {
    Jet r;
    r.v = v;
    r.g[i] = 1;
    return r;
}

template <class J> J make_cst(double v);
template <> double make_cst<double>(double v) { return v; }
template <> Grad make_cst<Grad>(double v) {
    Grad r;
    r.v = v;
    return r;
}
template <> Jet make_cst<Jet>(double v) {
    Jet r;
    r.v = v;
    return r;
}

template <class J> struct CJ {
    J re, im;
};

template <class J> CJ<J> cmul(const CJ<J>& a, const CJ<J>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class J>
J eval_body(double a, double b, double eps, const std::vector<TrigTerm>& terms, const Vec4& z) {
    const J x1 = make_var<J>(z[0], 0), y1 = make_var<J>(z[1], 1);
    const J x2 = make_var<J>(z[2], 2), y2 = make_var<J>(z[3], 3);
    const J h0 = (x1 * x1 + y1 * y1) * make_cst<J>(kPi / a) +
                 (x2 * x2 + y2 * y2) * make_cst<J>(kPi / b);
    if (eps == 0.0 || terms.empty()) return h0;
    J g = make_cst<J>(0.0);
    for (const TrigTerm& t : terms) {
        const CJ<J> u1{x1, t.k1 >= 0 ? y1 : -y1};
        const CJ<J> u2{x2, t.k2 >= 0 ? y2 : -y2};
        CJ<J> w{make_cst<J>(1.0), make_cst<J>(0.0)};
        for (int n = std::abs(t.k1); n > 0; --n) w = cmul(w, u1);
        for (int n = std::abs(t.k2); n > 0; --n) w = cmul(w, u2);
        J harmonic = t.use_sin ? w.im : w.re;
        const int degree = std::abs(t.k1) + std::abs(t.k2);
        if (degree > 0) harmonic = harmonic * pow_real(h0, -0.5 * degree);
        g = g + harmonic * make_cst<J>(t.coeff);
    }
    return h0 * (make_cst<J>(1.0) + g * make_cst<J>(eps));
}

// ---- flow systems --------------------------------------------------------

// Hamiltonian field of H with the standard symplectic pairing of (x_i, y_i)
inline Vec4 field_from_gradient(const std::array<double, 4>& g) {
    return {-g[1], g[0], -g[3], g[2]};
}

struct FlowSystem {
    const StarBody& body;
    void operator()(const Vec4& z, Vec4& dz, double) const {
        const Grad j = eval_body<Grad>(body.axis_a(), body.axis_b(), body.strength(),
                                       body.terms(), z);
        dz = field_from_gradient(j.g);
    }
};

// positions plus the 4x4 linearization, row-major in entries 4..19
using VarState = std::array<double, 20>;

struct VariationalSystem {
    const StarBody& body;
    void operator()(const VarState& s, VarState& ds, double) const {
        const Vec4 z{s[0], s[1], s[2], s[3]};
        const Jet j = eval_body<Jet>(body.axis_a(), body.axis_b(), body.strength(),
                                     body.terms(), z);
        const Vec4 dz = field_from_gradient(j.g);
        for (int i = 0; i < 4; ++i) ds[i] = dz[i];
        // A = J * Hess H, the linearization of the field
        std::array<std::array<double, 4>, 4> A;
        for (int c = 0; c < 4; ++c) {
            A[0][c] = -j.h[1][c];
            A[1][c] = j.h[0][c];
            A[2][c] = -j.h[3][c];
            A[3][c] = j.h[2][c];
        }
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                double acc = 0;
                for (int k = 0; k < 4; ++k) acc += A[r][k] * s[4 + 4 * k + c];
                ds[4 + 4 * r + c] = acc;
            }
    }
};

using Stepper4 = boost::numeric::odeint::runge_kutta_fehlberg78<Vec4>;
using Stepper20 = boost::numeric::odeint::runge_kutta_fehlberg78<VarState>;

// one period of the variational flow at fixed step count; returns final state
VarState run_variational(const StarBody& body, const Vec4& start, double period, int nsteps,
                         double* winding_out, int off_x, int off_y) {
    VarState s{};
    for (int i = 0; i < 4; ++i) s[i] = start[i];
    for (int i = 0; i < 4; ++i) s[4 + 4 * i + i] = 1.0;
    Stepper20 st;
    VariationalSystem sys{body};
    const double h = period / nsteps;
    double vx = s[4 + 4 * off_x + off_x], vy = s[4 + 4 * off_y + off_x];
    double angle = 0;
    for (int k = 0; k < nsteps; ++k) {
        st.do_step(sys, s, k * h, h);
        if (winding_out) {
            const double wx = s[4 + 4 * off_x + off_x], wy = s[4 + 4 * off_y + off_x];
            angle += std::atan2(vx * wy - vy * wx, vx * wx + vy * wy);
            vx = wx;
            vy = wy;
        }
    }
    if (winding_out) *winding_out = angle / (2 * kPi);
    return s;
}

} // namespace

StarBody::StarBody(double a, double b, double eps, std::vector<TrigTerm> terms)
    : a_(a), b_(b), eps_(eps), terms_(std::move(terms)) {
    if (!(a_ > 0) || !(b_ > 0) || !std::isfinite(a_) || !std::isfinite(b_))
        throw std::invalid_argument("ellipsoid axes must be positive and finite");
    if (!std::isfinite(eps_)) throw std::invalid_argument("perturbation strength must be finite");
    for (const auto& t : terms_) {
        if (!std::isfinite(t.coeff))
            throw std::invalid_argument("perturbation coefficient must be finite");
        if (std::abs(t.k1) > 16 || std::abs(t.k2) > 16)
            throw std::invalid_argument("harmonic orders are limited to 16");
    }

    // spot-check degree-2 homogeneity and positivity away from the origin
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 64; ++i) {
        Vec4 z;
        double n2 = 0;
        do {
            for (auto& c : z) c = u(rng);
            n2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
        } while (n2 < 0.1);
        const double hz = value(z);
        for (double t : {0.5, 2.0, 3.75}) {
            const Vec4 tz{t * z[0], t * z[1], t * z[2], t * z[3]};
            if (std::abs(value(tz) - t * t * hz) > 1e-12 * std::max(1.0, std::abs(t * t * hz)))
                throw std::invalid_argument("defining function is not homogeneous of degree 2");
        }
        const double inv = 1.0 / std::sqrt(n2);
        const Vec4 s{z[0] * inv, z[1] * inv, z[2] * inv, z[3] * inv};
        if (!(value(s) > 0))
            throw std::invalid_argument("defining function must be positive on the sphere");
    }
}

double StarBody::value(const Vec4& z) const {
    return eval_body<double>(a_, b_, eps_, terms_, z);
}

Vec4 StarBody::gradient(const Vec4& z) const {
    return eval_body<Grad>(a_, b_, eps_, terms_, z).g;
}

Mat4 StarBody::hessian(const Vec4& z) const {
    return eval_body<Jet>(a_, b_, eps_, terms_, z).h;
}

namespace {

// minimal cursor over the body grammar (whitespace already stripped)
struct BodyCursor {
    std::string s;
    std::size_t pos = 0;
    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    bool eat(const std::string& word) {
        if (s.compare(pos, word.size(), word) != 0) return false;
        pos += word.size();
        return true;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("body spec: " + why + " at offset " + std::to_string(pos));
    }
    double number() {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s.substr(pos), &used);
        } catch (const std::exception&) {
            fail("expected a number");
        }
        pos += used;
        return v;
    }
    long integer() {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s.substr(pos), &used);
        } catch (const std::exception&) {
            fail("expected an integer");
        }
        pos += used;
        return v;
    }
};

std::vector<TrigTerm> parse_harmonics(BodyCursor& c) {
    std::vector<TrigTerm> terms;
    while (true) {
        TrigTerm t;
        double sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.peek() == '-' ? -1 : 1;
            ++c.pos;
        }
        t.coeff = sign;
        if (std::isdigit((unsigned char)c.peek()) || c.peek() == '.') {
            t.coeff = sign * c.number();
            if (c.peek() == '*') ++c.pos;
        }
        if (c.eat("cos"))
            t.use_sin = false;
        else if (c.eat("sin"))
            t.use_sin = true;
        else
            c.fail("expected cos or sin");
        if (!c.eat("(")) c.fail("expected (");
        bool any = false;
        while (c.peek() != ')') {
            long ks = 1;
            if (c.peek() == '+' || c.peek() == '-') {
                if (std::isdigit((unsigned char)c.s[c.pos + 1])) {
                    ks = c.integer(); // signed multiplier like -3*t2
                } else {
                    ks = c.peek() == '-' ? -1 : 1; // bare sign like -t2
                    ++c.pos;
                }
            } else if (std::isdigit((unsigned char)c.peek())) {
                ks = c.integer();
            }
            if (c.peek() == '*') ++c.pos;
            if (c.eat("t1"))
                t.k1 += (int)ks;
            else if (c.eat("t2"))
                t.k2 += (int)ks;
            else
                c.fail("expected t1 or t2");
            any = true;
            if (c.done()) c.fail("unterminated angle argument");
        }
        ++c.pos; // ')'
        if (!any) c.fail("empty angle argument");
        terms.push_back(t);
        if (c.done()) break;
        if (c.peek() != '+' && c.peek() != '-') c.fail("expected + or - between harmonics");
    }
    return terms;
}

} // namespace

StarBody parse_body(const std::string& text) {
    std::string compact;
    for (char ch : text)
        if (!std::isspace((unsigned char)ch)) compact.push_back(ch);

    const auto scalar_at = [](const std::string& piece) {
        return parse_scalar(piece).to_double();
    };

    BodyCursor c{compact};
    if (!c.eat("ellipsoid:")) c.fail("expected ellipsoid:a,b");
    const std::size_t comma = compact.find(',', c.pos);
    if (comma == std::string::npos) c.fail("expected ellipsoid:a,b");
    const double a = scalar_at(compact.substr(c.pos, comma - c.pos));
    c.pos = comma + 1;
    const std::size_t semi = compact.find(';', c.pos);
    const std::size_t bend = semi == std::string::npos ? compact.size() : semi;
    const double b = scalar_at(compact.substr(c.pos, bend - c.pos));
    c.pos = bend;
    if (c.done()) return StarBody(a, b);

    ++c.pos; // ';'
    if (!c.eat("perturb:")) c.fail("expected perturb:eps,expr");
    const std::size_t comma2 = compact.find(',', c.pos);
    if (comma2 == std::string::npos) c.fail("expected perturb:eps,expr");
    const double eps = scalar_at(compact.substr(c.pos, comma2 - c.pos));
    c.pos = comma2 + 1;
    if (c.done()) c.fail("empty perturbation expression");
    std::vector<TrigTerm> terms = parse_harmonics(c);
    return StarBody(a, b, eps, std::move(terms));
}

Vec4 reeb_field(const StarBody& body, const Vec4& z) {
    if (std::abs(body.value(z) - 1.0) > 1e-9)
        throw std::domain_error("point is off the unit level of the defining function");
    return field_from_gradient(body.gradient(z));
}

Vec4 integrate_flow(const StarBody& body, Vec4 z, double time, double step) {
    if (!(step > 0) || !std::isfinite(step) || !std::isfinite(time))
        throw std::invalid_argument("integrate_flow needs a positive step and finite time");
    const double dir = time < 0 ? -1.0 : 1.0;
    const double total = std::abs(time);
    const long long whole = (long long)std::floor(total / step);
    Stepper4 st;
    FlowSystem sys{body};
    double t = 0;
    for (long long k = 0; k < whole; ++k) {
        st.do_step(sys, z, t, dir * step);
        t += dir * step;
    }
    const double rest = total - (double)whole * step;
    if (rest > 0) st.do_step(sys, z, t, dir * rest);
    return z;
}

namespace {

// period of the planar orbit: integrate to the first upward section crossing,
// then Newton-refine the return time within the bracketing step
double refine_period(const StarBody& body, const Vec4& start, double t_est, int nsteps,
                     int i_x, int i_y) {
    Stepper4 st;
    FlowSystem sys{body};
    const double h = t_est / nsteps;
    Vec4 z = start;
    for (long step = 1; step <= 3L * nsteps; ++step) {
        const Vec4 prev = z;
        st.do_step(sys, z, (step - 1) * h, h);
        if (step * h > 0.25 * t_est && prev[i_y] < 0 && z[i_y] >= 0 && z[i_x] > 0) {
            double dt = h * (-prev[i_y]) / (z[i_y] - prev[i_y]);
            for (int it = 0; it < 50; ++it) {
                Vec4 w = prev;
                if (dt != 0) st.do_step(sys, w, 0.0, dt);
                const double f = w[i_y];
                const double fp = body.gradient(w)[i_x]; // dy/dt = dH/dx on the pair
                const double delta = f / fp;
                dt -= delta;
                if (!(dt > -h && dt < 2 * h))
                    throw std::runtime_error("return-map refinement left its bracket");
                if (std::abs(delta) < 1e-15 * t_est) return (step - 1) * h + dt;
            }
            throw std::runtime_error("return-map refinement did not converge");
        }
    }
    throw std::runtime_error("no return to the section was found");
}

} // namespace

PeriodicOrbitResult find_planar_orbit(const StarBody& body, int plane) {
    if (plane != 1 && plane != 2) throw std::invalid_argument("plane must be 1 or 2");
    const int i_x = plane == 1 ? 0 : 2, i_y = i_x + 1;
    const int o_x = plane == 1 ? 2 : 0, o_y = o_x + 1;

    // the coordinate plane must be flow-invariant along the whole level curve
    for (int k = 0; k < 16; ++k) {
        const double phi = 2 * kPi * k / 16;
        Vec4 dir{};
        dir[i_x] = std::cos(phi);
        dir[i_y] = std::sin(phi);
        const double r = 1.0 / std::sqrt(body.value(dir));
        Vec4 p{};
        p[i_x] = r * std::cos(phi);
        p[i_y] = r * std::sin(phi);
        const Vec4 X = field_from_gradient(body.gradient(p));
        const double scale = std::sqrt(X[0] * X[0] + X[1] * X[1] + X[2] * X[2] + X[3] * X[3]);
        if (std::hypot(X[o_x], X[o_y]) > 1e-9 * scale)
            throw std::domain_error("orbit escaped plane: coordinate circle is not invariant");
    }

    Vec4 unit{};
    unit[i_x] = 1.0;
    Vec4 start{};
    start[i_x] = 1.0 / std::sqrt(body.value(unit));
    const double t_est = plane == 1 ? body.axis_a() : body.axis_b();

    const double t_coarse = refine_period(body, start, t_est, 2048, i_x, i_y);
    const double t_fine = refine_period(body, start, t_est, 4096, i_x, i_y);
    PeriodicOrbitResult res;
    res.plane = plane;
    res.start = start;
    res.period = t_fine;
    res.period_error = std::abs(t_coarse - t_fine) + 1e-15 * t_fine;
    if (!(res.period_error <= 1e-9))
        throw std::runtime_error("period refinement exceeded its tolerance");

    const VarState s = run_variational(body, start, res.period, 2048, nullptr, o_x, o_y);
    const double close = std::hypot(std::hypot(s[0] - start[0], s[1] - start[1]),
                                    std::hypot(s[2] - start[2], s[3] - start[3]));
    if (close > 1e-9) throw std::runtime_error("planar orbit failed to close up");

    // the off-plane block is the return map on the contact plane; the mixed
    // blocks must vanish for the restriction to be meaningful
    double coupling = 0;
    for (int r : {i_x, i_y})
        for (int c : {o_x, o_y})
            coupling = std::max({coupling, std::abs(s[4 + 4 * r + c]), std::abs(s[4 + 4 * c + r])});
    if (coupling > 1e-7)
        throw std::runtime_error("variational equations did not decouple from the plane");

    res.monodromy = {{{s[4 + 4 * o_x + o_x], s[4 + 4 * o_x + o_y]},
                      {s[4 + 4 * o_y + o_x], s[4 + 4 * o_y + o_y]}}};
    const double det = res.monodromy[0][0] * res.monodromy[1][1] -
                       res.monodromy[0][1] * res.monodromy[1][0];
    if (std::abs(det - 1.0) > 1e-8)
        throw std::runtime_error("monodromy failed the symplectic determinant check");
    return res;
}

RotationResult rotation_number(const StarBody& body, const PeriodicOrbitResult& orbit) {
    const double tr = orbit.monodromy[0][0] + orbit.monodromy[1][1];
    RotationResult res;
    if (std::abs(tr) > 2.0 + 1e-11) {
        const double disc = std::sqrt(tr * tr - 4.0);
        res.eig1 = (tr + disc) / 2.0;
        res.eig2 = (tr - disc) / 2.0;
        return res;
    }
    res.degenerate = std::abs(std::abs(tr) - 2.0) <= 1e-9;
    res.elliptic = !res.degenerate;
    const double rho_raw = std::acos(std::clamp(tr / 2.0, -1.0, 1.0)) / (2 * kPi); // in [0, 1/2]
    // at |tr| = 2 the two eigenphase branches meet; acos amplifies the last
    // digits of the trace there, so pin rho to the boundary it sits on
    const double rho = res.degenerate ? (tr > 0 ? 0.0 : 0.5) : rho_raw;

    const int o_x = orbit.plane == 1 ? 2 : 0, o_y = o_x + 1;
    const auto winding = [&](int nsteps) {
        double w = 0;
        run_variational(body, orbit.start, orbit.period, nsteps, &w, o_x, o_y);
        return w;
    };
    // the true rotation number is congruent to +-rho mod 1 and within 1/2 of
    // the winding of any single linearized solution
    const auto snap = [&](double w) {
        const double c1 = std::round(w - rho) + rho;
        const double c2 = std::round(w + rho) - rho;
        const double d1 = std::abs(w - c1), d2 = std::abs(w - c2);
        if (std::min(d1, d2) >= 0.49)
            throw precision_error("rotation number: winding is too far from the eigenphase");
        if (std::abs(d1 - d2) < 1e-9 && std::abs(c1 - c2) > 1e-9)
            throw precision_error("rotation number: ambiguous eigenphase branch");
        return d1 <= d2 ? c1 : c2;
    };
    const double w1 = winding(2048), w2 = winding(4096);
    const double t1 = snap(w1), t2 = snap(w2);
    if (t1 != t2) throw precision_error("rotation number unstable under step halving");
    res.theta = t2;
    res.error = std::max({std::abs(w1 - w2), std::abs(rho_raw - rho), 1e-12});
    return res;
}

namespace {

template <int N>
double sphere_level(const StarBody& body, int nt) {
    std::vector<double> ct(nt), st(nt);
    for (int i = 0; i < nt; ++i) {
        ct[i] = std::cos(2 * kPi * i / nt);
        st[i] = std::sin(2 * kPi * i / nt);
    }
    const double cell = (2 * kPi / nt) * (2 * kPi / nt);
    const auto ring = [&](double eta) {
        const double c = std::cos(eta), s = std::sin(eta);
        double sum = 0;
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < nt; ++j) {
                const Vec4 sigma{c * ct[i], c * st[i], s * ct[j], s * st[j]};
                const double hv = body.value(sigma);
                sum += 1.0 / (hv * hv);
            }
        return c * s * sum * cell;
    };
    return boost::math::quadrature::gauss<double, N>::integrate(ring, 0.0, kPi / 2);
}

double sphere_integral(const StarBody& body, int n) {
    switch (n) {
        case 16: return sphere_level<16>(body, 16);
        case 32: return sphere_level<32>(body, 32);
        case 64: return sphere_level<64>(body, 64);
        case 128: return sphere_level<128>(body, 128);
        default: throw std::invalid_argument("unsupported quadrature resolution");
    }
}

} // namespace

VolumeResult contact_volume(const StarBody& body, int base_resolution) {
    if (base_resolution != 16 && base_resolution != 32)
        throw std::invalid_argument("base_resolution must be 16 or 32");
    const double v0 = 0.5 * sphere_integral(body, base_resolution);
    const double v1 = 0.5 * sphere_integral(body, 2 * base_resolution);
    const double v2 = 0.5 * sphere_integral(body, 4 * base_resolution);
    const double err01 = std::abs(v1 - v0), err12 = std::abs(v2 - v1);
    const double floor = 1e-13 * (std::abs(v2) + 1.0);
    if (err12 > std::max(err01, floor))
        throw precision_error("volume quadrature did not converge under refinement");
    return {v2, std::max(err12, floor)};
}

RelationReport verify_theorem_relations(const StarBody& body, double tol) {
    const PeriodicOrbitResult o1 = find_planar_orbit(body, 1);
    const PeriodicOrbitResult o2 = find_planar_orbit(body, 2);
    const RotationResult r1 = rotation_number(body, o1);
    const RotationResult r2 = rotation_number(body, o2);
    for (const RotationResult* r : {&r1, &r2})
        if (!r->elliptic && !r->degenerate)
            throw std::domain_error("planar orbit is hyperbolic: no rotation number");
    const VolumeResult vol = contact_volume(body);

    TwoOrbitModel m;
    m.p = 1;
    m.h1 = m.h2 = 0;
    m.T1 = Scalar::approximate(o1.period, o1.period_error + 1e-12);
    m.T2 = Scalar::approximate(o2.period, o2.period_error + 1e-12);
    m.theta1 = Scalar::approximate(r1.theta, r1.error + 1e-12);
    m.theta2 = Scalar::approximate(r2.theta, r2.error + 1e-12);
    m.Q1 = m.Q2 = Rational(0);
    m.c1 = m.c2 = Rational(1);
    m.ell = Rational(1);
    m.validate();
    return check_relations(Scalar::approximate(vol.value, vol.error + 1e-12), m, tol);
}

} // namespace reeb
