#include "pwla/halfmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwla/errors.hpp"
#include "pwla/roots.hpp"

namespace pwla::halfmap {

namespace {

double discriminant4(const HalfSystem& h) { return 4.0 * h.D - h.T * h.T; }

int sign_of(double v) { return (v > 0) - (v < 0); }

// For D != 0, 4 D W(y) = u^2 + a^2 (4D - T^2) with u = 2 D y - a T. Roots, W
// values and the closed-form branches all use this one discriminant so they
// agree near the double-root boundary 4D = T^2.
double u_of(const HalfSystem& f, double y) { return 2.0 * f.D * y - f.a * f.T; }

// 4 D W(y), factored when W has real roots.
double four_d_w(const HalfSystem& f, double y)
{
    const double u = u_of(f, y);
    const double disc4 = discriminant4(f);
    if (disc4 < 0) {
        const double s = std::abs(f.a) * std::sqrt(-disc4);
        return (u - s) * (u + s);
    }
    return u * u + f.a * f.a * disc4;
}

double w_value(const HalfSystem& f, double y)
{
    if (f.D == 0.0) return WPolynomial::of(f)(y);
    return four_d_w(f, y) / (4.0 * f.D);
}

std::vector<double> w_roots(const HalfSystem& f)
{
    if (f.D == 0.0 || f.a == 0.0) return WPolynomial::of(f).real_roots();
    const double disc4 = discriminant4(f);
    if (disc4 > 0) return {};
    const double aT = f.a * f.T;
    const double s = std::abs(f.a) * std::sqrt(-disc4);
    if (s == 0.0) return {aT / (2.0 * f.D)};
    // product of the roots is a^2 / D
    const double big = (aT >= 0 ? aT + s : aT - s) / (2.0 * f.D);
    double r1 = big;
    double r2 = f.a * f.a / (f.D * big);
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

// Integral of -y / W(y) over [y1, y0] for a != 0, without the root check.
double proper_integral(const HalfSystem& f, double y1, double y0)
{
    const double a = f.a;
    if (f.D != 0.0) {
        const double D = f.D;
        const double log_part = -std::log(std::abs(four_d_w(f, y0)) / std::abs(four_d_w(f, y1))) / (2.0 * D);
        const double c1 = -a * f.T;
        if (c1 == 0.0) {
            return log_part;
        }
        const double disc4 = discriminant4(f);
        const double u0 = u_of(f, y0);
        const double u1 = u_of(f, y1);
        double dJ;
        if (disc4 > 0) {
            const double s = std::abs(a) * std::sqrt(disc4);
            dJ = 2.0 / s * (std::atan(u0 / s) - std::atan(u1 / s));
        } else if (disc4 < 0) {
            const double s = std::abs(a) * std::sqrt(-disc4);
            dJ = std::log(std::abs((u0 - s) * (u1 + s)) / std::abs((u0 + s) * (u1 - s))) / s;
        } else {
            dJ = 2.0 / u1 - 2.0 / u0;
        }
        return log_part + c1 / (2.0 * D) * dJ;
    }
    const WPolynomial w = WPolynomial::of(f);
    if (w.c1 == 0.0) {
        return -(y0 - y1) * (y0 + y1) / (2.0 * w.c0);
    }
    return -(y0 - y1) / w.c1 +
           w.c0 / (w.c1 * w.c1) * std::log(std::abs(w.c1 * y0 + w.c0) / std::abs(w.c1 * y1 + w.c0));
}

double largest_negative_root(const HalfSystem& f)
{
    double r = 0;
    for (double root : w_roots(f)) {
        if (root < 0) r = root;
    }
    return r;
}

double smallest_positive_root(const HalfSystem& f)
{
    for (double root : w_roots(f)) {
        if (root > 0) return root;
    }
    return kInfinity;
}

}  // namespace

std::vector<double> WPolynomial::real_roots() const
{
    if (c2 == 0.0) {
        if (c1 == 0.0) return {};
        return {-c0 / c1};
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0) return {};
    if (disc == 0) return {-c1 / (2.0 * c2)};
    // cancellation-free quadratic formula
    const double s = std::sqrt(disc);
    const double qq = -0.5 * (c1 + (c1 >= 0 ? s : -s));
    double r1 = qq / c2;
    double r2 = qq != 0.0 ? c0 / qq : -r1;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

bool exists(const HalfSystem& h)
{
    const HalfSystem f = h.as_forward();
    return (f.a <= 0 && discriminant4(f) > 0) || f.a > 0;
}

double q_value(const HalfSystem& h)
{
    if (!exists(h)) {
        throw DomainError("half-map does not exist for these parameters");
    }
    const HalfSystem f = h.as_forward();
    if (f.a > 0) return 0.0;
    const double base = std::numbers::pi * f.T / (f.D * std::sqrt(discriminant4(f)));
    return f.a == 0 ? base : 2.0 * base;
}

double pv_integral(const HalfSystem& h, double y1, double y0)
{
    if (!(y1 <= y0)) {
        throw DomainError("pv_integral requires y1 <= y0");
    }
    if (y1 == y0) return 0.0;
    const HalfSystem f = h.as_forward();
    if (f.a == 0.0) {
        if (f.D == 0.0) {
            throw DomainError("W vanishes identically");
        }
        if (y1 == 0.0 || y0 == 0.0) {
            throw DomainError("integral diverges at an endpoint y = 0");
        }
        // -1/(D y) has antiderivative -ln|y| / D; the symmetric PV limit cancels across 0.
        return -std::log(std::abs(y0) / std::abs(y1)) / f.D;
    }
    for (double r : w_roots(f)) {
        if (r >= y1 && r <= y0) {
            throw DomainError("W vanishes inside the integration interval");
        }
    }
    return proper_integral(f, y1, y0);
}

HalfMapDomain domain(const HalfSystem& h, const Options& opt)
{
    const HalfSystem f = h.as_forward();
    HalfMapDomain dom;
    dom.exists = exists(f);
    if (!dom.exists) return dom;

    dom.mu = smallest_positive_root(f);
    if (f.a < 0 && discriminant4(f) > 0 && f.T < 0) {
        // lambda solves \int_0^lambda -y/W = q, with q < 0 and the integral decreasing.
        const double q = q_value(f);
        auto fdf = [&](double y) { return std::pair{proper_integral(f, 0.0, y) - q, -y / w_value(f, y)}; };
        double lo = 0.0;
        double hi = 1.0;
        while (fdf(hi).first > 0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e300) throw DomainError("left endpoint of the domain is not representable");
        }
        dom.lambda = roots::safeguarded_newton(fdf, lo, hi, 0.5 * (lo + hi), opt.max_iterations).x;
    }
    return dom;
}

Value eval_detailed(const HalfSystem& h, double y0, const Options& opt)
{
    const HalfSystem f = h.as_forward();
    if (!exists(f)) {
        throw DomainError("half-map does not exist for these parameters");
    }
    const HalfMapDomain dom = domain(f, opt);
    if (!(y0 >= dom.lambda && y0 < dom.mu)) {
        throw DomainError("y0 outside the half-map domain");
    }
    Value out;
    if (dom.mu_finite() && y0 > dom.mu * (1.0 - opt.conditioning_cap)) {
        y0 = dom.mu * (1.0 - opt.conditioning_cap);
        out.conditioning_warning = true;
    }

    if (f.a == 0.0) {
        out.y1 = -std::exp(std::numbers::pi * f.T / std::sqrt(discriminant4(f))) * y0;
        return out;
    }

    const double q = q_value(f);
    auto residual = [&](double y1) { return proper_integral(f, y1, y0) - q; };

    if (residual(0.0) >= 0) {
        // y0 == lambda up to rounding, or a > 0 with y0 == 0
        out.y1 = 0.0;
        return out;
    }

    double lo;
    double hi = 0.0;
    const double barrier = largest_negative_root(f);
    if (barrier < 0) {
        // Returns next to an invariant line of a node lie exponentially close to
        // the root, so the barrier is tightened down to rounding level.
        const double eps = std::numeric_limits<double>::epsilon();
        double margin = opt.barrier_margin;
        lo = barrier * (1.0 - margin);
        while (!(residual(lo) > 0)) {
            hi = lo;
            if (margin <= eps) {
                out.y1 = lo;
                return out;
            }
            margin = std::max(eps, margin * 1e-2);
            lo = barrier * (1.0 - margin);
        }
    } else {
        lo = -std::max(1.0, y0);
        while (!(residual(lo) > 0)) {
            hi = lo;
            lo *= 2.0;
            if (lo < -1e300) throw DomainError("half-map value is not representable");
        }
    }

    // The reflection -y0 is exact whenever T == 0.
    const double trial = -y0;
    if (trial > lo && trial < hi) {
        const double r = residual(trial);
        if (r == 0) {
            out.y1 = trial;
            return out;
        }
        (r > 0 ? lo : hi) = trial;
    }

    auto fdf = [&](double y1) { return std::pair{residual(y1), y1 / w_value(f, y1)}; };
    const double start = (trial >= lo && trial <= hi) ? trial : 0.5 * (lo + hi);
    out.y1 = roots::safeguarded_newton(fdf, lo, hi, start, opt.max_iterations).x;
    return out;
}

double eval(const HalfSystem& h, double y0, const Options& opt) { return eval_detailed(h, y0, opt).y1; }

double derivative(const HalfSystem& h, double y0, const Options& opt)
{
    const HalfMapDomain dom = domain(h, opt);
    if (!dom.interior(y0)) {
        throw DomainError("derivative requires y0 in the open domain");
    }
    const double y1 = eval(h, y0, opt);
    if (y1 == 0.0) {
        throw DomainError("derivative undefined where the half-map vanishes");
    }
    const HalfSystem f = h.as_forward();
    return y0 * w_value(f, y1) / (y1 * w_value(f, y0));
}

int sign_relation(const HalfSystem& h, double y0, const Options& opt)
{
    return sign_of(y0 + eval(h, y0, opt));
}

TaylorCoefficients taylor_at_zero(const HalfSystem& h, const Options& opt)
{
    if (h.orientation != Orientation::Backward) {
        throw DomainError("Taylor expansion at 0 is provided for Backward half-maps");
    }
    const HalfMapDomain dom = domain(h, opt);
    if (!dom.contains(0.0)) {
        throw DomainError("0 is not in the half-map domain");
    }
    const double yhat1 = eval(h, 0.0, opt);
    if (!(yhat1 < 0)) {
        throw DomainError("Taylor expansion requires y(0) < 0");
    }
    return {yhat1, w_value(h.as_forward(), yhat1) / (2.0 * h.a * h.a * yhat1)};
}

PuiseuxCoefficients puiseux_at_lambda(const HalfSystem& h, const Options& opt)
{
    if (h.orientation != Orientation::Forward) {
        throw DomainError("Newton-Puiseux expansion is provided for Forward half-maps");
    }
    const HalfMapDomain dom = domain(h, opt);
    if (!(dom.exists && dom.lambda > 0)) {
        throw DomainError("Newton-Puiseux expansion requires lambda > 0");
    }
    return {dom.lambda, h.a * std::sqrt(2.0 * dom.lambda / w_value(h, dom.lambda))};
}

}  // namespace pwla::halfmap
