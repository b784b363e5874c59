#include "pwla/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "pwla/errors.hpp"
#include "pwla/roots.hpp"

namespace pwla::oracle {

namespace {

// e^{At} = e^{tau t} (C(t) I + S(t) M) with M = A - tau I, M^2 = disc I.
struct Kernel {
    double E = 0, F = 0;    // e^{tau t} C(t), e^{tau t} S(t)
    double dE = 0, dF = 0;  // their time derivatives
};

Kernel kernel(double T, double D, double t)
{
    const double tau = 0.5 * T;
    const double disc = tau * tau - D;
    Kernel k;
    if (disc < 0) {
        const double w = std::sqrt(-disc);
        const double e = std::exp(tau * t);
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        k.E = e * c;
        k.F = e * s / w;
        k.dE = e * (tau * c - w * s);
        k.dF = e * (tau * s / w + c);
    } else if (disc == 0) {
        const double e = std::exp(tau * t);
        k.E = e;
        k.F = e * t;
        k.dE = tau * e;
        k.dF = e * (tau * t + 1.0);
    } else {
        const double w = std::sqrt(disc);
        if (std::abs(w * t) < 1.0) {
            const double e = std::exp(tau * t);
            const double ch = std::cosh(w * t);
            const double sh = std::sinh(w * t);
            k.E = e * ch;
            k.F = e * sh / w;
            k.dE = e * (tau * ch + w * sh);
            k.dF = e * (tau * sh / w + ch);
        } else {
            const double p = std::exp((tau + w) * t);
            const double m = std::exp((tau - w) * t);
            k.E = 0.5 * (p + m);
            k.F = 0.5 * (p - m) / w;
            k.dE = 0.5 * ((tau + w) * p + (tau - w) * m);
            k.dF = 0.5 * ((tau + w) * p - (tau - w) * m) / w;
        }
    }
    return k;
}

int sign_of(double v) { return (v > 0) - (v < 0); }

constexpr double kMaxSegments = 200000;

}  // namespace

ZoneFlow::ZoneFlow(double a, double T, double D, double b) : a_(a), T_(T), D_(D), b_(b) {}

SpectralCase ZoneFlow::spectral_case() const
{
    const double disc = T_ * T_ - 4.0 * D_;
    if (disc < 0) return SpectralCase::ComplexPair;
    if (disc == 0) return SpectralCase::RealDouble;
    return SpectralCase::RealDistinct;
}

State ZoneFlow::flow(State s0, double t) const
{
    if (t == 0.0) return s0;
    if (D_ != 0.0) {
        const double xe = a_ / D_;
        const double ye = T_ * xe + b_;
        const double ux = s0.x - xe;
        const double uy = s0.y - ye;
        const double tau = 0.5 * T_;
        const double mx = tau * ux - uy;
        const double my = D_ * ux - tau * uy;
        const Kernel k = kernel(T_, D_, t);
        return {xe + k.E * ux + k.F * mx, ye + k.E * uy + k.F * my};
    }
    // D == 0: y' = -a is decoupled and x' = T x - y + b is a scalar linear ODE.
    const double y = s0.y - a_ * t;
    if (T_ == 0.0) {
        return {s0.x + (b_ - s0.y) * t + 0.5 * a_ * t * t, y};
    }
    const double slope = -a_ / T_;
    const double offset = (slope + s0.y - b_) / T_;
    return {s0.x * std::exp(T_ * t) - offset * std::expm1(T_ * t) + slope * t, y};
}

State ZoneFlow::flow_velocity(State s0, double t) const
{
    if (D_ != 0.0) {
        const double xe = a_ / D_;
        const double ye = T_ * xe + b_;
        const double ux = s0.x - xe;
        const double uy = s0.y - ye;
        const double tau = 0.5 * T_;
        const double mx = tau * ux - uy;
        const double my = D_ * ux - tau * uy;
        const Kernel k = kernel(T_, D_, t);
        return {k.dE * ux + k.dF * mx, k.dE * uy + k.dF * my};
    }
    if (T_ == 0.0) {
        return {b_ - s0.y + a_ * t, -a_};
    }
    const double slope = -a_ / T_;
    const double offset = (slope + s0.y - b_) / T_;
    return {T_ * std::exp(T_ * t) * (s0.x - offset) + slope, -a_};
}

namespace {

// Positive times at which t -> x(sigma t) has a critical point, for the
// zones whose x-component has at most one such point.
std::vector<double> single_critical_time(const ZoneFlow& z, State s0, double sigma)
{
    const double T = z.T();
    const double D = z.D();
    double t = std::nan("");
    if (D != 0.0) {
        const double tau = 0.5 * T;
        const double disc = tau * tau - D;
        const double ux = s0.x - z.a() / D;
        const double uy = s0.y - (T * z.a() / D + z.b());
        const double mx = tau * ux - uy;
        if (disc > 0) {
            const double w = std::sqrt(disc);
            const double E1 = 0.5 * (ux + mx / w);
            const double E2 = 0.5 * (ux - mx / w);
            const double mu1 = sigma * (tau + w);
            const double mu2 = sigma * (tau - w);
            const double r = -E2 * mu2 / (E1 * mu1);
            if (r > 0 && std::isfinite(r)) t = std::log(r) / (mu1 - mu2);
        } else if (tau * mx != 0.0) {
            t = -(sigma * tau * ux + sigma * mx) / (tau * mx);
        }
    } else if (T != 0.0) {
        const double slope = -z.a() / T;
        const double offset = (slope + s0.y - z.b()) / T;
        const double r = slope / (T * (offset - s0.x));
        if (r > 0 && std::isfinite(r)) t = sigma * std::log(r) / T;
    } else if (z.a() != 0.0) {
        t = sigma * (s0.y - z.b()) / z.a();
    }
    if (std::isfinite(t) && t > 0) return {t};
    return {};
}

}  // namespace

CrossingEvent next_crossing(const ZoneFlow& zone, double y0, Direction direction, Side side)
{
    const double sigma = direction == Direction::Forward ? 1.0 : -1.0;
    const int want = side == Side::Left ? -1 : 1;
    const State s0{0.0, y0};
    auto g = [&](double t) { return zone.flow(s0, sigma * t).x; };

    const double v0 = sigma * zone.vector_field(s0).x;
    if (v0 == 0.0) {
        // fold point: x(t) ~ a t^2 / 2 in both time directions
        if (sign_of(zone.a()) != want) return {0.0, y0, false};
    } else if (sign_of(v0) != want) {
        throw PreconditionError("orbit does not enter the requested half-plane");
    }

    const double rate = std::max(std::abs(zone.T()), std::sqrt(std::abs(zone.D())));
    const double time_scale = rate > 0 ? 1.0 / rate : 1.0;
    const double tangency_tol = 1e-14 * std::max(1.0, std::abs(y0)) * std::max(1.0, time_scale);

    auto refine = [&](double ta, double tb) {
        const double t = roots::bisect(g, ta, tb).x;
        const State s = zone.flow(s0, sigma * t);
        return CrossingEvent{t, s.y, true};
    };
    auto check_tangency = [&](double gc) {
        if (std::abs(gc) <= tangency_tol) throw Tangency("orbit touches the separation line tangentially");
    };

    if (zone.spectral_case() == SpectralCase::ComplexPair && zone.D() != 0.0) {
        const double tau = 0.5 * zone.T();
        const double w = std::sqrt(zone.D() - tau * tau);
        const double xe = zone.a() / zone.D();
        const double ux = s0.x - xe;
        const double uy = s0.y - (zone.T() * xe + zone.b());
        const double mx = tau * ux - uy;
        const double alpha = tau * ux + mx;
        const double beta = sigma * (-w * ux + tau * mx / w);
        if (alpha == 0.0 && beta == 0.0) throw NoReturn("orbit rests at the equilibrium");
        const double amplitude0 = std::hypot(ux, mx / w);
        const double growth = sigma * tau;
        // critical points of x at w t = atan2(beta, alpha) + pi/2 + k pi
        const double pi = std::numbers::pi;
        const double theta0 = std::atan2(beta, alpha) + 0.5 * pi;
        const double eps_theta = 1e-12;
        double theta = theta0 - std::floor((theta0 - eps_theta) / pi) * pi;
        double t_prev = 0.0;
        double g_prev = 0.0;
        for (int k = 0; k < kMaxSegments; ++k, theta += pi) {
            const double t = theta / w;
            const double gt = g(t);
            if (k > 0) {
                check_tangency(gt);
                if (sign_of(gt) != sign_of(g_prev)) return refine(t_prev, t);
            }
            if (growth <= 0) {
                const double amp = amplitude0 * std::exp(growth * t);
                if (amp < std::abs(xe) && sign_of(gt) == sign_of(xe) && k > 0) {
                    throw NoReturn("orbit is trapped away from the separation line");
                }
                if (growth == 0 && k > 3) throw NoReturn("periodic orbit does not reach the separation line");
            }
            t_prev = t;
            g_prev = gt;
        }
        throw NoReturn("no return within the search horizon");
    }

    double ta = 0.0;
    double ga = 0.0;
    for (double tc : single_critical_time(zone, s0, sigma)) {
        // g is monotone on [0, tc] and vanishes at 0, so it has no root inside.
        ga = g(tc);
        check_tangency(ga);
        ta = tc;
    }
    if (ta == 0.0) {
        // step off the start so that the sign of g reflects the entered side
        ta = 1e-3 * time_scale;
        while (sign_of(g(ta)) != want && ta > 1e-300) ta *= 0.5;
        ga = g(ta);
    }
    double h = std::max(time_scale, ta);
    const double t_limit = 1e9 * time_scale;
    while (ta < t_limit) {
        const double tb = ta + h;
        const double gb = g(tb);
        if (std::isnan(gb)) break;
        if (sign_of(gb) != sign_of(ga)) return refine(ta, tb);
        if (std::isinf(gb)) break;
        ta = tb;
        ga = gb;
        h *= 2.0;
    }
    throw NoReturn("orbit does not return to the separation line");
}

double oracle_halfmap(const HalfSystem& h, double y0)
{
    const ZoneFlow zone(h.a, h.T, h.D, 0.0);
    if (h.orientation == Orientation::Forward) {
        return next_crossing(zone, y0, Direction::Forward, Side::Left).y;
    }
    return next_crossing(zone, y0, Direction::Backward, Side::Right).y;
}

namespace {

void check_sliding(double y, double b)
{
    if (b != 0.0 && y > std::min(0.0, b) && y < std::max(0.0, b)) {
        throw SlidingEncountered("orbit reaches the sliding segment");
    }
}

}  // namespace

PeriodicCheck verify_periodic(const CanonicalSystem& canon, double y0, double closure_tol)
{
    if (!(y0 >= std::max(0.0, canon.b))) {
        throw PreconditionError("verify_periodic requires y0 >= max(0, b)");
    }
    const ZoneFlow left(canon.left.a, canon.left.T, canon.left.D, 0.0);
    const ZoneFlow right(canon.right.a, canon.right.T, canon.right.D, canon.b);

    const double y1 = next_crossing(left, y0, Direction::Forward, Side::Left).y;
    check_sliding(y1, canon.b);
    const double y2 = next_crossing(right, y1, Direction::Forward, Side::Right).y;
    const double y_back = next_crossing(right, y0, Direction::Backward, Side::Right).y;

    PeriodicCheck out;
    out.return_gap = y2 - y0;
    out.gap = y_back - y1;
    out.closed = std::abs(out.return_gap) <= closure_tol * std::max(1.0, std::abs(y0));
    return out;
}

Trajectory sample_orbit(const CanonicalSystem& canon, double y0, int passages, int per_passage)
{
    const ZoneFlow left(canon.left.a, canon.left.T, canon.left.D, 0.0);
    const ZoneFlow right(canon.right.a, canon.right.T, canon.right.D, canon.b);
    Trajectory out;
    double t0 = 0.0;
    double y = y0;
    per_passage = std::max(per_passage, 2);
    for (int p = 0; p < passages; ++p) {
        const bool in_left = p % 2 == 0;
        const ZoneFlow& zone = in_left ? left : right;
        CrossingEvent ev;
        try {
            ev = next_crossing(zone, y, Direction::Forward, in_left ? Side::Left : Side::Right);
            if (ev.t > 0) check_sliding(ev.y, canon.b);
        } catch (const Error& e) {
            out.stopped = e.what();
            return out;
        }
        const State start{0.0, y};
        for (int i = 0; i < per_passage; ++i) {
            if (p > 0 && i == 0) continue;  // shared with the previous passage
            const double t = ev.t * i / (per_passage - 1);
            const State s = zone.flow(start, t);
            out.samples.push_back({t0 + t, i + 1 == per_passage ? 0.0 : s.x, s.y});
        }
        if (!ev.transversal) {
            out.stopped = "orbit starts at a fold that does not enter the zone";
            return out;
        }
        t0 += ev.t;
        y = ev.y;
    }
    return out;
}

}  // namespace pwla::oracle
