#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>

namespace pwla::roots {

struct Result {
    double x = 0;
    double fx = 0;
    int iterations = 0;
    bool converged = false;
};

/// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs (or one is zero).
/// Stops when |hi - lo| <= xtol or the bracket can no longer be split in floating point.
template <class F>
Result bisect(F&& f, double lo, double hi, double xtol = 0.0, int max_iter = 2000)
{
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0) return {lo, flo, 0, true};
    if (fhi == 0) return {hi, fhi, 0, true};
    Result r;
    for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
        if (std::abs(hi - lo) <= xtol) break;
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
        const double fm = f(mid);
        if (fm == 0) return {mid, fm, r.iterations, true};
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    r.converged = r.iterations <= max_iter;
    if (std::abs(flo) < std::abs(fhi)) {
        r.x = lo;
        r.fx = flo;
    } else {
        r.x = hi;
        r.fx = fhi;
    }
    return r;
}

/// Newton iteration kept inside a sign-change bracket; falls back to bisection
/// whenever the Newton step leaves the bracket or stalls. `fdf(x)` returns
/// {f(x), f'(x)}. The bracket endpoints may be given in either order.
///
/// When both endpoints share a sign and are far apart the fallback splits
/// geometrically, which matters for brackets spanning many decades.
template <class FdF>
Result safeguarded_newton(FdF&& fdf, double lo, double hi, double x0, int max_iter = 300)
{
    auto [flo, dlo] = fdf(lo);
    auto [fhi, dhi] = fdf(hi);
    if (flo == 0) return {lo, flo, 0, true};
    if (fhi == 0) return {hi, fhi, 0, true};
    // orient so that f(lo) < 0 < f(hi)
    if (flo > 0) {
        std::swap(lo, hi);
        std::swap(flo, fhi);
    }
    double x = (x0 > std::min(lo, hi) && x0 < std::max(lo, hi)) ? x0 : lo + 0.5 * (hi - lo);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    auto [f, df] = fdf(x);
    Result r;
    for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
        if (f == 0) return {x, f, r.iterations, true};
        if (f < 0) {
            lo = x;
        } else {
            hi = x;
        }
        const double a = std::min(lo, hi);
        const double b = std::max(lo, hi);
        double next = x - f / df;
        const bool newton_ok = df != 0 && std::isfinite(next) && next > a && next < b &&
                               std::abs(next - x) < 0.5 * dx_old;
        dx_old = dx;
        if (!newton_ok) {
            if (a < 0 && b < 0 && b / a < 0.25) {
                next = -std::sqrt(a * b);
            } else if (a > 0 && b > 0 && a / b < 0.25) {
                next = std::sqrt(a * b);
            } else {
                next = a + 0.5 * (b - a);
            }
        }
        dx = std::abs(next - x);
        if (next <= a || next >= b || dx == 0) {
            break;
        }
        x = next;
        std::tie(f, df) = fdf(x);
        const double scale = std::max(std::abs(x), std::numeric_limits<double>::min());
        if (dx <= 2 * std::numeric_limits<double>::epsilon() * scale) {
            return {x, f, r.iterations, true};
        }
    }
    r.x = x;
    r.fx = f;
    r.converged = r.iterations <= max_iter;
    return r;
}

}  // namespace pwla::roots
