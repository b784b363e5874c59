#include "pwla/displacement.hpp"

#include <algorithm>
#include <cmath>

#include "pwla/errors.hpp"
#include "pwla/roots.hpp"

namespace pwla::displacement {

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

// Sign of a value assembled from terms of total magnitude `scale`; 0 when the
// value is indistinguishable from rounding of those terms.
int sign_within(double v, double scale, double rel)
{
    return std::abs(v) <= rel * scale ? 0 : sign_of(v);
}

// Magnitudes of the terms each coefficient is assembled from.
Coefficients term_scales(const HalfSystem& l, const HalfSystem& r)
{
    const double aL = std::abs(l.a), TL = std::abs(l.T), DL = std::abs(l.D);
    const double aR = std::abs(r.a), TR = std::abs(r.T), DR = std::abs(r.D);
    return {aR * aL * (aR * TL + aL * TR), aR * TR * DL + aL * TL * DR, aL * aL * DR + aR * aR * DL};
}

void require_zero_of_delta(const Context& ctx, double y0, double y1, const Tolerances& tol,
                           const halfmap::Options& opt)
{
    if (ctx.b != 0.0) {
        throw PreconditionError("derivative sign formulas hold for b == 0 only");
    }
    if (!ctx.interior(y0)) {
        throw ContractError("y0 must lie in the open domain of delta");
    }
    if (!(y1 < 0)) {
        throw ContractError("common half-map value must be negative");
    }
    const double d = delta(ctx, y0, opt);
    if (std::abs(d) > tol.zero * std::max(1.0, std::abs(y0))) {
        throw ContractError("delta(y0) does not vanish");
    }
}

}  // namespace

Coefficients Coefficients::of(const HalfSystem& left, const HalfSystem& right)
{
    const double aL = left.a, TL = left.T, DL = left.D;
    const double aR = right.a, TR = right.T, DR = right.D;
    return {aR * aL * (aR * TL - aL * TR), aR * TR * DL - aL * TL * DR, aL * aL * DR - aR * aR * DL};
}

Context make_context(const HalfSystem& left, const HalfSystem& right, double b, const halfmap::Options& opt)
{
    if (left.orientation != Orientation::Forward || right.orientation != Orientation::Backward) {
        throw PreconditionError("expected a Forward left and a Backward right half-system");
    }
    const halfmap::HalfMapDomain dl = halfmap::domain(left, opt);
    const halfmap::HalfMapDomain dr = halfmap::domain(right, opt);
    if (!dl.exists || !dr.exists) {
        throw PreconditionError("both half-maps must exist");
    }
    Context ctx;
    ctx.left = left;
    ctx.right = right;
    ctx.b = b;
    ctx.lambda_b = std::max(dl.lambda, dr.lambda + b);
    ctx.mu_b = std::min(dl.mu, dr.mu + b);
    ctx.coeffs = Coefficients::of(left, right);
    ctx.empty = !(ctx.lambda_b < ctx.mu_b);
    return ctx;
}

Context make_context(const CanonicalSystem& canon, const halfmap::Options& opt)
{
    return make_context(canon.left, canon.right, canon.b, opt);
}

double delta(const Context& ctx, double y0, const halfmap::Options& opt)
{
    if (!ctx.contains(y0)) {
        throw DomainError("y0 outside the domain of delta");
    }
    return halfmap::eval(ctx.right, y0 - ctx.b, opt) + ctx.b - halfmap::eval(ctx.left, y0, opt);
}

int sign_delta_prime_at_zero(const Context& ctx, double y0, double y1, const Tolerances& tol)
{
    require_zero_of_delta(ctx, y0, y1, tol, {});
    const Coefficients s = term_scales(ctx.left, ctx.right);
    const double scale = s.c0 + s.c1 * std::abs(y0 * y1) + s.c2 * (std::abs(y0) + std::abs(y1));
    return sign_within(ctx.coeffs.F(y0, y1), scale, tol.sign);
}

std::pair<int, int> sign_delta_second_at_critical(const Context& ctx, double y0, double y1,
                                                  const Tolerances& tol)
{
    require_zero_of_delta(ctx, y0, y1, tol, {});
    const double dR = halfmap::derivative(ctx.right, y0);
    const double dL = halfmap::derivative(ctx.left, y0);
    if (std::abs(dR - dL) > tol.critical * (std::abs(dR) + std::abs(dL))) {
        throw ContractError("delta'(y0) does not vanish");
    }
    const Coefficients& c = ctx.coeffs;
    const Coefficients s = term_scales(ctx.left, ctx.right);
    const double left = ctx.left.T * (c.c2 * y0 + c.c0);
    const double right = ctx.right.T * (c.c2 * y1 + c.c0);
    const double left_scale = std::abs(ctx.left.T) * (s.c2 * std::abs(y0) + s.c0);
    const double right_scale = std::abs(ctx.right.T) * (s.c2 * std::abs(y1) + s.c0);
    return {sign_within(left, left_scale, tol.sign), -sign_within(right, right_scale, tol.sign)};
}

std::vector<double> scan_grid(const Context& ctx, const ScanOptions& opt)
{
    if (opt.grid_n < 2) {
        throw PreconditionError("grid_n must be at least 2");
    }
    if (ctx.empty) return {};
    const double lo = ctx.lambda_b;
    double hi = lo + opt.span_factor * std::max(1.0, lo);
    if (ctx.mu_b < hi) {
        // mu_b itself is excluded and the half-maps are ill-conditioned next to it
        hi = lo + (ctx.mu_b - lo) * (1.0 - 1e-6);
    }
    std::vector<double> grid(static_cast<std::size_t>(opt.grid_n));
    for (int i = 0; i < opt.grid_n; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (opt.grid_n - 1);
    }
    return grid;
}

std::vector<CrossingOrbit> find_crossing_orbits(const Context& ctx, const ScanOptions& opt,
                                                const halfmap::Options& hm)
{
    const std::vector<double> grid = scan_grid(ctx, opt);
    if (grid.empty()) return {};

    // The first grid point is the domain endpoint: orbits through it are
    // tangent to the separation line (or are the origin), and the half-maps
    // lose half their digits there, so it only serves to bracket sign changes.
    std::vector<double> values(grid.size());
    bool uniformly_small = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = delta(ctx, grid[i], hm);
        if (i > 0 && !(std::abs(values[i]) < opt.tol.annulus * std::max(1.0, std::abs(grid[i])))) {
            uniformly_small = false;
        }
    }
    if (uniformly_small) {
        return {{grid[1], OrbitKind::AnnulusCandidate}};
    }

    std::vector<CrossingOrbit> zeros;
    auto f = [&](double y) { return delta(ctx, y, hm); };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (values[i] == 0.0) {
            if (i > 0) zeros.push_back({grid[i], OrbitKind::Isolated});
            continue;
        }
        if (i + 1 < grid.size() && values[i + 1] != 0.0 && (values[i] < 0) != (values[i + 1] < 0)) {
            const double xtol = opt.tol.bisection * std::max(1.0, std::abs(grid[i]));
            zeros.push_back({roots::bisect(f, grid[i], grid[i + 1], xtol).x, OrbitKind::Isolated});
        }
    }
    return zeros;
}

}  // namespace pwla::displacement
