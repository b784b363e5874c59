#pragma once

#include <utility>
#include <vector>

#include "pwla/halfmap.hpp"
#include "pwla/params.hpp"

namespace pwla::displacement {

/// Coefficients of F(y0, y1) = c0 + c1 y0 y1 + c2 (y0 + y1).
struct Coefficients {
    double c0 = 0;
    double c1 = 0;
    double c2 = 0;

    static Coefficients of(const HalfSystem& left, const HalfSystem& right);

    double F(double y0, double y1) const { return c0 + c1 * y0 * y1 + c2 * (y0 + y1); }
};

/// delta_b(y0) = y_R(y0 - b) + b - y_L(y0) on I^b = I_L cap (I_R + b) = [lambda_b, mu_b).
struct Context {
    HalfSystem left;   // Forward
    HalfSystem right;  // Backward
    double b = 0;
    double lambda_b = 0;
    double mu_b = halfmap::kInfinity;
    Coefficients coeffs;
    /// lambda_b >= mu_b; a valid outcome that makes delta undefined everywhere.
    bool empty = false;

    bool contains(double y0) const { return !empty && y0 >= lambda_b && y0 < mu_b; }
    bool interior(double y0) const { return !empty && y0 > lambda_b && y0 < mu_b; }
};

/// Throws PreconditionError if either half-map does not exist.
Context make_context(const HalfSystem& left, const HalfSystem& right, double b,
                     const halfmap::Options& opt = {});
Context make_context(const CanonicalSystem& canon, const halfmap::Options& opt = {});

double delta(const Context& ctx, double y0, const halfmap::Options& opt = {});

/// Settings for the checks and scans below.
struct Tolerances {
    /// |delta(y0)| allowed at a claimed zero, relative to max(1, |y0|).
    double zero = 1e-8;
    /// |delta'| allowed at a claimed critical zero, relative to the sum of the
    /// two half-map slopes.
    double critical = 1e-6;
    /// Per-point threshold |delta| < annulus * max(1, |y0|) for an annulus candidate.
    double annulus = 1e-9;
    /// Bisection tolerance for isolated zeros.
    double bisection = 1e-10;
    /// A sign formula reports 0 when its value is below this fraction of the
    /// magnitude of the terms it is computed from.
    double sign = 1e-10;
};

/// sign(delta'(y0)) from sign(F(y0, y1)). Requires b == 0, y0 in the open
/// domain and delta(y0) == 0 within tolerance; y1 is the common half-map value.
/// Returns 0 when F is at rounding level, as on an annulus.
int sign_delta_prime_at_zero(const Context& ctx, double y0, double y1, const Tolerances& tol = {});

/// (sign(T_L (c2 y0 + c0)), -sign(T_R (c2 y1 + c0))) at a zero with delta'(y0) = 0.
/// Both components equal sign(delta''(y0)).
std::pair<int, int> sign_delta_second_at_critical(const Context& ctx, double y0, double y1,
                                                  const Tolerances& tol = {});

enum class OrbitKind { Isolated, AnnulusCandidate };

struct CrossingOrbit {
    double y0 = 0;
    OrbitKind kind = OrbitKind::Isolated;
};

struct ScanOptions {
    int grid_n = 64;
    /// Scanned length when mu_b is infinite is span_factor * max(1, lambda_b).
    double span_factor = 10.0;
    Tolerances tol;
};

/// Evaluation grid used by find_crossing_orbits.
std::vector<double> scan_grid(const Context& ctx, const ScanOptions& opt = {});

/// Zeros of delta on the scan grid: one AnnulusCandidate entry when delta is
/// uniformly small, otherwise the refined sign changes as Isolated zeros. The
/// domain endpoint lambda_b is never reported: its orbit is not a crossing one.
std::vector<CrossingOrbit> find_crossing_orbits(const Context& ctx, const ScanOptions& opt = {},
                                                const halfmap::Options& hm = {});

}  // namespace pwla::displacement
