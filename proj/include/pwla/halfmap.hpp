#pragma once

#include <limits>
#include <vector>

#include "pwla/params.hpp"

/// Poincare half-maps of one linear zone, computed from their integral
/// characterisation
///
///   PV \int_{y1}^{y0} -y / W(y) dy = q(a, T, D),   W(y) = D y^2 - a T y + a^2.
///
/// Backward half-systems are handled through the time/space reversal
/// (t, x) -> (-t, -x), which maps (a, T, D) to the Forward triple (-a, -T, D).
namespace pwla::halfmap {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct WPolynomial {
    double c2 = 0;  // D
    double c1 = 0;  // -a T
    double c0 = 0;  // a^2

    static WPolynomial of(const HalfSystem& h) { return {h.D, -h.a * h.T, h.a * h.a}; }

    double operator()(double y) const { return (c2 * y + c1) * y + c0; }

    /// Real roots in increasing order (empty when W has none or is constant).
    std::vector<double> real_roots() const;
};

struct HalfMapDomain {
    double lambda = 0;
    double mu = kInfinity;  // +inf when W has no positive root
    bool exists = false;

    bool mu_finite() const { return mu != kInfinity; }
    bool contains(double y0) const { return exists && y0 >= lambda && y0 < mu; }
    bool interior(double y0) const { return exists && y0 > lambda && y0 < mu; }
};

/// Numerical settings. The defaults are the documented module tolerances.
struct Options {
    /// Required |integral - q| after root refinement.
    double residual_tol = 1e-12;
    /// Relative offset from the largest negative root of W used as the open
    /// lower barrier of the root bracket.
    double barrier_margin = 1e-12;
    /// Arguments above mu * (1 - conditioning_cap) are clamped and flagged.
    double conditioning_cap = 1e-9;
    int max_iterations = 300;
};

struct Value {
    double y1 = 0;
    /// Set when y0 was clamped below mu, where the residual is ill-conditioned.
    bool conditioning_warning = false;
};

struct TaylorCoefficients {
    double yhat1 = 0;       // y(0)
    double quad_coeff = 0;  // coefficient of y0^2
};

struct PuiseuxCoefficients {
    double lambda = 0;
    double coeff = 0;  // coefficient of (y0 - lambda)^{1/2}
};

bool exists(const HalfSystem& h);

/// Right-hand side of the integral equation. Throws DomainError if the half-map does not exist.
double q_value(const HalfSystem& h);

/// PV{ \int_{y1}^{y0} -y / W(y) dy } from closed-form antiderivatives.
/// Requires y1 <= y0 and W != 0 on [y1, y0] except possibly at 0 when a == 0.
double pv_integral(const HalfSystem& h, double y1, double y0);

HalfMapDomain domain(const HalfSystem& h, const Options& opt = {});

double eval(const HalfSystem& h, double y0, const Options& opt = {});
Value eval_detailed(const HalfSystem& h, double y0, const Options& opt = {});

/// y'(y0) = y0 W(y(y0)) / (y(y0) W(y0)); requires y0 in the open domain and y(y0) < 0.
double derivative(const HalfSystem& h, double y0, const Options& opt = {});

/// sign(y0 + y(y0)) as -1, 0 or +1.
int sign_relation(const HalfSystem& h, double y0, const Options& opt = {});

/// Expansion y(y0) = yhat1 + quad_coeff * y0^2 + O(y0^3) of a Backward half-map at 0.
TaylorCoefficients taylor_at_zero(const HalfSystem& h, const Options& opt = {});

/// Expansion y(y0) = coeff * (y0 - lambda)^{1/2} + O(y0 - lambda) of a Forward
/// half-map at its left endpoint lambda > 0.
PuiseuxCoefficients puiseux_at_lambda(const HalfSystem& h, const Options& opt = {});

}  // namespace pwla::halfmap
