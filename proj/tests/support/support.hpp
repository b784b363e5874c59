#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "pwla/halfmap.hpp"
#include "pwla/params.hpp"

namespace pwla::test {

/// Deterministic generator; uniforms built from the top 53 bits so draws do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    double sign() { return unit() < 0.5 ? -1.0 : 1.0; }
    /// Magnitude in [lo, hi] with a random sign.
    double signed_uniform(double lo, double hi) { return sign() * uniform(lo, hi); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

private:
    std::mt19937_64 engine_;
};

/// Adaptive Gauss-Kronrod (7, 15) quadrature on [lo, hi] to an absolute tolerance.
double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol = 1e-14);

enum class Spectrum { Complex, RealDistinct, RealDouble, ZeroDeterminant };
std::string to_string(Spectrum s);

/// A half-system whose half-map exists. `sign_a` is -1, 0 or +1 for the Forward
/// triple; real spectra force sign_a = +1. Backward draws are the dual of a Forward draw.
HalfSystem draw_half(Rng& rng, Orientation orientation, Spectrum spectrum, int sign_a);

/// Any valid half-system, covering all spectra and signs of a.
HalfSystem draw_any_half(Rng& rng, Orientation orientation);

/// A point inside the domain, kept away from both endpoints by the fraction `margin`.
double draw_y0(Rng& rng, const halfmap::HalfMapDomain& d, double margin = 0.02);

/// Member of the annulus family W_L = k W_R: DL = k DR, TL = -sqrt(k) TR,
/// aL = -sqrt(k) aR, b = 0, with both half-maps defined and TR != 0.
CanonicalSystem draw_annulus_family(Rng& rng);

/// Raw parameters with the given canonical form, through a random change of
/// coordinates that keeps x = 0 as the separation line.
SystemParams generic_lift(const CanonicalSystem& canon, Rng& rng, double nu_sign_right = 1.0, bool zero_shift = false);

enum class Violation { TraceSign, Xi0, XiInf, Beta, HCrossing, HLeft, HRight };
std::string to_string(Violation v);
/// Failing clause the classifier must report for the violation.
std::string expected_clause(Violation v);

/// Parameters violating exactly one clause of the crossing-annulus criterion.
SystemParams draw_violation(Rng& rng, Violation v);

}  // namespace pwla::test
