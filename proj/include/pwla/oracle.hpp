#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwla/params.hpp"

/// Exact-flow simulation of the canonical piecewise linear system.
///
/// Each zone is linear, so orbits are written in closed form and Sigma
/// crossings reduce to scalar root finding on x(t). Nothing here uses the
/// integral characterisation of the half-maps.
namespace pwla::oracle {

enum class SpectralCase { ComplexPair, RealDistinct, RealDouble };
enum class Direction { Forward, Backward };
enum class Side { Left, Right };

struct State {
    double x = 0;
    double y = 0;
};

/// x' = T x - y + b,  y' = D x - a.
class ZoneFlow {
public:
    ZoneFlow(double a, double T, double D, double b = 0.0);

    double a() const { return a_; }
    double T() const { return T_; }
    double D() const { return D_; }
    double b() const { return b_; }

    /// Classified by the sign of T^2 - 4D.
    SpectralCase spectral_case() const;

    State vector_field(State s) const { return {T_ * s.x - s.y + b_, D_ * s.x - a_}; }

    /// Exact solution at time t (t may be negative).
    State flow(State s0, double t) const;

    /// Time derivative of the closed-form solution, differentiated analytically.
    State flow_velocity(State s0, double t) const;

private:
    double a_, T_, D_, b_;
};

struct CrossingEvent {
    double t = 0;  // flight time, > 0 except for the degenerate start at a fold
    double y = 0;
    bool transversal = true;
};

/// First return to x = 0 of the orbit through (0, y0), flown in `direction`
/// while staying in the `side` half-plane.
///
/// Throws PreconditionError if the orbit does not enter that half-plane,
/// NoReturn if it never comes back, Tangency on a non-transversal return.
/// A start at a fold point that does not enter the zone returns {0, y0, false}.
CrossingEvent next_crossing(const ZoneFlow& zone, double y0, Direction direction, Side side);

/// Half-map by simulation: the left zone forward in time for Forward
/// half-systems, the right zone (b = 0) backward in time for Backward ones.
double oracle_halfmap(const HalfSystem& h, double y0);

struct PeriodicCheck {
    bool closed = false;
    /// Backward right passage minus forward left passage from (0, y0); same sign as delta.
    double gap = 0;
    /// Ordinate after one full turn (left then right, forward in time) minus y0.
    double return_gap = 0;
};

/// Follows the crossing orbit through (0, y0) once around. Requires y0 >= max(0, b).
/// Throws SlidingEncountered when the orbit lands on the sliding segment between 0 and b.
PeriodicCheck verify_periodic(const CanonicalSystem& canon, double y0, double closure_tol = 1e-8);

struct Sample {
    double t = 0;
    double x = 0;
    double y = 0;
};

struct Trajectory {
    std::vector<Sample> samples;
    /// Set when the orbit stopped early (no return, tangency or sliding).
    std::optional<std::string> stopped;
};

/// Samples the crossing orbit through (0, y0) over `passages` zone passages,
/// `per_passage` points each, starting in the left zone.
Trajectory sample_orbit(const CanonicalSystem& canon, double y0, int passages, int per_passage);

}  // namespace pwla::oracle
