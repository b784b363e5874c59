#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwla/params.hpp"

namespace pwla::classifier {

enum class Verdict { LinearCenterLeft, LinearCenterRight, CrossingPeriodAnnulus, NoPeriodAnnulus };

std::string_view to_string(Verdict v);

/// One evaluated condition. For equalities `value` is the raw residual and the
/// condition passes when |value| <= tol * scale; for sign and inequality
/// conditions `value` is the witnessing quantity and `scale` is 0.
struct ConditionRecord {
    std::string name;
    double value = 0;
    double scale = 0;
    bool passed = false;
};

/// Open segment of the separation line, as two ordinates lower < upper.
struct SlidingInterval {
    double lower = 0;
    double upper = 0;
};

struct Classification {
    Verdict verdict = Verdict::NoPeriodAnnulus;
    std::vector<ConditionRecord> records;
    std::optional<SlidingInterval> sliding;
    /// First violated clause of the crossing-annulus criterion, in the order
    /// H, trace_sign, xi0, xi_inf, beta.
    std::optional<std::string> failing_clause;
    DerivedQuantities derived;
    double tol = 0;

    const ConditionRecord* find(std::string_view name) const;
};

struct HCheck {
    bool holds = false;
    std::vector<ConditionRecord> records;  // H.crossing, H.left, H.right
};

/// Existence of both half-maps: aL12 aR12 > 0; (aL <= 0 and 4DL - TL^2 > 0) or aL > 0;
/// (aR >= 0 and 4DR - TR^2 > 0) or aR < 0.
HCheck check_H(const DerivedQuantities& d, double a12_product);
HCheck check_H(const SystemParams& p);

/// Linear centers inside one zone: (A) TL = 0, DL > 0, aL < 0; (B) TR = 0, DR > 0, aR > 0.
/// A trace counts as zero when |T| <= the matching tolerance. Left wins when both hold.
std::optional<Verdict> trivial_centers(const DerivedQuantities& d, double left_trace_tol = 0.0,
                                       double right_trace_tol = 0.0);

inline constexpr double kDefaultTolerance = 1e-12;

/// Sliding segment between -bL1/aL12 and -bR1/aR12, absent when beta vanishes
/// within tolerance. Throws PreconditionError when aL12 aR12 <= 0.
std::optional<SlidingInterval> sliding_set(const SystemParams& p, double tol = kDefaultTolerance);

/// Decides whether the system has a crossing period annulus. Equalities are
/// tested relative to the magnitude of the terms they are computed from, so
/// the verdict is invariant under rescaling of the parameters.
Classification classify(const SystemParams& p, double tol = kDefaultTolerance);

}  // namespace pwla::classifier
