#include "pwla/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "pwla/errors.hpp"

namespace pwla::classifier {

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

// Magnitudes of the terms each derived quantity is assembled from. They bound
// the rounding error of the computed value up to a small multiple of epsilon.
struct TermScales {
    double TL, TR, DL, DR, aL, aR;
    double xi0, xiInf, beta;
};

TermScales term_scales(const SystemParams& p)
{
    TermScales s{};
    s.TL = std::abs(p.aL11()) + std::abs(p.aL22());
    s.TR = std::abs(p.aR11()) + std::abs(p.aR22());
    s.DL = std::abs(p.aL11() * p.aL22()) + std::abs(p.aL12() * p.aL21());
    s.DR = std::abs(p.aR11() * p.aR22()) + std::abs(p.aR12() * p.aR21());
    s.aL = std::abs(p.aL12() * p.bL2()) + std::abs(p.aL22() * p.bL1());
    s.aR = std::abs(p.aR12() * p.bR2()) + std::abs(p.aR22() * p.bR1());
    s.xi0 = s.aR * s.TL + s.aL * s.TR;
    s.xiInf = s.TL * s.TL * s.DR + s.TR * s.TR * s.DL;
    s.beta = std::abs(p.aL12() * p.bR1()) + std::abs(p.bL1() * p.aR12());
    return s;
}

ConditionRecord equality(std::string name, double value, double scale, double tol)
{
    return {std::move(name), value, scale, std::abs(value) <= tol * scale};
}

}  // namespace

std::string_view to_string(Verdict v)
{
    switch (v) {
        case Verdict::LinearCenterLeft: return "LinearCenterLeft";
        case Verdict::LinearCenterRight: return "LinearCenterRight";
        case Verdict::CrossingPeriodAnnulus: return "CrossingPeriodAnnulus";
        case Verdict::NoPeriodAnnulus: return "NoPeriodAnnulus";
    }
    return "?";
}

const ConditionRecord* Classification::find(std::string_view name) const
{
    auto it = std::find_if(records.begin(), records.end(), [&](const auto& r) { return r.name == name; });
    return it == records.end() ? nullptr : &*it;
}

HCheck check_H(const DerivedQuantities& d, double a12_product)
{
    const double discL = 4.0 * d.DL - d.TL * d.TL;
    const double discR = 4.0 * d.DR - d.TR * d.TR;
    HCheck h;
    h.records.push_back({"H.crossing", a12_product, 0.0, a12_product > 0});
    h.records.push_back({"H.left", discL, 0.0, (d.aL <= 0 && discL > 0) || d.aL > 0});
    h.records.push_back({"H.right", discR, 0.0, (d.aR >= 0 && discR > 0) || d.aR < 0});
    h.holds = std::all_of(h.records.begin(), h.records.end(), [](const auto& r) { return r.passed; });
    return h;
}

HCheck check_H(const SystemParams& p) { return check_H(derive_invariants(p), p.aL12() * p.aR12()); }

std::optional<Verdict> trivial_centers(const DerivedQuantities& d, double left_trace_tol, double right_trace_tol)
{
    if (std::abs(d.TL) <= left_trace_tol && d.DL > 0 && d.aL < 0) return Verdict::LinearCenterLeft;
    if (std::abs(d.TR) <= right_trace_tol && d.DR > 0 && d.aR > 0) return Verdict::LinearCenterRight;
    return std::nullopt;
}

std::optional<SlidingInterval> sliding_set(const SystemParams& p, double tol)
{
    if (!(p.aL12() * p.aR12() > 0)) {
        throw PreconditionError("sliding set is defined here for aL12 * aR12 > 0");
    }
    const DerivedQuantities d = derive_invariants(p);
    if (std::abs(d.beta) <= tol * term_scales(p).beta) return std::nullopt;
    const double yl = -p.bL1() / p.aL12();
    const double yr = -p.bR1() / p.aR12();
    return SlidingInterval{std::min(yl, yr), std::max(yl, yr)};
}

Classification classify(const SystemParams& p, double tol)
{
    Classification c;
    c.tol = tol;
    c.derived = derive_invariants(p);
    const DerivedQuantities& d = c.derived;
    const TermScales s = term_scales(p);

    const double tl_tol = tol * s.TL;
    const double tr_tol = tol * s.TR;
    const bool a_holds = std::abs(d.TL) <= tl_tol && d.DL > 0 && d.aL < 0;
    const bool b_holds = std::abs(d.TR) <= tr_tol && d.DR > 0 && d.aR > 0;
    c.records.push_back({"A", d.TL, s.TL, a_holds});
    c.records.push_back({"B", d.TR, s.TR, b_holds});

    const HCheck h = check_H(d, p.aL12() * p.aR12());
    c.records.insert(c.records.end(), h.records.begin(), h.records.end());

    const int sl = std::abs(d.TL) <= tl_tol ? 0 : sign_of(d.TL);
    const int sr = std::abs(d.TR) <= tr_tol ? 0 : sign_of(d.TR);
    c.records.push_back({"trace_sign", d.TL * d.TR, 0.0, sr == -sl});
    c.records.push_back(equality("xi0", d.xi0, s.xi0, tol));
    c.records.push_back(equality("xi_inf", d.xiInf, s.xiInf, tol));
    c.records.push_back(equality("beta", d.beta, s.beta, tol));

    if (p.aL12() * p.aR12() > 0) {
        c.sliding = sliding_set(p, tol);
    }

    const std::pair<const char*, bool> clauses[] = {
        {"H", h.holds},
        {"trace_sign", c.find("trace_sign")->passed},
        {"xi0", c.find("xi0")->passed},
        {"xi_inf", c.find("xi_inf")->passed},
        {"beta", c.find("beta")->passed},
    };
    for (const auto& [name, passed] : clauses) {
        if (!passed) {
            c.failing_clause = name;
            break;
        }
    }

    // the trivial centers are reported first even when the crossing criterion also holds
    if (a_holds) {
        c.verdict = Verdict::LinearCenterLeft;
    } else if (b_holds) {
        c.verdict = Verdict::LinearCenterRight;
    } else if (!c.failing_clause) {
        c.verdict = Verdict::CrossingPeriodAnnulus;
    } else {
        c.verdict = Verdict::NoPeriodAnnulus;
    }
    return c;
}

}  // namespace pwla::classifier
