#include "pwla/params.hpp"

#include <algorithm>
#include <cmath>

#include "pwla/errors.hpp"

namespace pwla {

namespace {

template <std::size_t N>
void require_finite(const std::array<double, N>& values, const char* name)
{
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw PreconditionError(std::string("non-finite entry in ") + name);
        }
    }
}

}  // namespace

SystemParams::SystemParams(const Matrix& AL, const Vector& bL, const Matrix& AR, const Vector& bR)
    : AL_(AL), bL_(bL), AR_(AR), bR_(bR)
{
    require_finite(AL_, "AL");
    require_finite(bL_, "bL");
    require_finite(AR_, "AR");
    require_finite(bR_, "bR");
}

double SystemParams::magnitude() const
{
    double m = 0;
    for (double v : AL_) m = std::max(m, std::abs(v));
    for (double v : AR_) m = std::max(m, std::abs(v));
    for (double v : bL_) m = std::max(m, std::abs(v));
    for (double v : bR_) m = std::max(m, std::abs(v));
    return m;
}

SystemParams SystemParams::scaled(double s) const
{
    auto scale = [s](auto arr) {
        for (auto& v : arr) v *= s;
        return arr;
    };
    return SystemParams(scale(AL_), scale(bL_), scale(AR_), scale(bR_));
}

SystemParams CanonicalSystem::to_params() const
{
    return SystemParams({left.T, -1.0, left.D, 0.0}, {0.0, -left.a}, {right.T, -1.0, right.D, 0.0},
                        {b, -right.a});
}

DerivedQuantities derive_invariants(const SystemParams& p)
{
    DerivedQuantities d;
    d.TL = p.aL11() + p.aL22();
    d.TR = p.aR11() + p.aR22();
    d.DL = p.aL11() * p.aL22() - p.aL12() * p.aL21();
    d.DR = p.aR11() * p.aR22() - p.aR12() * p.aR21();
    d.aL = p.aL12() * p.bL2() - p.aL22() * p.bL1();
    d.aR = p.aR12() * p.bR2() - p.aR22() * p.bR1();
    d.xi0 = d.aR * d.TL - d.aL * d.TR;
    d.xiInf = d.TL * d.TL * d.DR - d.TR * d.TR * d.DL;
    d.beta = p.aL12() * p.bR1() - p.bL1() * p.aR12();
    if (p.aR12() != 0.0) {
        d.b = d.beta / p.aR12() + 0.0;  // no signed zero
    }
    return d;
}

CanonicalSystem to_canonical(const SystemParams& p)
{
    if (!(p.aL12() * p.aR12() > 0.0)) {
        throw CanonicalizationError("aL12 * aR12 must be positive for crossing dynamics");
    }
    const DerivedQuantities d = derive_invariants(p);
    return CanonicalSystem(d.aL, d.TL, d.DL, d.aR, d.TR, d.DR, *d.b);
}

}  // namespace pwla
