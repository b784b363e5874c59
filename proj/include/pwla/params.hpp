#pragma once

#include <array>
#include <optional>

namespace pwla {

/// Raw coefficients of the two-zone system
///   x' = A_L x + b_L  for x <= 0,
///   x' = A_R x + b_R  for x >= 0,
/// with separation line x = 0. Matrices are stored row-major.
class SystemParams {
public:
    using Matrix = std::array<double, 4>;
    using Vector = std::array<double, 2>;

    /// Throws PreconditionError if any entry is NaN or infinite.
    SystemParams(const Matrix& AL, const Vector& bL, const Matrix& AR, const Vector& bR);

    double aL11() const { return AL_[0]; }
    double aL12() const { return AL_[1]; }
    double aL21() const { return AL_[2]; }
    double aL22() const { return AL_[3]; }
    double aR11() const { return AR_[0]; }
    double aR12() const { return AR_[1]; }
    double aR21() const { return AR_[2]; }
    double aR22() const { return AR_[3]; }
    double bL1() const { return bL_[0]; }
    double bL2() const { return bL_[1]; }
    double bR1() const { return bR_[0]; }
    double bR2() const { return bR_[1]; }

    const Matrix& AL() const { return AL_; }
    const Matrix& AR() const { return AR_; }
    const Vector& bL() const { return bL_; }
    const Vector& bR() const { return bR_; }

    /// Largest absolute value among the twelve coefficients.
    double magnitude() const;

    /// The same system with both zones' data exchanged.
    SystemParams swapped() const { return SystemParams(AR_, bR_, AL_, bL_); }

    /// Multiplies every matrix entry and offset by s.
    SystemParams scaled(double s) const;

    bool operator==(const SystemParams&) const = default;

private:
    Matrix AL_;
    Vector bL_;
    Matrix AR_;
    Vector bR_;
};

struct DerivedQuantities {
    double TL = 0, TR = 0;
    double DL = 0, DR = 0;
    double aL = 0, aR = 0;
    double xi0 = 0;
    double xiInf = 0;
    double beta = 0;
    /// beta / aR12; absent when aR12 == 0.
    std::optional<double> b;

    bool operator==(const DerivedQuantities&) const = default;
};

enum class Orientation { Forward, Backward };

/// One zone of the canonical form, reduced to (a, T, D).
///
/// Forward is the left zone (x' = T x - y, y' = D x - a, flown forward in
/// time). Backward is the right zone with b = 0, flown backward in time.
struct HalfSystem {
    double a = 0;
    double T = 0;
    double D = 0;
    Orientation orientation = Orientation::Forward;

    static HalfSystem forward(double a, double T, double D) { return {a, T, D, Orientation::Forward}; }
    static HalfSystem backward(double a, double T, double D) { return {a, T, D, Orientation::Backward}; }

    /// The Forward triple that this half-system is analysed as: (-a, -T, D) for Backward.
    HalfSystem as_forward() const
    {
        return orientation == Orientation::Forward ? *this : HalfSystem{-a, -T, D, Orientation::Forward};
    }

    bool operator==(const HalfSystem&) const = default;
};

/// Lienard canonical form
///   x' = T_L x - y,     y' = D_L x - a_L   (x <= 0)
///   x' = T_R x - y + b, y' = D_R x - a_R   (x >= 0)
struct CanonicalSystem {
    HalfSystem left;
    HalfSystem right;
    double b = 0;

    CanonicalSystem(double aL, double TL, double DL, double aR, double TR, double DR, double b)
        : left(HalfSystem::forward(aL, TL, DL)), right(HalfSystem::backward(aR, TR, DR)), b(b)
    {
    }

    /// Raw parameters realising this canonical form through the Lienard matrices
    /// [[T, -1], [D, 0]] with offsets (0, -a_L) and (b, -a_R).
    SystemParams to_params() const;

    bool operator==(const CanonicalSystem&) const = default;
};

DerivedQuantities derive_invariants(const SystemParams& p);

/// Throws CanonicalizationError when aL12 * aR12 <= 0.
CanonicalSystem to_canonical(const SystemParams& p);

}  // namespace pwla
