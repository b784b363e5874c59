#include "support.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace pwla::test {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

double gk15(const std::function<double(double)>& f, double lo, double hi, double& err)
{
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double fc = f(c);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kKronrodNodes[i];
        const double s = f(c - x) + f(c + x);
        kronrod += kKronrodWeights[i] * s;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * s;
    }
    err = std::abs((kronrod - gauss) * h);
    return kronrod * h;
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double tol, int depth)
{
    double err = 0;
    const double v = gk15(f, lo, hi, err);
    // the Gauss-Kronrod difference cannot drop below rounding of the sum
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(v);
    if (err <= std::max(tol, floor) || depth >= 60) return v;
    const double mid = 0.5 * (lo + hi);
    return adapt(f, lo, mid, 0.5 * tol, depth + 1) + adapt(f, mid, hi, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol)
{
    if (lo == hi) return 0.0;
    if (lo > hi) return -integrate(f, hi, lo, abs_tol);
    return adapt(f, lo, hi, abs_tol, 0);
}

std::string to_string(Spectrum s)
{
    switch (s) {
        case Spectrum::Complex: return "complex";
        case Spectrum::RealDistinct: return "real-distinct";
        case Spectrum::RealDouble: return "real-double";
        case Spectrum::ZeroDeterminant: return "zero-determinant";
    }
    return "?";
}

HalfSystem draw_half(Rng& rng, Orientation orientation, Spectrum spectrum, int sign_a)
{
    double T = 0;
    double D = 0;
    switch (spectrum) {
        case Spectrum::Complex:
            D = rng.uniform(0.05, 4.0);
            T = rng.uniform(-1.5, 1.5) * std::sqrt(D);
            break;
        case Spectrum::RealDistinct:
            D = rng.signed_uniform(0.05, 3.0);
            T = rng.sign() * std::sqrt(std::max(0.0, 4.0 * D) + rng.uniform(0.2, 4.0));
            sign_a = 1;
            break;
        case Spectrum::RealDouble:
            T = rng.signed_uniform(0.2, 3.0);
            D = T * T / 4.0;
            sign_a = 1;
            break;
        case Spectrum::ZeroDeterminant:
            T = rng.signed_uniform(0.2, 3.0);
            D = 0.0;
            sign_a = 1;
            break;
    }
    const double a = sign_a == 0 ? 0.0 : sign_a * rng.uniform(0.2, 3.0);
    const HalfSystem fwd = HalfSystem::forward(a, T, D);
    return orientation == Orientation::Forward ? fwd : HalfSystem::backward(-fwd.a, -fwd.T, fwd.D);
}

HalfSystem draw_any_half(Rng& rng, Orientation orientation)
{
    const double u = rng.unit();
    if (u < 0.55) {
        const int sign_a = static_cast<int>(rng.index(3)) - 1;
        return draw_half(rng, orientation, Spectrum::Complex, sign_a);
    }
    if (u < 0.75) return draw_half(rng, orientation, Spectrum::RealDistinct, 1);
    if (u < 0.9) return draw_half(rng, orientation, Spectrum::RealDouble, 1);
    return draw_half(rng, orientation, Spectrum::ZeroDeterminant, 1);
}

double draw_y0(Rng& rng, const halfmap::HalfMapDomain& d, double margin)
{
    const double upper = d.mu_finite() ? d.mu : d.lambda + 5.0 * std::max(1.0, d.lambda);
    return d.lambda + (upper - d.lambda) * rng.uniform(margin, 1.0 - margin);
}

CanonicalSystem draw_annulus_family(Rng& rng)
{
    const double k = rng.log_uniform(1e-2, 1e2);
    const double DR = rng.uniform(0.2, 3.0);
    const double TR = rng.signed_uniform(0.1, 1.6) * std::sqrt(DR);
    const double aR = rng.signed_uniform(0.2, 2.0);
    const double r = std::sqrt(k);
    return CanonicalSystem(-r * aR, -r * TR, k * DR, aR, TR, DR, 0.0);
}

SystemParams generic_lift(const CanonicalSystem& canon, Rng& rng, double nu_sign_right, bool zero_shift)
{
    const double nu = rng.signed_uniform(0.5, 2.0);
    const double kappa = zero_shift ? 0.0 : rng.uniform(-2.0, 2.0);
    auto side = [&](const HalfSystem& h, double shift, double n) {
        const double alpha = rng.uniform(-2.0, 2.0);
        const SystemParams::Matrix A = {h.T - alpha, -n, (h.D - alpha * h.T + alpha * alpha) / n, alpha};
        const SystemParams::Vector b = {shift - kappa, (-h.a + alpha * (kappa - shift)) / n};
        return std::pair{A, b};
    };
    const auto [AL, bL] = side(canon.left, 0.0, nu);
    const auto [AR, bR] = side(canon.right, canon.b, nu * nu_sign_right);
    return SystemParams(AL, bL, AR, bR);
}

std::string to_string(Violation v)
{
    switch (v) {
        case Violation::TraceSign: return "trace_sign";
        case Violation::Xi0: return "xi0";
        case Violation::XiInf: return "xi_inf";
        case Violation::Beta: return "beta";
        case Violation::HCrossing: return "H.crossing";
        case Violation::HLeft: return "H.left";
        case Violation::HRight: return "H.right";
    }
    return "?";
}

std::string expected_clause(Violation v)
{
    switch (v) {
        case Violation::HCrossing:
        case Violation::HLeft:
        case Violation::HRight: return "H";
        default: return to_string(v);
    }
}

SystemParams draw_violation(Rng& rng, Violation v)
{
    const double k = rng.log_uniform(1e-2, 1e2);
    const double r = std::sqrt(k);
    const double DR = rng.uniform(0.2, 3.0);
    const double TR = rng.signed_uniform(0.1, 1.6) * std::sqrt(DR);
    const double aR = rng.signed_uniform(0.2, 2.0);
    switch (v) {
        case Violation::TraceSign:
            // same-sign traces with both equalities kept
            return generic_lift(CanonicalSystem(r * aR, r * TR, k * DR, aR, TR, DR, 0.0), rng);
        case Violation::Xi0: {
            const double aL = -r * aR * (1.0 + rng.signed_uniform(0.05, 0.5));
            return generic_lift(CanonicalSystem(aL, -r * TR, k * DR, aR, TR, DR, 0.0), rng);
        }
        case Violation::XiInf: {
            const double DL = k * DR * (1.0 + rng.uniform(0.05, 0.5));
            return generic_lift(CanonicalSystem(-r * aR, -r * TR, DL, aR, TR, DR, 0.0), rng);
        }
        case Violation::Beta: {
            const double b = rng.signed_uniform(0.1, 2.0);
            return generic_lift(CanonicalSystem(-r * aR, -r * TR, k * DR, aR, TR, DR, b), rng);
        }
        case Violation::HCrossing:
            return generic_lift(CanonicalSystem(-r * aR, -r * TR, k * DR, aR, TR, DR, 0.0), rng, -1.0, true);
        case Violation::HLeft: {
            // zero traces, saddle-type determinants; aL < 0 has no left half-map
            const double aRn = -std::abs(aR);
            return generic_lift(CanonicalSystem(r * aRn, 0.0, -k * DR, aRn, 0.0, -DR, 0.0), rng);
        }
        case Violation::HRight: {
            const double aRp = std::abs(aR);
            return generic_lift(CanonicalSystem(r * aRp, 0.0, -k * DR, aRp, 0.0, -DR, 0.0), rng);
        }
    }
    throw std::logic_error("unknown violation");
}

}  // namespace pwla::test
