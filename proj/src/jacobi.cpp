#include "intcheb/jacobi.hpp"

#include <cmath>
#include <limits>

namespace intcheb::jacobi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const TwoFactorParams& p) {
    if (!(p.alpha1 >= 0.0) || !(p.alpha2 >= 0.0))
        throw DomainError("two-factor parameters must be nonnegative");
    if (!(2.0 * p.alpha1 + p.alpha2 < 1.0))
        throw DomainError("two-factor parameters must satisfy 2*alpha1 + alpha2 < 1");
}

double normalizer(const TwoFactorParams& p) { return 1.0 - 2.0 * p.alpha1 - p.alpha2; }

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 15;
constexpr double kGLx[kGL] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kGLw[kGL] = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194,
    0.13957067792615431, 0.16626920581699392, 0.18616100001556221,
    0.19843148532711158, 0.20257824192556127, 0.19843148532711158,
    0.18616100001556221, 0.16626920581699392, 0.13957067792615431,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

double gl15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kGL; ++i) s += kGLw[i] * f(c + h * kGLx[i]);
    return s * h;
}

double adaptiveGLRec(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl15(f, a, m), right = gl15(f, m, b);
    const double err = std::abs(left + right - whole);
    if (err < tol || depth <= 0) return left + right;
    return adaptiveGLRec(f, a, m, left, tol * 0.5, depth - 1) +
           adaptiveGLRec(f, m, b, right, tol * 0.5, depth - 1);
}

// On the support both square-root branches of the maps have modulus one, so
// taking the larger modulus is the exterior branch everywhere.
double maxBranchAbs(Complex base, Complex root) {
    return std::max(std::abs(base + 2.0 * root), std::abs(base - 2.0 * root));
}

}  // namespace

double adaptiveGL(const std::function<double(double)>& f, double a, double b, double tol,
                  int maxDepth) {
    if (a == b) return 0.0;
    return adaptiveGLRec(f, a, b, gl15(f, a, b), tol, maxDepth);
}

SupportInterval supportEndpoints(const TwoFactorParams& p) {
    validate(p);
    const double s = 2.0 * p.alpha1 + p.alpha2;
    const double d = 2.0 * p.alpha1 - p.alpha2;
    const double delta = (1.0 - s * s) * (1.0 - d * d);
    const double mid = 4.0 * p.alpha1 * p.alpha1 - p.alpha2 * p.alpha2 + 1.0;
    const double rt = std::sqrt(delta);
    return {(mid - rt) / 8.0, (mid + rt) / 8.0, delta};
}

double robinConstant(const TwoFactorParams& p) {
    const SupportInterval s = supportEndpoints(p);
    const double nz = normalizer(p);
    double f = (1.0 - p.alpha2) / nz * std::log(4.0) - std::log(s.b - s.a);
    if (p.alpha1 > 0.0)
        f -= 4.0 * p.alpha1 / nz * std::log(std::sqrt(s.a) + std::sqrt(s.b));
    if (p.alpha2 > 0.0)
        f -= 2.0 * p.alpha2 / nz * std::log(std::sqrt(0.25 - s.a) + std::sqrt(0.25 - s.b));
    return f;
}

double densityAt(const TwoFactorParams& p, double x) {
    const SupportInterval s = supportEndpoints(p);
    if (x < s.a || x > s.b) throw DomainError("density evaluated outside the support");
    const double num = std::sqrt((x - s.a) * (s.b - x));
    return num / (M_PI * normalizer(p) * x * (0.25 - x));
}

namespace {

// integral of f d mu_w with the substitution x = a + (b-a) sin^2 t, which
// removes the square-root endpoint zeros.
double muIntegral(const TwoFactorParams& p, const std::function<double(double)>& f, double tol,
                  double thetaLo, double thetaHi) {
    const SupportInterval s = supportEndpoints(p);
    const double nz = normalizer(p);
    const double ba = s.b - s.a;
    auto g = [&](double t) {
        const double st = std::sin(t), ct = std::cos(t);
        const double x = s.a + ba * st * st;
        return f(x) * ba * ba * 2.0 * st * st * ct * ct / (M_PI * nz * x * (0.25 - x));
    };
    return adaptiveGL(g, thetaLo, thetaHi, tol);
}

}  // namespace

double densityMass(const TwoFactorParams& p, double tol) {
    return muIntegral(p, [](double) { return 1.0; }, tol, 0.0, M_PI_2);
}

double densityCdf(const TwoFactorParams& p, double x, double tol) {
    const SupportInterval s = supportEndpoints(p);
    if (x <= s.a) return 0.0;
    if (x >= s.b) return densityMass(p, tol);
    const double t = std::asin(std::sqrt((x - s.a) / (s.b - s.a)));
    return muIntegral(p, [](double) { return 1.0; }, tol, 0.0, t);
}

double logWeight(const TwoFactorParams& p, double x) {
    validate(p);
    if (x < 0.0 || x > 0.25) throw DomainError("two-factor weight lives on [0, 1/4]");
    double s = 0.0;
    if (p.alpha1 > 0.0) s += 2.0 * p.alpha1 * std::log(x);
    if (p.alpha2 > 0.0) s += p.alpha2 * std::log(1.0 - 4.0 * x);
    return s / normalizer(p);
}

double GreenEvaluator::operator()(Complex z) const {
    const double a = s_.a, b = s_.b;
    switch (pole_) {
        case Pole::Infinity: {
            const Complex root = std::sqrt((z - a) * (z - b));
            const double v = maxBranchAbs(2.0 * z - a - b, root) / (b - a);
            return std::log(std::max(v, 1.0));
        }
        case Pole::Zero: {
            if (z == 0.0) return kInf;
            const Complex root = std::sqrt((1.0 - z / a) * (1.0 - z / b));
            const double den = std::abs(1.0 / b - 1.0 / a);
            const double v = maxBranchAbs(2.0 - z / a - z / b, root) / den / std::abs(z);
            return std::log(std::max(v, 1.0));
        }
        case Pole::Quarter: {
            if (z == 0.25) return kInf;
            const double A = a - 0.25, B = b - 0.25;
            const Complex u = z - 0.25;
            const Complex root = std::sqrt((1.0 - u / A) * (1.0 - u / B));
            const double den = std::abs(1.0 / B - 1.0 / A);
            const double v = maxBranchAbs(2.0 - u / A - u / B, root) / den / std::abs(u);
            return std::log(std::max(v, 1.0));
        }
    }
    return 0.0;
}

namespace {

// log|z| + g(z, 0), regular at z = 0; equals log|z| on the support.
double regularizedZero(const SupportInterval& s, Complex z) {
    const double a = s.a, b = s.b;
    const Complex root = std::sqrt((1.0 - z / a) * (1.0 - z / b));
    const double den = std::abs(1.0 / b - 1.0 / a);
    double v = maxBranchAbs(2.0 - z / a - z / b, root) / den;
    // Off the lemniscate |Phi0| = 1 the max branch is exterior; on the
    // support both branches give |z Phi0| = |z|.
    const double floorAbs = std::abs(z);
    return std::log(std::max(v, floorAbs));
}

// log|4z-1| + g(z, 1/4), regular at z = 1/4.
double regularizedQuarter(const SupportInterval& s, Complex z) {
    const double A = s.a - 0.25, B = s.b - 0.25;
    const Complex u = z - 0.25;
    const Complex root = std::sqrt((1.0 - u / A) * (1.0 - u / B));
    const double den = std::abs(1.0 / B - 1.0 / A);
    double v = 4.0 * maxBranchAbs(2.0 - u / A - u / B, root) / den;
    const double floorAbs = std::abs(4.0 * z - 1.0);
    return std::log(std::max(v, floorAbs));
}

}  // namespace

double potentialGap(const TwoFactorParams& p, Complex z) {
    const SupportInterval s = supportEndpoints(p);
    const GreenEvaluator gInf(s, Pole::Infinity);
    double acc = gInf(z);
    if (p.alpha1 > 0.0) acc -= 2.0 * p.alpha1 * regularizedZero(s, z);
    if (p.alpha2 > 0.0) acc -= p.alpha2 * regularizedQuarter(s, z);
    return acc / normalizer(p);
}

double logWeightIntegralMu(const TwoFactorParams& p, double tol) {
    return muIntegral(p, [&](double x) { return logWeight(p, x); }, tol, 0.0, M_PI_2);
}

double logWeightIntegralOmega(const TwoFactorParams& p, double tol) {
    // classical arcsine measure of [a, b]: d omega = 2/pi d theta.
    const SupportInterval s = supportEndpoints(p);
    const double ba = s.b - s.a;
    auto g = [&](double t) {
        const double st = std::sin(t);
        return logWeight(p, s.a + ba * st * st) * 2.0 / M_PI;
    };
    return adaptiveGL(g, 0.0, M_PI_2, tol);
}

double logWeightedCapacity(const TwoFactorParams& p, double tol) {
    return logWeightIntegralMu(p, tol) - robinConstant(p);
}

double logWeightedCapacityAlt(const TwoFactorParams& p, double tol) {
    const SupportInterval s = supportEndpoints(p);
    return std::log((s.b - s.a) / 4.0) + logWeightIntegralOmega(p, tol) +
           logWeightIntegralMu(p, tol);
}

FactorWeight toFactorWeight(const TwoFactorParams& p) {
    validate(p);
    if (!(p.alpha1 > 0.0) || !(p.alpha2 > 0.0))
        throw DomainError("toFactorWeight needs strictly interior parameters");
    return FactorWeight({{IntPoly{0, 1}, 2.0 * p.alpha1}, {IntPoly{-1, 4}, p.alpha2}});
}

}  // namespace intcheb::jacobi
