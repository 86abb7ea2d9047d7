#pragma once

#include <complex>

#include "intcheb/poly.hpp"

namespace intcheb::jacobi {

// Closed-form weighted equilibrium data for the two-factor Jacobi-type
// weight w(x) = (x^{2 a1} (1-4x)^{a2})^{1/(1-2 a1-a2)} on [0, 1/4].
// Parameters live in the closed triangle T: a1, a2 >= 0, 2 a1 + a2 < 1;
// the edges are handled as limits and the corner (0,0) is the unweighted
// interval.
struct TwoFactorParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

// Support S_w = [a, b] with its discriminant.
struct SupportInterval {
    double a = 0.0;
    double b = 0.0;
    double delta = 0.0;
};

SupportInterval supportEndpoints(const TwoFactorParams& p);

// Modified Robin constant F_w.
double robinConstant(const TwoFactorParams& p);

// Equilibrium density d mu_w / dx at x in [a, b]; zero at the endpoints.
double densityAt(const TwoFactorParams& p, double x);

// mu_w([a, x]) by quadrature; clamps to [a, b].
double densityCdf(const TwoFactorParams& p, double x, double tol = 1e-10);

// Total mass of the density by quadrature (should be 1).
double densityMass(const TwoFactorParams& p, double tol = 1e-10);

// F_w - U^{mu_w}(z), continuous on C, harmonic off [a, b], via the three
// exterior conformal maps with poles at infinity, 0, and 1/4.
double potentialGap(const TwoFactorParams& p, Complex z);

// log w(x) for x in (0, 1/4); -inf at an endpoint whose exponent is positive.
double logWeight(const TwoFactorParams& p, double x);

// Green function g(z, pole) of the complement of [a, b], as log|Phi|.
enum class Pole { Infinity, Zero, Quarter };
class GreenEvaluator {
public:
    GreenEvaluator(SupportInterval support, Pole pole) : s_(support), pole_(pole) {}
    double operator()(Complex z) const;

private:
    SupportInterval s_;
    Pole pole_;
};

// Quadratures of log w against the equilibrium measures.
double logWeightIntegralMu(const TwoFactorParams& p, double tol = 1e-10);
double logWeightIntegralOmega(const TwoFactorParams& p, double tol = 1e-10);

// log cap([0,1/4], w): the energy route int log w d mu_w - F_w, and the
// alternative route through cap(S_w) and the classical equilibrium
// measure.  The two must agree; tests hold them to 1e-6.
double logWeightedCapacity(const TwoFactorParams& p, double tol = 1e-10);
double logWeightedCapacityAlt(const TwoFactorParams& p, double tol = 1e-10);

// The same weight as a FactorWeight {(z, 2 a1), (4z-1, a2)}; requires both
// exponents positive.
FactorWeight toFactorWeight(const TwoFactorParams& p);

// Adaptive Gauss-Legendre on [a, b] to absolute tolerance tol.
double adaptiveGL(const std::function<double(double)>& f, double a, double b,
                  double tol, int maxDepth = 40);

}  // namespace intcheb::jacobi
