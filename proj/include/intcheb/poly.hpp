#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "intcheb/errors.hpp"

namespace intcheb {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

// Dense polynomial with exact integer coefficients, stored in ascending
// degree order.  The zero polynomial has an empty coefficient vector.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    // Text format: comma-separated ascending integer coefficients,
    // e.g. "-1,5" is 5z-1.
    static IntPoly fromText(std::string_view text);
    std::string text() const;

    bool isZero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& coeff(int k) const;  // 0 for k beyond degree
    const BigInt& leadingCoeff() const;

    double operator()(double x) const;
    Complex operator()(const Complex& z) const;
    Rational operator()(const Rational& x) const;
    // v^scale * p(u/v), exact; requires scale >= degree.
    BigInt scaledEval(const BigInt& u, const BigInt& v, int scale) const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

    IntPoly derivative() const;
    IntPoly pow(unsigned e) const;
    // p(q(x)), exact.
    IntPoly compose(const IntPoly& inner) const;
    // Exact quotient if divisor divides this over the integers.
    std::optional<IntPoly> dividedBy(const IntPoly& divisor) const;

    // Ascending-index lexicographic order on coefficient vectors,
    // used by the tie rule of the exact search.
    static bool lexLess(const IntPoly& a, const IntPoly& b);

private:
    std::vector<BigInt> coeffs_;
    void trim();
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// Ordered union of disjoint closed intervals.  Overlapping or touching
// intervals are merged on construction.
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> parts);
    static IntervalUnion segment(double lo, double hi);

    bool empty() const { return parts_.empty(); }
    const std::vector<Interval>& intervals() const { return parts_; }
    double totalLength() const;
    double inf() const;
    double sup() const;
    Interval hull() const;
    bool contains(double x) const;
    std::string text() const;

    bool operator==(const IntervalUnion& o) const;

private:
    std::vector<Interval> parts_;
};

// Complex rational (p1 + i p2)/q in reduced form, q > 0.
// Reduction gives q = 1 for the point 0.
struct RationalPoint {
    long long p1 = 0;
    long long p2 = 0;
    long long q = 1;

    RationalPoint() = default;
    RationalPoint(long long p1, long long p2, long long q);
    static RationalPoint real(long long p, long long q) { return {p, 0, q}; }
    static RationalPoint parse(std::string_view text);  // "p/q" or "p", real only

    Complex value() const {
        return {static_cast<double>(p1) / static_cast<double>(q),
                static_cast<double>(p2) / static_cast<double>(q)};
    }
    std::string text() const;
    bool operator==(const RationalPoint& o) const = default;
};

struct ComplexRoot {
    Complex value;
    int multiplicity = 1;
};

// All complex roots of p with multiplicity, to absolute accuracy tol.
// Companion-matrix eigenvalues polished by Newton steps; conjugate pairs
// are symmetrized.  Throws NonConvergence if polishing stalls above tol.
std::vector<ComplexRoot> polyRoots(const IntPoly& p, double tol = 1e-12);

// max |p| over a grid of gridDensity points per unit length on each
// interval, with golden-section refinement around every discrete local
// maximum.  Lower estimate of the true sup norm; grid ties resolve to the
// smallest coordinate.
double supNormOnGrid(const IntPoly& p, const IntervalUnion& domain, int gridDensity);

// Golden-section maximization of f on [lo, hi]; returns the best point
// seen, including the endpoints.  f need not be unimodal: the result is
// then just a local improvement, which is all the grid refinement needs.
struct GoldenResult {
    double x;
    double value;
};
GoldenResult goldenMax(const std::function<double(double)>& f, double lo, double hi,
                       int iters = 60);

struct WeightedFactor {
    IntPoly poly;
    double exponent = 0.0;  // alpha_i > 0
};

// Weight w(z) = (prod |Q_i(z)|^{alpha_i})^{1/(1-alpha)} with
// alpha = sum alpha_i deg(Q_i) < 1.  An empty factor list is the unit
// weight.  Factor zeros are located numerically once and cached.
class FactorWeight {
public:
    FactorWeight() = default;  // w == 1
    explicit FactorWeight(std::vector<WeightedFactor> factors, double rootTol = 1e-12);

    const std::vector<WeightedFactor>& factors() const { return factors_; }
    bool isUnit() const { return factors_.empty(); }
    double alphaTotal() const { return alphaTotal_; }     // sum alpha_i m_i
    double normalizer() const { return 1.0 / (1.0 - alphaTotal_); }

    // log w; -inf exactly at factor zeros.
    double logAbs(double x) const;
    double logAbs(const Complex& z) const;

    // All factor zeros (with factor multiplicity folded in), and the real
    // ones sorted ascending.
    const std::vector<ComplexRoot>& zeros() const { return zeros_; }
    const std::vector<double>& realZeros() const { return realZeros_; }
    // sum alpha_i log|a_i| over the factor leading coefficients.
    double logLeadingTerm() const { return logLeading_; }

private:
    std::vector<WeightedFactor> factors_;
    double alphaTotal_ = 0.0;
    double logLeading_ = 0.0;
    std::vector<ComplexRoot> zeros_;
    std::vector<double> realZeros_;
};

}  // namespace intcheb
