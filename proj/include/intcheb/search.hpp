#pragma once

#include <optional>

#include <json.hpp>

#include "intcheb/poly.hpp"

namespace intcheb {

// Multiplicity of one known factor inside a polynomial.
struct FactorMultiplicity {
    IntPoly factor;
    int multiplicity = 0;
    double ratio = 0.0;  // multiplicity * deg(factor) shares: multiplicity / degree-of-record
};

// Exact factor structure of a search result: polynomial equals
// prod factor^multiplicity * residual in integer arithmetic.
struct FactorizationRecord {
    int degree = 0;
    IntPoly polynomial;
    double norm = 0.0;
    std::vector<FactorMultiplicity> factors;
    IntPoly residual;

    nlohmann::json toJson() const;
};

// Maximal multiplicities of the known factors by exact division.
FactorizationRecord factorAnalyze(const IntPoly& p, double norm,
                                  const std::vector<IntPoly>& knownFactors);

struct SearchOptions {
    int maxDegree = 10;       // enumeration cost cap
    int normGridDensity = 8192;
    int maxTies = 64;
};

struct SearchResult {
    FactorizationRecord record;   // canonical optimum (tie rule applied)
    std::vector<IntPoly> ties;    // all norm-optimal polynomials found
    long nodesVisited = 0;
};

// Global minimizer of the sup norm over nonzero integer polynomials of
// degree <= n on the domain, by branch and bound over monomial coefficient
// boxes derived from the shifted-Chebyshev dual bounds on the domain hull.
// normBudget must be an upper bound on the optimum (a norm of any known
// candidate works).  Ties resolve to the lexicographically smallest
// coefficient vector with positive leading sign.
SearchResult searchIntegerChebyshev(const IntervalUnion& domain, int n, double normBudget,
                                    const std::vector<IntPoly>& knownFactors,
                                    const SearchOptions& opts = {});
SearchResult searchIntegerChebyshev(const IntervalUnion& domain, int n, double normBudget,
                                    const SearchOptions& opts = {});

// Per-coefficient integer bounds |c_j| <= floor(B * rowsum_j) from the
// shifted-Chebyshev dual norms of the hull of the domain.  Exposed for the
// enumeration oracle of the tests.
std::vector<long> coefficientBoxes(const IntervalUnion& domain, int n, double normBudget);

// Smallest sup norm among products of powers of the known factors with
// total degree at most n (and the constant 1); a practical norm budget for
// the search.
double bestFactorProductNorm(const IntervalUnion& domain, int n,
                             const std::vector<IntPoly>& table, int gridDensity = 8192);

// x(1-x) symmetry reduction: p(x) = q(x(1-x)) (Even) or
// p(x) = (1-2x) q(x(1-x)) (Odd).  Empty when no integer q exists.
enum class SymmetryParity { Even, Odd };
struct SymmetryReduction {
    IntPoly reduced;
    SymmetryParity parity = SymmetryParity::Even;
};
std::optional<SymmetryReduction> symmetryReduce(const IntPoly& p);

// Constructive Hilbert-Fekete polynomial: finds an integer coefficient
// vector making the weighted linear forms l_i = w(z_i)^n P(z_i) small via
// exact lattice reduction of the scaled form matrix, and certifies
// ||w^n P||_E <= (n+1) max_i |l_i| through the Lagrange interpolation
// bound at the nodes.
struct ConstructResult {
    IntPoly poly;
    double certifiedBound = 0.0;        // (n+1) max_i |l_i|
    std::vector<double> formValues;     // l_i
};
ConstructResult hilbertFeketeConstruct(const IntervalUnion& domain, const FactorWeight& w, int n,
                                       const std::vector<double>& nodes);

}  // namespace intcheb
