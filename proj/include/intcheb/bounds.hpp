#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>

#include <json.hpp>

#include "intcheb/jacobi.hpp"
#include "intcheb/leja.hpp"
#include "intcheb/poly.hpp"

namespace intcheb {

using Json = nlohmann::json;

enum class BoundKind { Lower, Upper, Exact };
enum class BoundMethod {
    Fekete,
    WeightedCapacity,
    Robin,
    RationalPoint,
    Lemniscate,
    Trigub,
    Exhaustive,
};

std::string toString(BoundKind k);
std::string toString(BoundMethod m);

// A named bound value with the inputs that produced it and estimator
// diagnostics.  Lower-kind reports on [0, 1/4] also carry the squared-set
// translation to [0, 1] (value under the x(1-x) substitution).
struct BoundReport {
    BoundKind kind = BoundKind::Upper;
    double value = 0.0;
    BoundMethod method = BoundMethod::Fekete;
    Json parameters;
    Json diagnostics;

    Json toJson() const;
};

// sqrt(cap(E)) clamped to 1; closed-form capacity for a single interval,
// unweighted Leja estimate otherwise.
BoundReport feketeUpper(const IntervalUnion& domain, int lejaLength = 2000,
                        const LejaConfig& cfg = {});

// Sharp lower bound for I_m = [1/(m+4), 1/m].
BoundReport trigubLower(int m);

// t_Z of the lemniscate {|V| = r}: exact for monic V, exact for irreducible
// V when r <= 1/|a_m|, a bracket otherwise.
struct LemniscateBounds {
    BoundReport lower;
    BoundReport upper;
    bool exact = false;
};
LemniscateBounds lemniscateTz(const IntPoly& V, double r, bool irreducible);

// cap(E, w)^{(1-alpha)/2}.  ClosedForm is available exactly for the
// two-factor weight {(z, 2 a1), (4z-1, a2)} on [0, 1/4].
enum class CapacityMode { ClosedForm, Leja };
BoundReport weightedUpper(const IntervalUnion& domain, const FactorWeight& w, CapacityMode mode,
                          int lejaLength = 4000, const LejaConfig& cfg = {});

// exp((alpha-1) F_w) from a supplied Robin constant estimate.
BoundReport robinLower(const FactorWeight& w, double robinConstantEstimate);
// Closed-form two-factor version; evaluates both the Robin form and the
// independent capacity/Green product form and reports their agreement.
BoundReport robinLowerTwoFactor(const jacobi::TwoFactorParams& p);

// max_i q_i^{alpha-1} exp((alpha-1) gap_i) over rational points zeta_i with
// supplied gap values F_w - U^{mu_w}(zeta_i).
BoundReport rationalPointLower(const FactorWeight& w, std::span<const RationalPoint> zetas,
                               std::span<const double> gapValues);

// One known factor of the sweep parametrization.  The lattice variable
// alpha_i enters the weight with exponent exponentScale * alpha_i; the
// scale carries the degree bookkeeping of the x(1-x) substitution (2 for
// every [0,1/4] table factor except 4z-1).
struct SweepFactor {
    IntPoly poly;
    double exponentScale = 1.0;
    std::string label;
};

// Evaluates gaps F_w - U^{mu_w}(zeta_i) for the weight built from lattice
// variables alphas; one value per constraint point.
using GapEvaluator = std::function<std::vector<double>(std::span<const double> alphas)>;

GapEvaluator makeClosedFormGapEvaluator(const std::vector<SweepFactor>& factors,
                                        const std::vector<RationalPoint>& zetas);
// minCellDistance is the near-support guard handed to the gap estimator;
// gaps that fail it come back as NaN.
GapEvaluator makeLejaGapEvaluator(const std::vector<SweepFactor>& factors,
                                  const std::vector<RationalPoint>& zetas,
                                  const IntervalUnion& domain, int lejaLength,
                                  const LejaConfig& cfg, double minCellDistance = 10.0);

// l_i values at one lattice point: q_i^{alpha-1} exp((alpha-1) gap_i).
std::vector<double> lowerBoundValues(const std::vector<SweepFactor>& factors,
                                     const std::vector<RationalPoint>& zetas,
                                     std::span<const double> alphas, const GapEvaluator& gaps);

struct SweepConfig {
    double latticeStep = 0.002;
    // Hierarchy: a coarse pass at latticeStep * coarseFactor prunes the
    // lattice, a fine pass at latticeStep covers every coarse cell whose
    // value is within refineMargin of the coarse minimum, and coordinate
    // descent with halved steps polishes the argmin.
    int coarseFactor = 1;
    double refineMargin = 0.004;
    int descentRounds = 3;
    bool verbose = false;
};

struct SweepResult {
    double value = 0.0;
    std::vector<double> argmin;
    std::vector<double> valuesAtArgmin;
    long evaluations = 0;
    // Lattice points where some constraint gap was not estimable (the point
    // sits on a degenerate simplex edge).  Such points are discarded from
    // the minimization; minPartialValue is the smallest maximum over their
    // evaluable constraints, so minPartialValue > value certifies that no
    // discarded point could have lowered the result.
    long partialPoints = 0;
    double minPartialValue = std::numeric_limits<double>::infinity();
    BoundReport report;
};

// inf over the lattice in the open simplex {alpha_i >= step,
// sum scale_i m_i alpha_i <= 1 - step/2} of max_i l_i(alpha).
// looseGaps, when given, re-evaluates the points whose gaps were not
// estimable (typically the same evaluator with a small minCellDistance);
// its values feed only the exclusion certificate minPartialValue, never
// the minimum itself.
SweepResult sweepLowerBound(const std::vector<SweepFactor>& factors,
                            const std::vector<RationalPoint>& zetas, const GapEvaluator& gaps,
                            const SweepConfig& cfg, const GapEvaluator* looseGaps = nullptr);

struct RegionSpec {
    std::vector<SweepFactor> factors;
    std::vector<RationalPoint> constraints;
    double latticeStep = 0.0005;
    double bound = 0.179335;  // M
    int coarseFactor = 1;     // >1: hierarchical evaluation of the lattice
    bool verbose = false;
};

struct RegionPoint {
    std::vector<double> alphas;
    std::vector<double> values;
    bool feasible = false;
};

struct RegionResult {
    RegionSpec spec;
    std::vector<RegionPoint> points;  // feasible lattice points, lexicographic
    bool anyFeasible = false;
    std::vector<double> boxLo, boxHi;  // bounding box of the feasible set
    long evaluations = 0;
    // Lattice points whose feasibility could not be decided: a constraint
    // gap was not estimable while every evaluable one sat below M.
    long ambiguousCount = 0;
};

// Marks lattice points feasible iff every constraint value is < M and
// reports the bounding box of the feasible set.  When csvOut is given,
// every evaluated lattice row is streamed as
// alpha_1,...,alpha_k,constraint_1,...,constraint_j,feasible.
// looseGaps resolves otherwise-ambiguous points (an unestimable constraint
// with everything else below M): a loose value >= M confirms infeasibility.
RegionResult feasibleRegion(const RegionSpec& spec, const GapEvaluator& gaps,
                            std::ostream* csvOut = nullptr,
                            const GapEvaluator* looseGaps = nullptr);

// Sufficient condition of the neighborhood-invariance statement: checks
// F_w - U^{mu_w}(z) + log w(z) <= 0 on sampled disks of radius epsilon
// around every factor zero.  Inconclusive when a disk reaches the support.
enum class InvarianceVerdict { Holds, Fails, Inconclusive };
struct InvarianceCheck {
    InvarianceVerdict verdict = InvarianceVerdict::Inconclusive;
    double maxLhs = 0.0;  // maximal sampled value of the left-hand side
};
InvarianceCheck neighborhoodInvarianceCheck(const FactorWeight& w, double epsilon,
                                            const std::function<double(Complex)>& gapAt);

// Squaring identity helper: a bound B on [0, 1/4] translates to sqrt(B) on
// [0, 1].
double toUnitIntervalBound(double quarterBound);

}  // namespace intcheb
