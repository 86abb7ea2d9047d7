#pragma once

#include <iosfwd>

#include "intcheb/poly.hpp"

namespace intcheb {

struct LejaConfig {
    int gridDensity = 200000;  // grid points per unit length
    bool refine = true;        // golden-section refinement off the grid
};

// Estimator value plus its spread over the trailing 10% of steps.  The
// spread is the convergence diagnostic; there is no automatic stopping.
struct Estimate {
    double value = 0.0;
    double spread = 0.0;
    int length = 0;
};

// Leja-cluster summary of a sequence.
struct EquilibriumData {
    IntervalUnion supportEstimate;
    double robinConstant = 0.0;
    double weightedCapacity = 0.0;
    int sourceLength = 0;
};

// Weighted Leja points on an interval union: a_0 maximizes |z| w(z) on the
// grid, a_k maximizes w(z)^k |prod_{i<k} (z - a_i)|.  Extension is
// sequential; a fully built sequence is safe to read from many threads.
class LejaSequence {
public:
    LejaSequence(IntervalUnion domain, FactorWeight weight, LejaConfig cfg = {});

    // Appends count points.  Throws EmptyDomain if the weight vanishes at
    // every grid point.
    void extend(int count);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weightLogs() const { return weightLogs_; }
    const std::vector<double>& logProducts() const { return logProducts_; }
    const IntervalUnion& domain() const { return domain_; }
    const FactorWeight& weight() const { return weight_; }
    double gridCell() const { return cell_; }

    // Objective of step k at x: k log w(x) + sum_{i<k} log|x - a_i|
    // (log|x| + log w(x) for k = 0).  Used by the definitional re-scan test.
    double stepObjective(int k, double x) const;

    // F_w estimator: -(log w(a_n) + log|L_n(a_n)|/n).
    Estimate robinEstimate() const;
    // log cap(E, w) estimator (the capacity itself can underflow a double
    // when alpha is close to 1).
    Estimate logCapacityEstimate() const;
    // cap(E, w) estimator, computed in log domain and exponentiated.
    Estimate capacityEstimate() const;
    // F_w - U^{mu_w}(zeta); requires zeta further than minCellDistance grid
    // cells from the settled cluster, else throws PointInSupport.  The
    // default of 10 cells is the safe working distance; smaller values give
    // degraded estimates usable for coarse comparisons only.
    Estimate potentialGapEstimate(Complex zeta, double minCellDistance = 10.0) const;

    // Hull(s) of the point clusters, split at large sorted gaps.
    IntervalUnion supportEstimate() const;
    EquilibriumData equilibriumData() const;

    // CSV dump: index,point,log_weight,log_product,running_F_w
    void dumpCsv(std::ostream& os) const;

private:
    IntervalUnion domain_;
    FactorWeight weight_;
    LejaConfig cfg_;
    double cell_ = 0.0;

    std::vector<double> grid_;
    std::vector<std::pair<size_t, Interval>> gridRanges_;  // grid offset -> interval
    std::vector<double> gridWeightLog_;
    std::vector<double> gridLogProd_;   // sum log|x_g - a_i| over chosen points
    int gridUpdated_ = 0;               // points already folded into gridLogProd_

    std::vector<double> points_;
    std::vector<double> weightLogs_;
    std::vector<double> logProducts_;

    double robinAt(int k) const;
    double logCapacityAt(int k) const;
    double gapAt(int k, Complex zeta) const;
    double sumWeightLogPrefix(int k) const;  // sum_{i<k} log w(a_i)
    mutable std::vector<double> weightLogPrefix_;
};

}  // namespace intcheb
