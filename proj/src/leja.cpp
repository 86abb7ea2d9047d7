#include "intcheb/leja.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace intcheb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LejaSequence::LejaSequence(IntervalUnion domain, FactorWeight weight, LejaConfig cfg)
    : domain_(std::move(domain)), weight_(std::move(weight)), cfg_(cfg) {
    if (domain_.empty()) throw DomainError("Leja sequence needs a nonempty domain");
    if (cfg_.gridDensity < 2) throw DomainError("gridDensity must be at least 2");
    cell_ = kInf;
    size_t total = 0;
    for (const auto& iv : domain_.intervals()) {
        const int cells = std::max(1, static_cast<int>(std::ceil(iv.length() * cfg_.gridDensity)));
        total += cells + 1;
        if (iv.length() > 0.0) cell_ = std::min(cell_, iv.length() / cells);
    }
    if (!std::isfinite(cell_)) cell_ = 1.0 / cfg_.gridDensity;
    grid_.reserve(total);
    for (const auto& iv : domain_.intervals()) {
        const int cells = std::max(1, static_cast<int>(std::ceil(iv.length() * cfg_.gridDensity)));
        gridRanges_.push_back({grid_.size(), iv});
        for (int i = 0; i <= cells; ++i)
            grid_.push_back(i == cells ? iv.hi : iv.lo + iv.length() * i / cells);
    }
    gridWeightLog_.resize(grid_.size());
    for (size_t g = 0; g < grid_.size(); ++g) gridWeightLog_[g] = weight_.logAbs(grid_[g]);
    gridLogProd_.assign(grid_.size(), 0.0);
}

double LejaSequence::stepObjective(int k, double x) const {
    double acc = (k == 0) ? std::log(std::abs(x)) : 0.0;
    for (int i = 0; i < k; ++i) acc += std::log(std::abs(x - points_[i]));
    return acc + std::max(k, 1) * weight_.logAbs(x);
}

void LejaSequence::extend(int count) {
    for (int step = 0; step < count; ++step) {
        const int k = size();
        // Fold previously selected points into the running grid products.
        for (; gridUpdated_ < k; ++gridUpdated_) {
            const double a = points_[gridUpdated_];
            for (size_t g = 0; g < grid_.size(); ++g)
                gridLogProd_[g] += std::log(std::abs(grid_[g] - a));
        }
        // Grid argmax of the step objective; first index wins ties, which
        // makes the smallest coordinate win within each interval scan.
        double bestObj = -kInf;
        size_t bestIdx = 0;
        if (k == 0) {
            for (size_t g = 0; g < grid_.size(); ++g) {
                const double obj = std::log(std::abs(grid_[g])) + gridWeightLog_[g];
                if (obj > bestObj) {
                    bestObj = obj;
                    bestIdx = g;
                }
            }
        } else {
            const double kk = k;
            for (size_t g = 0; g < grid_.size(); ++g) {
                const double obj = kk * gridWeightLog_[g] + gridLogProd_[g];
                if (obj > bestObj) {
                    bestObj = obj;
                    bestIdx = g;
                }
            }
        }
        if (!std::isfinite(bestObj)) throw EmptyDomain("weight vanishes on the whole grid");

        double x = grid_[bestIdx];
        double obj = bestObj;
        if (cfg_.refine) {
            // Refine inside the bracketing cells, clamped to the interval of
            // the domain that holds the grid maximum.
            Interval home{x, x};
            for (const auto& [start, iv] : gridRanges_) {
                if (bestIdx >= start) home = iv;
            }
            double lo = bestIdx > 0 ? grid_[bestIdx - 1] : x;
            double hi = bestIdx + 1 < grid_.size() ? grid_[bestIdx + 1] : x;
            lo = std::max(lo, home.lo);
            hi = std::min(hi, home.hi);
            auto f = [&](double t) { return stepObjective(k, t); };
            GoldenResult g = goldenMax(f, lo, hi, 50);
            if (g.value > obj && std::isfinite(g.value)) {
                x = g.x;
                obj = g.value;
            }
        }
        const double wlog = weight_.logAbs(x);
        double logProd = 0.0;
        for (int i = 0; i < k; ++i) logProd += std::log(std::abs(x - points_[i]));
        points_.push_back(x);
        weightLogs_.push_back(wlog);
        logProducts_.push_back(logProd);
    }
    weightLogPrefix_.clear();
}

double LejaSequence::sumWeightLogPrefix(int k) const {
    if (weightLogPrefix_.size() != points_.size() + 1) {
        weightLogPrefix_.assign(points_.size() + 1, 0.0);
        for (size_t i = 0; i < points_.size(); ++i)
            weightLogPrefix_[i + 1] = weightLogPrefix_[i] + weightLogs_[i];
    }
    return weightLogPrefix_[k];
}

double LejaSequence::robinAt(int k) const { return -(weightLogs_[k] + logProducts_[k] / k); }

double LejaSequence::logCapacityAt(int k) const {
    return weightLogs_[k] + (logProducts_[k] + sumWeightLogPrefix(k)) / k;
}

double LejaSequence::gapAt(int k, Complex zeta) const {
    double logLz = 0.0;
    for (int i = 0; i < k; ++i) logLz += std::log(std::abs(zeta - Complex(points_[i])));
    return -weightLogs_[k] + (logLz - logProducts_[k]) / k;
}

namespace {

Estimate windowed(int n, const std::function<double(int)>& at) {
    if (n < 2) throw DomainError("estimator needs at least 2 Leja steps");
    const int last = n;
    const int first = std::max(2, last - std::max(1, last / 10));
    double lo = kInf, hi = -kInf;
    for (int k = first; k <= last; ++k) {
        const double v = at(k);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {at(last), hi - lo, last};
}

}  // namespace

Estimate LejaSequence::robinEstimate() const {
    return windowed(size() - 1, [this](int k) { return robinAt(k); });
}

Estimate LejaSequence::logCapacityEstimate() const {
    return windowed(size() - 1, [this](int k) { return logCapacityAt(k); });
}

Estimate LejaSequence::capacityEstimate() const {
    Estimate logEst = logCapacityEstimate();
    const double v = std::exp(logEst.value);
    // spread transported through exp at the estimate
    return {v, v * (std::exp(logEst.spread) - 1.0), logEst.length};
}

Estimate LejaSequence::potentialGapEstimate(Complex zeta, double minCellDistance) const {
    // Distance to the settled cluster; the first quarter of the sequence may
    // contain transients outside S_w* and does not count.
    double minDist = kInf;
    for (size_t i = points_.size() / 4; i < points_.size(); ++i)
        minDist = std::min(minDist, std::abs(zeta - Complex(points_[i])));
    if (minDist <= minCellDistance * cell_)
        throw PointInSupport("zeta is too close to the Leja cluster");
    return windowed(size() - 1, [this, zeta](int k) { return gapAt(k, zeta); });
}

IntervalUnion LejaSequence::supportEstimate() const {
    if (points_.empty()) return {};
    std::vector<double> pts = points_;
    std::sort(pts.begin(), pts.end());
    const double range = pts.back() - pts.front();
    const double gapThreshold = std::max(50.0 * cell_, 0.02 * range);
    std::vector<Interval> parts;
    double lo = pts.front(), prev = pts.front();
    for (double x : pts) {
        if (x - prev > gapThreshold) {
            parts.push_back({lo, prev});
            lo = x;
        }
        prev = x;
    }
    parts.push_back({lo, prev});
    return IntervalUnion(parts);
}

EquilibriumData LejaSequence::equilibriumData() const {
    return {supportEstimate(), robinEstimate().value, capacityEstimate().value, size()};
}

void LejaSequence::dumpCsv(std::ostream& os) const {
    os << "index,point,log_weight,log_product,running_F_w\n";
    char buf[160];
    for (int i = 0; i < size(); ++i) {
        const double fw = i >= 1 ? robinAt(i) : std::numeric_limits<double>::quiet_NaN();
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g,%.9g\n", i, points_[i], weightLogs_[i],
                      logProducts_[i], fw);
        os << buf;
    }
}

}  // namespace intcheb
