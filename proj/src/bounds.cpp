#include "intcheb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "intcheb/parallel.hpp"

namespace intcheb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Json factorsJson(const FactorWeight& w) {
    Json arr = Json::array();
    for (const auto& f : w.factors())
        arr.push_back({{"poly", f.poly.text()}, {"exponent", f.exponent}});
    return arr;
}

Json sweepFactorsJson(const std::vector<SweepFactor>& factors) {
    Json arr = Json::array();
    for (const auto& f : factors)
        arr.push_back({{"poly", f.poly.text()}, {"scale", f.exponentScale}, {"label", f.label}});
    return arr;
}

Json zetasJson(std::span<const RationalPoint> zetas) {
    Json arr = Json::array();
    for (const auto& z : zetas) arr.push_back(z.text());
    return arr;
}

}  // namespace

std::string toString(BoundKind k) {
    switch (k) {
        case BoundKind::Lower: return "lower";
        case BoundKind::Upper: return "upper";
        case BoundKind::Exact: return "exact";
    }
    return "?";
}

std::string toString(BoundMethod m) {
    switch (m) {
        case BoundMethod::Fekete: return "fekete";
        case BoundMethod::WeightedCapacity: return "weighted-capacity";
        case BoundMethod::Robin: return "robin";
        case BoundMethod::RationalPoint: return "rational-point";
        case BoundMethod::Lemniscate: return "lemniscate";
        case BoundMethod::Trigub: return "trigub";
        case BoundMethod::Exhaustive: return "exhaustive";
    }
    return "?";
}

Json BoundReport::toJson() const {
    return {{"kind", toString(kind)},
            {"value", value},
            {"method", toString(method)},
            {"parameters", parameters},
            {"diagnostics", diagnostics}};
}

double toUnitIntervalBound(double quarterBound) { return std::sqrt(quarterBound); }

// ------------------------------------------------------------ feketeUpper

BoundReport feketeUpper(const IntervalUnion& domain, int lejaLength, const LejaConfig& cfg) {
    if (domain.empty()) throw DomainError("feketeUpper over empty domain");
    BoundReport r;
    r.kind = BoundKind::Upper;
    r.method = BoundMethod::Fekete;
    r.parameters = {{"domain", domain.text()}};
    double cap;
    if (domain.intervals().size() == 1) {
        cap = domain.intervals().front().length() / 4.0;
        r.diagnostics = {{"capacity", cap}, {"capacitySource", "closed-form"}};
    } else {
        LejaSequence seq(domain, FactorWeight{}, cfg);
        seq.extend(lejaLength + 1);
        Estimate est = seq.capacityEstimate();
        cap = est.value;
        r.diagnostics = {{"capacity", cap},
                         {"capacitySource", "leja"},
                         {"spread", est.spread},
                         {"lejaLength", lejaLength}};
    }
    r.value = std::min(1.0, std::sqrt(cap));
    return r;
}

// ------------------------------------------------------------ trigubLower

BoundReport trigubLower(int m) {
    if (m < 1) throw DomainError("trigubLower needs m >= 1");
    const double mp2 = m + 2.0;
    const double sharp = 2.0 / (mp2 + std::sqrt(mp2 * mp2 - 4.0));
    BoundReport r;
    r.kind = BoundKind::Lower;
    r.method = BoundMethod::Trigub;
    r.value = sharp;
    r.parameters = {{"m", m},
                    {"domain", IntervalUnion::segment(1.0 / (m + 4), 1.0 / m).text()}};
    r.diagnostics = {{"exceeds", 1.0 / mp2}};
    return r;
}

// ------------------------------------------------------------ lemniscate

LemniscateBounds lemniscateTz(const IntPoly& V, double r, bool irreducible) {
    if (V.degree() < 1) throw DomainError("lemniscate polynomial must be nonconstant");
    if (!(r >= 0.0) || r >= 1.0) throw DomainError("lemniscate level must satisfy 0 <= r < 1");
    const int m = V.degree();
    const double am = std::abs(V.leadingCoeff().get_d());
    const double upper = std::pow(r, 1.0 / m);

    double lower;
    if (am == 1.0) {
        lower = upper;
    } else if (irreducible) {
        if (r > 1.0 / am)
            throw DomainError("irreducible branch needs r <= 1/|leading coefficient|");
        lower = upper;
    } else {
        lower = std::pow(r / am, 1.0 / m);
    }
    const bool exact = lower == upper;

    Json params = {{"poly", V.text()}, {"r", r}, {"irreducible", irreducible},
                   {"degree", m},      {"leadingAbs", am}};
    LemniscateBounds out;
    out.exact = exact;
    out.lower = {exact ? BoundKind::Exact : BoundKind::Lower, lower, BoundMethod::Lemniscate,
                 params, Json::object()};
    out.upper = {exact ? BoundKind::Exact : BoundKind::Upper, upper, BoundMethod::Lemniscate,
                 params, Json::object()};
    return out;
}

// ---------------------------------------------------------- weightedUpper

namespace {

// Recognize the closed-form two-factor weight {(z, e1), (4z-1, e2)}.
std::optional<jacobi::TwoFactorParams> asTwoFactor(const IntervalUnion& domain,
                                                   const FactorWeight& w) {
    if (!(domain == IntervalUnion::segment(0.0, 0.25))) return std::nullopt;
    if (w.factors().size() != 2) return std::nullopt;
    const IntPoly zPoly{0, 1}, qPoly{-1, 4};
    double e1 = -1.0, e2 = -1.0;
    for (const auto& f : w.factors()) {
        if (f.poly == zPoly)
            e1 = f.exponent;
        else if (f.poly == qPoly)
            e2 = f.exponent;
        else
            return std::nullopt;
    }
    if (e1 <= 0.0 || e2 <= 0.0) return std::nullopt;
    return jacobi::TwoFactorParams{e1 / 2.0, e2};
}

}  // namespace

BoundReport weightedUpper(const IntervalUnion& domain, const FactorWeight& w, CapacityMode mode,
                          int lejaLength, const LejaConfig& cfg) {
    const double alpha = w.alphaTotal();
    BoundReport r;
    r.kind = BoundKind::Upper;
    r.method = BoundMethod::WeightedCapacity;
    r.parameters = {{"domain", domain.text()}, {"factors", factorsJson(w)}, {"alpha", alpha}};
    double logCap;
    if (mode == CapacityMode::ClosedForm) {
        auto p = asTwoFactor(domain, w);
        if (!p)
            throw ModeUnavailable(
                "closed-form capacity is only available for the two-factor weight on [0,1/4]");
        logCap = jacobi::logWeightedCapacity(*p);
        r.diagnostics = {{"mode", "closed-form"}, {"logCapacity", logCap}};
    } else {
        if (w.isUnit()) return feketeUpper(domain, lejaLength, cfg);
        LejaSequence seq(domain, w, cfg);
        seq.extend(lejaLength + 1);
        Estimate est = seq.logCapacityEstimate();
        logCap = est.value;
        r.diagnostics = {{"mode", "leja"},
                         {"logCapacity", logCap},
                         {"logCapacitySpread", est.spread},
                         {"lejaLength", lejaLength},
                         {"gridDensity", cfg.gridDensity}};
    }
    r.value = std::exp(0.5 * (1.0 - alpha) * logCap);
    return r;
}

// ------------------------------------------------------------- robinLower

BoundReport robinLower(const FactorWeight& w, double robinConstantEstimate) {
    BoundReport r;
    r.kind = BoundKind::Lower;
    r.method = BoundMethod::Robin;
    r.value = std::exp((w.alphaTotal() - 1.0) * robinConstantEstimate);
    r.parameters = {{"factors", factorsJson(w)},
                    {"alpha", w.alphaTotal()},
                    {"robinConstant", robinConstantEstimate}};
    return r;
}

BoundReport robinLowerTwoFactor(const jacobi::TwoFactorParams& p) {
    const double alpha = 2.0 * p.alpha1 + p.alpha2;
    const double fw = jacobi::robinConstant(p);
    const double viaRobin = std::exp((alpha - 1.0) * fw);

    // Independent route: cap(S_w) prod |a_i|^{alpha_i} exp(sum alpha_i g(z_i, inf)).
    const jacobi::SupportInterval s = jacobi::supportEndpoints(p);
    const jacobi::GreenEvaluator gInf(s, jacobi::Pole::Infinity);
    const double viaGreen = (s.b - s.a) / 4.0 * std::pow(4.0, p.alpha2) *
                            std::exp(2.0 * p.alpha1 * gInf(0.0) + p.alpha2 * gInf(0.25));
    if (std::abs(viaRobin - viaGreen) > 1e-6 * std::max(1.0, std::abs(viaRobin)))
        throw NonConvergence("Robin and Green-product lower bounds disagree");

    BoundReport r;
    r.kind = BoundKind::Lower;
    r.method = BoundMethod::Robin;
    r.value = viaRobin;
    r.parameters = {{"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"robinConstant", fw}};
    r.diagnostics = {{"viaGreenProduct", viaGreen}, {"difference", viaRobin - viaGreen}};
    return r;
}

// ------------------------------------------------------ rationalPointLower

BoundReport rationalPointLower(const FactorWeight& w, std::span<const RationalPoint> zetas,
                               std::span<const double> gapValues) {
    if (zetas.size() != gapValues.size())
        throw LengthMismatch("one gap value per rational point required");
    if (zetas.empty()) throw DomainError("rationalPointLower needs at least one point");
    const double am1 = w.alphaTotal() - 1.0;
    double best = -kInf;
    Json per = Json::array();
    for (size_t i = 0; i < zetas.size(); ++i) {
        const double v = std::exp(am1 * (std::log(static_cast<double>(zetas[i].q)) + gapValues[i]));
        per.push_back({{"zeta", zetas[i].text()}, {"gap", gapValues[i]}, {"value", v}});
        best = std::max(best, v);
    }
    BoundReport r;
    r.kind = BoundKind::Lower;
    r.method = BoundMethod::RationalPoint;
    r.value = best;
    r.parameters = {{"factors", factorsJson(w)},
                    {"alpha", w.alphaTotal()},
                    {"zetas", zetasJson(zetas)}};
    r.diagnostics = {{"perPoint", per}};
    return r;
}

// ------------------------------------------------------------- evaluators

namespace {

FactorWeight buildWeight(const std::vector<SweepFactor>& factors, std::span<const double> alphas) {
    if (alphas.size() != factors.size())
        throw LengthMismatch("one lattice variable per sweep factor required");
    std::vector<WeightedFactor> wf;
    wf.reserve(factors.size());
    for (size_t i = 0; i < factors.size(); ++i)
        wf.push_back({factors[i].poly, factors[i].exponentScale * alphas[i]});
    return FactorWeight(std::move(wf));
}

double weightAlpha(const std::vector<SweepFactor>& factors, std::span<const double> alphas) {
    double a = 0.0;
    for (size_t i = 0; i < factors.size(); ++i)
        a += factors[i].exponentScale * alphas[i] * factors[i].poly.degree();
    return a;
}

}  // namespace

GapEvaluator makeClosedFormGapEvaluator(const std::vector<SweepFactor>& factors,
                                        const std::vector<RationalPoint>& zetas) {
    // Only the two-factor {z, 4z-1} parametrization has the closed form.
    bool ok = factors.size() == 2 && factors[0].poly == IntPoly{0, 1} &&
              factors[0].exponentScale == 2.0 && factors[1].poly == IntPoly{-1, 4} &&
              factors[1].exponentScale == 1.0;
    if (!ok)
        throw ModeUnavailable("closed-form gaps need factors z (scale 2) and 4z-1 (scale 1)");
    return [zetas](std::span<const double> alphas) {
        jacobi::TwoFactorParams p{alphas[0], alphas[1]};
        std::vector<double> out;
        out.reserve(zetas.size());
        for (const auto& z : zetas) out.push_back(jacobi::potentialGap(p, z.value()));
        return out;
    };
}

GapEvaluator makeLejaGapEvaluator(const std::vector<SweepFactor>& factors,
                                  const std::vector<RationalPoint>& zetas,
                                  const IntervalUnion& domain, int lejaLength,
                                  const LejaConfig& cfg, double minCellDistance) {
    return [factors, zetas, domain, lejaLength, cfg,
            minCellDistance](std::span<const double> alphas) {
        LejaSequence seq(domain, buildWeight(factors, alphas), cfg);
        seq.extend(lejaLength + 1);
        std::vector<double> out;
        out.reserve(zetas.size());
        for (const auto& z : zetas) {
            // Near the simplex boundary a constraint point can land next to
            // the cluster (the support endpoint closes on it); the gap is
            // then not estimable and reported as NaN.  Consumers treat the
            // remaining constraints as a valid partial maximum.
            try {
                out.push_back(seq.potentialGapEstimate(z.value(), minCellDistance).value);
            } catch (const PointInSupport&) {
                out.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        return out;
    };
}

std::vector<double> lowerBoundValues(const std::vector<SweepFactor>& factors,
                                     const std::vector<RationalPoint>& zetas,
                                     std::span<const double> alphas, const GapEvaluator& gaps) {
    const double am1 = weightAlpha(factors, alphas) - 1.0;
    std::vector<double> g = gaps(alphas);
    if (g.size() != zetas.size()) throw LengthMismatch("gap evaluator arity mismatch");
    std::vector<double> out(g.size());
    for (size_t i = 0; i < g.size(); ++i)
        out[i] = std::exp(am1 * (std::log(static_cast<double>(zetas[i].q)) + g[i]));
    return out;
}

// ------------------------------------------------------- lattice machinery

namespace {

struct Lattice {
    double step;  // fine step; all alphas are idx * step bitwise
    std::vector<double> simplexWeight;  // scale_i * deg_i
    double budget;                      // sum simplexWeight_i * alpha_i <= budget

    bool inside(std::span<const int> idx) const {
        double s = 0.0;
        for (size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 1) return false;
            s += simplexWeight[i] * idx[i] * step;
        }
        return s <= budget;
    }
    std::vector<double> alphas(std::span<const int> idx) const {
        std::vector<double> a(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) a[i] = idx[i] * step;
        return a;
    }
};

// Index tuples inside the simplex in lexicographic order; components run
// over the multiples of stride (stride > 1 is the coarse pass, producing
// bitwise the same alphas as the fine lattice).
void enumerate(const Lattice& lat, int stride, std::vector<std::vector<int>>& out) {
    const size_t k = lat.simplexWeight.size();
    std::vector<int> idx(k, stride);
    std::function<void(size_t, double)> rec = [&](size_t dim, double used) {
        if (dim == k) {
            out.push_back(idx);
            return;
        }
        const double unit = lat.simplexWeight[dim] * lat.step * stride;
        double leftForRest = 0.0;
        for (size_t j = dim + 1; j < k; ++j)
            leftForRest += lat.simplexWeight[j] * lat.step * stride;
        for (int i = 1;; ++i) {
            const double u = used + unit * i;
            if (u + leftForRest > lat.budget) break;
            idx[dim] = i * stride;
            rec(dim + 1, u);
        }
        idx[dim] = stride;
    };
    rec(0, 0.0);
}

Lattice makeLattice(const std::vector<SweepFactor>& factors, double step) {
    if (step <= 0.0) throw DomainError("lattice step must be positive");
    Lattice lat;
    lat.step = step;
    for (const auto& f : factors)
        lat.simplexWeight.push_back(f.exponentScale * f.poly.degree());
    lat.budget = 1.0 - step / 2.0;  // open simplex margin
    return lat;
}

long long packIndex(std::span<const int> idx) {
    long long key = 0;
    for (int v : idx) key = key * (1 << 20) + v;
    return key;
}

}  // namespace

// --------------------------------------------------------- sweepLowerBound

// max over the evaluable constraints; a NaN marks a constraint that could
// not be estimated.  The partial maximum still bounds the true maximum from
// below, so a point with NaNs may only be discarded from the minimization
// when its partial value already exceeds the minimum; the caller records
// minPartialValue to let tests verify that.
namespace {
struct MaxOfAvailable {
    double value = -kInf;
    bool partial = false;
    bool empty = true;
};
MaxOfAvailable maxAvailable(std::span<const double> vals) {
    MaxOfAvailable m;
    for (double v : vals) {
        if (std::isnan(v)) {
            m.partial = true;
        } else {
            m.value = std::max(m.value, v);
            m.empty = false;
        }
    }
    return m;
}
}  // namespace

SweepResult sweepLowerBound(const std::vector<SweepFactor>& factors,
                            const std::vector<RationalPoint>& zetas, const GapEvaluator& gaps,
                            const SweepConfig& cfg, const GapEvaluator* looseGaps) {
    if (factors.empty() || zetas.empty()) throw DomainError("sweep needs factors and zeta points");
    const size_t k = factors.size();
    SweepResult res;
    res.value = kInf;
    std::vector<std::vector<double>> partialAlphas;

    // One lattice point: value for the minimization, honoring partial
    // evaluations; returns +inf for points that may not compete.
    auto pointValue = [&](std::span<const double> vals, std::span<const double> alphas) {
        MaxOfAvailable m = maxAvailable(vals);
        if (m.partial) {
            ++res.partialPoints;
            if (!m.empty) res.minPartialValue = std::min(res.minPartialValue, m.value);
            if (partialAlphas.size() < 100000)
                partialAlphas.emplace_back(alphas.begin(), alphas.end());
            return kInf;
        }
        return m.empty ? kInf : m.value;
    };
    auto evalMax = [&](std::span<const double> alphas) {
        std::vector<double> vals = lowerBoundValues(factors, zetas, alphas, gaps);
        ++res.evaluations;
        return std::pair(pointValue(vals, alphas), vals);
    };
    auto consider = [&](const std::vector<double>& alphas) {
        auto [v, vals] = evalMax(alphas);
        if (v < res.value || (v == res.value && alphas < res.argmin)) {
            res.value = v;
            res.argmin = alphas;
            res.valuesAtArgmin = vals;
        }
        return v;
    };

    const int coarse = std::max(1, cfg.coarseFactor);
    Lattice lat = makeLattice(factors, cfg.latticeStep);
    if (coarse == 1) {
        std::vector<std::vector<int>> idxs;
        enumerate(lat, 1, idxs);
        std::vector<double> vals(idxs.size());
        std::vector<std::vector<double>> all(idxs.size());
        parallelFor(static_cast<long>(idxs.size()), [&](long i) {
            std::vector<double> a = lat.alphas(idxs[i]);
            all[i] = lowerBoundValues(factors, zetas, a, gaps);
        });
        res.evaluations += static_cast<long>(idxs.size());
        for (size_t i = 0; i < idxs.size(); ++i) vals[i] = pointValue(all[i], lat.alphas(idxs[i]));
        for (size_t i = 0; i < idxs.size(); ++i) {
            std::vector<double> a = lat.alphas(idxs[i]);
            if (vals[i] < res.value || (vals[i] == res.value && a < res.argmin)) {
                res.value = vals[i];
                res.argmin = a;
                res.valuesAtArgmin = all[i];
            }
        }
    } else {
        // Coarse pass over the same simplex with strided indices.
        std::vector<std::vector<int>> coarseIdx;
        enumerate(lat, coarse, coarseIdx);
        std::vector<double> coarseVals(coarseIdx.size());
        std::vector<std::vector<double>> coarseAll(coarseIdx.size());
        parallelFor(static_cast<long>(coarseIdx.size()), [&](long i) {
            std::vector<double> a = lat.alphas(coarseIdx[i]);
            coarseAll[i] = lowerBoundValues(factors, zetas, a, gaps);
        });
        res.evaluations += static_cast<long>(coarseIdx.size());
        for (size_t i = 0; i < coarseIdx.size(); ++i)
            coarseVals[i] = pointValue(coarseAll[i], lat.alphas(coarseIdx[i]));
        const double coarseMin = *std::min_element(coarseVals.begin(), coarseVals.end());

        // Fine pass over cells around every qualifying coarse point.
        std::set<long long> seen;
        std::vector<std::vector<int>> fineIdx;
        std::vector<int> probe(k);
        for (size_t ci = 0; ci < coarseIdx.size(); ++ci) {
            if (coarseVals[ci] > coarseMin + cfg.refineMargin) continue;
            std::function<void(size_t)> rec = [&](size_t dim) {
                if (dim == k) {
                    if (lat.inside(probe) && seen.insert(packIndex(probe)).second)
                        fineIdx.push_back(probe);
                    return;
                }
                const int center = coarseIdx[ci][dim];
                for (int d = -coarse; d <= coarse; ++d) {
                    probe[dim] = center + d;
                    rec(dim + 1);
                }
            };
            rec(0);
        }
        std::sort(fineIdx.begin(), fineIdx.end());
        std::vector<double> fineVals(fineIdx.size());
        std::vector<std::vector<double>> fineAll(fineIdx.size());
        parallelFor(static_cast<long>(fineIdx.size()), [&](long i) {
            std::vector<double> a = lat.alphas(fineIdx[i]);
            fineAll[i] = lowerBoundValues(factors, zetas, a, gaps);
        });
        res.evaluations += static_cast<long>(fineIdx.size());
        for (size_t i = 0; i < fineIdx.size(); ++i)
            fineVals[i] = pointValue(fineAll[i], lat.alphas(fineIdx[i]));
        for (size_t i = 0; i < fineIdx.size(); ++i) {
            std::vector<double> a = lat.alphas(fineIdx[i]);
            if (fineVals[i] < res.value || (fineVals[i] == res.value && a < res.argmin)) {
                res.value = fineVals[i];
                res.argmin = a;
                res.valuesAtArgmin = fineAll[i];
            }
        }
        // Keep the coarse minimum if refinement somehow failed to beat it.
        if (res.argmin.empty()) {
            size_t ci = std::min_element(coarseVals.begin(), coarseVals.end()) - coarseVals.begin();
            consider(lat.alphas(coarseIdx[ci]));
        }
    }

    // Local refinement: coordinate descent with halved steps.
    double step = cfg.latticeStep;
    for (int round = 0; round < cfg.descentRounds; ++round) {
        step *= 0.5;
        bool improved = true;
        while (improved) {
            improved = false;
            for (size_t d = 0; d < k; ++d) {
                for (double dir : {-1.0, 1.0}) {
                    std::vector<double> cand = res.argmin;
                    cand[d] += dir * step;
                    if (cand[d] < step) continue;
                    if (weightAlpha(factors, cand) > 1.0 - cfg.latticeStep / 2.0) continue;
                    auto [v, vals] = evalMax(cand);
                    if (v < res.value) {
                        res.value = v;
                        res.argmin = cand;
                        res.valuesAtArgmin = vals;
                        improved = true;
                    }
                }
            }
        }
    }

    // Exclusion certificate for the points skipped as partial: their best
    // known full maximum (loose re-evaluation where available, the partial
    // maximum otherwise) must exceed the reported minimum.
    if (looseGaps && !partialAlphas.empty()) {
        res.minPartialValue = kInf;
        for (const auto& a : partialAlphas) {
            std::vector<double> loose = lowerBoundValues(factors, zetas, a, *looseGaps);
            MaxOfAvailable m = maxAvailable(loose);
            res.minPartialValue = std::min(res.minPartialValue, m.empty ? -kInf : m.value);
        }
    }

    res.report.kind = BoundKind::Lower;
    res.report.method = BoundMethod::RationalPoint;
    res.report.value = res.value;
    res.report.parameters = {{"factors", sweepFactorsJson(factors)},
                             {"zetas", zetasJson(zetas)},
                             {"latticeStep", cfg.latticeStep},
                             {"coarseFactor", coarse}};
    res.report.diagnostics = {{"argmin", res.argmin},
                              {"valuesAtArgmin", res.valuesAtArgmin},
                              {"evaluations", res.evaluations},
                              {"partialPoints", res.partialPoints}};
    if (res.partialPoints > 0) res.report.diagnostics["minPartialValue"] = res.minPartialValue;
    return res;
}

// ---------------------------------------------------------- feasibleRegion

namespace {

void forEachRegionIndex(const RegionSpec& spec, const GapEvaluator& gaps,
                        const std::function<void(std::span<const double> alphas,
                                                 std::span<const double> values)>& cb,
                        long& evaluations) {
    const size_t k = spec.factors.size();
    Lattice fineLat = makeLattice(spec.factors, spec.latticeStep);
    const int coarse = std::max(1, spec.coarseFactor);

    std::vector<std::vector<int>> idxs;
    if (coarse == 1) {
        enumerate(fineLat, 1, idxs);
    } else {
        std::vector<std::vector<int>> coarseIdx;
        enumerate(fineLat, coarse, coarseIdx);
        // Coarse filter values: the maximum over the evaluable constraints.
        // A partial point whose evaluable part is already >= M is certainly
        // infeasible; one below M must be refined, so it gets -inf.
        std::vector<double> coarseVals(coarseIdx.size());
        parallelFor(static_cast<long>(coarseIdx.size()), [&](long i) {
            std::vector<double> a = fineLat.alphas(coarseIdx[i]);
            std::vector<double> v = lowerBoundValues(spec.factors, spec.constraints, a, gaps);
            MaxOfAvailable m = maxAvailable(v);
            if (m.empty)
                coarseVals[i] = kInf;
            else if (m.partial && m.value < spec.bound)
                coarseVals[i] = -kInf;
            else
                coarseVals[i] = m.value;
        });
        evaluations += static_cast<long>(coarseIdx.size());

        // Local slack: how much the max-constraint moves between adjacent
        // coarse points, used as a Lipschitz allowance per cell.
        std::map<long long, double> byIdx;
        for (size_t i = 0; i < coarseIdx.size(); ++i) byIdx[packIndex(coarseIdx[i])] = coarseVals[i];
        double globalDelta = 0.0;
        auto neighborDelta = [&](size_t i) {
            double d = 0.0;
            if (!std::isfinite(coarseVals[i])) return d;
            for (size_t dim = 0; dim < k; ++dim) {
                for (int dir : {-coarse, coarse}) {
                    std::vector<int> nb = coarseIdx[i];
                    nb[dim] += dir;
                    auto it = byIdx.find(packIndex(nb));
                    if (it != byIdx.end() && std::isfinite(it->second))
                        d = std::max(d, std::abs(it->second - coarseVals[i]));
                }
            }
            return d;
        };
        std::vector<double> slack(coarseIdx.size());
        for (size_t i = 0; i < coarseIdx.size(); ++i) {
            slack[i] = neighborDelta(i);
            globalDelta = std::max(globalDelta, slack[i]);
        }
        std::set<long long> seen;
        std::vector<int> probe(k);
        for (size_t ci = 0; ci < coarseIdx.size(); ++ci) {
            const double s = slack[ci] > 0.0 ? slack[ci] : globalDelta;
            if (coarseVals[ci] >= spec.bound + std::max(0.01, 1.5 * s)) continue;
            std::function<void(size_t)> rec = [&](size_t dim) {
                if (dim == k) {
                    if (fineLat.inside(probe) && seen.insert(packIndex(probe)).second)
                        idxs.push_back(probe);
                    return;
                }
                const int center = coarseIdx[ci][dim];
                for (int d = -coarse; d <= coarse; ++d) {
                    probe[dim] = center + d;
                    rec(dim + 1);
                }
            };
            rec(0);
        }
        std::sort(idxs.begin(), idxs.end());
    }

    std::vector<std::vector<double>> vals(idxs.size());
    parallelFor(static_cast<long>(idxs.size()), [&](long i) {
        vals[i] = lowerBoundValues(spec.factors, spec.constraints, fineLat.alphas(idxs[i]), gaps);
    });
    evaluations += static_cast<long>(idxs.size());
    for (size_t i = 0; i < idxs.size(); ++i) {
        std::vector<double> a = fineLat.alphas(idxs[i]);
        cb(a, vals[i]);
    }
}

// All constraints evaluable and strictly below M; NaN is never feasible.
bool allBelow(std::span<const double> values, double m) {
    for (double v : values)
        if (!(v < m)) return false;
    return true;
}

// Some constraint NaN while every evaluable one is below M: feasibility can
// be neither certified nor excluded.
bool isAmbiguous(std::span<const double> values, double m) {
    bool anyNan = false;
    for (double v : values) anyNan = anyNan || std::isnan(v);
    if (!anyNan) return false;
    for (double v : values)
        if (!std::isnan(v) && v >= m) return false;
    return true;
}

}  // namespace

RegionResult feasibleRegion(const RegionSpec& spec, const GapEvaluator& gaps,
                            std::ostream* csvOut, const GapEvaluator* looseGaps) {
    if (spec.factors.empty() || spec.constraints.empty())
        throw DomainError("region needs factors and constraints");
    if (!(spec.bound > 0.0)) throw DomainError("region bound M must be positive");
    RegionResult out;
    out.spec = spec;
    const size_t k = spec.factors.size();
    std::vector<std::vector<double>> ambiguousAlphas;
    out.boxLo.assign(k, kInf);
    out.boxHi.assign(k, -kInf);
    if (csvOut) {
        for (size_t i = 0; i < k; ++i) {
            const auto& lbl = spec.factors[i].label;
            *csvOut << (lbl.empty() ? "alpha" + std::to_string(i + 1) : lbl) << ',';
        }
        for (size_t j = 0; j < spec.constraints.size(); ++j) *csvOut << "constraint" << j + 1 << ',';
        *csvOut << "feasible\n";
    }
    char buf[64];
    forEachRegionIndex(spec, gaps,
                       [&](std::span<const double> a, std::span<const double> v) {
                           const bool feas = allBelow(v, spec.bound);
                           if (isAmbiguous(v, spec.bound))
                               ambiguousAlphas.emplace_back(a.begin(), a.end());
                           if (csvOut) {
                               for (double x : a) {
                                   std::snprintf(buf, sizeof buf, "%.9g,", x);
                                   *csvOut << buf;
                               }
                               for (double x : v) {
                                   std::snprintf(buf, sizeof buf, "%.9g,", x);
                                   *csvOut << buf;
                               }
                               *csvOut << (feas ? 1 : 0) << '\n';
                           }
                           if (feas) {
                               out.anyFeasible = true;
                               RegionPoint pt;
                               pt.alphas.assign(a.begin(), a.end());
                               pt.values.assign(v.begin(), v.end());
                               pt.feasible = true;
                               out.points.push_back(std::move(pt));
                               for (size_t i = 0; i < k; ++i) {
                                   out.boxLo[i] = std::min(out.boxLo[i], a[i]);
                                   out.boxHi[i] = std::max(out.boxHi[i], a[i]);
                               }
                           }
                       },
                       out.evaluations);
    // Try to settle ambiguous points with the loose evaluator: a loose
    // constraint at or above M confirms infeasibility; anything else stays
    // ambiguous (loose values never certify feasibility).
    for (const auto& a : ambiguousAlphas) {
        bool resolved = false;
        if (looseGaps) {
            std::vector<double> loose = lowerBoundValues(spec.factors, spec.constraints, a,
                                                         *looseGaps);
            for (double v : loose) resolved = resolved || (!std::isnan(v) && v >= spec.bound);
        }
        if (!resolved) ++out.ambiguousCount;
    }
    return out;
}

// ------------------------------------------- neighborhood invariance check

InvarianceCheck neighborhoodInvarianceCheck(const FactorWeight& w, double epsilon,
                                            const std::function<double(Complex)>& gapAt) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (w.zeros().empty()) throw DomainError("weight has no factor zeros");
    InvarianceCheck out;
    out.maxLhs = -kInf;
    bool touchedSupport = false;
    constexpr int kAngles = 16;
    for (const auto& zero : w.zeros()) {
        for (int ring = 1; ring <= 4; ++ring) {
            const double rad = epsilon * ring / 4.0;
            for (int a = 0; a < kAngles; ++a) {
                const double th = 2.0 * M_PI * a / kAngles;
                const Complex z = zero.value + Complex(rad * std::cos(th), rad * std::sin(th));
                try {
                    const double lhs = gapAt(z) + w.logAbs(z);
                    out.maxLhs = std::max(out.maxLhs, lhs);
                } catch (const PointInSupport&) {
                    touchedSupport = true;
                }
            }
        }
    }
    if (touchedSupport)
        out.verdict = InvarianceVerdict::Inconclusive;
    else
        out.verdict = out.maxLhs <= 0.0 ? InvarianceVerdict::Holds : InvarianceVerdict::Fails;
    return out;
}

}  // namespace intcheb
