#include "intcheb/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "intcheb/lll.hpp"

namespace intcheb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

using QPoly = std::vector<Rational>;  // ascending, exact rational coefficients

// Shifted Chebyshev polynomials T_k((2x-lo-hi)/(hi-lo)) for k = 0..n.
std::vector<QPoly> shiftedChebyshev(const Rational& lo, const Rational& hi, int n) {
    std::vector<QPoly> t(n + 1);
    t[0] = {Rational(1)};
    if (n == 0) return t;
    const Rational len = hi - lo;
    const Rational a = Rational(2) / len;          // u(x) = a x + b
    const Rational b = -(lo + hi) / len;
    t[1] = {b, a};
    for (int k = 2; k <= n; ++k) {
        // t_k = 2 u t_{k-1} - t_{k-2}
        QPoly next(k + 1, Rational(0));
        for (size_t j = 0; j < t[k - 1].size(); ++j) {
            next[j + 1] += 2 * a * t[k - 1][j];
            next[j] += 2 * b * t[k - 1][j];
        }
        for (size_t j = 0; j < t[k - 2].size(); ++j) next[j] -= t[k - 2][j];
        t[k] = std::move(next);
    }
    return t;
}

Rational rationalFromDouble(double x) { return Rational(x); }

}  // namespace

std::vector<long> coefficientBoxes(const IntervalUnion& domain, int n, double normBudget) {
    if (domain.empty()) throw DomainError("coefficient boxes need a nonempty domain");
    if (!(normBudget > 0.0)) throw DomainError("norm budget must be positive");
    const Interval hull = domain.hull();
    if (!(hull.length() > 0.0)) throw DomainError("degenerate hull");
    const auto cheb = shiftedChebyshev(rationalFromDouble(hull.lo), rationalFromDouble(hull.hi), n);
    const Rational budget = rationalFromDouble(normBudget);
    std::vector<long> boxes(n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        // |c_j| <= B (|A_{0j}| + 2 sum_{k>=1} |A_{kj}|): Chebyshev coefficient
        // functionals have dual norm 1 (k = 0) and 2 (k >= 1).
        Rational rowsum = 0;
        for (int k = 0; k <= n; ++k) {
            if (j < static_cast<int>(cheb[k].size())) {
                Rational a = abs(cheb[k][j]);
                rowsum += (k == 0) ? a : 2 * a;
            }
        }
        Rational bound = budget * rowsum;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
        boxes[j] = fl.fits_slong_p() ? fl.get_si() : std::numeric_limits<long>::max();
    }
    return boxes;
}

// ---------------------------------------------------------------- search

namespace {

// Exact linear constraint sum_j c_j u^j v^{n-j} = 0, valid whenever
// v^n * optimum < 1 forces P(u/v) = 0 for every candidate at least as good
// as the budget.
struct VanishingPoint {
    long u = 0;
    long v = 1;
};

std::vector<VanishingPoint> vanishingPoints(const IntervalUnion& domain, int n,
                                            double normBudget) {
    std::vector<VanishingPoint> pts;
    for (long v = 1; v <= 8; ++v) {
        if (std::pow(static_cast<double>(v), n) * normBudget >= 0.999) continue;
        const long uLo = static_cast<long>(std::ceil(domain.inf() * v - 1e-9));
        const long uHi = static_cast<long>(std::floor(domain.sup() * v + 1e-9));
        for (long u = uLo; u <= uHi; ++u) {
            if (std::gcd(std::labs(u), v) != 1) continue;
            if (!domain.contains(static_cast<double>(u) / v)) continue;
            pts.push_back({u, v});
        }
    }
    return pts;
}

struct TailSolver {
    // Solves the tail coefficients from the head via the vanishing
    // constraints; rows are r_t[j] = u^j v^{n-j}.
    int n = 0;
    int tailCount = 0;  // last tailCount coefficients are determined
    std::vector<std::vector<BigInt>> rows;        // constraints x (n+1)
    std::vector<std::vector<Rational>> tailInv;   // inverse of the tail block

    // Returns false if the solved tail is not integral.
    bool solve(const std::vector<long>& head, std::vector<BigInt>& tailOut) const {
        const int headCount = n + 1 - tailCount;
        std::vector<Rational> rhs(tailCount, Rational(0));
        for (int t = 0; t < tailCount; ++t) {
            BigInt s = 0;
            for (int j = 0; j < headCount; ++j)
                if (head[j] != 0) s += rows[t][j] * head[j];
            rhs[t] = -Rational(s);
        }
        tailOut.assign(tailCount, BigInt(0));
        for (int i = 0; i < tailCount; ++i) {
            Rational x = 0;
            for (int t = 0; t < tailCount; ++t) x += tailInv[i][t] * rhs[t];
            if (x.get_den() != 1) return false;
            tailOut[i] = x.get_num();
        }
        return true;
    }
};

std::optional<TailSolver> makeTailSolver(const std::vector<VanishingPoint>& pts, int n) {
    TailSolver ts;
    ts.n = n;
    for (const auto& pt : pts) {
        if (pt.u == 0) continue;  // handled as c_0 = 0 through the boxes
        std::vector<BigInt> row(n + 1);
        BigInt u = pt.u, v = pt.v;
        for (int j = 0; j <= n; ++j) {
            BigInt c = 1;
            for (int a = 0; a < j; ++a) c *= u;
            for (int a = j; a < n; ++a) c *= v;
            row[j] = c;
        }
        ts.rows.push_back(std::move(row));
    }
    ts.tailCount = static_cast<int>(ts.rows.size());
    if (ts.tailCount == 0 || ts.tailCount > n) return std::nullopt;

    // Invert the tail block by Gauss-Jordan over the rationals.
    const int e = ts.tailCount;
    std::vector<std::vector<Rational>> m(e, std::vector<Rational>(2 * e, Rational(0)));
    for (int t = 0; t < e; ++t) {
        for (int s = 0; s < e; ++s) m[t][s] = Rational(ts.rows[t][n + 1 - e + s]);
        m[t][e + t] = 1;
    }
    for (int col = 0; col < e; ++col) {
        int piv = -1;
        for (int r = col; r < e; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;  // singular tail block; skip elimination
        std::swap(m[col], m[piv]);
        const Rational d = m[col][col];
        for (int c = 0; c < 2 * e; ++c) m[col][c] /= d;
        for (int r = 0; r < e; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (int c = 0; c < 2 * e; ++c) m[r][c] -= f * m[col][c];
        }
    }
    ts.tailInv.assign(e, std::vector<Rational>(e));
    for (int i = 0; i < e; ++i)
        for (int t = 0; t < e; ++t) ts.tailInv[i][t] = m[i][e + t];
    return ts;
}

struct SampleSet {
    std::vector<double> xs;
    std::vector<std::vector<double>> pows;  // pows[s][j] = xs[s]^j
};

SampleSet makeSamples(const IntervalUnion& domain, int n) {
    std::vector<double> xs;
    const double hullLen = domain.hull().length();
    for (const auto& iv : domain.intervals()) {
        xs.push_back(iv.lo);
        if (iv.hi != iv.lo) xs.push_back(iv.hi);
        const int count = std::max(2, static_cast<int>(std::ceil((2.0 * n + 6.0) * iv.length() /
                                                                 std::max(hullLen, 1e-300))));
        for (int i = 1; i < count; ++i) {
            // Chebyshev-extrema spacing clusters samples at both endpoints.
            const double th = M_PI * i / count;
            xs.push_back(0.5 * (iv.lo + iv.hi) + 0.5 * (iv.lo - iv.hi) * std::cos(th));
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    SampleSet s;
    s.xs = xs;
    s.pows.resize(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        s.pows[i].resize(n + 1);
        double p = 1.0;
        for (int j = 0; j <= n; ++j) {
            s.pows[i][j] = p;
            p *= xs[i];
        }
    }
    return s;
}

struct SearchState {
    const IntervalUnion* domain = nullptr;
    SearchOptions opts;
    int n = 0;
    std::vector<long> boxes;
    std::optional<TailSolver> tail;
    SampleSet samples;
    std::vector<std::vector<double>> slackAfter;  // [depth][sample]
    std::vector<long> head;
    std::vector<double> partial;  // running P(x_s) of assigned coefficients
    double incumbent = kInf;
    std::vector<IntPoly> ties;
    long nodes = 0;

    int headCount() const { return n + 1 - (tail ? tail->tailCount : 0); }

    void considerCandidate(const std::vector<BigInt>& coeffs) {
        IntPoly p{std::vector<BigInt>(coeffs)};
        if (p.isZero()) return;
        // cheap filter on the sample values first
        double maxAbs = 0.0;
        for (size_t s = 0; s < samples.xs.size(); ++s)
            maxAbs = std::max(maxAbs, std::abs(p(samples.xs[s])));
        if (maxAbs > incumbent * (1.0 + 1e-9)) return;
        const double norm = supNormOnGrid(p, *domain, opts.normGridDensity);
        if (norm < incumbent * (1.0 - 1e-9)) {
            incumbent = norm;
            ties.clear();
            ties.push_back(std::move(p));
        } else if (norm <= incumbent * (1.0 + 1e-9)) {
            if (static_cast<int>(ties.size()) < opts.maxTies) ties.push_back(std::move(p));
        }
    }

    void dfs(int depth) {
        ++nodes;
        if (depth == headCount()) {
            std::vector<BigInt> coeffs(n + 1);
            for (int j = 0; j < headCount(); ++j) coeffs[j] = head[j];
            if (tail) {
                std::vector<BigInt> tv;
                if (!tail->solve(head, tv)) return;
                for (int s = 0; s < tail->tailCount; ++s) {
                    const int j = headCount() + s;
                    if (abs(tv[s]) > boxes[j]) return;
                    coeffs[j] = tv[s];
                }
            }
            considerCandidate(coeffs);
            return;
        }
        const long box = boxes[depth];
        // small magnitudes first: good incumbents appear early
        for (long mag = 0; mag <= box; ++mag) {
            for (int sign = 0; sign < (mag == 0 ? 1 : 2); ++sign) {
                const long c = sign == 0 ? mag : -mag;
                if (c != 0)
                    for (size_t s = 0; s < samples.xs.size(); ++s)
                        partial[s] += c * samples.pows[s][depth];
                bool ok = true;
                for (size_t s = 0; s < samples.xs.size(); ++s) {
                    if (std::abs(partial[s]) - slackAfter[depth][s] > incumbent * (1.0 + 1e-9)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    head[depth] = c;
                    dfs(depth + 1);
                    head[depth] = 0;
                }
                if (c != 0)
                    for (size_t s = 0; s < samples.xs.size(); ++s)
                        partial[s] -= c * samples.pows[s][depth];
            }
        }
    }
};

}  // namespace

SearchResult searchIntegerChebyshev(const IntervalUnion& domain, int n, double normBudget,
                                    const std::vector<IntPoly>& knownFactors,
                                    const SearchOptions& opts) {
    if (domain.empty()) throw DomainError("search needs a nonempty domain");
    if (n < 1) throw DomainError("search needs degree >= 1");
    if (n > opts.maxDegree) throw DomainError("degree exceeds the configured search cap");
    if (!(normBudget > 0.0)) throw DomainError("norm budget must be positive");

    SearchState st;
    st.domain = &domain;
    st.opts = opts;
    st.n = n;
    st.boxes = coefficientBoxes(domain, n, normBudget);
    auto vps = vanishingPoints(domain, n, normBudget);
    for (const auto& vp : vps)
        if (vp.u == 0) st.boxes[0] = 0;  // P(0) = 0 forces c_0 = 0
    st.tail = makeTailSolver(vps, n);
    if (std::all_of(st.boxes.begin(), st.boxes.end(), [](long b) { return b <= 0; }))
        throw BudgetTooSmall("coefficient boxes admit only the zero polynomial");

    st.samples = makeSamples(domain, n);
    st.slackAfter.assign(n + 1, std::vector<double>(st.samples.xs.size(), 0.0));
    for (int depth = n; depth >= 0; --depth) {
        for (size_t s = 0; s < st.samples.xs.size(); ++s) {
            double acc = depth + 1 <= n ? st.slackAfter[std::min(depth + 1, n)][s] : 0.0;
            if (depth + 1 <= n)
                acc += st.boxes[depth + 1] * std::abs(st.samples.pows[s][depth + 1]);
            st.slackAfter[depth][s] = acc;
        }
    }
    st.head.assign(st.headCount(), 0);
    st.partial.assign(st.samples.xs.size(), 0.0);
    st.incumbent = normBudget * (1.0 + 1e-9);
    st.dfs(0);

    if (st.ties.empty())
        throw BudgetTooSmall("no nonzero polynomial within the budget; budget below optimum");

    // Canonical representative: positive leading sign, then lexicographically
    // smallest coefficient vector.  Keep the tie list deduplicated.
    std::vector<IntPoly> ties;
    for (const auto& p : st.ties) {
        IntPoly q = p.leadingCoeff() < 0 ? -p : p;
        if (std::find(ties.begin(), ties.end(), q) == ties.end()) ties.push_back(q);
    }
    std::sort(ties.begin(), ties.end(), IntPoly::lexLess);
    const IntPoly best = ties.front();
    const double norm = supNormOnGrid(best, domain, opts.normGridDensity);

    SearchResult res;
    res.record = factorAnalyze(best, norm, knownFactors);
    res.ties = std::move(ties);
    res.nodesVisited = st.nodes;
    return res;
}

SearchResult searchIntegerChebyshev(const IntervalUnion& domain, int n, double normBudget,
                                    const SearchOptions& opts) {
    return searchIntegerChebyshev(domain, n, normBudget, std::vector<IntPoly>{}, opts);
}

double bestFactorProductNorm(const IntervalUnion& domain, int n,
                             const std::vector<IntPoly>& table, int gridDensity) {
    double best = 1.0;  // the constant polynomial 1
    std::function<void(size_t, int, const IntPoly&)> rec = [&](size_t idx, int degLeft,
                                                               const IntPoly& prod) {
        if (!prod.isZero() && prod.degree() >= 1)
            best = std::min(best, supNormOnGrid(prod, domain, gridDensity));
        if (idx == table.size()) return;
        const int d = table[idx].degree();
        if (d < 1) return;
        IntPoly acc = prod;
        for (int mult = 1; mult * d <= degLeft; ++mult) {
            acc = acc * table[idx];
            rec(idx + 1, degLeft - mult * d, acc);
        }
        rec(idx + 1, degLeft, prod);
    };
    rec(0, n, IntPoly{1});
    return best;
}

// ----------------------------------------------------------- factorAnalyze

FactorizationRecord factorAnalyze(const IntPoly& p, double norm,
                                  const std::vector<IntPoly>& knownFactors) {
    if (p.isZero()) throw DomainError("cannot analyze the zero polynomial");
    FactorizationRecord rec;
    rec.degree = p.degree();
    rec.polynomial = p;
    rec.norm = norm;
    IntPoly residual = p;
    for (const auto& f : knownFactors) {
        int mult = 0;
        while (true) {
            auto q = residual.dividedBy(f);
            if (!q) break;
            residual = *q;
            ++mult;
        }
        if (mult > 0)
            rec.factors.push_back(
                {f, mult, rec.degree > 0 ? static_cast<double>(mult) / rec.degree : 0.0});
    }
    rec.residual = residual;
    return rec;
}

nlohmann::json FactorizationRecord::toJson() const {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : factors)
        fs.push_back({{"factor", f.factor.text()},
                      {"multiplicity", f.multiplicity},
                      {"ratio", f.ratio}});
    return {{"degree", degree},
            {"polynomial", polynomial.text()},
            {"norm", norm},
            {"factors", fs},
            {"residual", residual.text()}};
}

// ---------------------------------------------------------- symmetryReduce

namespace {

std::optional<IntPoly> evenReduce(const IntPoly& p) {
    if (p.isZero()) return IntPoly{};
    if (p.degree() % 2 != 0) return std::nullopt;
    const int k = p.degree() / 2;
    const IntPoly z{0, 1, -1};  // x - x^2
    IntPoly rem = p;
    std::vector<BigInt> q(k + 1);
    for (int j = k; j >= 0; --j) {
        BigInt b = rem.coeff(2 * j);
        if (j % 2 == 1) b = -b;
        q[j] = b;
        if (b != 0) rem = rem - z.pow(j) * IntPoly(std::vector<BigInt>{b});
        // remainder must drop to even degree <= 2j-2
        if (j > 0 && rem.degree() >= 2 * j - 1) return std::nullopt;
    }
    if (!rem.isZero()) return std::nullopt;
    return IntPoly(std::move(q));
}

}  // namespace

std::optional<SymmetryReduction> symmetryReduce(const IntPoly& p) {
    if (auto q = evenReduce(p)) return SymmetryReduction{*q, SymmetryParity::Even};
    const IntPoly oneMinus2x{1, -2};
    if (auto half = p.dividedBy(oneMinus2x)) {
        if (auto q = evenReduce(*half)) return SymmetryReduction{*q, SymmetryParity::Odd};
    }
    return std::nullopt;
}

// --------------------------------------------------- hilbertFeketeConstruct

namespace {

Rational mpqPow2(long e) {
    Rational r(1);
    if (e >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -e);
    return r;
}

BigInt roundToInt(const Rational& x) {
    Rational shifted = x + Rational(1, 2);
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return q;
}

}  // namespace

ConstructResult hilbertFeketeConstruct(const IntervalUnion& domain, const FactorWeight& w, int n,
                                       const std::vector<double>& nodes) {
    if (static_cast<int>(nodes.size()) != n + 1)
        throw DomainError("need exactly n+1 interpolation nodes");
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw SingularNodes("coincident interpolation nodes");
    for (double x : nodes) {
        if (!domain.contains(x)) throw DomainError("interpolation node outside the domain");
        if (!std::isfinite(w.logAbs(x) * n)) throw DomainError("weight vanishes at a node");
    }
    const int dim = n + 1;

    // Exact (dyadic) form matrix entries w(z_i)^n z_i^k.
    std::vector<Rational> wpow(dim);
    for (int i = 0; i < dim; ++i) {
        const double wp = std::exp(static_cast<double>(n) * w.logAbs(nodes[i]));
        if (!(wp > 0.0) || !std::isfinite(wp))
            throw NonConvergence("weight power over/underflows a double");
        wpow[i] = rationalFromDouble(wp);
    }

    // Scale so that the shortest expected form is far above the rounding
    // noise: log2 |det| = sum n log2 w + sum_{i<j} log2 |z_i - z_j|.
    double log2det = 0.0;
    for (int i = 0; i < dim; ++i) log2det += n * w.logAbs(nodes[i]) / std::log(2.0);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            log2det += std::log2(std::abs(nodes[i] - nodes[j]));
    long bits = static_cast<long>(std::ceil(std::max(0.0, -log2det / dim))) + 128;
    bits = std::min(bits, 4096L);
    const Rational scale = mpqPow2(bits);

    std::vector<std::vector<mpz_class>> basis(dim, std::vector<mpz_class>(dim));
    for (int k = 0; k < dim; ++k) {
        for (int i = 0; i < dim; ++i) {
            Rational zp(1);
            for (int a = 0; a < k; ++a) zp *= rationalFromDouble(nodes[i]);
            basis[k][i] = roundToInt(wpow[i] * zp * scale);
        }
    }
    auto transform = identityMatrix(dim);
    lllReduce(basis, &transform);

    // Candidate coefficient vectors: the reduced transform columns and small
    // combinations of the first three.
    std::vector<std::vector<mpz_class>> candidates;
    for (int k = 0; k < dim; ++k) candidates.push_back(transform[k]);
    const int combinable = std::min(3, dim);
    std::vector<int> combo(combinable, -1);
    while (true) {
        std::vector<mpz_class> v(dim, mpz_class(0));
        bool nonzero = false;
        for (int t = 0; t < combinable; ++t) {
            if (combo[t] == 0) continue;
            for (int i = 0; i < dim; ++i) v[i] += combo[t] * transform[t][i];
        }
        for (const auto& x : v) nonzero = nonzero || x != 0;
        if (nonzero) candidates.push_back(std::move(v));
        int t = 0;
        for (; t < combinable; ++t) {
            if (combo[t] < 1) {
                ++combo[t];
                break;
            }
            combo[t] = -1;
        }
        if (t == combinable) break;
    }

    ConstructResult best;
    best.certifiedBound = kInf;
    for (const auto& cand : candidates) {
        bool allZero = true;
        for (const auto& c : cand) allZero = allZero && c == 0;
        if (allZero) continue;
        IntPoly p{std::vector<BigInt>(cand)};
        std::vector<double> forms(dim);
        double maxAbs = 0.0;
        for (int i = 0; i < dim; ++i) {
            const Rational li = wpow[i] * p(rationalFromDouble(nodes[i]));
            forms[i] = li.get_d();
            maxAbs = std::max(maxAbs, std::abs(forms[i]));
        }
        const double bound = dim * maxAbs;
        if (bound < best.certifiedBound) {
            best.poly = std::move(p);
            best.certifiedBound = bound;
            best.formValues = std::move(forms);
        }
    }
    if (best.poly.isZero()) throw NonConvergence("lattice reduction produced no usable vector");
    if (best.poly.leadingCoeff() < 0) {
        best.poly = -best.poly;
        for (auto& f : best.formValues) f = -f;
    }
    return best;
}

}  // namespace intcheb
