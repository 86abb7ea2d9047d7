#include "intcheb/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace intcheb {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::fromText(std::string_view text) {
    std::vector<BigInt> cs;
    std::string tok;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }),
                  tok.end());
        if (tok.empty()) throw DomainError("empty coefficient in polynomial text");
        try {
            cs.emplace_back(tok);
        } catch (const std::invalid_argument&) {
            throw DomainError("bad integer coefficient '" + tok + "'");
        }
    }
    if (cs.empty()) throw DomainError("empty polynomial text");
    return IntPoly(std::move(cs));
}

std::string IntPoly::text() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += coeffs_[i].get_str();
    }
    return out;
}

const BigInt& IntPoly::coeff(int k) const {
    static const BigInt zero(0);
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[k];
}

const BigInt& IntPoly::leadingCoeff() const {
    if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

double IntPoly::operator()(double x) const {
    double r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + it->get_d();
    return r;
}

Complex IntPoly::operator()(const Complex& z) const {
    Complex r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * z + it->get_d();
    return r;
}

Rational IntPoly::operator()(const Rational& x) const {
    Rational r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        r = r * x + Rational(*it);
    }
    return r;
}

BigInt IntPoly::scaledEval(const BigInt& u, const BigInt& v, int scale) const {
    if (scale < degree()) throw DomainError("scaledEval scale below degree");
    if (isZero()) return 0;
    // Horner: v^d p(u/v) = c_d u^d + c_{d-1} u^{d-1} v + ... + c_0 v^d,
    // then the leftover v^{scale-d}.
    BigInt r = coeffs_.back();
    BigInt vpow = 1;
    for (int j = degree() - 1; j >= 0; --j) {
        vpow *= v;
        r = r * u + coeffs_[j] * vpow;
    }
    for (int k = degree(); k < scale; ++k) r *= v;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> cs(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) cs[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) cs[i] += o.coeffs_[i];
    return IntPoly(std::move(cs));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
    std::vector<BigInt> cs = coeffs_;
    for (auto& c : cs) c = -c;
    return IntPoly(std::move(cs));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (isZero() || o.isZero()) return {};
    std::vector<BigInt> cs(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPoly(std::move(cs));
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigInt> cs(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) cs[i - 1] = coeffs_[i] * static_cast<long>(i);
    return IntPoly(std::move(cs));
}

IntPoly IntPoly::pow(unsigned e) const {
    IntPoly r{1};
    IntPoly base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

IntPoly IntPoly::compose(const IntPoly& inner) const {
    IntPoly r;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        r = r * inner + IntPoly(std::vector<BigInt>{*it});
    }
    return r;
}

std::optional<IntPoly> IntPoly::dividedBy(const IntPoly& divisor) const {
    if (divisor.isZero()) throw DomainError("division by zero polynomial");
    if (isZero()) return IntPoly{};
    if (degree() < divisor.degree()) return std::nullopt;
    // Rational long division; exact iff remainder vanishes and the quotient
    // is integral.
    std::vector<Rational> rem(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) rem[i] = Rational(coeffs_[i]);
    const int dd = divisor.degree();
    const Rational lead{divisor.leadingCoeff()};
    std::vector<Rational> quot(degree() - dd + 1);
    for (int k = degree() - dd; k >= 0; --k) {
        Rational q = rem[k + dd] / lead;
        quot[k] = q;
        if (q != 0) {
            for (int j = 0; j <= dd; ++j) rem[k + j] -= q * Rational(divisor.coeffs()[j]);
        }
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    std::vector<BigInt> qi(quot.size());
    for (size_t i = 0; i < quot.size(); ++i) {
        if (quot[i].get_den() != 1) return std::nullopt;
        qi[i] = quot[i].get_num();
    }
    return IntPoly(std::move(qi));
}

bool IntPoly::lexLess(const IntPoly& a, const IntPoly& b) {
    const size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (size_t i = 0; i < n; ++i) {
        int c = cmp(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
        if (c != 0) return c < 0;
    }
    return false;
}

// ---------------------------------------------------------- IntervalUnion

IntervalUnion::IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {
    for (const auto& iv : parts_)
        if (!(iv.lo <= iv.hi)) throw DomainError("interval with lo > hi");
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> merged;
    for (const auto& iv : parts_) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    parts_ = std::move(merged);
}

IntervalUnion IntervalUnion::segment(double lo, double hi) {
    return IntervalUnion({Interval{lo, hi}});
}

double IntervalUnion::totalLength() const {
    double s = 0.0;
    for (const auto& iv : parts_) s += iv.length();
    return s;
}

double IntervalUnion::inf() const {
    if (empty()) throw DomainError("empty interval union");
    return parts_.front().lo;
}

double IntervalUnion::sup() const {
    if (empty()) throw DomainError("empty interval union");
    return parts_.back().hi;
}

Interval IntervalUnion::hull() const { return {inf(), sup()}; }

bool IntervalUnion::contains(double x) const {
    for (const auto& iv : parts_)
        if (x >= iv.lo && x <= iv.hi) return true;
    return false;
}

std::string IntervalUnion::text() const {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ';';
        os << parts_[i].lo << ',' << parts_[i].hi;
    }
    return os.str();
}

bool IntervalUnion::operator==(const IntervalUnion& o) const {
    if (parts_.size() != o.parts_.size()) return false;
    for (size_t i = 0; i < parts_.size(); ++i)
        if (parts_[i].lo != o.parts_[i].lo || parts_[i].hi != o.parts_[i].hi) return false;
    return true;
}

// ---------------------------------------------------------- RationalPoint

RationalPoint::RationalPoint(long long p1_, long long p2_, long long q_)
    : p1(p1_), p2(p2_), q(q_) {
    if (q <= 0) throw DomainError("rational point needs q > 0");
    long long g = std::gcd(std::gcd(std::llabs(p1), std::llabs(p2)), q);
    if (g > 1) {
        p1 /= g;
        p2 /= g;
        q /= g;
    }
}

RationalPoint RationalPoint::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return real(std::stoll(s), 1);
        return real(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw DomainError("bad rational point '" + s + "'");
    }
}

std::string RationalPoint::text() const {
    std::ostringstream os;
    if (p2 == 0) {
        os << p1;
        if (q != 1) os << '/' << q;
    } else {
        os << '(' << p1 << (p2 < 0 ? "" : "+") << p2 << "i)/" << q;
    }
    return os.str();
}

// -------------------------------------------------------------- polyRoots

std::vector<ComplexRoot> polyRoots(const IntPoly& p, double tol) {
    if (p.isZero() || p.degree() < 1) throw DomainError("polyRoots needs degree >= 1");
    const int n = p.degree();
    std::vector<double> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = p.coeff(i).get_d();

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NonConvergence("companion eigensolver failed");

    const IntPoly dp = p.derivative();
    std::vector<Complex> roots(n);
    std::vector<bool> polished(n, false);
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(Complex(es.eigenvalues()[i])));

    for (int i = 0; i < n; ++i) {
        Complex z = es.eigenvalues()[i];
        // Newton polish; the step guard keeps clustered roots from wandering.
        for (int it = 0; it < 50; ++it) {
            Complex d = dp(z);
            if (std::abs(d) == 0.0) break;
            Complex step = p(z) / d;
            if (std::abs(step) <= 0.01 * tol * (1.0 + std::abs(z))) {
                polished[i] = true;
                break;
            }
            if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) break;
            z -= step;
        }
        roots[i] = z;
    }

    // Symmetrize conjugate pairs (real coefficients), then sort.
    const double imTol = std::max(tol * 100.0, 1e-9) * (1.0 + scale);
    std::vector<std::pair<Complex, bool>> tagged(n);
    for (int i = 0; i < n; ++i) {
        Complex z = roots[i];
        if (std::abs(z.imag()) <= imTol) z = Complex(z.real(), 0.0);
        tagged[i] = {z, polished[i]};
    }
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });

    // Cluster nearby roots into multiplicities.  Simple roots must have
    // converged under Newton; clusters rely on averaging instead.
    const double clusterTol = std::max(tol * 10.0, 1e-7) * (1.0 + scale);
    std::vector<ComplexRoot> out;
    std::vector<bool> clusterPolished;
    for (const auto& [z, ok] : tagged) {
        if (!out.empty() && std::abs(z - out.back().value) <= clusterTol) {
            auto& last = out.back();
            last.value = (last.value * static_cast<double>(last.multiplicity) + z) /
                         static_cast<double>(last.multiplicity + 1);
            ++last.multiplicity;
            clusterPolished.back() = clusterPolished.back() || ok;
        } else {
            out.push_back({z, 1});
            clusterPolished.push_back(ok);
        }
    }
    for (size_t i = 0; i < out.size(); ++i) {
        if (std::abs(out[i].value.imag()) <= imTol)
            out[i].value = Complex(out[i].value.real(), 0.0);
        if (out[i].multiplicity == 1 && !clusterPolished[i])
            throw NonConvergence("root refinement did not reach tolerance");
    }
    return out;
}

// ------------------------------------------------------------- goldenMax

GoldenResult goldenMax(const std::function<double(double)>& f, double lo, double hi, int iters) {
    if (hi < lo) std::swap(lo, hi);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    GoldenResult best{lo, f(lo)};
    auto consider = [&best](double x, double v) {
        if (v > best.value) best = {x, v};
    };
    consider(hi, f(hi));
    consider(x1, f1);
    consider(x2, f2);
    for (int i = 0; i < iters && (b - a) > 0.0; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
            consider(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
            consider(x1, f1);
        }
    }
    return best;
}

// ----------------------------------------------------------- supNormOnGrid

double supNormOnGrid(const IntPoly& p, const IntervalUnion& domain, int gridDensity) {
    if (domain.empty()) throw DomainError("sup norm over empty domain");
    if (gridDensity < 1) throw DomainError("gridDensity must be positive");
    double best = -1.0;
    auto absp = [&p](double x) { return std::abs(p(x)); };
    for (const auto& iv : domain.intervals()) {
        const double len = iv.length();
        const int cells = std::max(1, static_cast<int>(std::ceil(len * gridDensity)));
        const int npts = cells + 1;
        std::vector<double> xs(npts), vs(npts);
        for (int i = 0; i < npts; ++i) {
            xs[i] = (i == cells) ? iv.hi : iv.lo + len * i / cells;
            vs[i] = absp(xs[i]);
        }
        for (int i = 0; i < npts; ++i) {
            best = std::max(best, vs[i]);
            const bool localMax = (i == 0 || vs[i] >= vs[i - 1]) && (i + 1 >= npts || vs[i] >= vs[i + 1]);
            if (localMax && npts > 1) {
                const double lo = xs[std::max(0, i - 1)];
                const double hi = xs[std::min(npts - 1, i + 1)];
                best = std::max(best, goldenMax(absp, lo, hi).value);
            }
        }
    }
    return best;
}

// ------------------------------------------------------------ FactorWeight

FactorWeight::FactorWeight(std::vector<WeightedFactor> factors, double rootTol)
    : factors_(std::move(factors)) {
    for (const auto& f : factors_) {
        if (f.poly.degree() < 1) throw DomainError("weight factor must be nonconstant");
        if (!(f.exponent > 0.0)) throw DomainError("weight exponent must be positive");
        alphaTotal_ += f.exponent * f.poly.degree();
    }
    if (!(alphaTotal_ < 1.0)) throw DomainError("weight exponents violate alpha < 1");
    for (const auto& f : factors_) {
        logLeading_ += f.exponent * std::log(std::abs(f.poly.leadingCoeff().get_d()));
        for (const auto& r : polyRoots(f.poly, rootTol)) {
            zeros_.push_back(r);
            if (r.value.imag() == 0.0) realZeros_.push_back(r.value.real());
        }
    }
    std::sort(realZeros_.begin(), realZeros_.end());
}

double FactorWeight::logAbs(double x) const {
    double s = 0.0;
    for (const auto& f : factors_) s += f.exponent * std::log(std::abs(f.poly(x)));
    return normalizer() * s;
}

double FactorWeight::logAbs(const Complex& z) const {
    double s = 0.0;
    for (const auto& f : factors_) s += f.exponent * std::log(std::abs(f.poly(z)));
    return normalizer() * s;
}

}  // namespace intcheb
