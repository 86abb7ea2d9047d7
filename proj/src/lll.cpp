#include "intcheb/lll.hpp"

#include <stdexcept>

namespace intcheb {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

mpz_class roundDiv(const mpz_class& num, const mpz_class& den) {
    // nearest integer, exact arithmetic: floor((2 num + den) / (2 den))
    mpz_class q;
    mpz_class n2 = 2 * num + den;
    mpz_class d2 = 2 * den;
    mpz_fdiv_q(q.get_mpz_t(), n2.get_mpz_t(), d2.get_mpz_t());
    return q;
}

}  // namespace

std::vector<std::vector<mpz_class>> identityMatrix(size_t n) {
    std::vector<std::vector<mpz_class>> id(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

// Integral LLL with the classical lambda/d bookkeeping: mu_{i,j} =
// lambda[i][j] / d[j], |b*_i|^2 = d[i]/d[i-1], all quantities integers.
void lllReduce(std::vector<std::vector<mpz_class>>& basis,
               std::vector<std::vector<mpz_class>>* transform, double delta) {
    const int n = static_cast<int>(basis.size());
    if (n == 0) return;
    if (transform && static_cast<int>(transform->size()) != n)
        throw std::invalid_argument("transform must have one column per basis vector");
    if (!(delta > 0.25 && delta < 1.0)) throw std::invalid_argument("delta must be in (1/4, 1)");
    // delta as a fraction p/q
    const long q = 1000000;
    const long p = static_cast<long>(delta * q);

    // 1-based views: column k of the algorithm is basis[k-1].
    std::vector<mpz_class> d(n + 1);
    std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1, mpz_class(0)));
    d[0] = 1;
    d[1] = dot(basis[0], basis[0]);
    if (d[1] == 0) throw std::invalid_argument("basis vector is zero");

    auto redi = [&](int k, int l) {
        // size-reduce column k against column l: want |2 lam[k][l]| <= d[l]
        mpz_class two = 2 * abs(lam[k][l]);
        if (two <= d[l]) return;
        mpz_class r = roundDiv(lam[k][l], d[l]);
        for (size_t i = 0; i < basis[k - 1].size(); ++i)
            basis[k - 1][i] -= r * basis[l - 1][i];
        if (transform)
            for (size_t i = 0; i < (*transform)[k - 1].size(); ++i)
                (*transform)[k - 1][i] -= r * (*transform)[l - 1][i];
        lam[k][l] -= r * d[l];
        for (int i = 1; i < l; ++i) lam[k][i] -= r * lam[l][i];
    };

    int kmax = 1;
    int k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 1; j <= k; ++j) {
                mpz_class u = dot(basis[k - 1], basis[j - 1]);
                for (int i = 1; i < j; ++i) {
                    u = (d[i] * u - lam[k][i] * lam[j][i]);
                    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i - 1].get_mpz_t());
                }
                if (j < k)
                    lam[k][j] = u;
                else {
                    d[k] = u;
                    if (d[k] == 0) throw std::invalid_argument("basis is not linearly independent");
                }
            }
        }
        while (true) {
            redi(k, k - 1);
            // Lovasz test: swap iff q (d[k] d[k-2] + lam^2) < p d[k-1]^2
            mpz_class lhs = (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]) * q;
            mpz_class rhs = d[k - 1] * d[k - 1] * p;
            if (lhs >= rhs) break;
            // SWAPI(k)
            basis[k - 1].swap(basis[k - 2]);
            if (transform) (*transform)[k - 1].swap((*transform)[k - 2]);
            for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            mpz_class l0 = lam[k][k - 1];
            mpz_class bnew = (d[k - 2] * d[k] + l0 * l0);
            mpz_divexact(bnew.get_mpz_t(), bnew.get_mpz_t(), d[k - 1].get_mpz_t());
            for (int i = k + 1; i <= kmax; ++i) {
                mpz_class t = lam[i][k];
                lam[i][k] = (d[k] * lam[i][k - 1] - l0 * t);
                mpz_divexact(lam[i][k].get_mpz_t(), lam[i][k].get_mpz_t(), d[k - 1].get_mpz_t());
                lam[i][k - 1] = (bnew * t + l0 * lam[i][k]);
                mpz_divexact(lam[i][k - 1].get_mpz_t(), lam[i][k - 1].get_mpz_t(),
                             d[k].get_mpz_t());
            }
            d[k - 1] = bnew;
            k = std::max(2, k - 1);
        }
        for (int l = k - 2; l >= 1; --l) redi(k, l);
        ++k;
    }
}

}  // namespace intcheb
