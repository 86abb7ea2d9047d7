#pragma once

#include <vector>

#include <gmpxx.h>

namespace intcheb {

// Exact integral LLL reduction (all-integer Gram-Schmidt bookkeeping).
// basis holds column vectors basis[j] of equal dimension; they must be
// linearly independent.  transform, when non-null, is updated by the same
// column operations, so seeding it with the identity yields the unimodular
// matrix U with  B_reduced = B_input * U.
void lllReduce(std::vector<std::vector<mpz_class>>& basis,
               std::vector<std::vector<mpz_class>>* transform = nullptr,
               double delta = 0.99);

std::vector<std::vector<mpz_class>> identityMatrix(size_t n);

}  // namespace intcheb
