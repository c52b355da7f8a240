#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "clipcone/scalar.hpp"

namespace clipcone::linalg {

// ---- exact rational linear algebra ----

long rank(const RatMat& a);

// Columns form a basis of the right kernel {x : a x = 0}; may have 0 columns.
RatMat kernel(const RatMat& a);

// Unique solution of a x = b when a is square invertible; nullopt if singular
// or inconsistent for the least-squares-free exact solve on square systems.
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

RatMat inverse(const RatMat& a);  // throws DegenerateInput if singular

Rat det(const RatMat& a);

// ---- symmetric forms ----

struct Signature {
  long pos = 0;
  long neg = 0;
  long zero = 0;
};

// Inertia of a symmetric rational matrix via symmetric Gaussian congruence
// reduction; exact.
Signature signature_of(const RatMat& gram);

// ---- integer lattice algorithms ----

// Column-style Hermite reduction: returns unimodular U with A*U = [H | 0],
// H's nonzero columns echelonized.  first = H (same shape as A), second = U.
std::pair<IntMat, IntMat> hnf_cols(const IntMat& a);

// Primitive basis (columns) of {x in Z^n : a x = 0}.  The kernel of an integer
// matrix is saturated in Z^n, so the basis generates it exactly.
IntMat integer_kernel(const IntMat& a);

// Invariant factors d_1 | d_2 | ... of the Smith normal form (nonzero ones).
std::vector<Int> smith_invariants(IntMat a);

// Stacks matrices vertically; all must share the column count.
IntMat vstack(const std::vector<IntMat>& blocks);
RatMat vstack_rat(const std::vector<RatMat>& blocks);

}  // namespace clipcone::linalg
