#pragma once

#include <string>
#include <vector>

#include "clipcone/action.hpp"
#include "clipcone/symcone.hpp"

namespace clipcone {

// Formally real Jordan algebra in a fixed basis.  The product is stored as
// structure matrices: mult[i] is the matrix of L(e_i), so
// x o y = sum_i x_i (mult[i] y).
//
// SpinFactor covers dimension 1 (the halfline algebra) upward; spin_b is the
// bilinear form normalized so that b(unit, unit) = 1 and
// x o y = b(x,u) y + b(y,u) x - b(x,y) u.  SymMatrices is Sym_m(R) in
// row-major upper-triangle coordinates with product (XY + YX)/2.  Product
// keeps the factor algebras in parts with their coordinate lists.  Induced
// marks an algebra transported onto an invariant subspace basis; it carries
// no closed-form realization.
struct JordanAlgebra {
  enum class Kind { SpinFactor, SymMatrices, Product, Induced };

  Kind kind = Kind::SpinFactor;
  long n = 0;
  RatVec unit;
  std::vector<RatMat> mult;

  RatMat spin_b;    // SpinFactor
  long matrix_m = 0;  // SymMatrices

  std::vector<JordanAlgebra> parts;
  std::vector<std::vector<long>> part_coords;
};

// Spin factor of a Lorentz form: gram has signature (1, n-1), the witness h
// has positive square and becomes the unit.
JordanAlgebra spin_factor(const RatMat& gram, const RatVec& h);

JordanAlgebra sym_matrices(long m);

// Ambient algebra of a validated SymCone: the product of the per-factor
// algebras laid out on the factor coordinate lists.
JordanAlgebra algebra_of(const SymCone& sym);

RatVec jmul(const JordanAlgebra& alg, const RatVec& x, const RatVec& y);

// Matrix of L(x): y -> x o y.
RatMat lmat(const JordanAlgebra& alg, const RatVec& x);

// Q(b) = 2 L(b)^2 - L(b o b).
RatMat quadratic_rep(const JordanAlgebra& alg, const RatVec& b);

// Interior of the squares cone {x o x}.  Closed form per kind; Induced
// algebras are not supported.
bool squares_interior(const JordanAlgebra& alg, const RatVec& a);

// Structural checks: commutativity, unit law, the Jordan identity on sampled
// pairs, positive definiteness of the trace form.  Returns one message per
// failed check; empty means all pass.
std::vector<std::string> algebra_anomalies(const JordanAlgebra& alg, unsigned seed);

struct InducedAlgebra {
  JordanAlgebra algebra;
  IntMat basis;  // columns embed the induced basis into the parent coordinates
};

// Restriction of the product to the invariant subspace of the action.  Every
// group element must be an algebra automorphism fixing the unit; otherwise
// NotAutomorphism.
InducedAlgebra invariant_subalgebra(const JordanAlgebra& alg, const FiniteAction& action);

struct Transport {
  RatVec b;
  Rat residual;  // exact value of max |(b o b - a)_i|
};

// Finds b with b o b close to a: float square root, continued-fraction
// rationalization, exact residual.  Perfect squares with small denominators
// are recovered exactly (residual 0).  Throws NotInterior if a is not in the
// open squares cone and IterationCap if precision cannot be reached.
Transport transporter(const JordanAlgebra& alg, const RatVec& a, const Rat& precision);

}  // namespace clipcone
