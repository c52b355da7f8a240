#pragma once

#include <string>
#include <vector>

#include "clipcone/symcone.hpp"

namespace clipcone {

// Primitive integer normal of a clipping hyperplane, oriented so that the
// cone's interior witness pairs positively.  s = -q(e,e) > 0.
struct Root {
  IntVec e;
  long factor = -1;
  Rat s;
};

struct ClippedCone {
  SymCone ambient;
  std::vector<Root> roots;
  RatVec witness;
};

struct Rejection {
  size_t index;  // position in the raw input list
  std::string reason;
};

struct CanonicalRoots {
  std::vector<Root> roots;
  std::vector<Rejection> rejected;
};

// Primitive scaling, orientation toward the witness, factor assignment, and
// hyperplane dedup.  Vectors that cannot be roots (nonnegative square,
// support meeting several factors or a non-Lorentz factor, witness on the
// hyperplane) land in rejected with a reason; nothing throws.
CanonicalRoots canonicalize_roots(const std::vector<RatVec>& raw, const ClippedCone& shell);

struct IntegralityReport {
  bool ok = true;
  long witness_basis = -1;  // failing standard basis vector
  Rat coefficient;          // the non-integral reflection coefficient
};

// Assumption (ii) for one root: q(e,e) divides every element of 2q(e, V_Z),
// equivalently the reflection matrix is integral.
IntegralityReport check_integrality(const Root& root, const QuadLattice& lattice);

enum class AngleClass { RightAngle, Pi3, Pi4, Pi6, Parallel, Ultraparallel, Violation };

struct PairEntry {
  size_t i = 0;
  size_t k = 0;
  Rat pairing;  // q(e_i, e_k)
  Rat ratio;    // q(e_i,e_k)^2 / (q(e_i,e_i) q(e_k,e_k))
  AngleClass cls = AngleClass::RightAngle;
  bool pairing_nonneg = true;  // assumption (iii)
};

struct PairwiseReport {
  std::vector<PairEntry> pairs;
  bool ok = true;  // no ratio violations, no negative pairings
};

// Assumption (iii) and the Coxeter ratio law for every unordered pair.
// Ratios outside {0, 1/4, 1/2, 3/4} union [1, infinity) are violations; so
// are negative pairings.
PairwiseReport check_pairwise(const std::vector<Root>& roots, const QuadLattice& lattice);

// Matrix of v -> v - (2 q(e,v)/q(e,e)) e.
RatMat reflection_matrix(const Root& root, const QuadLattice& lattice);

// Structural validation: ambient checks, witness interiority and orientation,
// root primitivity, factor support, hyperplane dedup.  Assumption (ii)/(iii)
// live in check_integrality / check_pairwise.
ValidationReport validate_clipped(const ClippedCone& cone);

bool member_clipped(const ClippedCone& cone, const RatVec& v, Mode mode);

// Convex 13-gon inscribed in a rational circle inside the hyperbolic disc of
// diag(1,-1,-1): its thirteen side normals always carry at least one pair
// outside the admissible ratio set.
ClippedCone thirteen_gon();

}  // namespace clipcone
