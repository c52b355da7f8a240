#pragma once

#include <vector>

#include "clipcone/lattice.hpp"
#include "clipcone/linalg.hpp"

namespace clipcone {

// A finite subgroup of GL(n, Z) listed in full.  elements[0] is the identity;
// the list is closed under product and inverse.
struct FiniteAction {
  long n = 0;
  std::vector<IntMat> generators;
  std::vector<IntMat> elements;

  long order() const { return static_cast<long>(elements.size()); }
};

// Enumerates the group generated by the given integer matrices.  Throws
// NotLatticePreserving if a generator is not in GL(n, Z) and CapExceeded if
// the closure grows past cap.
FiniteAction group_closure(const std::vector<IntMat>& generators, long cap);

// Primitive integer basis (columns) of V_Z^G = {v : g v = v for all g}.  The
// invariant sublattice is saturated, so the column span over Z is exact.
IntMat invariant_sublattice(const FiniteAction& action);

// Averaged equivariant projection p onto V^G x Q: p^2 = p, image = V^G, and
// p g = g p for all g.  The seed projection is orthogonal with respect to an
// invariant positive definite form, then averaged over the group.
RatMat maschke_projection(const FiniteAction& action);

// Smallest integer multiple of (1/|G|) sum_g g^T seed g with integer entries;
// positive definite and G-invariant.  seed must be positive definite.
IntMat invariant_form(const FiniteAction& action, const RatMat& seed);

// True iff g^T gram g = gram.
bool preserves_form(const IntMat& g, const RatMat& gram);

}  // namespace clipcone
