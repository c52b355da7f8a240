#pragma once

#include <functional>
#include <vector>

#include "clipcone/clipping.hpp"

namespace clipcone {

// Record of one run of the reflection reduction.  word lists root indices in
// application order, so end = sigma_{word.back()} o ... o sigma_{word.front()}
// applied to start, exactly.  crossings_initial counts the distinct walls of
// the generated reflection group crossed on the way; for a root list that cuts
// out a fundamental chamber this equals the word length, and reduce verifies
// the defining sign certificates on every run.
struct ReductionTrace {
  RatVec start;
  RatVec end;
  std::vector<size_t> word;
  long crossings_initial = 0;
};

// Greedy reduction into the chamber {q(e_i, x) >= 0}: repeatedly reflects the
// most violated root (largest q(e_i,x)^2 / s_i among negative pairings,
// compared exactly by cross-multiplication; ties to the lowest index).
//
// Throws NotInPlusCone when x is outside the ambient plus cone, IterationCap
// after cap reflections (possible only when the root list does not close a
// fundamental chamber), and PreconditionFailure when a crossed wall fails its
// separation certificate (repeated wall, or a wall meeting the chamber: both
// indicate the root list violates the clipping assumptions).
ReductionTrace reduce(const RatVec& x, const ClippedCone& cone, long cap = 10000);

// Truncated Dirichlet cell of the point a: one linear cut q(x, ga - a) >= 0
// per supplied group element with ga != a.  The element list is always an
// explicit finite truncation of the acting group; elements_checked records it.
struct DirichletDomain {
  PolyCone domain;
  std::vector<RatVec> cuts;        // ga - a per cutting element
  std::vector<size_t> stabilizer;  // non-identity elements fixing a
  size_t elements_checked = 0;
};

// Form-level construction: requires the identity among elements and every
// element an exact q-isometry.  A nontrivial stabilizer is reported, not
// thrown.  Reflection groups of definite lattices live here, where no
// positivity cone constrains the elements.
DirichletDomain dirichlet_domain(const RatVec& a, const std::vector<RatMat>& elements,
                                 const QuadLattice& lattice);

// Cone-level construction: additionally requires a interior and every element
// to map the cone interior into itself.
DirichletDomain dirichlet_domain(const RatVec& a, const std::vector<RatMat>& elements,
                                 const SymCone& sym);

// Membership in (Dirichlet cell) intersected with the ambient cone.
bool in_domain(const DirichletDomain& dom, const SymCone& sym, const RatVec& v, Mode mode);

struct DisjointnessReport {
  long samples = 0;   // points drawn
  long in_plus = 0;   // points passing the plus-cone filter
  long covered = 0;   // in-plus points interior to at least one translate
  long max_count = 0; // most translates sharing one sample interior
};

// Samples integer points of [-box, box]^n, keeps those passing in_plus, and
// counts for each how many translates g(domain) contain it in the interior.
// Translate interiors of a fundamental cell are pairwise disjoint, so
// max_count must stay at 1.
DisjointnessReport translate_disjointness(const PolyCone& domain,
                                          const std::vector<RatMat>& elements,
                                          const std::function<bool(const RatVec&)>& in_plus,
                                          long samples, unsigned long seed, long box = 50);

}  // namespace clipcone
