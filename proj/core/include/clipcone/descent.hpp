#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "clipcone/clipping.hpp"
#include "clipcone/polycone.hpp"

namespace clipcone {

// One G-orbit of ambient factors together with its invariant slice.  cols
// index columns of the invariant basis; they are contiguous and grouped per
// orbit.  type is meaningful for Lorentz orbits only.
struct FactorOrbit {
  FactorKind kind = FactorKind::Halfline;
  std::vector<size_t> factors;
  std::vector<long> cols;
  long d = 0;
  HyperbolicType type = HyperbolicType::Halfline;
};

// One G-orbit of roots.  epsilon_ambient sums every distinct orbit element
// exactly once; epsilon is the same vector in invariant coordinates.
// pairing = q(e, epsilon) for any orbit member e; the clipping assumptions
// force pairing into {-s, -s/2}.
struct RootOrbit {
  std::vector<size_t> roots;
  size_t carrier = 0;
  IntVec epsilon_ambient;
  IntVec epsilon;
  Rat q_epsilon;
  Rat pairing;
  bool in_star = false;
};

// Word in the ambient root reflections whose product b centralizes the group
// and restricts to the descended reflection.  Indices refer to the clipped
// cone's root list; the matrix is the product of the word's reflections.
struct Lift {
  std::vector<size_t> word;
  RatMat b;
  long blocks = 0;
  long block_size = 1;
};

// Invariant d=2 slice with the edges of its wedge before and after the cuts
// by the roots carried there.  Edges live in the plane coordinates (the two
// invariant columns), over Q(sqrt(disc)); disc = 1 means rational edges.
struct WedgeB {
  size_t orbit = 0;
  std::array<long, 2> cols{};
  long disc = 1;
  std::vector<QVec> ambient_edges;
  std::vector<QVec> edges;
};

// Setwise-fixed PsdSym factor: its slice is handled at membership level on
// the ambient factor rather than rebuilt in invariant coordinates.
struct PsdPartB {
  size_t orbit = 0;
  size_t factor = 0;
};

struct DescentReport {
  IntMat invariant_basis;  // n x m, columns grouped by factor orbit
  RatMat invariant_gram;   // restriction of the form to the invariant basis
  RatVec witness;          // group-averaged witness in invariant coordinates
  std::vector<FactorOrbit> orbit_table;
  std::vector<size_t> J1, J2, J3p;  // factor orbits by slice dimension
  std::vector<RootOrbit> root_orbits;
  std::vector<size_t> I_star;  // root orbits surviving downstairs
  SymCone B;                   // explicit part: halfline and d>=3 slices
  std::vector<long> B_cols;    // B local coordinate -> invariant column
  std::vector<WedgeB> wedges;
  std::vector<PsdPartB> psd_parts;
  std::vector<Root> descended;  // canonical descended roots, one per I_star
                                // entry, in full invariant coordinates;
                                // factor = index into orbit_table
  std::vector<RatMat> taus;     // descended reflections, invariant coords
  std::vector<Lift> lifts;      // parallel to I_star
  std::map<std::string, bool> checks;
  bool equality_exact = false;  // geometric equality certified polyhedrally
  bool ok = true;
};

// Sum of the distinct images of the root normal under the group.
IntVec orbit_sum(const Root& root, const FiniteAction& action);

// Descends the clipped cone to the invariant subspace: invariant basis and
// form, factor and root orbits, the shell B with its wedges, the surviving
// descended roots with their reflections tau and centralizer lifts, and the
// named verdicts, including a sampled (or, when every slice is polyhedral
// over Q, exact) comparison of the descended cone against the invariant
// slice of the original.  Throws PreconditionFailure when the action does
// not preserve the instance and PsdOrbitUnsupported when a PsdSym factor is
// moved to another factor.
DescentReport descend(const ClippedCone& cone, const FiniteAction& action,
                      unsigned long seed = 0, long samples = 1000);

// Membership of an invariant-coordinate vector in the shell B (explicit
// factors, wedges, and psd parts together).
bool member_b(const DescentReport& rep, const ClippedCone& cone, const RatVec& y,
              Mode mode);

// Membership in the descended clipped cone: member_b plus the I_star cuts.
bool member_descended(const DescentReport& rep, const ClippedCone& cone,
                      const RatVec& y, Mode mode);

// Builds the lift for one root orbit: blocks are singletons or positive
// pairs, the word concatenates sigma_u / sigma_u sigma_v sigma_u per block.
// Throws BlockStructureViolation when the positive-pairing graph is neither
// empty nor a perfect matching with q(e,e') = s/2, and PreconditionFailure
// when the product fails to commute blockwise or centralize the group.
Lift centralizer_lift(const ClippedCone& cone, const std::vector<size_t>& orbit,
                      const FiniteAction& action);

// Symmetrizes walls over the group: each wall maps to its full-group sum
// (with multiplicity) and is kept iff q(w, sum) < 0; exact duplicates are
// removed.  Every input wall must have q(w, w) < 0.
std::vector<IntVec> descend_walls(const std::vector<IntVec>& walls,
                                  const FiniteAction& action,
                                  const QuadLattice& lattice);

}  // namespace clipcone
