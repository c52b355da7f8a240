#pragma once

#include <string>
#include <vector>

#include "clipcone/action.hpp"
#include "clipcone/lattice.hpp"
#include "clipcone/polycone.hpp"

namespace clipcone {

enum class FactorKind { Halfline, Lorentz, PsdSym };

// One indecomposable summand of a self-dual homogeneous cone.  coords are the
// ambient coordinate indices spanning the factor, in order.  For Lorentz
// factors h is the interior witness in factor-local coordinates (q(h) > 0
// selects the component).  For PsdSym factors m is the matrix size and coords
// index the upper triangle row-major: (0,0),(0,1),...,(0,m-1),(1,1),...
struct Factor {
  FactorKind kind = FactorKind::Halfline;
  std::vector<long> coords;
  RatVec h;
  long m = 0;

  long dim() const { return static_cast<long>(coords.size()); }
};

struct SymCone {
  QuadLattice lattice;
  std::vector<Factor> factors;
};

struct CheckFailure {
  long factor = -1;  // -1: global structural check
  std::string check;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Checks the factor partition, block structure of the Gram matrix, and the
// per-factor signature and witness conditions.  Never throws; every failed
// check is a report entry.
ValidationReport validate(const SymCone& sym);

// Exact membership, factor by factor.  plus mode equals closure on Halfline
// and Lorentz factors for rational input (rational boundary rays are rational
// multiples of lattice vectors); plus mode on PsdSym factors throws
// Unsupported.
bool member(const SymCone& sym, const RatVec& v, Mode mode);

// Gram block of the factor.
RatMat factor_gram(const SymCone& sym, const Factor& f);

// Local coordinates of an ambient vector on the factor.
RatVec factor_part(const Factor& f, const RatVec& v);

// Bilinear and quadratic values of the ambient form.
Rat pair_q(const SymCone& sym, const RatVec& u, const RatVec& v);
Rat norm_q(const SymCone& sym, const RatVec& v);

// Sub-sum of the selected factors, with coordinates renumbered to the ordered
// union of their coords.  ambient maps local index -> original index.
struct SubCone {
  SymCone cone;
  std::vector<long> ambient;
};
SubCone restrict_to(const SymCone& sym, const std::vector<size_t>& factor_indices);

// Non-halfline factors.
SubCone round_part(const SymCone& sym);
// Halfline factors.
SubCone simplicial_part(const SymCone& sym);

enum class HyperbolicType { Halfline, TwoHalflines, Hyperbolic };

// Type of the G-invariant slice of the span of one G-orbit of Lorentz
// factors.  d = dim of the invariant subspace: 1 -> Halfline,
// 2 -> TwoHalflines, d >= 3 -> Hyperbolic after verifying the restricted form
// has signature (1, d-1).  Throws SignatureAnomaly when that verification
// fails (the action cannot preserve the cone) and PreconditionFailure when
// the orbit is not a single G-orbit of Lorentz factors.
HyperbolicType invariant_hyperbolic_type(const SymCone& sym,
                                         const std::vector<size_t>& orbit,
                                         const FiniteAction& action);

}  // namespace clipcone
