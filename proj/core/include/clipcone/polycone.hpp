#pragma once

#include <vector>

#include "clipcone/quadfield.hpp"
#include "clipcone/scalar.hpp"

namespace clipcone {

enum class Mode { Interior, Closure, Plus };

// Rational polyhedral cone with both descriptions kept consistent.
//
//   closed cone = {x : f.x >= 0 for f in facets, e.x == 0 for e in equations}
//               = span{lines} + cone{rays}
//
// rays are extreme and primitive; lines a primitive basis of the lineality
// space; equations a basis of the annihilator of the span.  "generators" in
// the inequality<->generator duality means rays together with +-lines, and
// the facet description likewise means facets together with +-equations.
struct PolyCone {
  long dim = 0;
  std::vector<IntVec> rays;
  std::vector<IntVec> lines;
  std::vector<IntVec> facets;
  std::vector<IntVec> equations;

  bool pointed() const { return lines.empty(); }
  bool full_dim() const { return equations.empty(); }
};

// Builds the cone {x : a.x >= 0 for all a} from inequality normals.
PolyCone dd_from_facets(long dim, const std::vector<RatVec>& normals);

// Builds the cone generated by the given rays.  Throws DegenerateInput when
// all generators are zero (or the list is empty).
PolyCone dd_from_rays(long dim, const std::vector<RatVec>& gens);

bool contains(const PolyCone& cone, const RatVec& v, Mode mode);

// Cone in the direct-sum space generated by the block-embedded data of a and b.
PolyCone direct_sum(const PolyCone& a, const PolyCone& b);

// Simplicial cone over Q(sqrt(d)): rays are linearly independent.
struct QCone {
  long dim = 0;
  long d = 0;  // square-free positive integer of the quadratic field
  std::vector<QVec> rays;
};

// Preorder on simplicial cones: sigma rules xi iff (1) every extremal ray of
// xi of irrational slope is an extremal ray of sigma, and (2) the span of
// xi's rational-slope extremal rays equals the span of some subset of sigma's
// extremal rays.  Throws NotSimplicial if either ray list is dependent.
bool rules(const QCone& sigma, const QCone& xi);

QCone to_qcone(const PolyCone& cone, long d);

}  // namespace clipcone
