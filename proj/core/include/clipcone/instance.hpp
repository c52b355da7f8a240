#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clipcone/action.hpp"
#include "clipcone/clipping.hpp"

namespace clipcone {

struct GroupSpec {
  std::vector<IntMat> generators;
  long cap = 4096;
};

// One problem file: a clipped cone, an optional acting group, and optional
// wall vectors.  Parsing is strict; unknown kinds, bad indices, shape
// mismatches, or unreadable scalars raise ParseError.  The stored roots are
// already canonicalized against the declared witness (primitive scaling,
// orientation, factor assignment, dedup); vectors the canonicalizer refuses
// stay in rejected so that reports can show them.
struct Instance {
  long schema = 1;
  ClippedCone cone;
  std::vector<Rejection> rejected;
  std::optional<GroupSpec> group;
  std::vector<IntVec> walls;
  long d = 0;          // declared quadratic-field marker, 0 when absent
  std::string digest;  // fnv1a64 over the key-sorted compact serialization
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

// 64-bit FNV-1a of the canonical (key-sorted, compact) form of a JSON text.
// Whitespace and key order in the source file do not affect the digest.
std::string json_digest(const std::string& text);

// Closure of the declared generators under the declared cap.  Throws
// PreconditionFailure when the instance has no group block.
FiniteAction instance_action(const Instance& inst);

}  // namespace clipcone
