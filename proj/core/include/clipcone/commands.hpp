#pragma once

#include <string>

#include "clipcone/instance.hpp"

namespace clipcone {

// Serialized command result.  text is key-sorted JSON with a trailing
// newline, deterministic for a fixed (instance, command, seed): timing never
// enters the report, and every sampling path takes an explicit seed.
struct Report {
  std::string text;
  int exit_code = 0;  // 0 = all checks pass, 1 = domain-level failure, 2 = input error
};

struct RunOptions {
  unsigned long seed = 0;
  long samples = 1000;
  long word_length = 2;
  long cap = 10000;
};

// Structural validation: ambient factor checks, root canonicalization
// verdicts, reflection integrality per root, pairwise angle law, witness
// interiority.  Exit 0 iff every layer passes.
Report cmd_validate(const Instance& inst);

// Full invariant descent under the instance group.  Exit 0 iff every recorded
// check holds.
Report cmd_descend(const Instance& inst, const RunOptions& opt);

// Reflects the point into the chamber cut out by the roots.
Report cmd_reduce(const Instance& inst, const RatVec& point, const RunOptions& opt);

// Truncated Dirichlet cell at base (the witness when base is empty), over the
// word closure of the root reflections and group generators up to
// opt.word_length, with a sampled translate-disjointness certificate.
Report cmd_domain(const Instance& inst, const RatVec& base, const RunOptions& opt);

// Pairwise angle table of the canonicalized roots.
Report cmd_angles(const Instance& inst);

// Symmetrized wall list kept by the instance group.
Report cmd_walls(const Instance& inst);

// Built-in regression battery; needs no instance file.
Report cmd_selftest(const RunOptions& opt);

// Wraps a thrown domain error: ParseError exits 2, everything else 1.
Report error_report(const std::string& command, const Error& e);

// CLIPCONE_THREADS, defaulting to 1 when unset.  Throws ParseError on
// anything but a positive integer.
long thread_budget();

}  // namespace clipcone
