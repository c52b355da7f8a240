#pragma once

#include <vector>

#include "clipcone/scalar.hpp"

namespace clipcone {

// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)), d a fixed
// square-free positive integer.  Comparisons are exact via sign analysis.
struct QScalar {
  Rat a;
  Rat b;

  QScalar() : a(0), b(0) {}
  QScalar(Rat ra) : a(std::move(ra)), b(0) {}
  QScalar(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}

  bool rational() const { return b == 0; }
};

QScalar qadd(const QScalar& x, const QScalar& y);
QScalar qsub(const QScalar& x, const QScalar& y);
QScalar qmul(const QScalar& x, const QScalar& y, long d);
QScalar qdiv(const QScalar& x, const QScalar& y, long d);
bool qzero(const QScalar& x);
bool qeq(const QScalar& x, const QScalar& y);

// Exact sign of a + b*sqrt(d); d must not be a perfect square times a square
// (callers pass square-free d > 0).
int qsign(const QScalar& x, long d);

using QVec = std::vector<QScalar>;

QVec qvec_from_rat(const RatVec& v);

// Rank over Q(sqrt(d)) by Gaussian elimination.
long qrank(std::vector<QVec> rows, long d);

// True iff v is proportional to a rational vector: both the rational and the
// surd coordinate parts must be parallel over Q.
bool rational_slope(const QVec& v);

// Rational direction of a rational-slope vector (primitive).  Requires
// rational_slope(v) and v != 0.
IntVec rational_direction(const QVec& v);

// True iff u and v span the same line over Q(sqrt(d)).
bool qsame_line(const QVec& u, const QVec& v, long d);

// True iff v lies in the Q(sqrt(d))-span of the given vectors.
bool qin_span(const QVec& v, const std::vector<QVec>& span, long d);

}  // namespace clipcone
