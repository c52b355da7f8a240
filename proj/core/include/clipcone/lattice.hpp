#pragma once

#include "clipcone/linalg.hpp"
#include "clipcone/scalar.hpp"

namespace clipcone {

// Integer lattice Z^n carrying a rational symmetric bilinear form q given by
// its Gram matrix on the standard basis.
struct QuadLattice {
  long n = 0;
  RatMat gram;

  QuadLattice() = default;
  QuadLattice(long rank, RatMat g) : n(rank), gram(std::move(g)) {
    if (gram.rows() != n || gram.cols() != n)
      throw DimensionMismatch("gram matrix shape does not match rank");
    if (gram.transpose() != gram)
      throw DegenerateInput("gram matrix not symmetric");
  }

  Rat pair(const RatVec& x, const RatVec& y) const {
    if (x.size() != n || y.size() != n)
      throw DimensionMismatch("vector length does not match lattice rank");
    return (x.transpose() * gram * y)(0, 0);
  }
  Rat norm(const RatVec& x) const { return pair(x, x); }

  bool nondegenerate() const { return linalg::det(gram) != 0; }
};

inline linalg::Signature signature(const QuadLattice& lat) {
  return linalg::signature_of(lat.gram);
}

}  // namespace clipcone
