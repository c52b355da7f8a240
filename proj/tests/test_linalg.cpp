#include "clipcone/linalg.hpp"

#include <random>

#include "doctest.h"

using namespace clipcone;
using namespace clipcone::linalg;

namespace {

RatMat rat_mat(std::initializer_list<std::initializer_list<int>> rows) {
  long r = static_cast<long>(rows.size());
  long c = static_cast<long>(rows.begin()->size());
  RatMat m(r, c);
  long i = 0;
  for (const auto& row : rows) {
    long j = 0;
    for (int x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMat int_mat(std::initializer_list<std::initializer_list<int>> rows) {
  long r = static_cast<long>(rows.size());
  long c = static_cast<long>(rows.begin()->size());
  IntMat m(r, c);
  long i = 0;
  for (const auto& row : rows) {
    long j = 0;
    for (int x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMat random_unimodular(long n, std::mt19937_64& rng) {
  // Product of elementary shear and swap matrices: always in GL(n, Z).
  IntMat u = IntMat::Identity(n, n);
  std::uniform_int_distribution<long> idx(0, n - 1), shear(-3, 3);
  for (int step = 0; step < 12; ++step) {
    long i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Int c(shear(rng));
    for (long k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

}  // namespace

TEST_CASE("rank and kernel of exact matrices") {
  RatMat a = rat_mat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(a) == 2);
  RatMat k = kernel(a);
  REQUIRE(k.cols() == 1);
  RatVec kv = k.col(0);
  RatVec prod = a * kv;
  for (long i = 0; i < prod.size(); ++i) CHECK(prod(i) == 0);

  CHECK(rank(RatMat::Zero(3, 3)) == 0);
  CHECK(kernel(RatMat::Zero(2, 3)).cols() == 3);
  CHECK(rank(rat_mat({{1, 0}, {0, 1}})) == 2);
}

TEST_CASE("determinant, inverse and solve") {
  RatMat a = rat_mat({{2, 1}, {1, 1}});
  CHECK(det(a) == 1);
  RatMat inv = inverse(a);
  RatMat prod = a * inv;
  CHECK(prod(0, 0) == 1);
  CHECK(prod(0, 1) == 0);
  CHECK(prod(1, 0) == 0);
  CHECK(prod(1, 1) == 1);

  RatVec b(2);
  b << Rat(1), Rat(3);
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  RatVec back = a * *x;
  CHECK(back(0) == 1);
  CHECK(back(1) == 3);

  RatMat sing = rat_mat({{1, 2}, {2, 4}});
  CHECK(det(sing) == 0);
  CHECK_THROWS_AS(inverse(sing), DegenerateInput);
  RatVec c(2);
  c << Rat(1), Rat(0);
  CHECK(!solve(sing, c).has_value());
}

TEST_CASE("signature of diagonal and dense symmetric forms") {
  RatMat d = rat_mat({{1, 0, 0}, {0, -2, 0}, {0, 0, 0}});
  Signature s = signature_of(d);
  CHECK(s.pos == 1);
  CHECK(s.neg == 1);
  CHECK(s.zero == 1);

  // Hyperbolic plane: zero diagonal forces the off-diagonal handling path.
  RatMat u = rat_mat({{0, 1}, {1, 0}});
  Signature su = signature_of(u);
  CHECK(su.pos == 1);
  CHECK(su.neg == 1);
  CHECK(su.zero == 0);

  RatMat pd = rat_mat({{2, 1}, {1, 2}});
  Signature sp = signature_of(pd);
  CHECK(sp.pos == 2);
  CHECK(sp.neg == 0);
}

TEST_CASE("signature is a congruence invariant") {
  std::mt19937_64 rng(20240817);
  RatMat g = rat_mat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, 5}});
  Signature base = signature_of(g);
  REQUIRE(base.pos == 2);
  REQUIRE(base.neg == 2);
  for (int trial = 0; trial < 25; ++trial) {
    IntMat u = random_unimodular(4, rng);
    RatMat ur = to_rat(u);
    RatMat h = ur.transpose() * g * ur;
    Signature s = signature_of(h);
    CHECK(s.pos == base.pos);
    CHECK(s.neg == base.neg);
    CHECK(s.zero == base.zero);
  }
}

TEST_CASE("hermite reduction produces a unimodular transform") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 30; ++trial) {
    long r = 2 + static_cast<long>(trial % 3), c = 2 + static_cast<long>((trial / 3) % 3);
    IntMat a(r, c);
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j) a(i, j) = entry(rng);
    auto [h, u] = hnf_cols(a);
    Rat du = det(to_rat(u));
    CHECK((du == 1 || du == -1));
    IntMat prod = a * u;
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j) CHECK(prod(i, j) == h(i, j));
    CHECK(rank(to_rat(h)) == rank(to_rat(a)));
  }
}

TEST_CASE("integer kernel is exact and saturated") {
  IntMat a = int_mat({{2, 4, 6}, {1, 2, 3}});
  IntMat k = integer_kernel(a);
  REQUIRE(k.cols() == 2);
  IntMat prod = a * k;
  for (long i = 0; i < prod.rows(); ++i)
    for (long j = 0; j < prod.cols(); ++j) CHECK(prod(i, j) == 0);
  // Saturation: (1,1,-1) lies in the kernel and must be an integer
  // combination of the basis columns.
  RatVec target(3);
  target << Rat(1), Rat(1), Rat(-1);
  RatMat kr = to_rat(k);
  RatMat gram = kr.transpose() * kr;
  RatVec coef = inverse(gram) * (kr.transpose() * target);
  RatVec back = kr * coef;
  for (long i = 0; i < 3; ++i) CHECK(back(i) == target(i));
  for (long i = 0; i < coef.size(); ++i) CHECK(is_integer(coef(i)));
}

TEST_CASE("smith invariant factors") {
  IntMat a = int_mat({{2, 4}, {6, 8}});
  auto inv = smith_invariants(a);
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == 2);
  CHECK(inv[1] == 4);

  IntMat b = int_mat({{1, 0}, {0, 0}});
  auto invb = smith_invariants(b);
  REQUIRE(invb.size() == 1);
  CHECK(invb[0] == 1);

  // d_i | d_{i+1} on random matrices.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    IntMat m(3, 4);
    for (long i = 0; i < 3; ++i)
      for (long j = 0; j < 4; ++j) m(i, j) = entry(rng);
    auto f = smith_invariants(m);
    for (size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
    CHECK(static_cast<long>(f.size()) == rank(to_rat(m)));
  }
}

TEST_CASE("primitive vectors and ray identity") {
  RatVec v(3);
  v << Rat(1, 2), Rat(-3, 4), Rat(0);
  IntVec p = primitive(v);
  CHECK(p(0) == 2);
  CHECK(p(1) == -3);
  CHECK(p(2) == 0);
  RatVec w = v * Rat(7, 3);
  CHECK(same_ray(v, w));
  CHECK(!same_ray(v, RatVec(-w)));
  CHECK(same_line(v, RatVec(-w)));
}
