#include "clipcone/symcone.hpp"

#include <random>

#include "doctest.h"

using namespace clipcone;

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

RatVec rv(std::initializer_list<int> xs) {
  RatVec v(static_cast<long>(xs.size()));
  long i = 0;
  for (int x : xs) v(i++) = x;
  return v;
}

// U + <-2>: hyperbolic plane plus a norm -2 vector; signature (1,2).
SymCone u_neg2() {
  SymCone sym;
  sym.lattice = QuadLattice(3, rat_mat({{0, 1, 0}, {1, 0, 0}, {0, 0, -2}}));
  Factor f;
  f.kind = FactorKind::Lorentz;
  f.coords = {0, 1, 2};
  f.h = rv({1, 1, 0});
  sym.factors.push_back(f);
  return sym;
}

SymCone two_halflines() {
  SymCone sym;
  sym.lattice = QuadLattice(2, rat_mat({{1, 0}, {0, 1}}));
  Factor a, b;
  a.kind = b.kind = FactorKind::Halfline;
  a.coords = {0};
  b.coords = {1};
  sym.factors = {a, b};
  return sym;
}

SymCone psd3() {
  SymCone sym;
  RatMat gram = RatMat::Zero(6, 6);
  // Trace form in upper-triangle coordinates: diagonal entries weigh 1, the
  // off-diagonal ones 2.
  std::vector<int> w{1, 2, 2, 1, 2, 1};
  for (long i = 0; i < 6; ++i) gram(i, i) = w[static_cast<size_t>(i)];
  sym.lattice = QuadLattice(6, gram);
  Factor f;
  f.kind = FactorKind::PsdSym;
  f.m = 3;
  f.coords = {0, 1, 2, 3, 4, 5};
  sym.factors.push_back(f);
  return sym;
}

}  // namespace

TEST_CASE("validation accepts the reference cones") {
  CHECK(validate(u_neg2()).ok());
  CHECK(validate(two_halflines()).ok());
  CHECK(validate(psd3()).ok());
}

TEST_CASE("validation rejects a non-positive Lorentz witness") {
  SymCone sym;
  sym.lattice = QuadLattice(4, rat_mat({{1, 0, 0, 0},
                                        {0, -1, 0, 0},
                                        {0, 0, -1, 0},
                                        {0, 0, 0, -1}}));
  Factor f;
  f.kind = FactorKind::Lorentz;
  f.coords = {0, 1, 2, 3};
  f.h = rv({0, 1, 0, 0});
  sym.factors.push_back(f);
  ValidationReport rep = validate(sym);
  REQUIRE(!rep.ok());
  bool found = false;
  for (const auto& fl : rep.failures)
    if (fl.check == "lorentz_witness_positive") found = true;
  CHECK(found);
}

TEST_CASE("validation pinpoints structural failures") {
  // Non-block-diagonal Gram matrix across two declared halflines.
  SymCone sym = two_halflines();
  sym.lattice = QuadLattice(2, rat_mat({{1, 1}, {1, 1}}));
  ValidationReport rep = validate(sym);
  CHECK(!rep.ok());
  bool block = false, pd = false;
  for (const auto& fl : rep.failures) {
    if (fl.check == "block_diagonal") block = true;
    if (fl.check == "halfline_positive") pd = true;
  }
  CHECK(block);

  // Wrong signature for a Lorentz block.
  SymCone bad;
  bad.lattice = QuadLattice(3, rat_mat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  Factor f;
  f.kind = FactorKind::Lorentz;
  f.coords = {0, 1, 2};
  f.h = rv({1, 0, 0});
  bad.factors.push_back(f);
  rep = validate(bad);
  bool sig = false;
  for (const auto& fl : rep.failures)
    if (fl.check == "lorentz_signature") sig = true;
  CHECK(sig);

  // Missing coordinate coverage.
  SymCone gap;
  gap.lattice = QuadLattice(2, rat_mat({{1, 0}, {0, 1}}));
  Factor h;
  h.kind = FactorKind::Halfline;
  h.coords = {0};
  gap.factors.push_back(h);
  rep = validate(gap);
  bool cover = false;
  for (const auto& fl : rep.failures)
    if (fl.check == "coords_cover") cover = true;
  CHECK(cover);
}

TEST_CASE("Lorentz membership on U + <-2>") {
  SymCone sym = u_neg2();
  // q(v) = 2 v0 v1 - 2 v2^2; h = (1,1,0) so q(h,v) = v0 + v1.
  CHECK(member(sym, rv({2, 1, 1}), Mode::Interior));
  CHECK(member(sym, rv({2, 1, 1}), Mode::Plus));
  CHECK(!member(sym, rv({1, 0, 0}), Mode::Interior));
  CHECK(member(sym, rv({1, 0, 0}), Mode::Closure));
  CHECK(member(sym, rv({1, 0, 0}), Mode::Plus));
  CHECK(!member(sym, rv({-1, -1, 0}), Mode::Closure));
  CHECK(!member(sym, rv({1, -1, 0}), Mode::Closure));
  CHECK(member(sym, rv({0, 0, 0}), Mode::Closure));
  CHECK(!member(sym, rv({0, 0, 0}), Mode::Interior));
  CHECK_THROWS_AS(member(sym, rv({1, 0}), Mode::Closure), DimensionMismatch);
}

TEST_CASE("PSD membership by principal minors") {
  SymCone sym = psd3();
  // Identity matrix: coords (1,0,0,1,0,1).
  CHECK(member(sym, rv({1, 0, 0, 1, 0, 1}), Mode::Interior));
  // Rank-2 boundary point diag(1,1,0).
  CHECK(!member(sym, rv({1, 0, 0, 1, 0, 0}), Mode::Interior));
  CHECK(member(sym, rv({1, 0, 0, 1, 0, 0}), Mode::Closure));
  // Indefinite symmetric matrix [[0,1],[1,0]] block: minors catch it even
  // though all leading minors of the full matrix vanish.
  CHECK(!member(sym, rv({0, 1, 0, 0, 0, 0}), Mode::Closure));
  // Negative definite.
  CHECK(!member(sym, rv({-1, 0, 0, -1, 0, -1}), Mode::Closure));
  CHECK_THROWS_AS(member(sym, rv({1, 0, 0, 1, 0, 1}), Mode::Plus), Unsupported);
}

TEST_CASE("closure membership is additive and scale stable") {
  SymCone sym = u_neg2();
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> entry(-4, 4);
  int pairs = 0;
  while (pairs < 60) {
    RatVec u(3), v(3);
    for (long i = 0; i < 3; ++i) {
      u(i) = entry(rng);
      v(i) = entry(rng);
    }
    if (!member(sym, u, Mode::Closure) || !member(sym, v, Mode::Closure)) continue;
    ++pairs;
    CHECK(member(sym, RatVec(u + v), Mode::Closure));
    CHECK(member(sym, RatVec(u * Rat(3, 5)), Mode::Closure));
  }
}

TEST_CASE("Lorentz factors are self-dual for the form pairing") {
  SymCone sym = u_neg2();
  std::mt19937_64 rng(405);
  std::uniform_int_distribution<int> entry(-5, 5);
  std::vector<RatVec> interior, closure;
  while (interior.size() < 25 || closure.size() < 40) {
    RatVec v(3);
    for (long i = 0; i < 3; ++i) v(i) = entry(rng);
    if (member(sym, v, Mode::Interior) && interior.size() < 25) interior.push_back(v);
    if (member(sym, v, Mode::Closure) && closure.size() < 40) closure.push_back(v);
  }
  for (const auto& u : interior)
    for (const auto& v : closure) CHECK(sign(pair_q(sym, u, v)) >= 0);
  // Conversely a vector pairing >= 0 against all sampled interior points of a
  // spanning set lies in the closure (spot check).
  int outside_checked = 0;
  for (int t = 0; t < 4000 && outside_checked < 30; ++t) {
    RatVec v(3);
    for (long i = 0; i < 3; ++i) v(i) = entry(rng);
    if (member(sym, v, Mode::Closure)) continue;
    bool all_nonneg = true;
    for (const auto& u : interior)
      if (sign(pair_q(sym, u, v)) < 0) all_nonneg = false;
    if (all_nonneg) continue;  // sample set too thin to separate; skip
    ++outside_checked;
  }
  CHECK(outside_checked >= 20);
}

TEST_CASE("round and simplicial parts reassemble") {
  // Lorentz + two halflines + Lorentz.
  SymCone sym;
  RatMat gram = RatMat::Zero(8, 8);
  gram.block(0, 0, 3, 3) = rat_mat({{0, 1, 0}, {1, 0, 0}, {0, 0, -2}});
  gram(3, 3) = 1;
  gram(4, 4) = 3;
  gram.block(5, 5, 3, 3) = rat_mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  sym.lattice = QuadLattice(8, gram);
  Factor l1;
  l1.kind = FactorKind::Lorentz;
  l1.coords = {0, 1, 2};
  l1.h = rv({1, 1, 0});
  Factor h1, h2;
  h1.kind = h2.kind = FactorKind::Halfline;
  h1.coords = {3};
  h2.coords = {4};
  Factor l2;
  l2.kind = FactorKind::Lorentz;
  l2.coords = {5, 6, 7};
  l2.h = rv({1, 0, 0});
  sym.factors = {l1, h1, h2, l2};
  REQUIRE(validate(sym).ok());

  SubCone round = round_part(sym);
  SubCone simp = simplicial_part(sym);
  REQUIRE(validate(round.cone).ok());
  REQUIRE(validate(simp.cone).ok());
  CHECK(round.cone.lattice.n == 6);
  CHECK(simp.cone.lattice.n == 2);

  std::mt19937_64 rng(406);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int t = 0; t < 1000; ++t) {
    RatVec v(8);
    for (long i = 0; i < 8; ++i) v(i) = entry(rng);
    RatVec vr(round.ambient.size()), vs(simp.ambient.size());
    for (size_t i = 0; i < round.ambient.size(); ++i) vr(static_cast<long>(i)) = v(round.ambient[i]);
    for (size_t i = 0; i < simp.ambient.size(); ++i) vs(static_cast<long>(i)) = v(simp.ambient[i]);
    for (Mode mode : {Mode::Interior, Mode::Closure}) {
      bool whole = member(sym, v, mode);
      bool parts = member(round.cone, vr, mode) && member(simp.cone, vs, mode);
      CHECK(whole == parts);
    }
  }
}

TEST_CASE("invariant slice type of a factor orbit") {
  // d = 2: reflection inside one Lorentz factor.
  SymCone sym3;
  sym3.lattice = QuadLattice(3, rat_mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  Factor f;
  f.kind = FactorKind::Lorentz;
  f.coords = {0, 1, 2};
  f.h = rv({1, 0, 0});
  sym3.factors.push_back(f);
  IntMat flip3(3, 3);
  flip3 << 1, 0, 0, 0, 1, 0, 0, 0, -1;
  FiniteAction g3 = group_closure({flip3}, 8);
  CHECK(invariant_hyperbolic_type(sym3, {0}, g3) == HyperbolicType::TwoHalflines);

  // d = 3: same but one dimension up.
  SymCone sym4;
  sym4.lattice = QuadLattice(4, rat_mat({{1, 0, 0, 0},
                                         {0, -1, 0, 0},
                                         {0, 0, -1, 0},
                                         {0, 0, 0, -1}}));
  Factor f4;
  f4.kind = FactorKind::Lorentz;
  f4.coords = {0, 1, 2, 3};
  f4.h = rv({1, 0, 0, 0});
  sym4.factors.push_back(f4);
  IntMat flip4 = IntMat::Identity(4, 4);
  flip4(3, 3) = -1;
  FiniteAction g4 = group_closure({flip4}, 8);
  CHECK(invariant_hyperbolic_type(sym4, {0}, g4) == HyperbolicType::Hyperbolic);

  // Trivial group: whole factor, hyperbolic.
  FiniteAction triv = group_closure({IntMat(IntMat::Identity(4, 4))}, 4);
  CHECK(invariant_hyperbolic_type(sym4, {0}, triv) == HyperbolicType::Hyperbolic);

  // d = 1: sign flips in two different negative coordinates leave only the
  // time axis fixed.
  IntMat m = IntMat::Identity(4, 4);
  m(1, 1) = -1;
  m(2, 2) = -1;
  FiniteAction g1 = group_closure({flip4, m}, 8);
  CHECK(invariant_hyperbolic_type(sym4, {0}, g1) == HyperbolicType::Halfline);

  // Non-Lorentz orbit member is rejected.
  SymCone hl = two_halflines();
  FiniteAction id2 = group_closure({IntMat(IntMat::Identity(2, 2))}, 4);
  CHECK_THROWS_AS(invariant_hyperbolic_type(hl, {0}, id2), PreconditionFailure);

  // Two factors with the identity action are not a single orbit.
  SymCone pair;
  RatMat g6 = RatMat::Zero(6, 6);
  g6.block(0, 0, 3, 3) = rat_mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  g6.block(3, 3, 3, 3) = rat_mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  pair.lattice = QuadLattice(6, g6);
  Factor p1, p2;
  p1.kind = p2.kind = FactorKind::Lorentz;
  p1.coords = {0, 1, 2};
  p1.h = rv({1, 0, 0});
  p2.coords = {3, 4, 5};
  p2.h = rv({1, 0, 0});
  pair.factors = {p1, p2};
  FiniteAction id6 = group_closure({IntMat(IntMat::Identity(6, 6))}, 4);
  CHECK_THROWS_AS(invariant_hyperbolic_type(pair, {0, 1}, id6), PreconditionFailure);

  // Swapping the two factors is a single orbit; invariant slice has d = 3
  // (diagonal embedding) with restricted form 2*diag(1,-1,-1).
  IntMat swap6 = IntMat::Zero(6, 6);
  for (long i = 0; i < 3; ++i) {
    swap6(i, i + 3) = 1;
    swap6(i + 3, i) = 1;
  }
  FiniteAction gswap = group_closure({swap6}, 8);
  CHECK(invariant_hyperbolic_type(pair, {0, 1}, gswap) == HyperbolicType::Hyperbolic);
}
