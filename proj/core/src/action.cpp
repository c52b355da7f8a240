#include "clipcone/action.hpp"

#include <map>
#include <vector>

namespace clipcone {

namespace {

std::vector<Int> key_of(const IntMat& m) {
  std::vector<Int> k;
  k.reserve(static_cast<size_t>(m.size()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
  return k;
}

Rat det_of(const IntMat& m) { return linalg::det(to_rat(m)); }

}  // namespace

FiniteAction group_closure(const std::vector<IntMat>& generators, long cap) {
  if (generators.empty()) throw DegenerateInput("no generators supplied");
  long n = generators[0].rows();
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw DimensionMismatch("generator shapes disagree");
    Rat d = det_of(g);
    if (d != 1 && d != -1)
      throw NotLatticePreserving("generator determinant is " + rat_str(d) +
                                 ", not +-1");
  }
  FiniteAction act;
  act.n = n;
  act.generators = generators;

  std::map<std::vector<Int>, long> seen;
  IntMat id = IntMat::Identity(n, n);
  act.elements.push_back(id);
  seen[key_of(id)] = 0;
  // BFS closure under right multiplication; a finite set of unimodular
  // matrices closed under products is automatically closed under inverse.
  for (size_t head = 0; head < act.elements.size(); ++head) {
    IntMat cur = act.elements[head];
    for (const auto& g : generators) {
      IntMat nxt = cur * g;
      auto k = key_of(nxt);
      if (seen.count(k)) continue;
      if (static_cast<long>(act.elements.size()) >= cap)
        throw CapExceeded("group closure exceeded cap " + std::to_string(cap));
      seen[k] = static_cast<long>(act.elements.size());
      act.elements.push_back(nxt);
    }
  }
  return act;
}

IntMat invariant_sublattice(const FiniteAction& action) {
  long n = action.n;
  std::vector<IntMat> blocks;
  for (const auto& g : action.generators) blocks.push_back(g - IntMat::Identity(n, n));
  if (blocks.empty()) blocks.push_back(IntMat::Zero(n, n));
  return linalg::integer_kernel(linalg::vstack(blocks));
}

RatMat maschke_projection(const FiniteAction& action) {
  long n = action.n;
  IntMat basis = invariant_sublattice(action);
  if (basis.cols() == 0) return RatMat::Zero(n, n);
  RatMat b = to_rat(basis);
  RatMat f = to_rat(invariant_form(action, RatMat::Identity(n, n)));
  // Orthogonal projection onto V^G in the invariant inner product f.
  RatMat p = b * linalg::inverse(b.transpose() * f * b) * b.transpose() * f;
  // Average over the group; with f invariant this is already equivariant, the
  // averaging keeps the construction canonical for any seed.
  RatMat acc = RatMat::Zero(n, n);
  for (const auto& g : action.elements) {
    RatMat gr = to_rat(g);
    acc += gr * p * linalg::inverse(gr);
  }
  return acc / Rat(action.order());
}

IntMat invariant_form(const FiniteAction& action, const RatMat& seed) {
  long n = action.n;
  if (seed.rows() != n || seed.cols() != n)
    throw DimensionMismatch("seed shape does not match action");
  auto sig = linalg::signature_of(seed);
  if (sig.pos != n)
    throw DegenerateInput("seed form is not positive definite");
  RatMat acc = RatMat::Zero(n, n);
  for (const auto& g : action.elements) {
    RatMat gr = to_rat(g);
    acc += gr.transpose() * seed * gr;
  }
  acc /= Rat(action.order());
  Int l = 1;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) l = lcm(l, Int(denominator(acc(i, j))));
  return to_int_checked(RatMat(acc * Rat(l)));
}

bool preserves_form(const IntMat& g, const RatMat& gram) {
  RatMat gr = to_rat(g);
  return gr.transpose() * gram * gr == gram;
}

}  // namespace clipcone
