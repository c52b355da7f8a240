#include "clipcone/chamber.hpp"

#include <random>

#include "clipcone/linalg.hpp"

namespace clipcone {

ReductionTrace reduce(const RatVec& x, const ClippedCone& cone, long cap) {
  const QuadLattice& lat = cone.ambient.lattice;
  if (x.size() != lat.n) throw DimensionMismatch("point length does not match lattice rank");
  if (cap <= 0) throw DegenerateInput("iteration cap must be positive");
  // On rational input plus and closure membership agree pointwise (a rational
  // closure vector is itself a plus-hull generator), so the gate falls back to
  // closure mode where plus-mode queries are unsupported.
  Mode gate = Mode::Plus;
  for (const Factor& f : cone.ambient.factors)
    if (f.kind == FactorKind::PsdSym) gate = Mode::Closure;
  if (!member(cone.ambient, x, gate))
    throw NotInPlusCone("reduction input lies outside the ambient plus cone");

  const size_t m = cone.roots.size();
  std::vector<RatMat> sigma(m);
  std::vector<RatVec> ge(m);
  for (size_t i = 0; i < m; ++i) {
    sigma[i] = reflection_matrix(cone.roots[i], lat);
    ge[i] = RatVec((lat.gram * to_rat(cone.roots[i].e)).eval());
  }

  ReductionTrace tr;
  tr.start = x;
  RatVec cur = x;
  RatMat prefix = RatMat::Identity(lat.n, lat.n);
  std::vector<RatVec> walls;

  while (true) {
    long best = -1;
    Rat best_sq;  // violation^2 / s, held as (v^2, s) via cross-multiplied compare
    Rat best_s;
    for (size_t i = 0; i < m; ++i) {
      Rat v = ge[i].dot(cur);
      if (sign(v) >= 0) continue;
      Rat sq = v * v;
      if (best < 0 || sq * best_s > best_sq * cone.roots[i].s) {
        best = static_cast<long>(i);
        best_sq = sq;
        best_s = cone.roots[i].s;
      }
    }
    if (best < 0) break;
    if (static_cast<long>(tr.word.size()) >= cap)
      throw IterationCap("reduction still unfinished after " + std::to_string(cap) +
                         " reflections; the root list does not close a chamber");
    walls.push_back(RatVec(prefix * to_rat(cone.roots[static_cast<size_t>(best)].e)));
    cur = RatVec(sigma[static_cast<size_t>(best)] * cur);
    prefix = RatMat(prefix * sigma[static_cast<size_t>(best)]);
    tr.word.push_back(static_cast<size_t>(best));
  }
  tr.end = cur;

  // Each crossed wall, pulled back to the start, must separate the start from
  // the chamber witness, and no wall is crossed twice.
  for (size_t t = 0; t < walls.size(); ++t) {
    if (sign(lat.pair(walls[t], tr.start)) >= 0)
      throw PreconditionFailure("crossed wall does not separate the start point");
    if (sign(lat.pair(walls[t], cone.witness)) <= 0)
      throw PreconditionFailure(
          "crossed wall meets the chamber: the root list violates the clipping assumptions");
    for (size_t r = 0; r < t; ++r)
      if (same_line(walls[r], walls[t]))
        throw PreconditionFailure(
            "wall crossed twice: the root list violates the clipping assumptions");
  }
  tr.crossings_initial = static_cast<long>(walls.size());
  return tr;
}

DirichletDomain dirichlet_domain(const RatVec& a, const std::vector<RatMat>& elements,
                                 const QuadLattice& lattice) {
  const long n = lattice.n;
  if (a.size() != n) throw DimensionMismatch("base point length does not match lattice rank");

  DirichletDomain out;
  bool id_found = false;
  RatMat id = RatMat::Identity(n, n);
  for (size_t idx = 0; idx < elements.size(); ++idx) {
    const RatMat& g = elements[idx];
    if (g.rows() != n || g.cols() != n)
      throw DimensionMismatch("group element shape does not match lattice rank");
    if (RatMat(g.transpose() * lattice.gram * g) != lattice.gram)
      throw PreconditionFailure("group element is not a q-isometry");
    if (g == id) {
      id_found = true;
      continue;
    }
    RatVec ga = RatVec(g * a);
    if (ga == a) {
      out.stabilizer.push_back(idx);
      continue;
    }
    out.cuts.push_back(RatVec(ga - a));
  }
  if (!id_found) throw PreconditionFailure("identity matrix missing from the element list");

  std::vector<RatVec> normals;
  normals.reserve(out.cuts.size());
  for (const RatVec& d : out.cuts) normals.push_back(RatVec((lattice.gram * d).eval()));
  out.domain = dd_from_facets(n, normals);
  out.elements_checked = elements.size();
  return out;
}

DirichletDomain dirichlet_domain(const RatVec& a, const std::vector<RatMat>& elements,
                                 const SymCone& sym) {
  if (a.size() != sym.lattice.n)
    throw DimensionMismatch("base point length does not match lattice rank");
  if (!member(sym, a, Mode::Interior))
    throw PreconditionFailure("Dirichlet base point is not interior");
  for (const RatMat& g : elements) {
    if (g.rows() != sym.lattice.n || g.cols() != sym.lattice.n)
      throw DimensionMismatch("group element shape does not match lattice rank");
    if (!member(sym, RatVec(g * a), Mode::Interior))
      throw PreconditionFailure("group element does not preserve the cone");
  }
  return dirichlet_domain(a, elements, sym.lattice);
}

bool in_domain(const DirichletDomain& dom, const SymCone& sym, const RatVec& v, Mode mode) {
  if (!member(sym, v, mode)) return false;
  for (const RatVec& d : dom.cuts) {
    Rat p = sym.lattice.pair(v, d);
    if (mode == Mode::Interior ? sign(p) <= 0 : sign(p) < 0) return false;
  }
  return true;
}

DisjointnessReport translate_disjointness(const PolyCone& domain,
                                          const std::vector<RatMat>& elements,
                                          const std::function<bool(const RatVec&)>& in_plus,
                                          long samples, unsigned long seed, long box) {
  if (samples <= 0 || box <= 0) throw DegenerateInput("sample count and box must be positive");
  std::vector<RatMat> inverses;
  inverses.reserve(elements.size());
  for (const RatMat& g : elements) inverses.push_back(linalg::inverse(g));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-box, box);
  DisjointnessReport rep;
  rep.samples = samples;
  for (long s = 0; s < samples; ++s) {
    RatVec v(domain.dim);
    for (long i = 0; i < domain.dim; ++i) v(i) = Rat(pick(rng));
    if (!in_plus(v)) continue;
    ++rep.in_plus;
    long count = 0;
    for (const RatMat& ginv : inverses)
      if (contains(domain, RatVec(ginv * v), Mode::Interior)) ++count;
    if (count > 0) ++rep.covered;
    if (count > rep.max_count) rep.max_count = count;
  }
  return rep;
}

}  // namespace clipcone
