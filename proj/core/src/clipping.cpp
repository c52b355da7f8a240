#include "clipcone/clipping.hpp"

#include <map>

#include "clipcone/linalg.hpp"

namespace clipcone {

namespace {

// coordinate index -> factor index, or -1 if uncovered
std::vector<long> coord_to_factor(const SymCone& sym) {
  std::vector<long> owner(static_cast<size_t>(sym.lattice.n), -1);
  for (size_t j = 0; j < sym.factors.size(); ++j)
    for (long c : sym.factors[j].coords)
      if (c >= 0 && c < sym.lattice.n) owner[static_cast<size_t>(c)] = static_cast<long>(j);
  return owner;
}

RatVec basis_vector(long n, long i) {
  RatVec b = RatVec::Zero(n);
  b(i) = 1;
  return b;
}

}  // namespace

CanonicalRoots canonicalize_roots(const std::vector<RatVec>& raw, const ClippedCone& shell) {
  const SymCone& sym = shell.ambient;
  const long n = sym.lattice.n;
  if (shell.witness.size() != n)
    throw DimensionMismatch("witness length does not match lattice rank");
  std::vector<long> owner = coord_to_factor(sym);

  CanonicalRoots out;
  for (size_t idx = 0; idx < raw.size(); ++idx) {
    const RatVec& v = raw[idx];
    if (v.size() != n) {
      out.rejected.push_back({idx, "length does not match lattice rank"});
      continue;
    }
    IntVec e = primitive(v);
    if (is_zero_vec(e)) {
      out.rejected.push_back({idx, "zero vector"});
      continue;
    }

    long factor = -1;
    bool split = false, uncovered = false;
    for (long c = 0; c < n; ++c) {
      if (e(c) == 0) continue;
      long f = owner[static_cast<size_t>(c)];
      if (f < 0) uncovered = true;
      else if (factor < 0) factor = f;
      else if (factor != f) split = true;
    }
    if (uncovered || split) {
      out.rejected.push_back({idx, "assumption (i): support not inside one factor"});
      continue;
    }
    if (sym.factors[static_cast<size_t>(factor)].kind != FactorKind::Lorentz) {
      out.rejected.push_back({idx, "assumption (i): support in a non-hyperbolic factor"});
      continue;
    }

    Rat sq = sym.lattice.norm(to_rat(e));
    if (sign(sq) >= 0) {
      out.rejected.push_back({idx, "not negative square"});
      continue;
    }

    Rat p = sym.lattice.pair(to_rat(e), shell.witness);
    if (sign(p) == 0) {
      out.rejected.push_back({idx, "witness lies on the hyperplane"});
      continue;
    }
    if (sign(p) < 0) e = -e;

    bool dup = false;
    for (size_t k = 0; k < out.roots.size(); ++k) {
      if (vec_eq(out.roots[k].e, e)) {
        out.rejected.push_back({idx, "proportional duplicate of root " + std::to_string(k)});
        dup = true;
        break;
      }
    }
    if (dup) continue;

    out.roots.push_back(Root{e, factor, -sq});
  }
  return out;
}

IntegralityReport check_integrality(const Root& root, const QuadLattice& lattice) {
  if (root.e.size() != lattice.n)
    throw DimensionMismatch("root length does not match lattice rank");
  Rat d = lattice.norm(to_rat(root.e));
  if (sign(d) >= 0) throw DegenerateInput("root does not have negative square");
  IntegralityReport rep;
  for (long v = 0; v < lattice.n; ++v) {
    Rat c = Rat(-2) * lattice.pair(to_rat(root.e), basis_vector(lattice.n, v)) / d;
    if (!is_integer(c)) {
      rep.ok = false;
      rep.witness_basis = v;
      rep.coefficient = c;
      return rep;
    }
  }
  return rep;
}

PairwiseReport check_pairwise(const std::vector<Root>& roots, const QuadLattice& lattice) {
  PairwiseReport rep;
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t k = i + 1; k < roots.size(); ++k) {
      PairEntry ent;
      ent.i = i;
      ent.k = k;
      ent.pairing = lattice.pair(to_rat(roots[i].e), to_rat(roots[k].e));
      Rat si = lattice.norm(to_rat(roots[i].e));
      Rat sk = lattice.norm(to_rat(roots[k].e));
      ent.ratio = ent.pairing * ent.pairing / (si * sk);
      ent.pairing_nonneg = sign(ent.pairing) >= 0;
      if (ent.ratio == 0) ent.cls = AngleClass::RightAngle;
      else if (ent.ratio == Rat(1, 4)) ent.cls = AngleClass::Pi3;
      else if (ent.ratio == Rat(1, 2)) ent.cls = AngleClass::Pi4;
      else if (ent.ratio == Rat(3, 4)) ent.cls = AngleClass::Pi6;
      else if (ent.ratio == 1) ent.cls = AngleClass::Parallel;
      else if (ent.ratio > 1) ent.cls = AngleClass::Ultraparallel;
      else ent.cls = AngleClass::Violation;
      if (!ent.pairing_nonneg || ent.cls == AngleClass::Violation) rep.ok = false;
      rep.pairs.push_back(ent);
    }
  }
  return rep;
}

RatMat reflection_matrix(const Root& root, const QuadLattice& lattice) {
  if (root.e.size() != lattice.n)
    throw DimensionMismatch("root length does not match lattice rank");
  Rat d = lattice.norm(to_rat(root.e));
  if (sign(d) == 0) throw DegenerateInput("root is isotropic");
  RatVec e = to_rat(root.e);
  RatVec ge = RatVec((lattice.gram * e).eval());
  RatMat sigma = RatMat::Identity(lattice.n, lattice.n);
  sigma -= (Rat(2) / d) * (e * ge.transpose());
  return sigma;
}

ValidationReport validate_clipped(const ClippedCone& cone) {
  ValidationReport rep = validate(cone.ambient);
  const long n = cone.ambient.lattice.n;

  if (cone.witness.size() != n) {
    rep.failures.push_back({-1, "witness_shape", "witness length does not match lattice rank"});
    return rep;
  }
  if (!rep.ok()) return rep;  // factor data unreliable past this point

  if (!member(cone.ambient, cone.witness, Mode::Interior))
    rep.failures.push_back({-1, "witness_interior", "witness is not interior to the ambient cone"});

  for (size_t i = 0; i < cone.roots.size(); ++i) {
    const Root& r = cone.roots[i];
    std::string tag = "root " + std::to_string(i);
    if (r.e.size() != n) {
      rep.failures.push_back({-1, "root_shape", tag + ": length does not match lattice rank"});
      continue;
    }
    if (is_zero_vec(r.e) || !vec_eq(primitive(r.e), r.e)) {
      rep.failures.push_back({-1, "root_primitive", tag + ": not a primitive vector"});
      continue;
    }

    Rat sq = cone.ambient.lattice.norm(to_rat(r.e));
    if (sign(sq) >= 0)
      rep.failures.push_back({-1, "root_negative_square", tag + ": square is " + rat_str(sq)});
    else if (r.s != -sq)
      rep.failures.push_back({-1, "root_square", tag + ": stored s disagrees with the form"});

    std::vector<long> owner = coord_to_factor(cone.ambient);
    bool support_ok = r.factor >= 0 && r.factor < static_cast<long>(cone.ambient.factors.size()) &&
                      cone.ambient.factors[static_cast<size_t>(r.factor)].kind == FactorKind::Lorentz;
    if (support_ok)
      for (long c = 0; c < n; ++c)
        if (r.e(c) != 0 && owner[static_cast<size_t>(c)] != r.factor) support_ok = false;
    if (!support_ok)
      rep.failures.push_back({-1, "root_support", tag + ": support not inside its hyperbolic factor"});

    if (cone.witness.size() == n) {
      Rat p = cone.ambient.lattice.pair(to_rat(r.e), cone.witness);
      if (sign(p) <= 0)
        rep.failures.push_back({-1, "root_orientation", tag + ": q(e, witness) = " + rat_str(p)});
    }

    for (size_t k = 0; k < i; ++k)
      if (cone.roots[k].e.size() == n && same_line(to_rat(cone.roots[k].e), to_rat(r.e)))
        rep.failures.push_back(
            {-1, "roots_distinct", tag + " and root " + std::to_string(k) + " cut the same hyperplane"});
  }
  return rep;
}

bool member_clipped(const ClippedCone& cone, const RatVec& v, Mode mode) {
  if (!member(cone.ambient, v, mode)) return false;
  for (const Root& r : cone.roots) {
    Rat p = cone.ambient.lattice.pair(to_rat(r.e), v);
    if (mode == Mode::Interior ? sign(p) <= 0 : sign(p) < 0) return false;
  }
  return true;
}

ClippedCone thirteen_gon() {
  RatMat g = RatMat::Zero(3, 3);
  g(0, 0) = 1;
  g(1, 1) = -1;
  g(2, 2) = -1;
  QuadLattice lat(3, g);
  Factor f;
  f.kind = FactorKind::Lorentz;
  f.coords = {0, 1, 2};
  f.h = RatVec(3);
  f.h << 1, 0, 0;
  SymCone sym{lat, {f}};
  RatVec w(3);
  w << 1, 0, 0;

  // Vertices (1, rho x, rho y) with (x, y) rational points of the unit circle
  // in increasing angular order; rho < 1 keeps every side chord inside the
  // disc, so each side normal has negative square.
  std::vector<RatVec> verts;
  const Rat rho(9, 10);
  for (long t = -6; t <= 6; ++t) {
    Rat tt(t);
    Rat den = 1 + tt * tt;
    RatVec v(3);
    v << 1, rho * (1 - tt * tt) / den, rho * (2 * tt) / den;
    verts.push_back(v);
  }

  std::vector<RatVec> raw;
  for (size_t i = 0; i < verts.size(); ++i) {
    const RatVec& a = verts[i];
    const RatVec& b = verts[(i + 1) % verts.size()];
    RatMat rows(2, 3);
    rows.row(0) = (g * a).transpose();
    rows.row(1) = (g * b).transpose();
    RatMat ker = linalg::kernel(rows);
    if (ker.cols() != 1) throw DegenerateInput("degenerate side of the thirteen-gon");
    raw.push_back(RatVec(ker.col(0)));
  }

  ClippedCone shell{sym, {}, w};
  CanonicalRoots cr = canonicalize_roots(raw, shell);
  if (!cr.rejected.empty() || cr.roots.size() != raw.size())
    throw DegenerateInput("thirteen-gon normal failed canonicalization");
  return ClippedCone{sym, cr.roots, w};
}

}  // namespace clipcone
