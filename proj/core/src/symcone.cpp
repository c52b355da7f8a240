#include "clipcone/symcone.hpp"

#include <algorithm>
#include <set>

#include "clipcone/linalg.hpp"

namespace clipcone {

namespace {

std::string kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::Halfline: return "halfline";
    case FactorKind::Lorentz: return "lorentz";
    case FactorKind::PsdSym: return "psd";
  }
  return "?";
}

// Symmetric matrix from the row-major upper-triangle coordinate vector.
RatMat psd_matrix(long m, const RatVec& local) {
  RatMat x(m, m);
  long k = 0;
  for (long i = 0; i < m; ++i)
    for (long j = i; j < m; ++j) {
      x(i, j) = local(k);
      x(j, i) = local(k);
      ++k;
    }
  return x;
}

Rat minor_det(const RatMat& x, const std::vector<long>& rows) {
  long k = static_cast<long>(rows.size());
  RatMat sub(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) sub(i, j) = x(rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)]);
  return linalg::det(sub);
}

bool psd_member(const RatMat& x, Mode mode) {
  long m = x.rows();
  if (mode == Mode::Interior) {
    // Sylvester: leading principal minors all positive.
    std::vector<long> rows;
    for (long i = 0; i < m; ++i) {
      rows.push_back(i);
      if (sign(minor_det(x, rows)) <= 0) return false;
    }
    return true;
  }
  // Closure: every principal minor nonnegative.
  for (long mask = 1; mask < (1L << m); ++mask) {
    std::vector<long> rows;
    for (long i = 0; i < m; ++i)
      if (mask & (1L << i)) rows.push_back(i);
    if (sign(minor_det(x, rows)) < 0) return false;
  }
  return true;
}

}  // namespace

RatMat factor_gram(const SymCone& sym, const Factor& f) {
  long k = f.dim();
  RatMat g(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j)
      g(i, j) = sym.lattice.gram(f.coords[static_cast<size_t>(i)], f.coords[static_cast<size_t>(j)]);
  return g;
}

RatVec factor_part(const Factor& f, const RatVec& v) {
  RatVec local(f.dim());
  for (long i = 0; i < f.dim(); ++i) local(i) = v(f.coords[static_cast<size_t>(i)]);
  return local;
}

Rat pair_q(const SymCone& sym, const RatVec& u, const RatVec& v) {
  RatVec gv = sym.lattice.gram * v;
  return u.dot(gv);
}

Rat norm_q(const SymCone& sym, const RatVec& v) { return pair_q(sym, v, v); }

ValidationReport validate(const SymCone& sym) {
  ValidationReport rep;
  long n = sym.lattice.n;
  auto fail = [&](long fi, const std::string& check, const std::string& detail) {
    rep.failures.push_back({fi, check, detail});
  };

  // Partition of the ambient coordinates.
  std::set<long> seen;
  bool partition_ok = true;
  for (size_t fi = 0; fi < sym.factors.size(); ++fi) {
    for (long c : sym.factors[fi].coords) {
      if (c < 0 || c >= n) {
        fail(static_cast<long>(fi), "coords_in_range",
             "coordinate index " + std::to_string(c) + " outside [0," + std::to_string(n) + ")");
        partition_ok = false;
      } else if (!seen.insert(c).second) {
        fail(static_cast<long>(fi), "coords_disjoint",
             "coordinate " + std::to_string(c) + " appears in two factors");
        partition_ok = false;
      }
    }
  }
  if (static_cast<long>(seen.size()) != n) {
    fail(-1, "coords_cover", "factor coordinates do not cover the ambient space");
    partition_ok = false;
  }

  // Gram block structure across factors.
  if (partition_ok) {
    for (size_t a = 0; a < sym.factors.size(); ++a)
      for (size_t b = a + 1; b < sym.factors.size(); ++b) {
        bool bad = false;
        for (long i : sym.factors[a].coords)
          for (long j : sym.factors[b].coords)
            if (sym.lattice.gram(i, j) != 0) bad = true;
        if (bad)
          fail(static_cast<long>(a), "block_diagonal",
               "nonzero pairing with factor " + std::to_string(b));
      }
  }

  // Per-factor shape and signature.
  for (size_t fi = 0; fi < sym.factors.size(); ++fi) {
    const Factor& f = sym.factors[fi];
    long lfi = static_cast<long>(fi);
    bool local_ok = true;
    for (long c : f.coords)
      if (c < 0 || c >= n) local_ok = false;
    if (!local_ok) continue;
    RatMat g = factor_gram(sym, f);
    linalg::Signature s = linalg::signature_of(g);
    switch (f.kind) {
      case FactorKind::Halfline:
        if (f.dim() != 1)
          fail(lfi, "halfline_rank", "halfline factor must have one coordinate");
        else if (s.pos != 1)
          fail(lfi, "halfline_positive", "restricted form is not positive definite");
        break;
      case FactorKind::Lorentz: {
        if (f.dim() < 3)
          fail(lfi, "lorentz_dim", "Lorentz factor needs dimension >= 3, got " + std::to_string(f.dim()));
        if (s.pos != 1 || s.neg != f.dim() - 1 || s.zero != 0)
          fail(lfi, "lorentz_signature",
               "restricted signature (" + std::to_string(s.pos) + "," + std::to_string(s.neg) + "," +
                   std::to_string(s.zero) + ") is not (1," + std::to_string(f.dim() - 1) + ",0)");
        if (f.h.size() != f.dim()) {
          fail(lfi, "lorentz_witness_shape", "witness length does not match factor dimension");
        } else {
          RatVec gh = g * f.h;
          Rat qh = f.h.dot(gh);
          if (sign(qh) <= 0)
            fail(lfi, "lorentz_witness_positive", "q(h) = " + rat_str(qh) + " <= 0");
        }
        break;
      }
      case FactorKind::PsdSym:
        if (f.m < 3)
          fail(lfi, "psd_size", "matrix size must be >= 3, got " + std::to_string(f.m));
        if (f.dim() != f.m * (f.m + 1) / 2)
          fail(lfi, "psd_coords", "coordinate count does not match m(m+1)/2");
        if (s.pos != f.dim() || s.neg != 0 || s.zero != 0)
          fail(lfi, "psd_positive", "restricted form is not positive definite");
        break;
    }
  }
  return rep;
}

bool member(const SymCone& sym, const RatVec& v, Mode mode) {
  if (v.size() != sym.lattice.n) throw DimensionMismatch("vector length mismatch");
  for (const Factor& f : sym.factors) {
    RatVec local = factor_part(f, v);
    switch (f.kind) {
      case FactorKind::Halfline: {
        int s = sign(Rat(local(0)));
        if (mode == Mode::Interior ? s <= 0 : s < 0) return false;
        break;
      }
      case FactorKind::Lorentz: {
        RatMat g = factor_gram(sym, f);
        RatVec gl = g * local;
        Rat qv = local.dot(gl);
        Rat qhv = f.h.dot(gl);
        if (mode == Mode::Interior) {
          if (sign(qv) <= 0 || sign(qhv) <= 0) return false;
        } else {
          // Closure; plus coincides for rational input, because a rational
          // boundary vector spans a rational boundary ray.
          if (sign(qv) < 0 || sign(qhv) < 0) return false;
        }
        break;
      }
      case FactorKind::PsdSym: {
        if (mode == Mode::Plus)
          throw Unsupported("plus-mode membership on a PSD factor");
        if (!psd_member(psd_matrix(f.m, local), mode)) return false;
        break;
      }
    }
  }
  return true;
}

SubCone restrict_to(const SymCone& sym, const std::vector<size_t>& factor_indices) {
  SubCone out;
  std::vector<long> ambient;
  for (size_t fi : factor_indices)
    for (long c : sym.factors[fi].coords) ambient.push_back(c);
  std::vector<long> sorted = ambient;
  std::sort(sorted.begin(), sorted.end());
  auto local_of = [&](long c) {
    return static_cast<long>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
  };
  long k = static_cast<long>(sorted.size());
  RatMat gram(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j)
      gram(i, j) = sym.lattice.gram(sorted[static_cast<size_t>(i)], sorted[static_cast<size_t>(j)]);
  out.cone.lattice = QuadLattice(k, gram);
  for (size_t fi : factor_indices) {
    Factor f = sym.factors[fi];
    for (auto& c : f.coords) c = local_of(c);
    out.cone.factors.push_back(std::move(f));
  }
  out.ambient = sorted;
  return out;
}

SubCone round_part(const SymCone& sym) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < sym.factors.size(); ++i)
    if (sym.factors[i].kind != FactorKind::Halfline) idx.push_back(i);
  return restrict_to(sym, idx);
}

SubCone simplicial_part(const SymCone& sym) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < sym.factors.size(); ++i)
    if (sym.factors[i].kind == FactorKind::Halfline) idx.push_back(i);
  return restrict_to(sym, idx);
}

HyperbolicType invariant_hyperbolic_type(const SymCone& sym,
                                         const std::vector<size_t>& orbit,
                                         const FiniteAction& action) {
  if (orbit.empty()) throw PreconditionFailure("empty factor orbit");
  for (size_t fi : orbit) {
    if (fi >= sym.factors.size()) throw PreconditionFailure("factor index out of range");
    if (sym.factors[fi].kind != FactorKind::Lorentz)
      throw PreconditionFailure("orbit contains a non-Lorentz factor");
  }
  // Local coordinates of the orbit span.
  std::vector<long> span;
  for (size_t fi : orbit)
    for (long c : sym.factors[fi].coords) span.push_back(c);
  std::sort(span.begin(), span.end());
  long k = static_cast<long>(span.size());
  auto local_of = [&](long c) {
    auto it = std::lower_bound(span.begin(), span.end(), c);
    if (it == span.end() || *it != c) return -1L;
    return static_cast<long>(it - span.begin());
  };

  // Every group element must map the span into itself and permute the orbit's
  // factors transitively... transitivity = single orbit; verified below.
  std::vector<IntMat> restricted;
  for (const IntMat& g : action.elements) {
    IntMat l = IntMat::Zero(k, k);
    for (long j = 0; j < k; ++j) {
      for (long i = 0; i < action.n; ++i) {
        if (g(i, span[static_cast<size_t>(j)]) == 0) continue;
        long li = local_of(i);
        if (li < 0)
          throw PreconditionFailure("group element moves the orbit span off itself");
        l(li, j) = g(i, span[static_cast<size_t>(j)]);
      }
    }
    restricted.push_back(std::move(l));
  }

  // Single G-orbit check: factors of the orbit are connected by the action.
  {
    std::vector<std::set<long>> supports;
    for (size_t fi : orbit) {
      std::set<long> s;
      for (long c : sym.factors[fi].coords) s.insert(local_of(c));
      supports.push_back(std::move(s));
    }
    std::set<size_t> reached{0};
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t a : std::set<size_t>(reached)) {
        for (const IntMat& l : restricted) {
          // Image support of factor a under l.
          std::set<long> img;
          for (long c : supports[a])
            for (long i = 0; i < k; ++i)
              if (l(i, c) != 0) img.insert(i);
          for (size_t b = 0; b < supports.size(); ++b) {
            if (reached.count(b)) continue;
            for (long c : img)
              if (supports[b].count(c)) {
                reached.insert(b);
                grew = true;
                break;
              }
          }
        }
      }
    }
    if (reached.size() != supports.size())
      throw PreconditionFailure("factor set is not a single orbit of the action");
  }

  // Invariant subspace of the restricted action.
  std::vector<IntMat> diffs;
  for (const IntMat& l : restricted) diffs.push_back(IntMat(l - IntMat::Identity(k, k)));
  IntMat fixed = linalg::integer_kernel(linalg::vstack(diffs));
  long d = fixed.cols();
  if (d == 0)
    throw SignatureAnomaly("invariant subspace of the factor orbit is zero");
  if (d == 1) return HyperbolicType::Halfline;
  if (d == 2) return HyperbolicType::TwoHalflines;

  RatMat gram(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j)
      gram(i, j) = sym.lattice.gram(span[static_cast<size_t>(i)], span[static_cast<size_t>(j)]);
  RatMat b = to_rat(fixed);
  linalg::Signature s = linalg::signature_of(RatMat(b.transpose() * gram * b));
  if (s.pos != 1 || s.neg != d - 1 || s.zero != 0)
    throw SignatureAnomaly("restricted form on the invariant slice has signature (" +
                           std::to_string(s.pos) + "," + std::to_string(s.neg) + "," +
                           std::to_string(s.zero) + "), expected (1," + std::to_string(d - 1) + ",0)");
  return HyperbolicType::Hyperbolic;
}

}  // namespace clipcone
