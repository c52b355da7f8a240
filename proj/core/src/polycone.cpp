#include "clipcone/polycone.hpp"

#include <algorithm>
#include <set>

#include "clipcone/linalg.hpp"

namespace clipcone {

namespace {

// Incremental dual description over Q.  The state represents
//   span{lines} + cone{rays}
// intersected with all halfspaces inserted so far; rays are kept extreme via
// the algebraic adjacency test.
struct DDState {
  long n;
  std::vector<RatVec> lines;
  std::vector<RatVec> rays;
  std::vector<RatVec> inserted;

  explicit DDState(long dim) : n(dim) {
    for (long i = 0; i < n; ++i) {
      RatVec e = RatVec::Zero(n);
      e(i) = 1;
      lines.push_back(e);
    }
  }

  long tight_rank(const RatVec& p, const RatVec& q) const {
    std::vector<RatMat> rows;
    for (const auto& c : inserted) {
      if (c.dot(p) == 0 && c.dot(q) == 0) rows.push_back(c.transpose());
    }
    if (rows.empty()) return 0;
    return linalg::rank(linalg::vstack_rat(rows));
  }

  void insert(const RatVec& a) {
    // Case 1: the constraint meets the lineality space; one line becomes the
    // new ray and everything else is projected into the hyperplane of a.
    long hit = -1;
    for (size_t i = 0; i < lines.size(); ++i)
      if (a.dot(lines[i]) != 0) { hit = static_cast<long>(i); break; }
    if (hit >= 0) {
      RatVec lambda = lines[static_cast<size_t>(hit)] / a.dot(lines[static_cast<size_t>(hit)]);
      std::vector<RatVec> new_lines;
      for (size_t i = 0; i < lines.size(); ++i) {
        if (static_cast<long>(i) == hit) continue;
        new_lines.push_back(lines[i] - a.dot(lines[i]) * lambda);
      }
      for (auto& r : rays) r = r - a.dot(r) * lambda;
      lines = std::move(new_lines);
      rays.push_back(lambda);
      inserted.push_back(a);
      return;
    }
    // Case 2: a vanishes on the lineality space; standard ray split.
    std::vector<RatVec> pos, zer, neg;
    for (const auto& r : rays) {
      int s = sign(Rat(a.dot(r)));
      if (s > 0) pos.push_back(r);
      else if (s == 0) zer.push_back(r);
      else neg.push_back(r);
    }
    inserted.push_back(a);
    if (neg.empty()) return;
    std::vector<RatVec> next = pos;
    for (auto& z : zer) next.push_back(z);
    long target = n - static_cast<long>(lines.size()) - 2;
    for (const auto& p : pos) {
      for (const auto& m : neg) {
        // p, m adjacent iff their common tight constraints have corank 2
        // relative to the lineality space.
        if (target >= 0 && tight_rank(p, m) != target) continue;
        RatVec w = a.dot(p) * m - a.dot(m) * p;
        if (!is_zero_vec(w)) next.push_back(w);
      }
    }
    rays = std::move(next);
  }
};

RatVec reduce_mod_lines(const RatVec& r, const std::vector<RatVec>& lines) {
  if (lines.empty()) return r;
  long n = r.size(), k = static_cast<long>(lines.size());
  RatMat l(n, k);
  for (long j = 0; j < k; ++j) l.col(j) = lines[static_cast<size_t>(j)];
  // Orthogonal projection (standard dot) onto the complement of the lineality
  // space: canonical representative of r modulo lines.
  RatMat gram = l.transpose() * l;
  RatVec coef = linalg::inverse(gram) * (l.transpose() * r);
  return r - l * coef;
}

struct DualOutput {
  std::vector<IntVec> rays;
  std::vector<IntVec> lines;
};

// Runs the incremental insertion and canonicalizes: primitive deduplicated
// extreme rays (reduced modulo lineality, sorted) and an HNF lineality basis.
DualOutput run_dd(long dim, const std::vector<RatVec>& normals) {
  DDState st(dim);
  for (const auto& a : normals) {
    if (a.size() != dim) throw DimensionMismatch("normal length mismatch");
    if (!is_zero_vec(a)) st.insert(a);
  }
  DualOutput out;
  // Lineality: integer kernel of the stacked normals, canonical HNF basis.
  {
    std::vector<IntMat> rows;
    for (const auto& a : st.inserted) rows.push_back(primitive(a).transpose());
    if (rows.empty()) rows.push_back(IntMat::Zero(1, dim));
    IntMat ker = linalg::integer_kernel(linalg::vstack(rows));
    for (long c = 0; c < ker.cols(); ++c) out.lines.push_back(ker.col(c));
  }
  long lin_dim = static_cast<long>(out.lines.size());
  std::vector<RatVec> lin_rat;
  for (const auto& l : out.lines) lin_rat.push_back(to_rat(l));
  // Rays: extremality filter, canonical representative, dedup, sort.
  std::set<std::vector<Int>> seen;
  for (const auto& r0 : st.rays) {
    RatVec r = reduce_mod_lines(r0, lin_rat);
    if (is_zero_vec(r)) continue;
    std::vector<RatMat> tight;
    for (const auto& c : st.inserted)
      if (c.dot(r) == 0) tight.push_back(c.transpose());
    long tr = tight.empty() ? 0 : linalg::rank(linalg::vstack_rat(tight));
    if (tr != dim - lin_dim - 1) continue;
    IntVec p = primitive(r);
    std::vector<Int> key(p.data(), p.data() + p.size());
    if (seen.insert(key).second) out.rays.push_back(p);
  }
  std::sort(out.rays.begin(), out.rays.end(), [](const IntVec& x, const IntVec& y) {
    for (long i = 0; i < x.size(); ++i) {
      if (x(i) != y(i)) return x(i) < y(i);
    }
    return false;
  });
  return out;
}

std::vector<RatVec> generators_as_normals(const DualOutput& g) {
  std::vector<RatVec> normals;
  for (const auto& r : g.rays) normals.push_back(to_rat(r));
  for (const auto& l : g.lines) {
    normals.push_back(to_rat(l));
    normals.push_back(RatVec(-to_rat(l)));
  }
  return normals;
}

}  // namespace

PolyCone dd_from_facets(long dim, const std::vector<RatVec>& normals) {
  if (dim < 1) throw DimensionMismatch("ambient dimension must be >= 1");
  DualOutput primal = run_dd(dim, normals);
  // Facet description: extreme rays and lineality of the dual cone.
  DualOutput dual = run_dd(dim, generators_as_normals(primal));
  PolyCone cone;
  cone.dim = dim;
  cone.rays = primal.rays;
  cone.lines = primal.lines;
  cone.facets = dual.rays;
  cone.equations = dual.lines;
  return cone;
}

PolyCone dd_from_rays(long dim, const std::vector<RatVec>& gens) {
  if (dim < 1) throw DimensionMismatch("ambient dimension must be >= 1");
  bool any = false;
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("generator length mismatch");
    if (!is_zero_vec(g)) any = true;
  }
  if (!any) throw DegenerateInput("all generators are zero");
  // Dual cone of the generated cone, then its dual again: canonical rays.
  std::vector<RatVec> as_normals;
  for (const auto& g : gens) as_normals.push_back(g);
  DualOutput dual = run_dd(dim, as_normals);
  DualOutput primal = run_dd(dim, generators_as_normals(dual));
  PolyCone cone;
  cone.dim = dim;
  cone.rays = primal.rays;
  cone.lines = primal.lines;
  cone.facets = dual.rays;
  cone.equations = dual.lines;
  return cone;
}

bool contains(const PolyCone& cone, const RatVec& v, Mode mode) {
  if (v.size() != cone.dim) throw DimensionMismatch("vector length mismatch");
  for (const auto& e : cone.equations)
    if (to_rat(e).dot(v) != 0) return false;
  switch (mode) {
    case Mode::Interior:
      // Interior is defined for full-dimensional cones only.
      if (!cone.full_dim()) return false;
      for (const auto& f : cone.facets)
        if (to_rat(f).dot(v) <= 0) return false;
      return true;
    case Mode::Closure:
    case Mode::Plus:
      // C+ = C-bar for rational polyhedral cones.
      for (const auto& f : cone.facets)
        if (to_rat(f).dot(v) < 0) return false;
      return true;
  }
  return false;
}

PolyCone direct_sum(const PolyCone& a, const PolyCone& b) {
  PolyCone out;
  out.dim = a.dim + b.dim;
  auto embed_a = [&](const IntVec& v) {
    IntVec w = IntVec::Zero(out.dim);
    w.head(a.dim) = v;
    return w;
  };
  auto embed_b = [&](const IntVec& v) {
    IntVec w = IntVec::Zero(out.dim);
    w.tail(b.dim) = v;
    return w;
  };
  for (const auto& v : a.rays) out.rays.push_back(embed_a(v));
  for (const auto& v : b.rays) out.rays.push_back(embed_b(v));
  for (const auto& v : a.lines) out.lines.push_back(embed_a(v));
  for (const auto& v : b.lines) out.lines.push_back(embed_b(v));
  for (const auto& v : a.facets) out.facets.push_back(embed_a(v));
  for (const auto& v : b.facets) out.facets.push_back(embed_b(v));
  for (const auto& v : a.equations) out.equations.push_back(embed_a(v));
  for (const auto& v : b.equations) out.equations.push_back(embed_b(v));
  return out;
}

namespace {

bool qsame_ray(const QVec& u, const QVec& v, long d) {
  if (!qsame_line(u, v, d)) return false;
  for (size_t i = 0; i < u.size(); ++i) {
    if (!qzero(v[i])) {
      QScalar lambda = qdiv(u[i], v[i], d);
      return qsign(lambda, d) > 0;
    }
  }
  return false;
}

}  // namespace

bool rules(const QCone& sigma, const QCone& xi) {
  long d = sigma.d != 0 ? sigma.d : xi.d;
  if (d == 0) d = 2;  // irrelevant when all data is rational
  if (sigma.d != 0 && xi.d != 0 && sigma.d != xi.d)
    throw DegenerateInput("cones live in different quadratic fields");
  if (qrank(sigma.rays, d) != static_cast<long>(sigma.rays.size()))
    throw NotSimplicial("first cone has dependent rays");
  if (qrank(xi.rays, d) != static_cast<long>(xi.rays.size()))
    throw NotSimplicial("second cone has dependent rays");

  std::vector<QVec> rational_rays;
  for (const auto& r : xi.rays) {
    if (rational_slope(r)) {
      rational_rays.push_back(r);
      continue;
    }
    bool found = false;
    for (const auto& s : sigma.rays)
      if (qsame_ray(r, s, d)) { found = true; break; }
    if (!found) return false;
  }
  if (rational_rays.empty()) return true;
  long span_dim = qrank(rational_rays, d);
  // The maximal candidate subset: sigma rays lying inside the rational span.
  // Any subset spanning the space is contained in it, so checking it decides
  // existence.
  std::vector<QVec> inside;
  for (const auto& s : sigma.rays)
    if (qin_span(s, rational_rays, d)) inside.push_back(s);
  return qrank(inside, d) == span_dim;
}

QCone to_qcone(const PolyCone& cone, long d) {
  if (!cone.pointed()) throw NotSimplicial("cone has nontrivial lineality");
  QCone q;
  q.dim = cone.dim;
  q.d = d;
  for (const auto& r : cone.rays) q.rays.push_back(qvec_from_rat(to_rat(r)));
  return q;
}

}  // namespace clipcone
