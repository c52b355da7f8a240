#include "clipcone/jordan.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <random>

#include "clipcone/linalg.hpp"

namespace clipcone {

namespace {

RatMat sym_from_coords(long m, const RatVec& v) {
  RatMat x(m, m);
  long k = 0;
  for (long i = 0; i < m; ++i)
    for (long j = i; j < m; ++j) {
      x(i, j) = v(k);
      x(j, i) = v(k);
      ++k;
    }
  return x;
}

RatVec coords_from_sym(long m, const RatMat& x) {
  RatVec v(m * (m + 1) / 2);
  long k = 0;
  for (long i = 0; i < m; ++i)
    for (long j = i; j < m; ++j) v(k++) = x(i, j);
  return v;
}

bool vec_equal(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (long i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

// Floor square root test: true iff x is the square of a rational, with the
// root returned positively oriented.
bool rat_sqrt_exact(const Rat& x, Rat& root) {
  if (sign(x) < 0) return false;
  Int nu = numerator(x), de = denominator(x);
  Int rn = sqrt(nu), rd = sqrt(de);
  if (rn * rn != nu || rd * rd != de) return false;
  root = Rat(rn, rd);
  return true;
}

// Largest-denominator-bounded continued fraction convergent of x.
Rat rat_truncate(const Rat& x, const Int& max_den) {
  if (denominator(x) <= max_den) return x;
  Int p_prev = 1, q_prev = 0;
  Int p_cur, q_cur;
  Rat rest = x;
  bool first = true;
  while (true) {
    Int a = numerator(rest) / denominator(rest);
    if (sign(Rat(rest - Rat(a))) < 0) a -= 1;  // floor for negatives
    Int p_next = first ? a : Int(a * p_cur + p_prev);
    Int q_next = first ? Int(1) : Int(a * q_cur + q_prev);
    if (!first && q_next > max_den) return Rat(p_cur, q_cur);
    if (first) {
      p_cur = p_next;
      q_cur = q_next;
      first = false;
    } else {
      p_prev = p_cur;
      q_prev = q_cur;
      p_cur = p_next;
      q_cur = q_next;
    }
    Rat frac = rest - Rat(a);
    if (frac == 0) return Rat(p_cur, q_cur);
    rest = Rat(1) / frac;
  }
}

RatVec truncate_vec(const RatVec& v, const Int& max_den) {
  RatVec out(v.size());
  for (long i = 0; i < v.size(); ++i) out(i) = rat_truncate(v(i), max_den);
  return out;
}

Rat spin_pair(const JordanAlgebra& alg, const RatVec& x, const RatVec& y) {
  RatVec by = alg.spin_b * y;
  return x.dot(by);
}

Rat residual_inf(const JordanAlgebra& alg, const RatVec& b, const RatVec& a) {
  RatVec diff = jmul(alg, b, b) - a;
  Rat worst = 0;
  for (long i = 0; i < diff.size(); ++i) {
    Rat av = abs(diff(i));
    if (av > worst) worst = av;
  }
  return worst;
}

// One exact Newton step toward sqrt(y).
Rat newton_sqrt_step(const Rat& s, const Rat& y) { return (s + y / s) / 2; }

Rat double_sqrt(const Rat& y) {
  double yd = y.convert_to<double>();
  double r = std::sqrt(yd);
  if (!(r > 0)) r = 1.0;
  return Rat(r);
}

Transport spin_transporter(const JordanAlgebra& alg, const RatVec& a, const Rat& precision) {
  const RatVec& u = alg.unit;
  Rat y = spin_pair(alg, a, a);   // spin norm of a, positive in the interior
  Rat a0 = spin_pair(alg, a, u);

  auto assemble = [&](const Rat& s, const Rat& b0) {
    return RatVec(((a + s * u) / (2 * b0)).eval());
  };

  // Exact path: both square roots rational.
  Rat s_exact, b0_exact;
  if (rat_sqrt_exact(y, s_exact) && rat_sqrt_exact(Rat((a0 + s_exact) / 2), b0_exact)) {
    RatVec b = assemble(s_exact, b0_exact);
    return {b, residual_inf(alg, b, a)};
  }

  Rat s = double_sqrt(y);
  if (s == 0) s = 1;
  std::vector<Int> ladder{Int(10000), Int(100000000), Int("1000000000000"),
                          Int("10000000000000000")};
  for (int step = 0; step < 48; ++step) {
    Rat t = (a0 + s) / 2;
    if (sign(t) > 0) {
      Rat b0 = double_sqrt(t);
      for (int inner = 0; inner < 4; ++inner) b0 = newton_sqrt_step(b0, t);
      RatVec b_full = assemble(s, b0);
      for (const Int& bound : ladder) {
        RatVec b = truncate_vec(b_full, bound);
        Rat r = residual_inf(alg, b, a);
        if (r <= precision) return {b, r};
      }
      Rat r = residual_inf(alg, b_full, a);
      if (r <= precision) return {b_full, r};
    }
    s = newton_sqrt_step(s, y);
    // Keep the iterate compact; the truncation error is far below the
    // remaining Newton error in every reachable regime.
    s = rat_truncate(s, Int(1) << (64 + 8 * step));
  }
  throw IterationCap("transporter did not reach the requested precision");
}

Transport matrix_transporter(const JordanAlgebra& alg, const RatVec& a, const Rat& precision) {
  long m = alg.matrix_m;
  RatMat amat = sym_from_coords(m, a);

  Eigen::MatrixXd ad(m, m);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) ad(i, j) = amat(i, j).convert_to<double>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ad);
  Eigen::MatrixXd sd = es.operatorSqrt();

  RatMat seed(m, m);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) seed(i, j) = Rat(sd(i, j));
  seed = (seed + RatMat(seed.transpose())) / 2;

  std::vector<Int> ladder{Int(100), Int(10000), Int(100000000), Int("1000000000000"),
                          Int("10000000000000000")};
  auto try_candidate = [&](const RatMat& cand) -> std::optional<Transport> {
    RatVec full = coords_from_sym(m, cand);
    for (const Int& bound : ladder) {
      RatVec b = truncate_vec(full, bound);
      Rat r = residual_inf(alg, b, a);
      if (r <= precision) return Transport{b, r};
    }
    Rat r = residual_inf(alg, full, a);
    if (r <= precision) return Transport{full, r};
    return std::nullopt;
  };

  if (auto hit = try_candidate(seed)) return *hit;

  // Denman-Beavers refinement in exact arithmetic, iterates truncated far
  // below the target precision.
  Int keep = 0;
  {
    // denominator bound ~ (1/precision)^2 * 1e12, at least 1e40
    Rat inv = 1 / precision;
    Int scale = numerator(inv) / denominator(inv) + 1;
    keep = scale * scale * Int("1000000000000");
    Int floor40 = Int(1);
    for (int i = 0; i < 40; ++i) floor40 *= 10;
    if (keep < floor40) keep = floor40;
  }
  auto trunc_mat = [&](const RatMat& x) {
    RatMat out(x.rows(), x.cols());
    for (long i = 0; i < x.rows(); ++i)
      for (long j = 0; j < x.cols(); ++j) out(i, j) = rat_truncate(x(i, j), keep);
    return out;
  };
  RatMat yk = amat, zk = RatMat::Identity(m, m);
  for (int step = 0; step < 80; ++step) {
    RatMat yn = (yk + linalg::inverse(zk)) / 2;
    RatMat zn = (zk + linalg::inverse(yk)) / 2;
    yk = trunc_mat(yn);
    zk = trunc_mat(zn);
    RatMat cand = (yk + RatMat(yk.transpose())) / 2;
    if (auto hit = try_candidate(cand)) return *hit;
  }
  throw IterationCap("transporter did not reach the requested precision");
}

}  // namespace

JordanAlgebra spin_factor(const RatMat& gram, const RatVec& h) {
  long n = gram.rows();
  if (gram.cols() != n || h.size() != n) throw DimensionMismatch("spin factor shape mismatch");
  RatVec gh = gram * h;
  Rat qh = h.dot(gh);
  if (sign(qh) <= 0) throw DegenerateInput("spin factor witness must have positive square");
  JordanAlgebra alg;
  alg.kind = JordanAlgebra::Kind::SpinFactor;
  alg.n = n;
  alg.unit = h;
  alg.spin_b = gram / qh;
  RatVec bu = alg.spin_b * h;
  for (long i = 0; i < n; ++i) {
    RatVec ei = RatVec::Zero(n);
    ei(i) = 1;
    RatVec bei = alg.spin_b * ei;
    // L(e_i) = b(e_i,u) I + e_i (b u)^T - u (b e_i)^T
    RatMat l = RatMat::Zero(n, n);
    Rat c = ei.dot(RatVec(alg.spin_b * h));
    for (long r = 0; r < n; ++r) l(r, r) = c;
    l += ei * bu.transpose();
    l -= h * bei.transpose();
    alg.mult.push_back(std::move(l));
  }
  return alg;
}

JordanAlgebra sym_matrices(long m) {
  if (m < 1) throw DimensionMismatch("matrix size must be positive");
  long n = m * (m + 1) / 2;
  JordanAlgebra alg;
  alg.kind = JordanAlgebra::Kind::SymMatrices;
  alg.n = n;
  alg.matrix_m = m;
  alg.unit = coords_from_sym(m, RatMat(RatMat::Identity(m, m)));
  std::vector<RatMat> basis;
  for (long k = 0; k < n; ++k) {
    RatVec e = RatVec::Zero(n);
    e(k) = 1;
    basis.push_back(sym_from_coords(m, e));
  }
  for (long k = 0; k < n; ++k) {
    RatMat l(n, n);
    for (long j = 0; j < n; ++j) {
      RatMat prod = (basis[static_cast<size_t>(k)] * basis[static_cast<size_t>(j)] +
                     basis[static_cast<size_t>(j)] * basis[static_cast<size_t>(k)]) /
                    2;
      l.col(j) = coords_from_sym(m, prod);
    }
    alg.mult.push_back(std::move(l));
  }
  return alg;
}

JordanAlgebra algebra_of(const SymCone& sym) {
  std::vector<JordanAlgebra> parts;
  for (const Factor& f : sym.factors) {
    switch (f.kind) {
      case FactorKind::Halfline:
      case FactorKind::Lorentz: {
        RatVec h = f.kind == FactorKind::Halfline ? RatVec(RatVec::Ones(1)) : f.h;
        parts.push_back(spin_factor(factor_gram(sym, f), h));
        break;
      }
      case FactorKind::PsdSym:
        parts.push_back(sym_matrices(f.m));
        break;
    }
  }
  long n = sym.lattice.n;
  bool natural = sym.factors.size() == 1;
  if (natural) {
    const auto& coords = sym.factors[0].coords;
    for (long i = 0; i < n; ++i)
      if (coords[static_cast<size_t>(i)] != i) natural = false;
  }
  if (natural) return parts[0];

  JordanAlgebra alg;
  alg.kind = JordanAlgebra::Kind::Product;
  alg.n = n;
  alg.unit = RatVec::Zero(n);
  alg.mult.assign(static_cast<size_t>(n), RatMat::Zero(n, n));
  for (size_t p = 0; p < parts.size(); ++p) {
    const auto& coords = sym.factors[p].coords;
    const JordanAlgebra& part = parts[p];
    for (long i = 0; i < part.n; ++i) {
      alg.unit(coords[static_cast<size_t>(i)]) = part.unit(i);
      for (long r = 0; r < part.n; ++r)
        for (long j = 0; j < part.n; ++j)
          alg.mult[static_cast<size_t>(coords[static_cast<size_t>(i)])](
              coords[static_cast<size_t>(r)], coords[static_cast<size_t>(j)]) =
              part.mult[static_cast<size_t>(i)](r, j);
    }
    alg.part_coords.push_back(std::vector<long>(coords.begin(), coords.end()));
  }
  alg.parts = std::move(parts);
  return alg;
}

RatVec jmul(const JordanAlgebra& alg, const RatVec& x, const RatVec& y) {
  if (x.size() != alg.n || y.size() != alg.n) throw DimensionMismatch("algebra element length mismatch");
  RatVec out = RatVec::Zero(alg.n);
  for (long i = 0; i < alg.n; ++i) {
    if (x(i) == 0) continue;
    out += x(i) * (alg.mult[static_cast<size_t>(i)] * y);
  }
  return out;
}

RatMat lmat(const JordanAlgebra& alg, const RatVec& x) {
  if (x.size() != alg.n) throw DimensionMismatch("algebra element length mismatch");
  RatMat l = RatMat::Zero(alg.n, alg.n);
  for (long i = 0; i < alg.n; ++i) {
    if (x(i) == 0) continue;
    l += x(i) * alg.mult[static_cast<size_t>(i)];
  }
  return l;
}

RatMat quadratic_rep(const JordanAlgebra& alg, const RatVec& b) {
  RatMat l = lmat(alg, b);
  RatMat l2 = lmat(alg, jmul(alg, b, b));
  return 2 * (l * l) - l2;
}

bool squares_interior(const JordanAlgebra& alg, const RatVec& a) {
  if (a.size() != alg.n) throw DimensionMismatch("algebra element length mismatch");
  switch (alg.kind) {
    case JordanAlgebra::Kind::SpinFactor:
      return sign(spin_pair(alg, a, a)) > 0 && sign(spin_pair(alg, a, alg.unit)) > 0;
    case JordanAlgebra::Kind::SymMatrices: {
      RatMat x = sym_from_coords(alg.matrix_m, a);
      for (long k = 1; k <= alg.matrix_m; ++k) {
        RatMat lead = x.topLeftCorner(k, k);
        if (sign(linalg::det(lead)) <= 0) return false;
      }
      return true;
    }
    case JordanAlgebra::Kind::Product: {
      for (size_t p = 0; p < alg.parts.size(); ++p) {
        const auto& coords = alg.part_coords[p];
        RatVec local(static_cast<long>(coords.size()));
        for (size_t i = 0; i < coords.size(); ++i) local(static_cast<long>(i)) = a(coords[i]);
        if (!squares_interior(alg.parts[p], local)) return false;
      }
      return true;
    }
    case JordanAlgebra::Kind::Induced:
      throw Unsupported("interior test on an induced algebra");
  }
  return false;
}

std::vector<std::string> algebra_anomalies(const JordanAlgebra& alg, unsigned seed) {
  std::vector<std::string> out;
  auto basis = [&](long i) {
    RatVec e = RatVec::Zero(alg.n);
    e(i) = 1;
    return e;
  };
  for (long i = 0; i < alg.n && out.size() < 8; ++i)
    for (long j = i; j < alg.n && out.size() < 8; ++j)
      if (!vec_equal(jmul(alg, basis(i), basis(j)), jmul(alg, basis(j), basis(i))))
        out.push_back("product not commutative on basis pair (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
  for (long i = 0; i < alg.n && out.size() < 8; ++i)
    if (!vec_equal(jmul(alg, alg.unit, basis(i)), basis(i)))
      out.push_back("unit law fails on basis vector " + std::to_string(i));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 20 && out.size() < 8; ++trial) {
    RatVec x(alg.n), y(alg.n);
    for (long i = 0; i < alg.n; ++i) {
      x(i) = Rat(entry(rng), 2);
      y(i) = Rat(entry(rng), 2);
    }
    RatVec xx = jmul(alg, x, x);
    RatVec lhs = jmul(alg, xx, jmul(alg, x, y));
    RatVec rhs = jmul(alg, x, jmul(alg, xx, y));
    if (!vec_equal(lhs, rhs)) {
      out.push_back("Jordan identity fails on sampled pair " + std::to_string(trial));
      break;
    }
  }

  RatMat trace_form(alg.n, alg.n);
  for (long i = 0; i < alg.n; ++i)
    for (long j = 0; j < alg.n; ++j) {
      RatMat l = lmat(alg, jmul(alg, basis(i), basis(j)));
      Rat tr = 0;
      for (long k = 0; k < alg.n; ++k) tr += l(k, k);
      trace_form(i, j) = tr;
    }
  linalg::Signature s = linalg::signature_of(trace_form);
  if (s.pos != alg.n)
    out.push_back("trace form is not positive definite: formal reality fails");
  return out;
}

InducedAlgebra invariant_subalgebra(const JordanAlgebra& alg, const FiniteAction& action) {
  if (action.n != alg.n) throw DimensionMismatch("action dimension mismatch");
  auto basis_vec = [&](long i) {
    RatVec e = RatVec::Zero(alg.n);
    e(i) = 1;
    return e;
  };
  for (size_t gi = 0; gi < action.elements.size(); ++gi) {
    RatMat g = to_rat(action.elements[gi]);
    if (!vec_equal(RatVec(g * alg.unit), alg.unit))
      throw NotAutomorphism("group element " + std::to_string(gi) + " moves the unit");
    for (long i = 0; i < alg.n; ++i)
      for (long j = i; j < alg.n; ++j) {
        RatVec lhs = g * jmul(alg, basis_vec(i), basis_vec(j));
        RatVec rhs = jmul(alg, RatVec(g.col(i)), RatVec(g.col(j)));
        if (!vec_equal(lhs, rhs))
          throw NotAutomorphism("group element " + std::to_string(gi) +
                                " is not multiplicative on basis pair (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
      }
  }

  IntMat basis = invariant_sublattice(action);
  long k = basis.cols();
  RatMat b = to_rat(basis);
  RatMat gram = b.transpose() * b;
  RatMat proj = linalg::inverse(gram) * b.transpose();
  auto coords_of = [&](const RatVec& w) {
    RatVec c = proj * w;
    RatVec back = b * c;
    if (!vec_equal(back, w))
      throw DegenerateInput("induced product left the invariant subspace");
    return c;
  };

  InducedAlgebra out;
  out.basis = basis;
  JordanAlgebra& ind = out.algebra;
  ind.kind = alg.kind == JordanAlgebra::Kind::SpinFactor ? JordanAlgebra::Kind::SpinFactor
                                                         : JordanAlgebra::Kind::Induced;
  ind.n = k;
  ind.unit = coords_of(alg.unit);
  for (long i = 0; i < k; ++i) {
    RatMat l(k, k);
    for (long j = 0; j < k; ++j)
      l.col(j) = coords_of(jmul(alg, RatVec(b.col(i)), RatVec(b.col(j))));
    ind.mult.push_back(std::move(l));
  }
  if (ind.kind == JordanAlgebra::Kind::SpinFactor)
    ind.spin_b = b.transpose() * alg.spin_b * b;
  return out;
}

Transport transporter(const JordanAlgebra& alg, const RatVec& a, const Rat& precision) {
  if (sign(precision) <= 0) throw DegenerateInput("precision must be positive");
  if (!squares_interior(alg, a)) throw NotInterior("target is not in the open squares cone");
  switch (alg.kind) {
    case JordanAlgebra::Kind::SpinFactor:
      return spin_transporter(alg, a, precision);
    case JordanAlgebra::Kind::SymMatrices:
      return matrix_transporter(alg, a, precision);
    case JordanAlgebra::Kind::Product: {
      RatVec b = RatVec::Zero(alg.n);
      Rat worst = 0;
      for (size_t p = 0; p < alg.parts.size(); ++p) {
        const auto& coords = alg.part_coords[p];
        RatVec local(static_cast<long>(coords.size()));
        for (size_t i = 0; i < coords.size(); ++i) local(static_cast<long>(i)) = a(coords[i]);
        Transport t = transporter(alg.parts[p], local, precision);
        for (size_t i = 0; i < coords.size(); ++i) b(coords[i]) = t.b(static_cast<long>(i));
        if (t.residual > worst) worst = t.residual;
      }
      return {b, worst};
    }
    case JordanAlgebra::Kind::Induced:
      throw Unsupported("transporter on an induced algebra");
  }
  throw Unsupported("unreachable");
}

}  // namespace clipcone
