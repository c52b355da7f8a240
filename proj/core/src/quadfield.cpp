#include "clipcone/quadfield.hpp"

namespace clipcone {

QScalar qadd(const QScalar& x, const QScalar& y) { return {x.a + y.a, x.b + y.b}; }
QScalar qsub(const QScalar& x, const QScalar& y) { return {x.a - y.a, x.b - y.b}; }

QScalar qmul(const QScalar& x, const QScalar& y, long d) {
  return {x.a * y.a + Rat(d) * x.b * y.b, x.a * y.b + x.b * y.a};
}

QScalar qdiv(const QScalar& x, const QScalar& y, long d) {
  // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - d b^2); the norm is nonzero for
  // y != 0 because d is not a rational square.
  Rat nrm = y.a * y.a - Rat(d) * y.b * y.b;
  if (nrm == 0) throw DegenerateInput("division by zero in Q(sqrt(d))");
  QScalar conj{y.a / nrm, -y.b / nrm};
  return qmul(x, conj, d);
}

bool qzero(const QScalar& x) { return x.a == 0 && x.b == 0; }
bool qeq(const QScalar& x, const QScalar& y) { return x.a == y.a && x.b == y.b; }

int qsign(const QScalar& x, long d) {
  int sa = sign(x.a), sb = sign(x.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against d b^2; sign follows the larger term.
  Rat lhs = x.a * x.a, rhs = Rat(d) * x.b * x.b;
  if (lhs == rhs) return 0;  // impossible for square-free d and b != 0
  return lhs > rhs ? sa : sb;
}

QVec qvec_from_rat(const RatVec& v) {
  QVec out(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<size_t>(i)] = QScalar(v(i));
  return out;
}

long qrank(std::vector<QVec> rows, long d) {
  if (rows.empty()) return 0;
  size_t cols = rows[0].size();
  long rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && qzero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || qzero(rows[i][c])) continue;
      QScalar f = qdiv(rows[i][c], rows[r][c], d);
      for (size_t j = 0; j < cols; ++j)
        rows[i][j] = qsub(rows[i][j], qmul(f, rows[r][j], d));
    }
    ++r;
    ++rank;
  }
  return rank;
}

bool rational_slope(const QVec& v) {
  // v = p + sqrt(d) q with rational vectors p, q; v is proportional to a
  // rational vector iff rank [p; q] <= 1 over Q.
  size_t n = v.size();
  RatVec p(n), q(n);
  for (size_t i = 0; i < n; ++i) {
    p(static_cast<long>(i)) = v[i].a;
    q(static_cast<long>(i)) = v[i].b;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      long li = static_cast<long>(i), lj = static_cast<long>(j);
      if (p(li) * q(lj) - p(lj) * q(li) != 0) return false;
    }
  return true;
}

IntVec rational_direction(const QVec& v) {
  size_t n = v.size();
  RatVec p(n), q(n);
  for (size_t i = 0; i < n; ++i) {
    p(static_cast<long>(i)) = v[i].a;
    q(static_cast<long>(i)) = v[i].b;
  }
  IntVec pp = primitive(p);
  if (!is_zero_vec(pp)) return pp;
  IntVec qq = primitive(q);
  if (is_zero_vec(qq)) throw DegenerateInput("zero vector has no direction");
  return qq;
}

bool qsame_line(const QVec& u, const QVec& v, long d) {
  if (u.size() != v.size()) return false;
  std::vector<QVec> both{u, v};
  bool un = false, vn = false;
  for (const auto& x : u) un = un || !qzero(x);
  for (const auto& x : v) vn = vn || !qzero(x);
  if (!un || !vn) return false;
  return qrank(both, d) == 1;
}

bool qin_span(const QVec& v, const std::vector<QVec>& span, long d) {
  long base = qrank(span, d);
  std::vector<QVec> ext = span;
  ext.push_back(v);
  return qrank(ext, d) == base;
}

}  // namespace clipcone
