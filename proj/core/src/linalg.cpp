#include "clipcone/linalg.hpp"

namespace clipcone::linalg {

namespace {

// Row echelon reduction in place; returns pivot column indices.
std::vector<long> rref(RatMat& m) {
  std::vector<long> pivots;
  long r = 0;
  for (long c = 0; c < m.cols() && r < m.rows(); ++c) {
    long p = -1;
    for (long i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    m.row(p).swap(m.row(r));
    Rat inv = m(r, c);
    for (long j = 0; j < m.cols(); ++j) m(r, j) /= inv;
    for (long i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (long j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

long rank(const RatMat& a) {
  RatMat m = a;
  return static_cast<long>(rref(m).size());
}

RatMat kernel(const RatMat& a) {
  RatMat m = a;
  std::vector<long> pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
  for (long c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  long k = a.cols() - static_cast<long>(pivots.size());
  RatMat basis = RatMat::Zero(a.cols(), k);
  long col = 0;
  for (long free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    basis(free, col) = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], col) = -m(static_cast<long>(r), free);
    ++col;
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  RatMat aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<long> pivots = rref(aug);
  // Inconsistent iff a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVec x = RatVec::Zero(a.cols());
  for (size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(static_cast<long>(r), a.cols());
  // Verify (solution may be non-unique; any representative works for callers
  // that only need existence, and exactness makes the check cheap).
  RatVec chk = a * x;
  for (long i = 0; i < b.size(); ++i)
    if (chk(i) != b(i)) return std::nullopt;
  return x;
}

RatMat inverse(const RatMat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  long n = a.rows();
  RatMat aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = RatMat::Identity(n, n);
  std::vector<long> pivots = rref(aug);
  if (static_cast<long>(pivots.size()) != n || pivots.back() != n - 1)
    throw DegenerateInput("singular matrix has no inverse");
  return aug.rightCols(n);
}

Rat det(const RatMat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  RatMat m = a;
  Rat d = 1;
  long n = m.rows();
  for (long c = 0; c < n; ++c) {
    long p = -1;
    for (long i = c; i < n; ++i)
      if (m(i, c) != 0) { p = i; break; }
    if (p < 0) return 0;
    if (p != c) {
      m.row(p).swap(m.row(c));
      d = -d;
    }
    d *= m(c, c);
    Rat inv = m(c, c);
    for (long i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / inv;
      for (long j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

Signature signature_of(const RatMat& gram) {
  if (gram.rows() != gram.cols()) throw DimensionMismatch("signature of non-square matrix");
  if (gram.transpose() != gram) throw DegenerateInput("signature of non-symmetric matrix");
  RatMat m = gram;
  long n = m.rows();
  std::vector<bool> done(static_cast<size_t>(n), false);
  Signature sig;
  for (;;) {
    long piv = -1;
    for (long i = 0; i < n; ++i)
      if (!done[static_cast<size_t>(i)] && m(i, i) != 0) { piv = i; break; }
    if (piv < 0) {
      // All remaining diagonal entries vanish; create one from an off-diagonal
      // entry by the congruence row_i += row_j, col_i += col_j.
      long oi = -1, oj = -1;
      for (long i = 0; i < n && oi < 0; ++i) {
        if (done[static_cast<size_t>(i)]) continue;
        for (long j = i + 1; j < n; ++j) {
          if (done[static_cast<size_t>(j)]) continue;
          if (m(i, j) != 0) { oi = i; oj = j; break; }
        }
      }
      if (oi < 0) break;  // remaining block is zero
      m.row(oi) += m.row(oj);
      m.col(oi) += m.col(oj);
      piv = oi;
    }
    Rat p = m(piv, piv);
    if (p > 0) ++sig.pos; else ++sig.neg;
    for (long k = 0; k < n; ++k) {
      if (k == piv || done[static_cast<size_t>(k)] || m(k, piv) == 0) continue;
      Rat f = m(k, piv) / p;
      m.row(k) -= f * m.row(piv);
      m.col(k) -= f * m.col(piv);
    }
    done[static_cast<size_t>(piv)] = true;
  }
  sig.zero = n - sig.pos - sig.neg;
  return sig;
}

std::pair<IntMat, IntMat> hnf_cols(const IntMat& a) {
  long rows = a.rows(), cols = a.cols();
  IntMat h = a;
  IntMat u = IntMat::Identity(cols, cols);
  long pivot_col = 0;
  for (long r = 0; r < rows && pivot_col < cols; ++r) {
    // Euclidean elimination across columns pivot_col..cols-1 on row r.
    for (;;) {
      long nz = -1;
      for (long c = pivot_col; c < cols; ++c)
        if (h(r, c) != 0) { nz = c; break; }
      if (nz < 0) break;
      // Move the column with the smallest nonzero |entry| to pivot_col.
      long best = nz;
      for (long c = nz + 1; c < cols; ++c)
        if (h(r, c) != 0 && abs(h(r, c)) < abs(h(r, best))) best = c;
      if (best != pivot_col) {
        h.col(best).swap(h.col(pivot_col));
        u.col(best).swap(u.col(pivot_col));
      }
      bool clean = true;
      for (long c = pivot_col + 1; c < cols; ++c) {
        if (h(r, c) == 0) continue;
        Int q = h(r, c) / h(r, pivot_col);  // truncated division
        if (q != 0) {
          h.col(c) -= q * h.col(pivot_col);
          u.col(c) -= q * u.col(pivot_col);
        }
        if (h(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, pivot_col) != 0) {
      if (h(r, pivot_col) < 0) {
        h.col(pivot_col) = -h.col(pivot_col);
        u.col(pivot_col) = -u.col(pivot_col);
      }
      ++pivot_col;
    }
  }
  return {h, u};
}

IntMat integer_kernel(const IntMat& a) {
  auto [h, u] = hnf_cols(a);
  long zero_cols = 0;
  for (long c = a.cols() - 1; c >= 0; --c) {
    bool z = true;
    for (long r = 0; r < a.rows(); ++r)
      if (h(r, c) != 0) { z = false; break; }
    if (z) ++zero_cols; else break;
  }
  return u.rightCols(zero_cols);
}

std::vector<Int> smith_invariants(IntMat a) {
  long rows = a.rows(), cols = a.cols();
  std::vector<Int> inv;
  long t = 0;
  while (t < rows && t < cols) {
    // Find the minimal nonzero |entry| in the trailing block.
    long pi = -1, pj = -1;
    for (long i = t; i < rows; ++i)
      for (long j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj)))) { pi = i; pj = j; }
    if (pi < 0) break;
    a.row(pi).swap(a.row(t));
    a.col(pj).swap(a.col(t));
    bool reduced = true;
    for (long i = t + 1; i < rows; ++i) {
      Int q = a(i, t) / a(t, t);
      if (q != 0) a.row(i) -= q * a.row(t);
      if (a(i, t) != 0) reduced = false;
    }
    for (long j = t + 1; j < cols; ++j) {
      Int q = a(t, j) / a(t, t);
      if (q != 0) a.col(j) -= q * a.col(t);
      if (a(t, j) != 0) reduced = false;
    }
    if (!reduced) continue;  // rerun with a smaller pivot
    // Enforce divisibility d_t | a(i,j) for the trailing block.
    bool divides_all = true;
    for (long i = t + 1; i < rows && divides_all; ++i)
      for (long j = t + 1; j < cols; ++j)
        if (a(i, j) % a(t, t) != 0) {
          a.row(t) += a.row(i);
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    inv.push_back(abs(a(t, t)));
    ++t;
  }
  return inv;
}

IntMat vstack(const std::vector<IntMat>& blocks) {
  if (blocks.empty()) return IntMat(0, 0);
  long cols = blocks[0].cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += b.rows();
  }
  IntMat out(rows, cols);
  long r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

RatMat vstack_rat(const std::vector<RatMat>& blocks) {
  if (blocks.empty()) return RatMat(0, 0);
  long cols = blocks[0].cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += b.rows();
  }
  RatMat out(rows, cols);
  long r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

}  // namespace clipcone::linalg
