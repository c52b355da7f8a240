#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <vector>

#include "clipcone/errors.hpp"

namespace clipcone {

// All core computation is exact: arbitrary-precision integers and rationals
// backed by GMP.  No floating point is used outside jordan::transporter's
// search phase.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

inline int sign(const Rat& x) { return x.sign(); }
inline int sign(const Int& x) { return x.sign(); }

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

// Parses "p", "-p", or "p/q" into an exact rational.
inline Rat parse_rat(const std::string& s) {
  try {
    if (s.empty()) throw ParseError("empty rational literal");
    Rat r(s);
    return r;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

// Serializes reduced: "p" when the denominator is 1, else "p/q".
inline std::string rat_str(const Rat& x) {
  if (is_integer(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rat(v(i));
  return r;
}

inline RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// True only when every entry is an integer.
inline bool is_integral(const RatMat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

inline IntMat to_int_checked(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j)))
        throw DegenerateInput("matrix entry not an integer: " + rat_str(m(i, j)));
      r(i, j) = numerator(m(i, j));
    }
  return r;
}

inline IntVec to_int_checked(const RatVec& v) {
  IntVec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_integer(v(i)))
      throw DegenerateInput("vector entry not an integer: " + rat_str(v(i)));
    r(i) = numerator(v(i));
  }
  return r;
}

// Scales a nonzero rational vector to the primitive integer vector on the same
// ray (positive multiple).  The zero vector maps to zero.
inline IntVec primitive(const RatVec& v) {
  Int l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    l = lcm(l, Int(denominator(v(i))));
  IntVec w(v.size());
  Int g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    w(i) = numerator(Rat(v(i) * l));
    g = gcd(g, w(i));
  }
  if (g == 0) return w;  // zero vector
  for (Eigen::Index i = 0; i < v.size(); ++i) w(i) /= g;
  return w;
}

inline IntVec primitive(const IntVec& v) { return primitive(to_rat(v)); }

template <typename Vec>
inline bool is_zero_vec(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

inline bool vec_eq(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

// True iff u and v span the same ray (positive proportionality).
inline bool same_ray(const RatVec& u, const RatVec& v) {
  if (u.size() != v.size()) return false;
  IntVec a = primitive(u), b = primitive(v);
  return !is_zero_vec(a) && vec_eq(a, b);
}

// True iff u and v span the same line (proportionality up to sign).
inline bool same_line(const RatVec& u, const RatVec& v) {
  if (u.size() != v.size()) return false;
  IntVec a = primitive(u), b = primitive(v);
  return !is_zero_vec(a) && (vec_eq(a, b) || vec_eq(a, IntVec(-b)));
}

inline std::vector<std::string> vec_strings(const RatVec& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(rat_str(v(i)));
  return out;
}

}  // namespace clipcone
