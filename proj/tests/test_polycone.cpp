#include "clipcone/polycone.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "clipcone/linalg.hpp"
#include "doctest.h"

using namespace clipcone;

namespace {

RatVec rv(std::initializer_list<int> xs) {
  RatVec v(static_cast<long>(xs.size()));
  long i = 0;
  for (int x : xs) v(i++) = x;
  return v;
}

std::vector<IntVec> sorted_primitive(std::vector<RatVec> vs) {
  std::vector<IntVec> out;
  for (const auto& v : vs) out.push_back(primitive(v));
  std::sort(out.begin(), out.end(), [](const IntVec& x, const IntVec& y) {
    for (long i = 0; i < x.size(); ++i)
      if (x(i) != y(i)) return x(i) < y(i);
    return false;
  });
  return out;
}

bool same_vec_sets(const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!vec_eq(a[i], b[i])) return false;
  return true;
}

// Brute-force extreme ray enumeration for a pointed cone given by inequality
// normals: every extreme ray is the kernel of some (n-1)-subset of rank n-1,
// oriented feasibly, and tight on a rank-(n-1) subset of all normals.
std::vector<IntVec> oracle_rays(long n, const std::vector<RatVec>& normals) {
  std::vector<IntVec> found;
  std::set<std::vector<Int>> seen;
  size_t k = normals.size();
  std::vector<size_t> idx;
  auto feasible = [&](const RatVec& v) {
    for (const auto& a : normals)
      if (a.dot(v) < 0) return false;
    return true;
  };
  auto tight_rank = [&](const RatVec& v) {
    std::vector<RatMat> rows;
    for (const auto& a : normals)
      if (a.dot(v) == 0) rows.push_back(a.transpose());
    if (rows.empty()) return 0L;
    return linalg::rank(linalg::vstack_rat(rows));
  };
  std::vector<bool> pick(k, false);
  if (k + 1 < static_cast<size_t>(n)) return found;
  std::fill(pick.begin(), pick.begin() + (n - 1), true);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<RatMat> rows;
    for (size_t i = 0; i < k; ++i)
      if (pick[i]) rows.push_back(normals[i].transpose());
    RatMat stacked = linalg::vstack_rat(rows);
    RatMat ker = linalg::kernel(stacked);
    if (ker.cols() != 1) continue;
    RatVec v = ker.col(0);
    RatVec w = v;
    if (!feasible(w)) w = -v;
    if (!feasible(w)) continue;
    if (tight_rank(w) != n - 1) continue;
    IntVec p = primitive(w);
    std::vector<Int> key(p.data(), p.data() + p.size());
    if (seen.insert(key).second) found.push_back(p);
  } while (std::next_permutation(pick.begin(), pick.end()));
  std::sort(found.begin(), found.end(), [](const IntVec& x, const IntVec& y) {
    for (long i = 0; i < x.size(); ++i)
      if (x(i) != y(i)) return x(i) < y(i);
    return false;
  });
  return found;
}

}  // namespace

TEST_CASE("positive quadrant round trip") {
  PolyCone c = dd_from_rays(2, {rv({1, 0}), rv({0, 1})});
  CHECK(same_vec_sets(c.rays, sorted_primitive({rv({0, 1}), rv({1, 0})})));
  CHECK(same_vec_sets(c.facets, sorted_primitive({rv({0, 1}), rv({1, 0})})));
  CHECK(c.pointed());
  CHECK(c.full_dim());

  PolyCone f = dd_from_facets(3, {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  CHECK(f.rays.size() == 3);
  CHECK(same_vec_sets(f.rays, sorted_primitive({rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})})));
}

TEST_CASE("square-based cone has four facets") {
  std::vector<RatVec> rays{rv({1, 0, 0}), rv({1, 1, 0}), rv({1, 1, 1}), rv({1, 0, 1})};
  PolyCone c = dd_from_rays(3, rays);
  CHECK(c.rays.size() == 4);
  CHECK(c.facets.size() == 4);
  // Interior and boundary membership.
  CHECK(contains(c, rv({2, 1, 1}), Mode::Interior));
  CHECK(contains(c, rv({1, 0, 0}), Mode::Closure));
  CHECK(!contains(c, rv({1, 0, 0}), Mode::Interior));
  CHECK(!contains(c, rv({0, 1, 0}), Mode::Closure));
  CHECK(contains(c, rv({2, 1, 1}), Mode::Plus));
  // Oracle agreement.
  std::vector<RatVec> fr;
  for (const auto& f : c.facets) fr.push_back(to_rat(f));
  CHECK(same_vec_sets(c.rays, oracle_rays(3, fr)));
}

TEST_CASE("redundant generators are dropped") {
  PolyCone c = dd_from_rays(3, {rv({1, 0, 0}), rv({1, 1, 0}), rv({1, 1, 1}),
                                rv({1, 0, 1}), rv({1, 0, 0}), rv({4, 2, 2})});
  CHECK(c.rays.size() == 4);
}

TEST_CASE("round trip facets to rays to facets") {
  std::vector<RatVec> normals{rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1}),
                              rv({1, -1, 2})};
  PolyCone a = dd_from_facets(3, normals);
  std::vector<RatVec> back;
  for (const auto& r : a.rays) back.push_back(to_rat(r));
  PolyCone b = dd_from_rays(3, back);
  CHECK(same_vec_sets(a.facets, b.facets));
  CHECK(same_vec_sets(a.rays, b.rays));
}

TEST_CASE("random pointed cones agree with subset enumeration") {
  std::mt19937_64 rng(20240818);
  std::uniform_int_distribution<int> entry(-4, 4);
  int tested = 0;
  for (int trial = 0; trial < 60 && tested < 25; ++trial) {
    long n = 3 + (trial % 2);
    size_t k = static_cast<size_t>(n) + 1 + (static_cast<size_t>(trial) % 3);
    std::vector<RatVec> normals;
    for (size_t i = 0; i < k; ++i) {
      RatVec a(n);
      for (long j = 0; j < n; ++j) a(j) = entry(rng);
      normals.push_back(a);
    }
    PolyCone c = dd_from_facets(n, normals);
    if (!c.pointed()) continue;  // oracle covers the pointed case
    ++tested;
    CHECK(same_vec_sets(c.rays, oracle_rays(n, normals)));
    // Every reported ray satisfies the input constraints.
    for (const auto& r : c.rays)
      for (const auto& a : normals) CHECK(a.dot(to_rat(r)) >= 0);
  }
  CHECK(tested >= 10);
}

TEST_CASE("lineality and equations in degenerate cones") {
  // Halfplane x >= 0 in R^2.
  PolyCone half = dd_from_facets(2, {rv({1, 0})});
  CHECK(half.lines.size() == 1);
  CHECK(half.rays.size() == 1);
  CHECK(half.facets.size() == 1);
  CHECK(half.equations.empty());
  CHECK(same_line(to_rat(half.lines[0]), rv({0, 1})));
  CHECK(same_ray(to_rat(half.rays[0]), rv({1, 0})));

  // The line x = 0 in R^2: no rays, one line, one equation.
  PolyCone line = dd_from_facets(2, {rv({1, 0}), rv({-1, 0})});
  CHECK(line.rays.empty());
  CHECK(line.lines.size() == 1);
  CHECK(line.facets.empty());
  CHECK(line.equations.size() == 1);
  CHECK(contains(line, rv({0, 5}), Mode::Closure));
  CHECK(!contains(line, rv({1, 0}), Mode::Closure));
  CHECK(!contains(line, rv({0, 5}), Mode::Interior));  // not full-dimensional

  // Whole plane: no constraints at all.
  PolyCone all = dd_from_facets(2, {});
  CHECK(all.rays.empty());
  CHECK(all.lines.size() == 2);
  CHECK(all.facets.empty());
  CHECK(all.equations.empty());
  CHECK(contains(all, rv({-3, 7}), Mode::Interior));

  // Origin only: cut the plane to a point.
  PolyCone origin = dd_from_facets(2, {rv({1, 0}), rv({-1, 0}), rv({0, 1}), rv({0, -1})});
  CHECK(origin.rays.empty());
  CHECK(origin.lines.empty());
  CHECK(origin.equations.size() == 2);
  CHECK(contains(origin, rv({0, 0}), Mode::Closure));
  CHECK(!contains(origin, rv({1, 0}), Mode::Closure));
}

TEST_CASE("degenerate input raises") {
  CHECK_THROWS_AS(dd_from_rays(2, {rv({0, 0}), rv({0, 0})}), DegenerateInput);
  CHECK_THROWS_AS(dd_from_rays(2, {}), DegenerateInput);
  PolyCone c = dd_from_rays(2, {rv({1, 0}), rv({0, 1})});
  RatVec wrong(3);
  wrong << Rat(1), Rat(1), Rat(1);
  CHECK_THROWS_AS(contains(c, wrong, Mode::Closure), DimensionMismatch);
}

TEST_CASE("closure membership is additive on samples") {
  std::vector<RatVec> normals{rv({1, 0, 0}), rv({0, 1, 0}), rv({1, -1, 2})};
  PolyCone c = dd_from_facets(3, normals);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5);
  int pairs = 0;
  while (pairs < 40) {
    RatVec u(3), v(3);
    for (long i = 0; i < 3; ++i) {
      u(i) = entry(rng);
      v(i) = entry(rng);
    }
    if (!contains(c, u, Mode::Closure) || !contains(c, v, Mode::Closure)) continue;
    ++pairs;
    CHECK(contains(c, RatVec(u + v), Mode::Closure));
    CHECK(contains(c, RatVec(u * Rat(7, 2)), Mode::Closure));
  }
}

TEST_CASE("direct sums embed blockwise") {
  PolyCone half = dd_from_rays(1, {rv({1})});
  PolyCone quad = direct_sum(half, half);
  CHECK(quad.dim == 2);
  CHECK(quad.rays.size() == 2);
  CHECK(quad.facets.size() == 2);
  CHECK(contains(quad, rv({2, 3}), Mode::Interior));
  CHECK(!contains(quad, rv({-1, 3}), Mode::Closure));

  PolyCone octant = direct_sum(quad, half);
  CHECK(octant.dim == 3);
  CHECK(octant.rays.size() == 3);
  CHECK(octant.facets.size() == 3);

  std::vector<RatVec> sq{rv({1, 0, 0}), rv({1, 1, 0}), rv({1, 1, 1}), rv({1, 0, 1})};
  PolyCone sum = direct_sum(dd_from_rays(3, sq), half);
  CHECK(sum.dim == 4);
  CHECK(sum.facets.size() == 5);
  // Consistency against a fresh double description of the embedded rays.
  std::vector<RatVec> embedded;
  for (const auto& r : sum.rays) embedded.push_back(to_rat(r));
  PolyCone redo = dd_from_rays(4, embedded);
  CHECK(same_vec_sets(redo.facets, sorted_primitive([&] {
          std::vector<RatVec> fs;
          for (const auto& f : sum.facets) fs.push_back(to_rat(f));
          return fs;
        }())));
}

TEST_CASE("rules preorder on simplicial cones") {
  const long d = 2;
  QCone sigma, xi;
  sigma.dim = xi.dim = 2;
  sigma.d = xi.d = d;
  auto q = [](int a, int b) { return QScalar(Rat(a), Rat(b)); };
  sigma.rays = {QVec{q(1, 0), q(0, 0)}, QVec{q(0, 0), q(1, 0)}};

  // Reflexivity.
  CHECK(rules(sigma, sigma));

  // All-rational xi: span condition only.
  xi.rays = {QVec{q(1, 0), q(0, 0)}, QVec{q(1, 0), q(1, 0)}};
  CHECK(rules(sigma, xi));

  // Irrational ray of xi absent from sigma.
  xi.rays = {QVec{q(1, 0), q(0, 1)}, QVec{q(1, 0), q(0, 0)}};
  CHECK(!rules(sigma, xi));

  // Same irrational ray present in sigma.
  QCone sigma2 = sigma;
  sigma2.rays = {QVec{q(1, 0), q(0, 1)}, QVec{q(0, 0), q(1, 0)}};
  QCone xi2;
  xi2.dim = 2;
  xi2.d = d;
  xi2.rays = {QVec{q(1, 0), q(0, 1)}};
  CHECK(rules(sigma2, xi2));

  // An opposite irrational direction is a different ray.
  QCone xi3 = xi2;
  xi3.rays = {QVec{q(-1, 0), q(0, -1)}};
  CHECK(!rules(sigma2, xi3));

  // Dependent rays are rejected.
  QCone bad;
  bad.dim = 2;
  bad.d = d;
  bad.rays = {QVec{q(1, 0), q(0, 0)}, QVec{q(2, 0), q(0, 0)}};
  CHECK_THROWS_AS(rules(bad, xi2), NotSimplicial);
}

TEST_CASE("rules span condition distinguishes subspaces") {
  const long d = 2;
  auto q = [](int a, int b) { return QScalar(Rat(a), Rat(b)); };
  // sigma spans R^3 with rays e1, e2, e1+sqrt(2) e3.
  QCone sigma;
  sigma.dim = 3;
  sigma.d = d;
  sigma.rays = {QVec{q(1, 0), q(0, 0), q(0, 0)},
                QVec{q(0, 0), q(1, 0), q(0, 0)},
                QVec{q(1, 0), q(0, 0), q(0, 1)}};
  // xi rational rays span {x3 = 0}: sigma's subset {e1, e2} matches.
  QCone xi;
  xi.dim = 3;
  xi.d = d;
  xi.rays = {QVec{q(1, 0), q(1, 0), q(0, 0)}, QVec{q(1, 0), q(-1, 0), q(0, 0)}};
  CHECK(rules(sigma, xi));
  // xi rational rays span the plane x2 = 0, which sigma's subset
  // {e1, e1 + sqrt(2) e3} also spans over the field.
  QCone xi2;
  xi2.dim = 3;
  xi2.d = d;
  xi2.rays = {QVec{q(1, 0), q(0, 0), q(0, 0)}, QVec{q(0, 0), q(0, 0), q(1, 0)}};
  CHECK(rules(sigma, xi2));
  // The line through (1,0,1) meets no subset span of sigma's rays.
  QCone xi3;
  xi3.dim = 3;
  xi3.d = d;
  xi3.rays = {QVec{q(1, 0), q(0, 0), q(1, 0)}};
  CHECK(!rules(sigma, xi3));

  // Transitivity spot check on shared ray sets.
  QCone a = sigma;
  QCone b = sigma;
  b.rays = {sigma.rays[0], sigma.rays[1]};
  QCone c = sigma;
  c.rays = {sigma.rays[0]};
  CHECK(rules(a, b));
  CHECK(rules(b, c));
  CHECK(rules(a, c));
}

TEST_CASE("to_qcone rejects cones with lineality") {
  PolyCone half = dd_from_facets(2, {rv({1, 0})});
  CHECK_THROWS_AS(to_qcone(half, 2), NotSimplicial);
  PolyCone quad = dd_from_rays(2, {rv({1, 0}), rv({0, 1})});
  QCone q = to_qcone(quad, 2);
  CHECK(q.rays.size() == 2);
  CHECK(rules(q, q));
}
