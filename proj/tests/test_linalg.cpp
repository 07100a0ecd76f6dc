#include <doctest.h>

#include <random>

#include "hochlab/errors.hpp"
#include "hochlab/linalg.hpp"

using namespace hochlab;

namespace {

RationalMatrix dense(std::vector<std::vector<Rational>> rows) { return RationalMatrix::from_dense(rows); }

RationalMatrix random_matrix(std::mt19937& rng, std::size_t max_dim) {
  std::uniform_int_distribution<int> dim(0, static_cast<int>(max_dim));
  std::uniform_int_distribution<int> entry(-3, 3);
  std::bernoulli_distribution keep(0.6);
  std::size_t r = dim(rng), c = dim(rng);
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m.set(i, j, entry(rng));
  return m;
}

// Rank by Laplace expansion over all square minors: independent of elimination.
Rational det(const std::vector<std::vector<Rational>>& a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  Rational acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<Rational>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    acc += (j % 2 ? -1 : 1) * a[0][j] * det(minor);
  }
  return acc;
}

}  // namespace

TEST_CASE("rational parsing is canonical") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("-6/3") == -2);
  CHECK(parse_rational("0/5").get_den() == 1);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK(to_string(parse_rational("-3/9")) == "-1/3");
}

TEST_CASE("row_reduce examples") {
  auto r = row_reduce(dense({{1, 2}, {2, 4}}));
  CHECK(r.reduced == dense({{1, 2}, {0, 0}}));
  CHECK(r.pivots == std::vector<std::size_t>{0});

  auto id = row_reduce(RationalMatrix::identity(3));
  CHECK(id.reduced == RationalMatrix::identity(3));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});

  auto half = dense({{Rational(1, 2), 1}, {1, 3}});
  // 1/2 * 3 - 1 * 1 = 1/2 != 0, so full rank.
  CHECK(det(half.to_dense()) == Rational(1, 2));
  CHECK(row_reduce(half).pivots.size() == 2);

  auto empty = row_reduce(RationalMatrix(0, 0));
  CHECK(empty.pivots.empty());
}

TEST_CASE("row_reduce transform reproduces the reduced form") {
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    auto m = random_matrix(rng, 9);
    auto r = row_reduce(m);
    CHECK((r.transform * m) == r.reduced);
    auto s = row_reduce_sparse(m);
    CHECK(s.reduced == r.reduced);
    CHECK(s.pivots == r.pivots);
  }
}

TEST_CASE("kernel_basis examples") {
  auto k = kernel_basis(dense({{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0].get(0) == -k[0].get(1));
  CHECK(kernel_basis(RationalMatrix::identity(2)).empty());

  auto m = dense({{1, 2}, {2, 4}});
  auto k2 = kernel_basis(m);
  REQUIRE(k2.size() == 1);
  CHECK(m.apply(SparseVector{2, -1}).is_zero());
  CHECK(k2[0].get(0) == -2 * k2[0].get(1));
}

TEST_CASE("solve_particular examples") {
  CHECK(solve_particular(RationalMatrix::identity(2), SparseVector{3, 5}) == SparseVector{3, 5});
  auto m = dense({{1, 1}});
  auto x = solve_particular(m, SparseVector{2});
  CHECK(x.get(0) + x.get(1) == 2);
  CHECK_THROWS_AS(solve_particular(dense({{1}, {2}}), SparseVector{1, 3}), NoSolution);
}

TEST_CASE("quotient_basis examples") {
  auto q = quotient_basis(2, {SparseVector{1, 0}});
  CHECK(q.dim() == 1);
  CHECK(q.reduce(SparseVector{1, 0}).is_zero());
  CHECK(!q.reduce(SparseVector{0, 1}).is_zero());

  auto q0 = quotient_basis(3, {});
  CHECK(q0.dim() == 3);
  CHECK(q0.reduce(SparseVector{4, 5, 6}) == SparseVector{4, 5, 6});

  auto q2 = quotient_basis(3, {SparseVector{1, 1, 0}, SparseVector{0, 1, 1}});
  CHECK(q2.reduce(SparseVector{1, 0, -1}).is_zero());
  CHECK(q2.dim() == 1);
}

TEST_CASE("random matrices: rank-nullity, kernel, exact back-substitution") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 200; ++t) {
    auto m = random_matrix(rng, 12);
    auto ker = kernel_basis(m);
    std::size_t rk = rank(m);
    CHECK(rk + ker.size() == m.cols());
    for (const auto& v : ker) CHECK(m.apply(v).is_zero());
    // kernel vectors are independent
    EchelonBasis e(m.cols());
    for (const auto& v : ker) CHECK(e.insert(v));
    CHECK(row_reduce(m).pivots.size() == rk);

    // a right-hand side in the image is always solved exactly
    SparseVector x0(m.cols());
    std::uniform_int_distribution<int> entry(-3, 3);
    for (std::size_t j = 0; j < m.cols(); ++j) x0.set(j, entry(rng));
    SparseVector b = m.apply(x0);
    auto x = solve_particular(m, b);
    CHECK(m.apply(x) == b);
  }
}

TEST_CASE("rank agrees with a determinant oracle on small matrices") {
  std::mt19937 rng(99);
  for (int t = 0; t < 80; ++t) {
    auto m = random_matrix(rng, 4);
    auto a = m.to_dense();
    // largest k with a nonzero k x k minor
    std::size_t best = 0;
    std::size_t r = m.rows(), c = m.cols();
    for (unsigned rs = 0; rs < (1u << r); ++rs)
      for (unsigned cs = 0; cs < (1u << c); ++cs) {
        if (__builtin_popcount(rs) != __builtin_popcount(cs)) continue;
        std::vector<std::vector<Rational>> sub;
        for (std::size_t i = 0; i < r; ++i) {
          if (!(rs >> i & 1)) continue;
          std::vector<Rational> row;
          for (std::size_t j = 0; j < c; ++j)
            if (cs >> j & 1) row.push_back(a[i][j]);
          sub.push_back(row);
        }
        if (det(sub) != 0) best = std::max<std::size_t>(best, __builtin_popcount(rs));
      }
    CHECK(rank(m) == best);
  }
}

TEST_CASE("quotient reduce is linear and vanishes exactly on the span") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 1 + t % 7;
    std::vector<SparseVector> sub;
    for (int k = 0; k < t % 4; ++k) {
      SparseVector v(n);
      for (std::size_t j = 0; j < n; ++j) v.set(j, entry(rng));
      sub.push_back(v);
    }
    auto q = quotient_basis(n, sub);
    EchelonBasis span(n);
    for (const auto& v : sub) span.insert(v);
    CHECK(q.dim() + span.rank() == n);
    SparseVector a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
      a.set(j, entry(rng));
      b.set(j, entry(rng));
    }
    Rational c = entry(rng);
    CHECK(q.reduce(a + c * b) == q.reduce(a) + c * q.reduce(b));
    CHECK(q.reduce(a).is_zero() == span.contains(a));
    for (const auto& v : sub) CHECK(q.reduce(v).is_zero());
  }
}

TEST_CASE("subquotient coordinates") {
  // span{e0, e1} / span{e0 + e1}
  Subquotient sq(3, {SparseVector{1, 0, 0}, SparseVector{0, 1, 0}}, {SparseVector{1, 1, 0}});
  CHECK(sq.dim() == 1);
  CHECK(sq.coordinates(SparseVector{1, 1, 0}).is_zero());
  CHECK(sq.coordinates(SparseVector{1, 0, 0}) == -sq.coordinates(SparseVector{0, 1, 0}));
  CHECK_THROWS_AS(sq.coordinates(SparseVector{0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(Subquotient(2, {SparseVector{1, 0}}, {SparseVector{0, 1}}), InvalidArgument);
}
