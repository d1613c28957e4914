#include <gtest/gtest.h>

#include <random>

#include "nbihom/errors.hpp"
#include "nbihom/exactla.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace nbihom;

namespace {

MatrixQ M(std::vector<std::vector<int>> rows) {
  std::vector<Vector> rs;
  for (auto& r : rows) {
    Vector v;
    for (int x : r) v.emplace_back(x);
    rs.push_back(v);
  }
  return MatrixQ::from_rows(rs);
}

Vector V(std::vector<Rational> xs) { return xs; }

MatrixQ random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  // Low rank is common with these weights.
  std::discrete_distribution<int> pick{6, 1, 1, 1, 1};
  const int vals[] = {0, 1, -1, 2, 3};
  MatrixQ m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = fx::q(vals[pick(rng)], 1 + (rng() % 3));
  return m;
}

}  // namespace

TEST(Rational, ParseAndCanonicalForm) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("0/5"), Rational(0));
  auto q = parse_rational("4/-6");
  EXPECT_EQ(q.get_num(), -2);
  EXPECT_EQ(q.get_den(), 3);
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(fx::q(-3, 6)), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
}

TEST(Rref, Examples) {
  auto a = rref(M({{2, 4}, {1, 2}}));
  EXPECT_EQ(a.rank, 1u);
  EXPECT_EQ(a.reduced, M({{1, 2}, {0, 0}}));
  auto b = rref(MatrixQ::identity(2));
  EXPECT_EQ(b.rank, 2u);
  EXPECT_EQ(b.reduced, MatrixQ::identity(2));
  auto c = rref(M({{1, 2}, {3, 4}}));
  EXPECT_EQ(c.rank, 2u);
  EXPECT_EQ(c.reduced, MatrixQ::identity(2));
}

TEST(Nullspace, Examples) {
  EXPECT_EQ(nullspace(MatrixQ(2, 2)).dim(), 2u);
  EXPECT_EQ(nullspace(MatrixQ::identity(2)).dim(), 0u);
  auto n = nullspace(M({{1, 2}, {0, 0}}));
  ASSERT_EQ(n.dim(), 1u);
  EXPECT_TRUE(n.contains(V({-2, 1})));
  EXPECT_TRUE(is_zero(M({{1, 2}, {0, 0}}).apply(n.basis()[0])));
}

TEST(SolveLinear, Examples) {
  EXPECT_EQ(solve_linear(MatrixQ::identity(2), V({3, 5})), V({3, 5}));
  EXPECT_FALSE(solve_linear(MatrixQ(2, 2), V({1, 0})).has_value());
  auto m = M({{1, 2}, {0, 0}});
  auto x = solve_linear(m, V({4, 0}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.apply(*x), V({4, 0}));
  EXPECT_FALSE(solve_linear(m, V({4, 1})).has_value());
}

TEST(Subspace, Membership) {
  auto s = SubspaceQ::span(2, {V({1, 0})});
  EXPECT_TRUE(subspace_membership(s, V({2, 0})));
  EXPECT_FALSE(subspace_membership(s, V({0, 1})));
  auto t = SubspaceQ::span(2, {V({1, 1}), V({1, -1})});
  EXPECT_TRUE(subspace_membership(t, V({3, 5})));
  auto c = t.coordinates(V({3, 5}));
  ASSERT_TRUE(c.has_value());
  Vector back(2);
  for (std::size_t i = 0; i < t.dim(); ++i) axpy(back, (*c)[i], t.basis()[i]);
  EXPECT_EQ(back, V({3, 5}));
  EXPECT_THROW(subspace_membership(s, V({1, 0, 0})), DimensionError);
}

TEST(Subspace, Intersect) {
  auto a = SubspaceQ::span(2, {V({1, 0}), V({0, 1})});
  auto b = SubspaceQ::span(2, {V({1, 1})});
  EXPECT_EQ(subspace_intersect(a, b), b);
  EXPECT_EQ(subspace_intersect(b, b), b);
  auto x = SubspaceQ::span(2, {V({1, 0})});
  auto y = SubspaceQ::span(2, {V({0, 1})});
  EXPECT_EQ(subspace_intersect(x, y).dim(), 0u);
  EXPECT_THROW(subspace_intersect(x, SubspaceQ(3)), DimensionError);
}

TEST(Subspace, CanonicalBasisIsSyntactic) {
  auto a = SubspaceQ::span(3, {V({1, 2, 3}), V({0, 1, 1})});
  auto b = SubspaceQ::span(3, {V({1, 3, 4}), V({2, 4, 6}), V({1, 1, 2})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.basis(), b.basis());
}

TEST(Matrix, InverseAndKronecker) {
  auto m = M({{1, 2}, {3, 4}});
  auto inv = m.inverse();
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, MatrixQ::identity(2));
  EXPECT_FALSE(M({{1, 2}, {2, 4}}).inverse().has_value());
  auto k = kronecker(M({{1, 2}}), MatrixQ::identity(2));
  EXPECT_EQ(k, M({{1, 0, 2, 0}, {0, 1, 0, 2}}));
  EXPECT_EQ(MatrixQ::unflatten(2, 2, m.flatten()), m);
  EXPECT_EQ(m.pow(0), MatrixQ::identity(2));
  EXPECT_EQ(m.pow(2), m * m);
}

TEST(ExactlaProperties, RandomMatrices) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = random_matrix(rng, r, c);
    auto red = rref(m);
    // idempotent
    EXPECT_EQ(rref(red.reduced).reduced, red.reduced);
    auto ns = nullspace(m);
    EXPECT_EQ(ns.dim() + red.rank, c);
    for (const auto& v : ns.basis()) EXPECT_TRUE(is_zero(m.apply(v)));
    // independent Gauss-Jordan agrees on rank
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(m.row(i));
    EXPECT_EQ(oracle::rank(rows, c), red.rank);
    // solve_linear on a consistent right-hand side
    Vector x(c);
    for (auto& e : x) e = static_cast<int>(rng() % 5) - 2;
    auto b = m.apply(x);
    auto sol = solve_linear(m, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.apply(*sol), b);
    // intersection against the stacked-kernel oracle
    auto m2 = random_matrix(rng, 1 + rng() % 4, c);
    auto ns2 = nullspace(m2);
    auto inter = subspace_intersect(ns, ns2);
    std::vector<Vector> stacked = rows;
    for (std::size_t i = 0; i < m2.rows(); ++i) stacked.push_back(m2.row(i));
    EXPECT_TRUE(oracle::same_span(inter.basis(), oracle::nullspace(stacked, c), c));
    // annihilator
    auto ann = annihilator(ns);
    EXPECT_EQ(ann.dim() + ns.dim(), c);
  }
}
