#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "nbihom/errors.hpp"
#include "nbihom/repmod.hpp"
#include "oracle.hpp"

using namespace nbihom;
using fx::e;

namespace {

BiHomModule with_action(const BiHomModule& M, std::size_t i, const MultilinearTable& T) {
  auto acts = M.actions();
  acts.at(i) = T;
  return BiHomModule(M.algebra_ptr(), M.degrees(), M.alpha(), M.beta(), acts);
}

MultilinearTable negated(const MultilinearTable& T) {
  MultilinearTable out(T.slot_dims(), T.out_dim());
  T.for_each_nonzero([&](const std::vector<std::size_t>& z, const SparseVector& v) {
    Vector o(T.out_dim());
    for (const auto& [k, c] : v) o[k] = -c;
    out.set(z, o);
  });
  return out;
}

bool all_zero(const BiHomModule& M) {
  bool zero = true;
  for (const auto& T : M.actions()) T.for_each_nonzero([&](const auto&, const auto&) { zero = false; });
  return zero;
}

ColorAlgebra zero_trivial(std::size_t dim, std::size_t arity) {
  return fx::make_algebra(builtin_bicharacter("trivial"), arity, fx::trivial_degrees(dim), {});
}

}  // namespace

TEST(Adjoint, ActionsAreTheBracket) {
  auto L = fx::color_ternary();
  auto M = adjoint_module(L);
  ASSERT_EQ(M.dim(), 4u);
  ASSERT_EQ(M.actions().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for_each_tuple(M.action(i).slot_dims(), [&](const std::vector<std::size_t>& z) {
      EXPECT_EQ(M.action(i).get(z), eval_bracket_basis(L, z));
    });
  EXPECT_EQ(M.alpha(), L.alpha());
  EXPECT_TRUE(module_invariant_violations(M).empty());
}

TEST(Adjoint, ColorTernaryFailsOnlyJacobiShapedAxioms) {
  // a) and b) are inherited from skew-symmetry; c) and d) from the Jacobi identity,
  // which the table violates.
  auto L = fx::color_ternary();
  auto r = check_module_axioms(adjoint_module(L));
  EXPECT_TRUE(r.at("a_skew_symmetry").passed());
  EXPECT_TRUE(r.at("b_exchange").passed());
  EXPECT_EQ(r.at("c_compatibility").status, Status::Fail);
  EXPECT_EQ(r.at("d_bracket_argument").status, Status::Fail);
  EXPECT_EQ(r.at("c_compatibility").failures.size(), 90u);
  EXPECT_EQ(r.at("d_bracket_argument").failures.size(), 90u);
  ASSERT_NE(r.at("c_compatibility").witness(), nullptr);
  EXPECT_EQ(r.at("c_compatibility").witness()->indices, (std::vector<std::size_t>{0, 1, 0, 2, 2}));
  // the same tuples as the algebra's own Jacobi failures
  std::set<std::vector<std::size_t>> seen;
  for (const auto& w : r.at("d_bracket_argument").failures) seen.insert(w.indices);
  EXPECT_EQ(seen, oracle::jacobi_failures(L));
}

TEST(Adjoint, ValidAlgebrasPass) {
  for (auto& [name, L] : fx::catalog()) {
    if (name == "color_ternary") continue;
    EXPECT_TRUE(check_module_axioms(adjoint_module(L)).passed()) << name;
  }
  std::mt19937 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    auto [label, L] = fx::random_valid_algebra(rng);
    EXPECT_TRUE(check_module_axioms(adjoint_module(L)).passed()) << label;
  }
}

TEST(Mutation, SignFlipBreaksExchange) {
  for (auto L : {fx::color_ternary(), fx::a4()}) {
    auto M = adjoint_module(L);
    auto B = with_action(M, 0, negated(M.action(0)));
    auto r = check_module_axioms(B);
    const auto& b = r.at("b_exchange");
    EXPECT_EQ(b.status, Status::Fail);
    ASSERT_NE(b.witness(), nullptr);
    EXPECT_EQ(b.witness()->position, std::optional<std::size_t>(0));
    EXPECT_EQ(b.witness()->indices.size(), 3u);
    EXPECT_NE(b.witness()->lhs, b.witness()->rhs);
  }
}

TEST(Mutation, SingleEntry) {
  auto L = fx::osp12();
  auto M = adjoint_module(L);
  auto T = M.action(1);
  // H acting on E in the module slot: [H, E] = 2E, change to 3E
  std::size_t z[] = {0, 1};
  T.set(z, Rational(3) * e(5, 1));
  auto r = check_module_axioms(with_action(M, 1, T));
  EXPECT_FALSE(r.passed());
  bool located = false;
  for (const auto& c : r.checks)
    for (const auto& w : c.failures) located = located || !w.indices.empty();
  EXPECT_TRUE(located);
}

TEST(TwistModule, IdentityZeroAndEndomorphisms) {
  for (auto& [name, L] : fx::catalog()) {
    auto M = adjoint_module(L);
    HomogeneousMap id{L.group().identity(), MatrixQ::identity(L.dim())};
    EXPECT_EQ(twist_module(M, id), M) << name;
    HomogeneousMap zero{L.group().identity(), MatrixQ(L.dim(), L.dim())};
    EXPECT_TRUE(all_zero(twist_module(M, zero))) << name;
    if (!is_multiplicative(L)) continue;
    HomogeneousMap a{L.group().identity(), L.alpha()};
    auto T = twist_module(M, a);
    if (name != "color_ternary") EXPECT_TRUE(check_module_axioms(T).passed()) << name;
  }
  auto L = fx::twisted_sl2();
  auto M = adjoint_module(L);
  HomogeneousMap ab{L.group().identity(), L.alpha() * L.beta()};
  auto T = twist_module(M, ab);
  EXPECT_TRUE(check_module_axioms(T).passed());
  // ω̃_1(m, x) = ω_1(m, αβ x)
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t x = 0; x < 3; ++x) {
      std::size_t z[] = {m, x};
      std::vector<Vector> args{e(3, m), oracle::mat_vec(ab.matrix, e(3, x))};
      EXPECT_EQ(T.action(0).get(z), oracle::bracket(L, args));
    }
  HomogeneousMap two{L.group().identity(), Rational(2) * MatrixQ::identity(3)};
  EXPECT_THROW(twist_module(M, two), PreconditionError);
}

TEST(DirectSumModules, Blocks) {
  auto L = std::make_shared<const ColorAlgebra>(fx::color_ternary());
  auto M = adjoint_module(L);
  auto Z = zero_module(L, {});
  EXPECT_EQ(direct_sum_modules(M, Z), M);
  auto Z2 = zero_module(L, fx::z2_degrees({0, 1}));
  EXPECT_TRUE(check_module_axioms(Z2).passed());
  auto ZZ = direct_sum_modules(Z2, Z2);
  EXPECT_EQ(ZZ.dim(), 4u);
  EXPECT_TRUE(all_zero(ZZ));
  auto MM = direct_sum_modules(M, M);
  EXPECT_EQ(MM.dim(), 8u);
  // inherits exactly the failures of each summand
  auto r = check_module_axioms(MM);
  EXPECT_TRUE(r.at("a_skew_symmetry").passed());
  EXPECT_TRUE(r.at("b_exchange").passed());
  EXPECT_EQ(r.at("c_compatibility").status, Status::Fail);

  for (auto& [name, A] : fx::catalog()) {
    if (name == "color_ternary") continue;
    auto P = std::make_shared<const ColorAlgebra>(A);
    auto S = direct_sum_modules(adjoint_module(P), adjoint_module(P));
    EXPECT_TRUE(check_module_axioms(S).passed()) << name;
  }
  auto other = std::make_shared<const ColorAlgebra>(fx::zero_ternary());
  EXPECT_THROW(direct_sum_modules(M, zero_module(other, {})), PreconditionError);
}

TEST(Semidirect, ZeroAlgebraWithAdjoint) {
  for (std::size_t n : {2u, 3u}) {
    auto L = zero_trivial(2, n);
    auto S = semidirect_algebra(adjoint_module(L));
    EXPECT_EQ(S.dim(), 4u);
    EXPECT_TRUE(check_axioms(S).passed());
    auto S2 = semidirect_algebra(adjoint_module(L), SemidirectMode::Summed);
    EXPECT_EQ(S, S2);
  }
}

TEST(Semidirect, RestrictsToL) {
  for (auto L : {fx::sl2(), fx::heisenberg(), fx::a4(), fx::twisted_sl2(), fx::bihom_heisenberg()}) {
    auto S = semidirect_algebra(adjoint_module(L));
    EXPECT_TRUE(check_axioms(S).passed());
    const auto d = L.dim();
    for_each_tuple(std::vector<std::size_t>(L.arity(), d), [&](const std::vector<std::size_t>& t) {
      auto v = eval_bracket_basis(S, t);
      auto w = eval_bracket_basis(L, t);
      for (std::size_t q = 0; q < d; ++q) EXPECT_EQ(v[q], w[q]);
      for (std::size_t q = d; q < 2 * d; ++q) EXPECT_EQ(v[q], 0);
    });
    // two module arguments give zero
    std::vector<std::size_t> t(L.arity(), 0);
    t[0] = d;
    t[1] = d + 1;
    EXPECT_TRUE(is_zero(eval_bracket_basis(S, t)));
    auto Z = semidirect_algebra(zero_module(std::make_shared<const ColorAlgebra>(L), fx::trivial_degrees(2)));
    EXPECT_EQ(Z.dim(), d + 2);
    EXPECT_TRUE(check_axioms(Z).passed());
  }
}

TEST(Semidirect, NontrivialGradingNeedsOverride) {
  auto L = fx::super_heisenberg();
  auto M = adjoint_module(L);
  EXPECT_THROW(semidirect_algebra(M), PreconditionError);
  auto S = semidirect_algebra(M, SemidirectMode::Split, true);
  EXPECT_EQ(S.dim(), 6u);
  EXPECT_TRUE(invariant_violations(S).empty());
}
