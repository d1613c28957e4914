#include "nbihom/repmod.hpp"

#include <algorithm>

#include "internal.hpp"
#include "nbihom/errors.hpp"

namespace nbihom {

using detail::cube;
using detail::EpsCache;
using detail::sparse_columns;

std::vector<std::size_t> BiHomModule::action_shape(std::size_t n, std::size_t i, std::size_t dim_l,
                                                   std::size_t dim_m) {
  std::vector<std::size_t> s(n, dim_l);
  s[i] = dim_m;
  return s;
}

BiHomModule::BiHomModule(std::shared_ptr<const ColorAlgebra> algebra, std::vector<GroupElement> degrees,
                         MatrixQ alpha, MatrixQ beta, std::vector<MultilinearTable> actions)
    : algebra_(std::move(algebra)), degrees_(std::move(degrees)), alpha_(std::move(alpha)), beta_(std::move(beta)),
      actions_(std::move(actions)) {
  if (!algebra_) throw DimensionError("module without an algebra");
  const auto n = algebra_->arity();
  const auto m = degrees_.size();
  detail::require_square(alpha_, m, "alpha_M");
  detail::require_square(beta_, m, "beta_M");
  for (const auto& d : degrees_)
    if (!algebra_->group().contains(d)) throw DimensionError("module degree outside the grading group");
  if (actions_.size() != n) throw DimensionError("module needs one action per bracket slot");
  for (std::size_t i = 0; i < n; ++i) {
    if (actions_[i].slot_dims() != action_shape(n, i, algebra_->dim(), m) || actions_[i].out_dim() != m) {
      throw DimensionError("action " + std::to_string(i + 1) + " has the wrong shape");
    }
  }
}

std::vector<std::string> module_invariant_violations(const BiHomModule& M) {
  std::vector<std::string> out;
  const auto& L = M.algebra();
  const auto& G = L.group();
  if (M.alpha() * M.beta() != M.beta() * M.alpha()) out.push_back("alpha_M and beta_M do not commute");
  if (!is_homogeneous_matrix(G, M.degrees(), M.alpha(), G.identity())) out.push_back("alpha_M is not even");
  if (!is_homogeneous_matrix(G, M.degrees(), M.beta(), G.identity())) out.push_back("beta_M is not even");
  for (std::size_t i = 0; i < M.actions().size(); ++i) {
    bool ok = true;
    M.action(i).for_each_nonzero([&](const std::vector<std::size_t>& idx, const SparseVector& v) {
      auto d = G.identity();
      for (std::size_t s = 0; s < idx.size(); ++s) d = G.add(d, s == i ? M.degree(idx[s]) : L.degree(idx[s]));
      for (const auto& [o, c] : v)
        if (M.degree(o) != d) ok = false;
    });
    if (!ok) out.push_back("action " + std::to_string(i + 1) + " is not even");
  }
  return out;
}

namespace {

struct Twists {
  std::vector<SparseVector> a, b, b2;     // algebra
  std::vector<SparseVector> am, bm, bm2;  // module
};

Twists twists(const BiHomModule& M) {
  const auto& L = M.algebra();
  return {sparse_columns(L.alpha()), sparse_columns(L.beta()), sparse_columns(L.beta() * L.beta()),
          sparse_columns(M.alpha()), sparse_columns(M.beta()), sparse_columns(M.beta() * M.beta())};
}

// ω_i on the twisted placement of z.
Vector placed(const BiHomModule& M, const Twists& tw, std::size_t i, const std::vector<std::size_t>& z,
              std::vector<SparseVector>& args) {
  const auto n = z.size();
  for (std::size_t s = 0; s < n; ++s) {
    const bool last = s + 1 == n;
    if (s == i) {
      args[s] = last ? tw.am[z[s]] : tw.bm[z[s]];
    } else {
      args[s] = last ? tw.a[z[s]] : tw.b[z[s]];
    }
  }
  return M.action(i).eval_sparse(args);
}

CheckResult check_a(const BiHomModule& M, const Twists& tw) {
  ResultBuilder rb("a_skew_symmetry");
  const auto& L = M.algebra();
  const auto n = L.arity();
  std::vector<SparseVector> args(n);
  for (std::size_t i = 0; i < n; ++i) {
    for_each_tuple(BiHomModule::action_shape(n, i, L.dim(), M.dim()), [&](const std::vector<std::size_t>& z) {
      auto lhs = placed(M, tw, i, z, args);
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (k == i || k + 1 == i) continue;
        auto y = z;
        std::swap(y[k], y[k + 1]);
        auto rhs = placed(M, tw, i, y, args);
        Rational s = -L.eps_basis(z[k], z[k + 1]);
        for (auto& v : rhs) v *= s;
        rb.check(lhs == rhs, z, k, lhs, rhs, "action " + std::to_string(i + 1));
      }
    });
  }
  return std::move(rb).finish();
}

CheckResult check_b(const BiHomModule& M, const Twists& tw) {
  ResultBuilder rb("b_exchange");
  const auto& L = M.algebra();
  const auto n = L.arity();
  std::vector<SparseVector> args(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for_each_tuple(BiHomModule::action_shape(n, i, L.dim(), M.dim()), [&](const std::vector<std::size_t>& z) {
      auto lhs = placed(M, tw, i, z, args);
      auto y = z;
      std::swap(y[i], y[i + 1]);
      auto rhs = placed(M, tw, i + 1, y, args);
      Rational s = -L.eps()(M.degree(z[i]), L.degree(z[i + 1]));
      for (auto& v : rhs) v *= s;
      rb.check(lhs == rhs, z, i, lhs, rhs, "actions " + std::to_string(i + 1) + " and " + std::to_string(i + 2));
    });
  }
  return std::move(rb).finish();
}

// ω_n(β²x, ω_n(βy, α_M m)) = Σ_{i<n} ε(X, Y_i) ω_n(β²y…, [βx, αy_i], …, β²_M m)
//                            + ε(X, Y_n) ω_n(β²y, ω_n(βx, α_M m))
CheckResult check_c(const BiHomModule& M, const Twists& tw) {
  ResultBuilder rb("c_compatibility");
  const auto& L = M.algebra();
  const auto& G = L.group();
  const auto n = L.arity();
  const auto dl = L.dim();
  const auto dm = M.dim();
  const auto& Wn = M.action(n - 1);
  const auto& T = L.bracket();
  EpsCache eps(L.eps());

  // inner[y, m] = ω_n(βy_1, …, βy_{n−1}, α_M m)
  std::vector<SparseVector> args(n);
  auto inner_of = [&](const std::vector<std::size_t>& y, std::size_t m) {
    for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b[y[s]];
    args[n - 1] = tw.am[m];
    return sparsify(Wn.eval_sparse(args));
  };
  std::vector<std::size_t> full(2 * n - 1);
  for_each_tuple(cube(dl, n - 1), [&](const std::vector<std::size_t>& x) {
    const auto X = L.degree_sum(x);
    // br[j] = [βx, αe_j]
    std::vector<SparseVector> br(dl);
    for (std::size_t j = 0; j < dl; ++j) {
      for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b[x[s]];
      args[n - 1] = tw.a[j];
      br[j] = sparsify(T.eval_sparse(args));
    }
    std::vector<SparseVector> wx(dm);
    for (std::size_t m = 0; m < dm; ++m) wx[m] = inner_of(x, m);
    for_each_tuple(cube(dl, n - 1), [&](const std::vector<std::size_t>& y) {
      for (std::size_t m = 0; m < dm; ++m) {
        auto in = inner_of(y, m);
        for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b2[x[s]];
        args[n - 1] = in;
        auto lhs = Wn.eval_sparse(args);
        Vector rhs(dm);
        auto Y = G.identity();
        for (std::size_t i = 0; i + 1 < n; ++i) {
          if (!br[y[i]].empty()) {
            for (std::size_t s = 0; s + 1 < n; ++s) args[s] = s == i ? br[y[i]] : tw.b2[y[s]];
            args[n - 1] = tw.bm2[m];
            Wn.accumulate(args, eps(X, Y), rhs);
          }
          Y = G.add(Y, L.degree(y[i]));
        }
        for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b2[y[s]];
        args[n - 1] = wx[m];
        Wn.accumulate(args, eps(X, Y), rhs);
        std::copy(x.begin(), x.end(), full.begin());
        std::copy(y.begin(), y.end(), full.begin() + static_cast<std::ptrdiff_t>(n - 1));
        full.back() = m;
        rb.check(lhs == rhs, full, std::nullopt, lhs, rhs);
      }
    });
  });
  return std::move(rb).finish();
}

// ω_{n−1}(β²x, β²_M m, [βy, αy_n]) = Σ_i ε(X, Y_i) ω_i(β²y…, ω_{n−1}(βx, β_M m, αy_i), …, β²y_n)
CheckResult check_d(const BiHomModule& M, const Twists& tw) {
  ResultBuilder rb("d_bracket_argument");
  const auto& L = M.algebra();
  const auto& G = L.group();
  const auto n = L.arity();
  const auto dl = L.dim();
  const auto dm = M.dim();
  const auto& Wp = M.action(n - 2);
  const auto& T = L.bracket();
  EpsCache eps(L.eps());
  std::vector<SparseVector> args(n);

  // inner[y] = [βy_1, …, βy_{n−1}, αy_n]
  std::vector<SparseVector> inner;
  for_each_tuple(cube(dl, n), [&](const std::vector<std::size_t>& y) {
    for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b[y[s]];
    args[n - 1] = tw.a[y[n - 1]];
    inner.push_back(sparsify(T.eval_sparse(args)));
  });
  std::vector<std::size_t> full(2 * n - 1);
  for_each_tuple(cube(dl, n - 2), [&](const std::vector<std::size_t>& x) {
    for (std::size_t m = 0; m < dm; ++m) {
      const auto X = G.add(L.degree_sum(x), M.degree(m));
      // w[j] = ω_{n−1}(βx, β_M m, αe_j)
      std::vector<SparseVector> w(dl);
      for (std::size_t j = 0; j < dl; ++j) {
        for (std::size_t s = 0; s + 2 < n; ++s) args[s] = tw.b[x[s]];
        args[n - 2] = tw.bm[m];
        args[n - 1] = tw.a[j];
        w[j] = sparsify(Wp.eval_sparse(args));
      }
      std::size_t yflat = 0;
      for_each_tuple(cube(dl, n), [&](const std::vector<std::size_t>& y) {
        for (std::size_t s = 0; s + 2 < n; ++s) args[s] = tw.b2[x[s]];
        args[n - 2] = tw.bm2[m];
        args[n - 1] = inner[yflat++];
        auto lhs = Wp.eval_sparse(args);
        Vector rhs(dm);
        auto Y = G.identity();
        for (std::size_t i = 0; i < n; ++i) {
          if (!w[y[i]].empty()) {
            for (std::size_t s = 0; s < n; ++s) args[s] = s == i ? w[y[i]] : tw.b2[y[s]];
            M.action(i).accumulate(args, eps(X, Y), rhs);
          }
          Y = G.add(Y, L.degree(y[i]));
        }
        std::copy(x.begin(), x.end(), full.begin());
        full[n - 2] = m;
        std::copy(y.begin(), y.end(), full.begin() + static_cast<std::ptrdiff_t>(n - 1));
        rb.check(lhs == rhs, full, std::nullopt, lhs, rhs);
      });
    }
  });
  return std::move(rb).finish();
}

}  // namespace

Report check_module_axioms(const BiHomModule& M) {
  Report rep;
  rep.subject = "module_axioms";
  auto tw = twists(M);
  rep.checks.push_back(check_a(M, tw));
  rep.checks.push_back(check_b(M, tw));
  rep.checks.push_back(check_c(M, tw));
  rep.checks.push_back(check_d(M, tw));
  return rep;
}

BiHomModule adjoint_module(std::shared_ptr<const ColorAlgebra> L) {
  std::vector<MultilinearTable> actions(L->arity(), L->bracket());
  return BiHomModule(L, L->degrees(), L->alpha(), L->beta(), std::move(actions));
}

BiHomModule adjoint_module(const ColorAlgebra& L) { return adjoint_module(std::make_shared<const ColorAlgebra>(L)); }

BiHomModule zero_module(std::shared_ptr<const ColorAlgebra> L, std::vector<GroupElement> degrees) {
  const auto m = degrees.size();
  std::vector<MultilinearTable> actions;
  for (std::size_t i = 0; i < L->arity(); ++i)
    actions.emplace_back(BiHomModule::action_shape(L->arity(), i, L->dim(), m), m);
  return BiHomModule(L, std::move(degrees), MatrixQ::identity(m), MatrixQ::identity(m), std::move(actions));
}

BiHomModule twist_module(const BiHomModule& M, const HomogeneousMap& g) {
  const auto& L = M.algebra();
  if (!is_morphism(g, L, L)) throw PreconditionError("twist_module: map is not an endomorphism commuting with the twists");
  const auto n = L.arity();
  auto gcols = sparse_columns(g.matrix);
  std::vector<MultilinearTable> actions;
  std::vector<SparseVector> args(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& W = M.action(i);
    MultilinearTable out(W.slot_dims(), W.out_dim());
    for_each_tuple(W.slot_dims(), [&](const std::vector<std::size_t>& z) {
      for (std::size_t s = 0; s < n; ++s) args[s] = s == i ? SparseVector{{z[s], Rational(1)}} : gcols[z[s]];
      out.set(z, W.eval_sparse(args));
    });
    actions.push_back(std::move(out));
  }
  return BiHomModule(M.algebra_ptr(), M.degrees(), M.alpha(), M.beta(), std::move(actions));
}

BiHomModule direct_sum_modules(const BiHomModule& M1, const BiHomModule& M2) {
  if (!(M1.algebra() == M2.algebra())) throw PreconditionError("direct_sum_modules: modules over different algebras");
  const auto& L = M1.algebra();
  const auto n = L.arity();
  const auto d1 = M1.dim();
  const auto d = d1 + M2.dim();
  auto degrees = M1.degrees();
  degrees.insert(degrees.end(), M2.degrees().begin(), M2.degrees().end());
  std::vector<MultilinearTable> actions;
  for (std::size_t i = 0; i < n; ++i) {
    MultilinearTable out(BiHomModule::action_shape(n, i, L.dim(), d), d);
    M1.action(i).for_each_nonzero([&](const std::vector<std::size_t>& z, const SparseVector& v) {
      out.set(z, densify(v, d));
    });
    M2.action(i).for_each_nonzero([&](std::vector<std::size_t> z, const SparseVector& v) {
      z[i] += d1;
      Vector val(d);
      for (const auto& [o, c] : v) val[d1 + o] = c;
      out.set(z, val);
    });
    actions.push_back(std::move(out));
  }
  return BiHomModule(M1.algebra_ptr(), std::move(degrees), direct_sum(M1.alpha(), M2.alpha()),
                     direct_sum(M1.beta(), M2.beta()), std::move(actions));
}

ColorAlgebra semidirect_algebra(const BiHomModule& M, SemidirectMode mode, bool override_grading) {
  const auto& L = M.algebra();
  if (!L.group().is_trivial() && !override_grading) {
    throw PreconditionError("semidirect_algebra: grading group is not trivial (use the override)");
  }
  const auto n = L.arity();
  const auto dl = L.dim();
  const auto d = dl + M.dim();
  auto degrees = L.degrees();
  degrees.insert(degrees.end(), M.degrees().begin(), M.degrees().end());
  auto T = MultilinearTable::uniform(d, n);
  std::vector<std::size_t> idx(n);

  if (mode == SemidirectMode::Split) {
    for_each_tuple(cube(d, n), [&](const std::vector<std::size_t>& z) {
      std::size_t count = 0, slot = 0;
      for (std::size_t s = 0; s < n; ++s)
        if (z[s] >= dl) ++count, slot = s;
      if (count >= 2) return;
      Vector out(d);
      if (count == 0) {
        for (const auto& [o, c] : L.bracket().cell(z)) out[o] = c;
      } else {
        idx = z;
        idx[slot] -= dl;
        for (const auto& [o, c] : M.action(slot).cell(idx)) out[dl + o] = c;
      }
      T.set(z, out);
    });
  } else {
    // {x_1 + m_1, …} = [x_1, …, x_n] + Σ_i ω_i(x_1, …, m_i, …, x_n), evaluated on
    // the L and M components of each argument.
    std::vector<Vector> xs(n), ms(n), args(n);
    for_each_tuple(cube(d, n), [&](const std::vector<std::size_t>& z) {
      for (std::size_t s = 0; s < n; ++s) {
        Vector v = unit_vector(d, z[s]);
        xs[s] = Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dl));
        ms[s] = Vector(v.begin() + static_cast<std::ptrdiff_t>(dl), v.end());
      }
      Vector out(d);
      auto x = L.bracket().eval(xs);
      for (std::size_t o = 0; o < dl; ++o) out[o] = x[o];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < n; ++s) args[s] = s == i ? ms[s] : xs[s];
        auto w = M.action(i).eval(args);
        for (std::size_t o = 0; o < M.dim(); ++o) out[dl + o] += w[o];
      }
      T.set(z, out);
    });
  }
  return ColorAlgebra(L.eps(), n, std::move(degrees), direct_sum(L.alpha(), M.alpha()),
                      direct_sum(L.beta(), M.beta()), std::move(T));
}

}  // namespace nbihom
