#include "nbihom/algebra.hpp"

#include <algorithm>

#include "internal.hpp"
#include "nbihom/errors.hpp"

namespace nbihom {

namespace detail {

std::vector<SparseVector> sparse_columns(const MatrixQ& m) {
  std::vector<SparseVector> out(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (sgn(m(r, c)) != 0) out[c].emplace_back(r, m(r, c));
  return out;
}

void require_square(const MatrixQ& m, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace detail

using detail::cube;
using detail::EpsCache;
using detail::sparse_columns;

bool is_homogeneous_matrix(const GradingGroup& G, const std::vector<GroupElement>& degrees, const MatrixQ& m,
                           const GroupElement& d) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0 && degrees[r] != G.add(degrees[c], d)) return false;
  return true;
}

ColorAlgebra::ColorAlgebra(Bicharacter eps, std::size_t arity, std::vector<GroupElement> degrees, MatrixQ alpha,
                           MatrixQ beta, MultilinearTable bracket)
    : eps_(std::move(eps)),
      arity_(arity),
      degrees_(std::move(degrees)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      bracket_(std::move(bracket)) {
  if (arity_ < 2) throw ValidationError({"arity must be at least 2"});
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (!group().contains(degrees_[i])) {
      throw ValidationError({"degree of basis vector " + std::to_string(i) + " is not a reduced group element"});
    }
  }
  detail::require_square(alpha_, dim(), "alpha");
  detail::require_square(beta_, dim(), "beta");
  if (bracket_.slot_dims() != cube(dim(), arity_) || bracket_.out_dim() != dim()) {
    throw DimensionError("bracket table shape does not match dimension and arity");
  }
}

std::optional<GroupElement> ColorAlgebra::degree_of(const Vector& v) const {
  std::optional<GroupElement> d;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (!d) {
      d = degrees_[i];
    } else if (*d != degrees_[i]) {
      return std::nullopt;
    }
  }
  return d;
}

GroupElement ColorAlgebra::degree_sum(std::span<const std::size_t> idx) const {
  auto g = group().identity();
  for (auto i : idx) g = group().add(g, degrees_.at(i));
  return g;
}

Rational ColorAlgebra::eps_basis(std::size_t i, std::size_t j) const { return eps_(degrees_.at(i), degrees_.at(j)); }

std::vector<std::string> invariant_violations(const ColorAlgebra& L) {
  std::vector<std::string> out;
  const auto& G = L.group();
  const auto e = G.identity();
  if (!is_homogeneous_matrix(G, L.degrees(), L.alpha(), e)) out.push_back("alpha is not even");
  if (!is_homogeneous_matrix(G, L.degrees(), L.beta(), e)) out.push_back("beta is not even");
  if (L.alpha() * L.beta() != L.beta() * L.alpha()) out.push_back("alpha and beta do not commute");
  L.bracket().for_each_nonzero([&](const std::vector<std::size_t>& idx, const SparseVector& value) {
    auto d = L.degree_sum(idx);
    for (const auto& [o, x] : value) {
      if (L.degree(o) != d) {
        std::string t;
        for (auto i : idx) t += (t.empty() ? "" : ",") + std::to_string(i);
        out.push_back("bracket value at (" + t + ") has a component of degree " + to_string(L.degree(o)) +
                      ", expected " + to_string(d));
        break;
      }
    }
  });
  return out;
}

Vector eval_bracket(const ColorAlgebra& L, std::span<const Vector> args) {
  if (args.size() != L.arity()) {
    throw DimensionError("bracket takes " + std::to_string(L.arity()) + " arguments, got " +
                         std::to_string(args.size()));
  }
  return L.bracket().eval(args);
}

Vector eval_bracket_basis(const ColorAlgebra& L, std::span<const std::size_t> idx) { return L.bracket().get(idx); }

GradedSubspace::GradedSubspace(std::vector<GroupElement> degrees, SubspaceQ space)
    : degrees_(std::move(degrees)), space_(std::move(space)) {
  if (space_.ambient_dim() != degrees_.size()) throw DimensionError("graded subspace ambient dimension mismatch");
  for (const auto& row : space_.basis()) {
    std::optional<GroupElement> d;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (sgn(row[i]) == 0) continue;
      if (d && *d != degrees_[i]) throw ValidationError({"subspace is not spanned by homogeneous vectors"});
      d = degrees_[i];
    }
  }
}

GradedSubspace GradedSubspace::span(const ColorAlgebra& L, const std::vector<Vector>& vectors) {
  return GradedSubspace(L.degrees(), SubspaceQ::span(L.dim(), vectors));
}

GradedSubspace GradedSubspace::whole(const ColorAlgebra& L) {
  return GradedSubspace(L.degrees(), SubspaceQ::full(L.dim()));
}

GradedSubspace GradedSubspace::zero(const ColorAlgebra& L) { return GradedSubspace(L.degrees(), SubspaceQ(L.dim())); }

std::map<GroupElement, std::size_t> GradedSubspace::dims_by_degree() const {
  std::map<GroupElement, std::size_t> out;
  for (std::size_t i = 0; i < space_.dim(); ++i) ++out[degrees_[space_.pivots()[i]]];
  return out;
}

namespace {

CheckResult check_commutation(const ColorAlgebra& L) {
  ResultBuilder rb("commutation");
  auto ab = L.alpha() * L.beta();
  auto ba = L.beta() * L.alpha();
  for (std::size_t c = 0; c < L.dim(); ++c) {
    auto l = ab.column(c);
    auto r = ba.column(c);
    rb.check(l == r, {c}, std::nullopt, l, r, "αβ(e) vs βα(e)");
  }
  return std::move(rb).finish();
}

CheckResult check_evenness(const ColorAlgebra& L) {
  ResultBuilder rb("evenness");
  const auto& G = L.group();
  auto twist = [&](const MatrixQ& m, std::size_t pos, const char* name) {
    for (std::size_t c = 0; c < L.dim(); ++c) {
      auto col = m.column(c);
      bool ok = true;
      for (std::size_t r = 0; r < L.dim(); ++r)
        if (sgn(col[r]) != 0 && L.degree(r) != L.degree(c)) ok = false;
      rb.check(ok, {c}, pos, col, {}, std::string(name) + " image of a degree " + to_string(L.degree(c)) + " vector");
    }
  };
  twist(L.alpha(), 0, "alpha");
  twist(L.beta(), 1, "beta");
  for_each_tuple(cube(L.dim(), L.arity()), [&](const std::vector<std::size_t>& idx) {
    const auto& cell = L.bracket().cell(idx);
    auto d = L.degree_sum(idx);
    bool ok = std::all_of(cell.begin(), cell.end(), [&](const auto& e) { return L.degree(e.first) == d; });
    rb.check(ok, idx, 2, densify(cell, L.dim()), {}, "bracket value expected in degree " + to_string(d));
  });
  (void)G;
  return std::move(rb).finish();
}

struct TwistedArgs {
  std::vector<SparseVector> a, b, b2;
};

TwistedArgs twisted_args(const ColorAlgebra& L) {
  return {sparse_columns(L.alpha()), sparse_columns(L.beta()), sparse_columns(L.beta() * L.beta())};
}

CheckResult check_skew(const ColorAlgebra& L, const TwistedArgs& tw) {
  ResultBuilder rb("skew_symmetry");
  const auto n = L.arity();
  std::vector<SparseVector> args(n);
  auto bracket_of = [&](const std::vector<std::size_t>& x) {
    for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b[x[s]];
    args[n - 1] = tw.a[x[n - 1]];
    return L.bracket().eval_sparse(args);
  };
  for_each_tuple(cube(L.dim(), n), [&](const std::vector<std::size_t>& x) {
    auto lhs = bracket_of(x);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      auto y = x;
      std::swap(y[k], y[k + 1]);
      auto rhs = bracket_of(y);
      Rational s = -L.eps_basis(x[k], x[k + 1]);
      for (auto& v : rhs) v *= s;
      rb.check(lhs == rhs, x, k, lhs, rhs);
    }
  });
  return std::move(rb).finish();
}

// Shared driver for both Jacobi forms. term(k) returns the k-th right-hand term.
template <class Sign>
CheckResult check_jacobi_impl(const ColorAlgebra& L, const TwistedArgs& tw, const std::string& name, bool alternate,
                              Sign&& sign_of) {
  ResultBuilder rb(name);
  const auto n = L.arity();
  const auto dim = L.dim();
  const auto& T = L.bracket();

  // inner[y] = [βy_1, …, βy_{n−1}, αy_n]
  std::vector<SparseVector> inner;
  inner.reserve(T.cell_count());
  {
    std::vector<SparseVector> args(n);
    for_each_tuple(cube(dim, n), [&](const std::vector<std::size_t>& y) {
      for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b[y[s]];
      args[n - 1] = tw.a[y[n - 1]];
      inner.push_back(sparsify(T.eval_sparse(args)));
    });
  }

  std::vector<SparseVector> args(n);
  std::vector<SparseVector> w(dim);
  std::vector<std::size_t> full(2 * n - 1);
  for_each_tuple(cube(dim, n - 1), [&](const std::vector<std::size_t>& x) {
    // w[j] = [βx_1, …, βx_{n−1}, αe_j]
    for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b[x[s]];
    for (std::size_t j = 0; j < dim; ++j) {
      args[n - 1] = tw.a[j];
      w[j] = sparsify(T.eval_sparse(args));
    }
    const auto X = L.degree_sum(x);
    std::size_t yflat = 0;
    for_each_tuple(cube(dim, n), [&](const std::vector<std::size_t>& y) {
      for (std::size_t s = 0; s + 1 < n; ++s) args[s] = tw.b2[x[s]];
      args[n - 1] = inner[yflat++];
      auto lhs = T.eval_sparse(args);
      Vector rhs(dim);
      for (std::size_t k = 0; k < n; ++k) {
        const auto& wk = w[y[k]];
        if (wk.empty()) continue;
        if (!alternate) {
          for (std::size_t s = 0; s < n; ++s) args[s] = s == k ? wk : tw.b2[y[s]];
        } else {
          std::size_t p = 0;
          for (std::size_t s = 0; s < n; ++s)
            if (s != k) args[p++] = tw.b2[y[s]];
          args[n - 1] = wk;
        }
        T.accumulate(args, sign_of(X, y, k), rhs);
      }
      if (lhs != rhs) {
        std::copy(x.begin(), x.end(), full.begin());
        std::copy(y.begin(), y.end(), full.begin() + static_cast<std::ptrdiff_t>(n - 1));
        rb.fail(full, std::nullopt, lhs, rhs);
      } else {
        rb.pass();
      }
    });
  });
  return std::move(rb).finish();
}

}  // namespace

Report check_axioms(const ColorAlgebra& L) {
  Report rep;
  rep.subject = "axioms";
  rep.checks.push_back(check_commutation(L));
  rep.checks.push_back(check_evenness(L));
  auto tw = twisted_args(L);
  rep.checks.push_back(check_skew(L, tw));
  EpsCache eps(L.eps());
  const auto& G = L.group();
  rep.checks.push_back(check_jacobi_impl(
      L, tw, "jacobi", false, [&](const GroupElement& X, const std::vector<std::size_t>& y, std::size_t k) {
        // Y_k: degrees of y_1 … y_{k−1}
        auto Yk = G.identity();
        for (std::size_t l = 0; l < k; ++l) Yk = G.add(Yk, L.degree(y[l]));
        return eps(X, Yk);
      }));
  return rep;
}

Report check_jacobi_alternate(const ColorAlgebra& L, AlternateSign sign) {
  Report rep;
  rep.subject = "jacobi_alternate";
  auto tw = twisted_args(L);
  EpsCache eps(L.eps());
  const auto& G = L.group();
  const auto n = L.arity();
  rep.checks.push_back(check_jacobi_impl(
      L, tw, "jacobi_alternate", true, [&](const GroupElement& X, const std::vector<std::size_t>& y, std::size_t k) {
        auto rest = G.identity();
        auto after = G.identity();
        for (std::size_t l = 0; l < n; ++l) {
          if (l == k) continue;
          rest = G.add(rest, L.degree(y[l]));
          if (l > k) after = G.add(after, L.degree(y[l]));
        }
        Rational s = eps(X, rest) * eps(L.degree(y[k]), after);
        // k is 0-based here, so n−k transpositions in 1-based terms is n−1−k.
        if (sign == AlternateSign::Reordered && (n - 1 - k) % 2 == 1) s = -s;
        return s;
      }));
  return rep;
}

Report check_multiplicative(const ColorAlgebra& L) {
  Report rep;
  rep.subject = "multiplicative";
  auto one = [&](const MatrixQ& m, const char* name) {
    ResultBuilder rb(name);
    auto cols = sparse_columns(m);
    std::vector<SparseVector> args(L.arity());
    for_each_tuple(cube(L.dim(), L.arity()), [&](const std::vector<std::size_t>& x) {
      auto lhs = m.apply(L.bracket().get(x));
      for (std::size_t s = 0; s < x.size(); ++s) args[s] = cols[x[s]];
      auto rhs = L.bracket().eval_sparse(args);
      rb.check(lhs == rhs, x, std::nullopt, lhs, rhs);
    });
    return std::move(rb).finish();
  };
  rep.checks.push_back(one(L.alpha(), "alpha_multiplicative"));
  rep.checks.push_back(one(L.beta(), "beta_multiplicative"));
  return rep;
}

bool is_multiplicative(const ColorAlgebra& L) { return check_multiplicative(L).passed(); }

bool is_involutive(const ColorAlgebra& L) {
  auto id = MatrixQ::identity(L.dim());
  return L.alpha() * L.alpha() == id && L.beta() * L.beta() == id;
}

bool is_regular(const ColorAlgebra& L) { return L.alpha().inverse() && L.beta().inverse(); }

bool is_morphism(const HomogeneousMap& f, const ColorAlgebra& L, const ColorAlgebra& L2) {
  if (f.degree != L.group().identity()) throw PreconditionError("morphism must be even (degree e)");
  if (f.matrix.rows() != L2.dim() || f.matrix.cols() != L.dim()) throw DimensionError("morphism shape mismatch");
  for (std::size_t r = 0; r < L2.dim(); ++r)
    for (std::size_t c = 0; c < L.dim(); ++c)
      if (sgn(f.matrix(r, c)) != 0 && L2.degree(r) != L.degree(c)) throw PreconditionError("morphism is not even");
  if (L.arity() != L2.arity()) return false;
  if (f.matrix * L.alpha() != L2.alpha() * f.matrix) return false;
  if (f.matrix * L.beta() != L2.beta() * f.matrix) return false;
  auto cols = sparse_columns(f.matrix);
  std::vector<SparseVector> args(L.arity());
  bool ok = true;
  for_each_tuple(cube(L.dim(), L.arity()), [&](const std::vector<std::size_t>& x) {
    if (!ok) return;
    for (std::size_t s = 0; s < x.size(); ++s) args[s] = cols[x[s]];
    if (f.matrix.apply(L.bracket().get(x)) != L2.bracket().eval_sparse(args)) ok = false;
  });
  return ok;
}

}  // namespace nbihom
