#include "nbihom/constructions.hpp"

#include <algorithm>

#include "internal.hpp"
#include "nbihom/derivations.hpp"
#include "nbihom/errors.hpp"

namespace nbihom {

using detail::cube;
using detail::sparse_columns;

namespace {

std::vector<SparseVector> standard_basis(std::size_t dim) {
  std::vector<SparseVector> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = SparseVector{{i, Rational(1)}};
  return out;
}

void require_even(const ColorAlgebra& L, const HomogeneousMap& g, const char* what) {
  if (g.matrix.rows() != L.dim() || g.matrix.cols() != L.dim()) {
    throw DimensionError(std::string(what) + " has the wrong shape");
  }
  if (g.degree != L.group().identity() || !is_homogeneous_matrix(L.group(), L.degrees(), g.matrix, g.degree)) {
    throw PreconditionError(std::string(what) + " is not even");
  }
}

bool commutes_with_twists(const ColorAlgebra& L, const MatrixQ& g) {
  return g * L.alpha() == L.alpha() * g && g * L.beta() == L.beta() * g;
}

// New algebra on L's space whose bracket on basis tuples is f(columns…).
template <class F>
MultilinearTable rebuild(const ColorAlgebra& L, std::size_t arity, F&& value) {
  auto T = MultilinearTable::uniform(L.dim(), arity);
  for_each_tuple(cube(L.dim(), arity), [&](const std::vector<std::size_t>& x) { T.set(x, value(x)); });
  return T;
}

// Bracket with per-slot maps applied to basis arguments.
MultilinearTable precompose(const ColorAlgebra& L, const std::vector<const MatrixQ*>& slot_maps) {
  std::vector<std::vector<SparseVector>> cols;
  for (const auto* m : slot_maps) cols.push_back(m ? sparse_columns(*m) : standard_basis(L.dim()));
  std::vector<SparseVector> args(L.arity());
  return rebuild(L, L.arity(), [&](const std::vector<std::size_t>& x) {
    for (std::size_t s = 0; s < x.size(); ++s) args[s] = cols[s][x[s]];
    return L.bracket().eval_sparse(args);
  });
}

}  // namespace

AssocAlgebra AssocAlgebra::unchecked(std::size_t dim, MultilinearTable product) {
  if (product.slot_dims() != std::vector<std::size_t>{dim, dim} || product.out_dim() != dim) {
    throw DimensionError("product table shape does not match dimension");
  }
  AssocAlgebra A;
  A.dim_ = dim;
  A.product_ = std::move(product);
  return A;
}

AssocAlgebra::AssocAlgebra(std::size_t dim, MultilinearTable product)
    : AssocAlgebra(unchecked(dim, std::move(product))) {
  auto v = assoc_violations(*this);
  if (!v.empty()) throw ValidationError(std::move(v));
}

Vector AssocAlgebra::multiply(const Vector& a, const Vector& b) const {
  std::vector<Vector> args{a, b};
  return product_.eval(args);
}

std::vector<std::string> assoc_violations(const AssocAlgebra& A) {
  std::vector<std::string> out;
  const auto n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> ij{i, j}, ji{j, i};
      if (A.product().get(ij) != A.product().get(ji)) {
        out.push_back("not commutative at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      for (std::size_t k = 0; k < n; ++k) {
        auto left = A.multiply(A.product().get(ij), unit_vector(n, k));
        std::vector<std::size_t> jk{j, k};
        auto right = A.multiply(unit_vector(n, i), A.product().get(jk));
        if (left != right) {
          out.push_back("not associative at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ")");
        }
      }
    }
  return out;
}

Report check_bihom_associative(const BiHomAssocColorAlgebra& A) {
  Report rep;
  rep.subject = "bihom_associative";
  const auto n = A.dim();
  const auto& G = A.eps.group();
  auto mul = [&](const Vector& a, const Vector& b) {
    std::vector<Vector> args{a, b};
    return A.product.eval(args);
  };
  {
    ResultBuilder rb("commutation");
    auto l = (A.alpha * A.beta).flatten();
    auto r = (A.beta * A.alpha).flatten();
    rb.check(l == r, {}, std::nullopt, l, r);
    rep.checks.push_back(std::move(rb).finish());
  }
  {
    ResultBuilder rb("evenness");
    rb.check(is_homogeneous_matrix(G, A.degrees, A.alpha, G.identity()), {}, 0, {}, {}, "alpha");
    rb.check(is_homogeneous_matrix(G, A.degrees, A.beta, G.identity()), {}, 1, {}, {}, "beta");
    A.product.for_each_nonzero([&](const std::vector<std::size_t>& idx, const SparseVector& v) {
      auto d = G.add(A.degrees[idx[0]], A.degrees[idx[1]]);
      bool ok = std::all_of(v.begin(), v.end(), [&](const auto& e) { return A.degrees[e.first] == d; });
      rb.check(ok, idx, 2, densify(v, n), {});
    });
    rep.checks.push_back(std::move(rb).finish());
  }
  {
    ResultBuilder rb("multiplicative");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto xy = mul(unit_vector(n, i), unit_vector(n, j));
        for (const MatrixQ* T : {&A.alpha, &A.beta}) {
          auto l = T->apply(xy);
          auto r = mul(T->column(i), T->column(j));
          rb.check(l == r, {i, j}, T == &A.alpha ? 0 : 1, l, r);
        }
      }
    rep.checks.push_back(std::move(rb).finish());
  }
  {
    ResultBuilder rb("bihom_associativity");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          auto l = mul(A.alpha.column(i), mul(unit_vector(n, j), unit_vector(n, k)));
          auto r = mul(mul(unit_vector(n, i), unit_vector(n, j)), A.beta.column(k));
          rb.check(l == r, {i, j, k}, std::nullopt, l, r);
        }
    rep.checks.push_back(std::move(rb).finish());
  }
  return rep;
}

ColorAlgebra quotient(const ColorAlgebra& L, const GradedSubspace& I) {
  if (!is_ideal(L, I)) throw PreconditionError("quotient: subspace is not an ideal");
  const auto& S = I.space();
  std::vector<bool> pivot(L.dim(), false);
  for (auto p : S.pivots()) pivot[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < L.dim(); ++c)
    if (!pivot[c]) keep.push_back(c);
  const auto m = keep.size();
  auto project = [&](const Vector& v) {
    auto red = S.reduce(v);
    Vector out(m);
    for (std::size_t a = 0; a < m; ++a) out[a] = red[keep[a]];
    return out;
  };
  std::vector<GroupElement> degrees;
  for (auto c : keep) degrees.push_back(L.degree(c));
  MatrixQ alpha(m, m), beta(m, m);
  for (std::size_t b = 0; b < m; ++b) {
    alpha.set_column(b, project(L.alpha().column(keep[b])));
    beta.set_column(b, project(L.beta().column(keep[b])));
  }
  auto T = MultilinearTable::uniform(m, L.arity());
  std::vector<std::size_t> lifted(L.arity());
  for_each_tuple(cube(m, L.arity()), [&](const std::vector<std::size_t>& x) {
    for (std::size_t s = 0; s < x.size(); ++s) lifted[s] = keep[x[s]];
    T.set(x, project(L.bracket().get(lifted)));
  });
  return ColorAlgebra(L.eps(), L.arity(), std::move(degrees), std::move(alpha), std::move(beta), std::move(T));
}

ColorAlgebra reduce_arity(const ColorAlgebra& L, const std::vector<Vector>& us) {
  const auto k = us.size();
  if (k < 1 || k + 2 > L.arity()) throw PreconditionError("reduce_arity: need 1 <= |us| <= n - 2");
  const auto e = L.group().identity();
  for (const auto& u : us) {
    if (u.size() != L.dim()) throw DimensionError("reduce_arity: vector has the wrong length");
    for (std::size_t i = 0; i < u.size(); ++i)
      if (sgn(u[i]) != 0 && L.degree(i) != e) throw PreconditionError("reduce_arity: u is not of degree e");
    if (L.beta().apply(u) != u) throw PreconditionError("reduce_arity: beta(u) != u");
  }
  const auto n2 = L.arity() - k;
  std::vector<SparseVector> args(L.arity());
  for (std::size_t s = 0; s < k; ++s) args[s] = sparsify(us[s]);
  auto T = rebuild(L, n2, [&](const std::vector<std::size_t>& x) {
    for (std::size_t s = 0; s < n2; ++s) args[k + s] = SparseVector{{x[s], Rational(1)}};
    return L.bracket().eval_sparse(args);
  });
  return ColorAlgebra(L.eps(), n2, L.degrees(), L.alpha(), L.beta(), std::move(T));
}

ColorAlgebra yau_twist(const ColorAlgebra& L, const HomogeneousMap& a2, const HomogeneousMap& b2) {
  require_even(L, a2, "yau_twist: a2");
  require_even(L, b2, "yau_twist: b2");
  if (L.alpha() * L.beta() != L.beta() * L.alpha()) throw PreconditionError("yau_twist: alpha and beta do not commute");
  if (a2.matrix * b2.matrix != b2.matrix * a2.matrix) throw PreconditionError("yau_twist: a2 and b2 do not commute");
  if (!is_morphism(a2, L, L)) throw PreconditionError("yau_twist: a2 is not an endomorphism commuting with the twists");
  if (!is_morphism(b2, L, L)) throw PreconditionError("yau_twist: b2 is not an endomorphism commuting with the twists");
  std::vector<const MatrixQ*> slots(L.arity(), &a2.matrix);
  slots.back() = &b2.matrix;
  return ColorAlgebra(L.eps(), L.arity(), L.degrees(), L.alpha() * a2.matrix, L.beta() * b2.matrix,
                      precompose(L, slots));
}

ColorAlgebra power_twist(const ColorAlgebra& L, unsigned k) {
  if (!is_multiplicative(L)) throw PreconditionError("power_twist: algebra is not multiplicative");
  const auto e = L.group().identity();
  return yau_twist(L, {e, L.alpha().pow(k)}, {e, L.beta().pow(k)});
}

ColorAlgebra tensor_with_commutative(const AssocAlgebra& A, const ColorAlgebra& L) {
  if (auto v = assoc_violations(A); !v.empty()) throw PreconditionError("tensor_with_commutative: " + v.front());
  const auto da = A.dim();
  const auto dl = L.dim();
  const auto n = L.arity();
  // a_{p_1} ⋯ a_{p_n}, multiplied left to right
  std::vector<Vector> prod;
  for_each_tuple(cube(da, n), [&](const std::vector<std::size_t>& p) {
    Vector v = unit_vector(da, p[0]);
    for (std::size_t s = 1; s < n; ++s) v = A.multiply(v, unit_vector(da, p[s]));
    prod.push_back(std::move(v));
  });
  std::vector<GroupElement> degrees;
  for (std::size_t p = 0; p < da; ++p) degrees.insert(degrees.end(), L.degrees().begin(), L.degrees().end());
  auto T = MultilinearTable::uniform(da * dl, n);
  std::vector<std::size_t> pi(n), qi(n);
  for_each_tuple(cube(da * dl, n), [&](const std::vector<std::size_t>& x) {
    std::size_t pflat = 0;
    for (std::size_t s = 0; s < n; ++s) {
      pi[s] = x[s] / dl;
      qi[s] = x[s] % dl;
      pflat = pflat * da + pi[s];
    }
    const auto& a = prod[pflat];
    if (is_zero(a)) return;
    const auto& b = L.bracket().cell(qi);
    if (b.empty()) return;
    Vector v(da * dl);
    for (std::size_t p = 0; p < da; ++p) {
      if (sgn(a[p]) == 0) continue;
      for (const auto& [q, c] : b) v[p * dl + q] = a[p] * c;
    }
    T.set(x, v);
  });
  auto id = MatrixQ::identity(da);
  return ColorAlgebra(L.eps(), n, std::move(degrees), kronecker(id, L.alpha()), kronecker(id, L.beta()),
                      std::move(T));
}

ColorAlgebra direct_sum(const ColorAlgebra& L, const ColorAlgebra& L2) {
  if (L.group() != L2.group()) throw PreconditionError("direct_sum: grading groups differ");
  if (L.eps() != L2.eps()) throw PreconditionError("direct_sum: bicharacters differ");
  if (L.arity() != L2.arity()) throw PreconditionError("direct_sum: arities differ");
  const auto d1 = L.dim();
  const auto d = d1 + L2.dim();
  const auto n = L.arity();
  auto degrees = L.degrees();
  degrees.insert(degrees.end(), L2.degrees().begin(), L2.degrees().end());
  auto T = MultilinearTable::uniform(d, n);
  L.bracket().for_each_nonzero([&](const std::vector<std::size_t>& idx, const SparseVector& v) {
    Vector out(d);
    for (const auto& [o, c] : v) out[o] = c;
    T.set(idx, out);
  });
  L2.bracket().for_each_nonzero([&](std::vector<std::size_t> idx, const SparseVector& v) {
    for (auto& i : idx) i += d1;
    Vector out(d);
    for (const auto& [o, c] : v) out[d1 + o] = c;
    T.set(idx, out);
  });
  return ColorAlgebra(L.eps(), n, std::move(degrees), nbihom::direct_sum(L.alpha(), L2.alpha()),
                      nbihom::direct_sum(L.beta(), L2.beta()), std::move(T));
}

bool check_semi_morphism(const ColorAlgebra& L, const HomogeneousMap& g, std::optional<std::size_t> slot) {
  require_even(L, g, "semi-morphism");
  if (slot && *slot >= L.arity()) throw DimensionError("slot out of range");
  if (!commutes_with_twists(L, g.matrix)) return false;
  auto gcols = sparse_columns(g.matrix);
  auto eb = standard_basis(L.dim());
  std::vector<SparseVector> args(L.arity());
  bool ok = true;
  for_each_tuple(cube(L.dim(), L.arity()), [&](const std::vector<std::size_t>& x) {
    if (!ok) return;
    auto lhs = g.matrix.apply(L.bracket().get(x));
    for (std::size_t i = 0; i < L.arity() && ok; ++i) {
      if (slot && *slot != i) continue;
      for (std::size_t s = 0; s < x.size(); ++s) args[s] = s == i ? gcols[x[s]] : eb[x[s]];
      if (L.bracket().eval_sparse(args) != lhs) ok = false;
    }
  });
  return ok;
}

ColorAlgebra semi_morphism_twist(const ColorAlgebra& L, const HomogeneousMap& g, std::size_t slot) {
  if (slot >= L.arity()) throw DimensionError("slot out of range");
  if (!check_semi_morphism(L, g)) throw PreconditionError("semi_morphism_twist: map is not a semi-morphism");
  std::vector<const MatrixQ*> slots(L.arity(), nullptr);
  slots[slot] = &g.matrix;
  return ColorAlgebra(L.eps(), L.arity(), L.degrees(), L.alpha(), L.beta(), precompose(L, slots));
}

bool check_averaging(const ColorAlgebra& L, const HomogeneousMap& g) {
  require_even(L, g, "averaging operator");
  if (!commutes_with_twists(L, g.matrix)) return false;
  auto gcols = sparse_columns(g.matrix);
  auto eb = standard_basis(L.dim());
  const auto n = L.arity();
  std::vector<SparseVector> args(n);
  bool ok = true;
  for_each_tuple(cube(L.dim(), n), [&](const std::vector<std::size_t>& x) {
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t s = 0; s < n; ++s) args[s] = s == i ? gcols[x[s]] : eb[x[s]];
      auto lhs = g.matrix.apply(L.bracket().eval_sparse(args));
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (j == i) continue;
        auto saved = args[j];
        args[j] = gcols[x[j]];
        if (L.bracket().eval_sparse(args) != lhs) ok = false;
        args[j] = saved;
      }
    }
  });
  return ok;
}

ColorAlgebra averaging_twist(const ColorAlgebra& L, const HomogeneousMap& g, const std::vector<std::size_t>& slots) {
  if (slots.empty() || slots.size() > 2 || (slots.size() == 2 && slots[0] == slots[1])) {
    throw PreconditionError("averaging_twist: give one slot or two distinct slots");
  }
  for (auto s : slots)
    if (s >= L.arity()) throw DimensionError("slot out of range");
  if (!check_averaging(L, g)) throw PreconditionError("averaging_twist: map is not an averaging operator");
  std::vector<const MatrixQ*> per(L.arity(), nullptr);
  for (auto s : slots) per[s] = &g.matrix;
  return ColorAlgebra(L.eps(), L.arity(), L.degrees(), L.alpha(), L.beta(), precompose(L, per));
}

bool graph_is_subalgebra(const HomogeneousMap& f, const ColorAlgebra& L, const ColorAlgebra& L2) {
  if (L.eps() != L2.eps() || L.arity() != L2.arity())
    throw PreconditionError("graph: algebras differ in grading or arity");
  if (f.matrix.rows() != L2.dim() || f.matrix.cols() != L.dim()) throw DimensionError("graph: map shape mismatch");
  for (std::size_t r = 0; r < L2.dim(); ++r)
    for (std::size_t c = 0; c < L.dim(); ++c)
      if (sgn(f.matrix(r, c)) != 0 && L2.degree(r) != L.degree(c)) throw PreconditionError("graph: map is not even");
  auto S = direct_sum(L, L2);
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    Vector v(S.dim());
    v[i] = 1;
    auto fi = f.matrix.column(i);
    for (std::size_t r = 0; r < L2.dim(); ++r) v[L.dim() + r] = fi[r];
    gens.push_back(std::move(v));
  }
  return is_subalgebra(S, GradedSubspace::span(S, gens));
}

ColorAlgebra lie_from_bihom_assoc(const BiHomAssocColorAlgebra& A) {
  const auto n = A.dim();
  detail::require_square(A.alpha, n, "alpha");
  detail::require_square(A.beta, n, "beta");
  auto ai = A.alpha.inverse();
  auto bi = A.beta.inverse();
  if (!ai || !bi) throw PreconditionError("lie_from_bihom_assoc: twists are not invertible");
  const MatrixQ left = *ai * A.beta;   // α⁻¹β
  const MatrixQ right = A.alpha * *bi;  // αβ⁻¹
  auto T = MultilinearTable::uniform(n, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Vector> xy{unit_vector(n, i), unit_vector(n, j)};
      std::vector<Vector> swapped{left.column(j), right.column(i)};
      Vector v = A.product.eval(xy);
      axpy(v, -A.eps(A.degrees[i], A.degrees[j]), A.product.eval(swapped));
      std::vector<std::size_t> idx{i, j};
      T.set(idx, v);
    }
  return ColorAlgebra(A.eps, 2, A.degrees, A.alpha, A.beta, std::move(T));
}

ColorAlgebra t_extension(const ColorAlgebra& L) {
  if (!is_multiplicative(L)) throw PreconditionError("t_extension: algebra is not multiplicative");
  const auto d = L.dim();
  const auto n = L.arity();
  auto degrees = L.degrees();
  degrees.insert(degrees.end(), L.degrees().begin(), L.degrees().end());
  auto T = MultilinearTable::uniform(2 * d, n);
  // Only all-t tuples survive: any t^n argument pushes the exponent above n.
  L.bracket().for_each_nonzero([&](const std::vector<std::size_t>& idx, const SparseVector& v) {
    Vector out(2 * d);
    for (const auto& [o, c] : v) out[d + o] = c;
    T.set(idx, out);
  });
  return ColorAlgebra(L.eps(), n, std::move(degrees), nbihom::direct_sum(L.alpha(), L.alpha()),
                      nbihom::direct_sum(L.beta(), L.beta()), std::move(T));
}

namespace {

// Projection onto [L, …, L] along U.
MatrixQ derived_projection(const ColorAlgebra& L, const GradedSubspace& derived,
                           const std::optional<GradedSubspace>& U) {
  const auto d = L.dim();
  std::vector<Vector> ubasis;
  if (U) {
    ubasis = U->basis();
  } else {
    std::vector<bool> pivot(d, false);
    for (auto p : derived.space().pivots()) pivot[p] = true;
    for (std::size_t c = 0; c < d; ++c)
      if (!pivot[c]) ubasis.push_back(unit_vector(d, c));
  }
  if (ubasis.size() + derived.dim() != d) throw PreconditionError("qder embedding: U is not a complement");
  std::vector<Vector> cols = ubasis;
  cols.insert(cols.end(), derived.basis().begin(), derived.basis().end());
  auto B = MatrixQ::from_columns(d, cols);
  auto Bi = B.inverse();
  if (!Bi) throw PreconditionError("qder embedding: U is not a complement");
  MatrixQ keep(d, d);
  for (std::size_t i = ubasis.size(); i < d; ++i) keep(i, i) = 1;
  return B * keep * *Bi;
}

MatrixQ embed_blocks(const MatrixQ& top, const MatrixQ& bottom) { return nbihom::direct_sum(top, bottom); }

}  // namespace

MatrixQ qder_embedding(const ColorAlgebra& L, const HomogeneousMap& D, const HomogeneousMap& D2,
                       const std::optional<GradedSubspace>& U) {
  auto derived = derived_sequence(L, 1)[1];
  auto P = derived_projection(L, derived, U);
  return embed_blocks(D.matrix, D2.matrix * P);
}

Report qder_embedding_check(const ColorAlgebra& L, const HomogeneousMap& D, const HomogeneousMap& D2, unsigned k,
                            unsigned r, const std::optional<GradedSubspace>& U) {
  std::vector<HomogeneousMap> pair{D, D2};
  if (!operator_residual(L, IdentityKind::QDer, k, r, pair).passed()) {
    throw PreconditionError("qder embedding: (D, D2) is not a quasiderivation pair");
  }
  auto tL = t_extension(L);
  auto derived = derived_sequence(L, 1)[1];
  auto P = derived_projection(L, derived, U);
  const MatrixQ phi = embed_blocks(D.matrix, D2.matrix * P);
  Report rep;
  rep.subject = "qder_embedding";
  {
    ResultBuilder rb("degree");
    rb.check(is_homogeneous_matrix(tL.group(), tL.degrees(), phi, D.degree), {}, std::nullopt, {}, {},
             "phi(D) is not homogeneous of degree " + to_string(D.degree));
    rep.checks.push_back(std::move(rb).finish());
  }
  {
    // D′ on [L, …, L] recomputed from D alone: pick brackets forming a basis and
    // assign their Leibniz sums.
    ResultBuilder rb("well_defined");
    const auto n = L.arity();
    const auto dim = L.dim();
    const MatrixQ phiL = L.alpha().pow(k) * L.beta().pow(r);
    RowReducer red(dim);
    std::vector<Vector> picked, images;
    for_each_tuple(cube(dim, n), [&](const std::vector<std::size_t>& x) {
      if (red.rank() == derived.dim()) return;
      auto b = L.bracket().get(x);
      if (!red.add_row(b)) return;
      Vector s(dim);
      auto X = L.group().identity();
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vector> args(n);
        for (std::size_t j = 0; j < n; ++j) args[j] = j == i ? D.matrix.column(x[j]) : phiL.column(x[j]);
        axpy(s, L.eps()(D.degree, X), L.bracket().eval(args));
        X = L.group().add(X, L.degree(x[i]));
      }
      picked.push_back(std::move(b));
      images.push_back(std::move(s));
    });
    auto V = MatrixQ::from_columns(dim, picked);
    for (std::size_t i = 0; i < derived.dim(); ++i) {
      const auto& b = derived.basis()[i];
      auto c = solve_linear(V, b);
      Vector canon(dim);
      if (c)
        for (std::size_t t = 0; t < c->size(); ++t) axpy(canon, (*c)[t], images[t]);
      auto given = D2.matrix.apply(b);
      rb.check(c && canon == given, {i}, std::nullopt, given, canon, "D2 on [L,...,L] vs Leibniz value");
    }
    rep.checks.push_back(std::move(rb).finish());
  }
  {
    std::vector<HomogeneousMap> one{{D.degree, phi}};
    auto res = operator_residual(tL, IdentityKind::Der, k, r, one);
    res.name = "derivation";
    rep.checks.push_back(std::move(res));
  }
  return rep;
}

}  // namespace nbihom
