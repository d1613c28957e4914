#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "nbihom/constructions.hpp"
#include "nbihom/derivations.hpp"
#include "nbihom/errors.hpp"

namespace nbihom {

namespace {

enum class Space { Der, ZDer, C, QC, QDerProj, GDerProj, Commuting };

const char* space_name(Space s) {
  switch (s) {
    case Space::Der: return "Der";
    case Space::ZDer: return "ZDer";
    case Space::C: return "C";
    case Space::QC: return "QC";
    case Space::QDerProj: return "QDer";
    case Space::GDerProj: return "GDer";
    case Space::Commuting: return "End";
  }
  return "?";
}

// Solved spaces, memoized per (space, k, r, degree).
class Spaces {
 public:
  explicit Spaces(const ColorAlgebra& L) : L_(L) {}

  const OperatorBasis& get(Space s, unsigned k, unsigned r, const GroupElement& d) {
    auto key = std::make_tuple(s, k, r, d);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    OperatorBasis b;
    switch (s) {
      case Space::Der: b = solve_operator_space(L_, {k, r, d, OperatorKind::Der}); break;
      case Space::ZDer: b = solve_operator_space(L_, {k, r, d, OperatorKind::ZDer}); break;
      case Space::C: b = solve_operator_space(L_, {k, r, d, OperatorKind::Centroid}); break;
      case Space::QC: b = solve_operator_space(L_, {k, r, d, OperatorKind::QuasiCentroid}); break;
      case Space::Commuting: b = solve_operator_space(L_, {k, r, d, OperatorKind::Commuting}); break;
      case Space::QDerProj: b = qder_projection(L_, k, r, d); break;
      case Space::GDerProj: b = gder_projection(L_, k, r, d); break;
    }
    return cache_.emplace(key, std::move(b)).first->second;
  }

 private:
  const ColorAlgebra& L_;
  std::map<std::tuple<Space, unsigned, unsigned, GroupElement>, OperatorBasis> cache_;
};

std::vector<GroupElement> query_degrees(const ColorAlgebra& L, const QuerySet& q) {
  return q.degrees.empty() ? candidate_degrees(L) : q.degrees;
}

std::string describe(Space s, unsigned k, unsigned r, const GroupElement& d) {
  std::ostringstream os;
  os << space_name(s) << "(" << k << "," << r << "," << to_string(d) << ")";
  return os.str();
}

struct Ctx {
  const ColorAlgebra& L;
  const QuerySet& q;
  Spaces spaces;
  std::vector<GroupElement> degrees;

  Ctx(const ColorAlgebra& L_, const QuerySet& q_) : L(L_), q(q_), spaces(L_), degrees(query_degrees(L_, q_)) {}

  const GradingGroup& G() const { return L.group(); }
};

using Combine = std::function<MatrixQ(const HomogeneousMap&, const HomogeneousMap&)>;

MatrixQ commutator_of(const Bicharacter& eps, const HomogeneousMap& a, const HomogeneousMap& b) {
  return eps_commutator(eps, a, b).matrix;
}

// For every pair of query points and basis maps, combine(a, b) must lie in the
// target space at (k+l, r+s, d1+d2).
CheckResult pairwise(Ctx& c, const std::string& name, Space left, Space right, Space target, const Combine& combine) {
  ResultBuilder rb(name);
  for (auto [k, r] : c.q.powers)
    for (auto [l, s] : c.q.powers)
      for (const auto& d1 : c.degrees)
        for (const auto& d2 : c.degrees) {
          const auto& A = c.spaces.get(left, k, r, d1);
          const auto& B = c.spaces.get(right, l, s, d2);
          if (A.dim() == 0 || B.dim() == 0) continue;
          const auto& T = c.spaces.get(target, k + l, r + s, c.G().add(d1, d2));
          for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < B.dim(); ++j) {
              auto m = combine(A.maps[i], B.maps[j]);
              rb.check(T.contains(m), {i, j}, std::nullopt, m.flatten(), {},
                       describe(left, k, r, d1) + " x " + describe(right, l, s, d2) + " -> " +
                           describe(target, k + l, r + s, c.G().add(d1, d2)));
            }
        }
  return std::move(rb).finish();
}

// ω(D) = D∘α lands in (k+1, r), Ω(D) = D∘β in (k, r+1).
void twist_closure(Ctx& c, Space s, Report& rep) {
  ResultBuilder om(std::string(space_name(s)) + "_omega");
  ResultBuilder Om(std::string(space_name(s)) + "_Omega");
  for (auto [k, r] : c.q.powers)
    for (const auto& d : c.degrees) {
      const auto& A = c.spaces.get(s, k, r, d);
      if (A.dim() == 0) continue;
      const auto& TA = c.spaces.get(s, k + 1, r, d);
      const auto& TB = c.spaces.get(s, k, r + 1, d);
      for (std::size_t i = 0; i < A.dim(); ++i) {
        auto a = A.maps[i].matrix * c.L.alpha();
        auto b = A.maps[i].matrix * c.L.beta();
        om.check(TA.contains(a), {i}, std::nullopt, a.flatten(), {}, describe(s, k, r, d));
        Om.check(TB.contains(b), {i}, std::nullopt, b.flatten(), {}, describe(s, k, r, d));
      }
    }
  rep.checks.push_back(std::move(om).finish());
  rep.checks.push_back(std::move(Om).finish());
}

// Every basis element of `sub` lies in `super` at the same query point.
CheckResult inclusion(Ctx& c, const std::string& name, Space sub, Space super) {
  ResultBuilder rb(name);
  for (auto [k, r] : c.q.powers)
    for (const auto& d : c.degrees) {
      const auto& A = c.spaces.get(sub, k, r, d);
      const auto& B = c.spaces.get(super, k, r, d);
      for (std::size_t i = 0; i < A.dim(); ++i) {
        rb.check(B.contains(A.maps[i].matrix), {i}, std::nullopt, A.maps[i].matrix.flatten(), {},
                 describe(sub, k, r, d) + " in " + describe(super, k, r, d));
      }
    }
  return std::move(rb).finish();
}

Vector concat(const std::vector<const MatrixQ*>& ms) {
  Vector out;
  for (const auto* m : ms) {
    auto f = m->flatten();
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

Report lemma_5_2(Ctx& c) {
  Report rep;
  const auto& eps = c.L.eps();
  rep.checks.push_back(pairwise(c, "der_bracket", Space::Der, Space::Der, Space::Der,
                                [&](auto& a, auto& b) { return commutator_of(eps, a, b); }));
  return rep;
}

Report prop_5_9_1(Ctx& c) {
  Report rep;
  const auto& eps = c.L.eps();
  auto br = [&](auto& a, auto& b) { return commutator_of(eps, a, b); };
  for (Space s : {Space::GDerProj, Space::QDerProj, Space::C}) {
    twist_closure(c, s, rep);
    rep.checks.push_back(pairwise(c, std::string(space_name(s)) + "_bracket", s, s, s, br));
  }
  return rep;
}

Report prop_5_9_2(Ctx& c) {
  Report rep;
  const auto& eps = c.L.eps();
  rep.checks.push_back(inclusion(c, "ZDer_in_Der", Space::ZDer, Space::Der));
  twist_closure(c, Space::ZDer, rep);
  rep.checks.push_back(pairwise(c, "ZDer_Der_bracket", Space::ZDer, Space::Der, Space::ZDer,
                                [&](auto& a, auto& b) { return commutator_of(eps, a, b); }));
  return rep;
}

Report lemma_5_10_1(Ctx& c) {
  Report rep;
  const auto& eps = c.L.eps();
  rep.checks.push_back(pairwise(c, "QC_bracket_in_QDer", Space::QC, Space::QC, Space::QDerProj,
                                [&](auto& a, auto& b) { return commutator_of(eps, a, b); }));
  return rep;
}

Report lemma_5_10_2(Ctx& c) {
  Report rep;
  rep.checks.push_back(inclusion(c, "QDer_in_GDer", Space::QDerProj, Space::GDerProj));
  rep.checks.push_back(inclusion(c, "QC_in_GDer", Space::QC, Space::GDerProj));
  // (D1 + D2, D1 − D2, D1, …, D1, D1′) for a quasiderivation pair (D1, D1′) and D2 ∈ QC.
  ResultBuilder rb("explicit_tuple");
  const auto n = c.L.arity();
  for (auto [k, r] : c.q.powers)
    for (const auto& d : c.degrees) {
      auto pairs = solve_qder(c.L, k, r, d);
      const auto& QC = c.spaces.get(Space::QC, k, r, d);
      if (pairs.empty() || QC.dim() == 0) continue;
      auto joint = gder_joint_space(c.L, k, r, d);
      for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < QC.dim(); ++j) {
          const auto& D1 = pairs[i].d.matrix;
          const auto& D1p = pairs[i].d_assoc.matrix;
          const auto& D2 = QC.maps[j].matrix;
          MatrixQ plus = D1 + D2, minus = D1 - D2;
          std::vector<const MatrixQ*> tuple{&plus, &minus};
          for (std::size_t m = 2; m < n; ++m) tuple.push_back(&D1);
          tuple.push_back(&D1p);
          auto v = concat(tuple);
          rb.check(joint.contains(v), {i, j}, std::nullopt, v, {}, describe(Space::GDerProj, k, r, d));
        }
    }
  rep.checks.push_back(std::move(rb).finish());
  return rep;
}

Report hypothesis_not_met(const std::string& why) {
  Report rep;
  CheckResult r;
  r.name = "hypothesis";
  r.status = Status::HypothesisNotMet;
  r.note = why;
  rep.checks.push_back(std::move(r));
  return rep;
}

Report prop_5_11(Ctx& c) {
  if (!is_regular(c.L)) return hypothesis_not_met("alpha and beta are not both surjective");
  Report rep;
  auto Z = center(c.L);
  ResultBuilder rb("C_QC_bracket_into_center");
  for (auto [k, r] : c.q.powers)
    for (auto [l, s] : c.q.powers)
      for (const auto& d1 : c.degrees)
        for (const auto& d2 : c.degrees) {
          const auto& A = c.spaces.get(Space::C, k, r, d1);
          const auto& B = c.spaces.get(Space::QC, l, s, d2);
          for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < B.dim(); ++j) {
              auto m = eps_commutator(c.L.eps(), A.maps[i], B.maps[j]).matrix;
              for (std::size_t col = 0; col < m.cols(); ++col) {
                auto v = m.column(col);
                rb.check(Z.contains(v), {i, j, col}, std::nullopt, v, {},
                         describe(Space::C, k, r, d1) + " x " + describe(Space::QC, l, s, d2));
              }
            }
        }
  rep.checks.push_back(std::move(rb).finish());
  return rep;
}

bool invariant(const MatrixQ& m, const GradedSubspace& H) {
  for (const auto& v : H.basis())
    if (!H.contains(m.apply(v))) return false;
  return true;
}

bool perfect(const ColorAlgebra& L, const GradedSubspace& I) {
  if (I.dim() == 0) return true;
  RowReducer red(L.dim());
  std::vector<Vector> args(L.arity());
  for_each_tuple(std::vector<std::size_t>(L.arity(), I.dim()), [&](const std::vector<std::size_t>& t) {
    if (red.rank() == I.dim()) return;
    for (std::size_t s = 0; s < t.size(); ++s) args[s] = I.basis()[t[s]];
    red.add_row(L.bracket().eval(args));
  });
  return red.rank() == I.dim();
}

Report prop_5_12(Ctx& c) {
  if (!is_regular(c.L)) return hypothesis_not_met("alpha and beta are not both bijective");
  Report rep;
  std::vector<GradedSubspace> cands{GradedSubspace::whole(c.L), GradedSubspace::zero(c.L), center(c.L)};
  auto ds = derived_sequence(c.L, 3);
  auto cs = central_sequence(c.L, 3);
  cands.insert(cands.end(), ds.begin() + 1, ds.end());
  cands.insert(cands.end(), cs.begin() + 1, cs.end());
  std::vector<GradedSubspace> uniq;
  for (auto& H : cands)
    if (std::find(uniq.begin(), uniq.end(), H) == uniq.end()) uniq.push_back(std::move(H));

  std::vector<GradedSubspace> centralizers, perfect_ideals;
  for (const auto& H : uniq) {
    if (invariant(c.L.alpha(), H) && invariant(c.L.beta(), H) && is_subalgebra(c.L, H)) {
      centralizers.push_back(centralizer(c.L, H));
    }
    if (is_ideal(c.L, H) && perfect(c.L, H)) perfect_ideals.push_back(H);
  }

  auto run = [&](const std::string& name, const std::vector<GradedSubspace>& targets) {
    ResultBuilder rb(name);
    for (auto [k, r] : c.q.powers)
      for (const auto& d : c.degrees) {
        const auto& A = c.spaces.get(Space::C, k, r, d);
        for (std::size_t i = 0; i < A.dim(); ++i)
          for (std::size_t t = 0; t < targets.size(); ++t)
            for (std::size_t b = 0; b < targets[t].dim(); ++b) {
              auto v = A.maps[i].matrix.apply(targets[t].basis()[b]);
              rb.check(targets[t].contains(v), {i, t, b}, std::nullopt, v, {}, describe(Space::C, k, r, d));
            }
      }
    rb.note(std::to_string(targets.size()) + " subspaces");
    rep.checks.push_back(std::move(rb).finish());
  };
  run("centralizer_invariant", centralizers);
  run("perfect_ideal_invariant", perfect_ideals);
  return rep;
}

Report prop_5_13(Ctx& c) {
  Report rep;
  ResultBuilder rb("ZDer_eq_C_cap_Der");
  for (auto [k, r] : c.q.powers)
    for (const auto& d : c.degrees) {
      const auto& Z = c.spaces.get(Space::ZDer, k, r, d).space;
      const auto& C = c.spaces.get(Space::C, k, r, d).space;
      const auto& D = c.spaces.get(Space::Der, k, r, d).space;
      auto cap = subspace_intersect(C, D);
      rb.check(cap == Z, {k, r}, std::nullopt, {}, {},
               describe(Space::ZDer, k, r, d) + ": dim " + std::to_string(Z.dim()) + " vs C cap Der dim " +
                   std::to_string(cap.dim()));
    }
  rep.checks.push_back(std::move(rb).finish());
  return rep;
}

Report prop_5_14_1(Ctx& c) {
  Report rep;
  const auto& eps = c.L.eps();
  rep.checks.push_back(pairwise(c, "Der_C_bracket_in_C", Space::Der, Space::C, Space::C,
                                [&](auto& a, auto& b) { return commutator_of(eps, a, b); }));
  return rep;
}

Report prop_5_14_2(Ctx& c) {
  Report rep;
  const auto& eps = c.L.eps();
  rep.checks.push_back(pairwise(c, "QDer_QC_bracket_in_QC", Space::QDerProj, Space::QC, Space::QC,
                                [&](auto& a, auto& b) { return commutator_of(eps, a, b); }));
  return rep;
}

Report prop_5_16_1(Ctx& c) {
  Report rep;
  rep.checks.push_back(pairwise(c, "C_compose_Der_in_Der", Space::C, Space::Der, Space::Der,
                                [](auto& a, auto& b) { return a.matrix * b.matrix; }));
  return rep;
}

Report prop_5_16_2(Ctx& c) {
  Report rep;
  rep.checks.push_back(inclusion(c, "C_in_QDer", Space::C, Space::QDerProj));
  ResultBuilder rb("pair_D_nD");
  const Rational n(static_cast<long>(c.L.arity()));
  for (auto [k, r] : c.q.powers)
    for (const auto& d : c.degrees) {
      const auto& A = c.spaces.get(Space::C, k, r, d);
      for (std::size_t i = 0; i < A.dim(); ++i) {
        std::vector<HomogeneousMap> pair{A.maps[i], {d, n * A.maps[i].matrix}};
        auto res = operator_residual(c.L, IdentityKind::QDer, k, r, pair);
        rb.check(res.passed(), {i}, std::nullopt, {}, {}, describe(Space::C, k, r, d));
      }
    }
  rep.checks.push_back(std::move(rb).finish());
  return rep;
}

Report chain(Ctx& c) {
  Report rep;
  rep.checks.push_back(inclusion(c, "ZDer_in_Der", Space::ZDer, Space::Der));
  rep.checks.push_back(inclusion(c, "Der_in_QDer", Space::Der, Space::QDerProj));
  rep.checks.push_back(inclusion(c, "QDer_in_GDer", Space::QDerProj, Space::GDerProj));
  ResultBuilder rb("dimensions");
  for (auto [k, r] : c.q.powers)
    for (const auto& d : c.degrees) {
      auto z = c.spaces.get(Space::ZDer, k, r, d).dim();
      auto de = c.spaces.get(Space::Der, k, r, d).dim();
      auto qd = c.spaces.get(Space::QDerProj, k, r, d).dim();
      auto gd = c.spaces.get(Space::GDerProj, k, r, d).dim();
      rb.check(z <= de && de <= qd && qd <= gd, {k, r}, std::nullopt, {}, {},
               "(" + std::to_string(k) + "," + std::to_string(r) + "," + to_string(d) + "): " + std::to_string(z) +
                   " <= " + std::to_string(de) + " <= " + std::to_string(qd) + " <= " + std::to_string(gd));
    }
  rep.checks.push_back(std::move(rb).finish());
  return rep;
}

using Handler = Report (*)(Ctx&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"lemma_5_2", lemma_5_2},     {"prop_5_9_1", prop_5_9_1},   {"prop_5_9_2", prop_5_9_2},
      {"lemma_5_10_1", lemma_5_10_1}, {"lemma_5_10_2", lemma_5_10_2}, {"prop_5_11", prop_5_11},
      {"prop_5_12", prop_5_12},     {"prop_5_13", prop_5_13},     {"prop_5_14_1", prop_5_14_1},
      {"prop_5_14_2", prop_5_14_2}, {"prop_5_16_1", prop_5_16_1}, {"prop_5_16_2", prop_5_16_2},
      {"chain", chain},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& closure_property_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, h] : handlers()) v.push_back(id);
    return v;
  }();
  return ids;
}

Report closure_check(const ColorAlgebra& L, const std::string& property_id, const QuerySet& queries) {
  const auto& h = handlers();
  auto it = std::find_if(h.begin(), h.end(), [&](const auto& p) { return p.first == property_id; });
  if (it == h.end()) throw PreconditionError("unknown closure property: " + property_id);
  Report rep;
  if (!is_multiplicative(L)) {
    rep = hypothesis_not_met("algebra is not multiplicative");
  } else {
    Ctx c(L, queries);
    rep = it->second(c);
  }
  rep.subject = property_id;
  return rep;
}

namespace {

SubspaceQ operator_span(const ColorAlgebra& L, const QuerySet& queries, DerAlgebraVariant variant) {
  const auto dim = L.dim();
  SubspaceQ S(dim * dim);
  for (const auto& d : query_degrees(L, queries)) {
    if (variant == DerAlgebraVariant::Commuting) {
      S = S.sum(solve_operator_space(L, {0, 0, d, OperatorKind::Commuting}).space);
      continue;
    }
    for (auto [k, r] : queries.powers) S = S.sum(solve_operator_space(L, {k, r, d, OperatorKind::Der}).space);
  }
  return S;
}

GroupElement row_degree(const ColorAlgebra& L, const Vector& row) {
  const auto dim = L.dim();
  for (std::size_t p = 0; p < row.size(); ++p)
    if (sgn(row[p]) != 0) return L.group().subtract(L.degree(p / dim), L.degree(p % dim));
  return L.group().identity();
}

}  // namespace

std::vector<HomogeneousMap> der_algebra_basis(const ColorAlgebra& L, const QuerySet& queries,
                                              DerAlgebraVariant variant) {
  auto S = operator_span(L, queries, variant);
  std::vector<HomogeneousMap> out;
  for (const auto& row : S.basis()) out.push_back({row_degree(L, row), MatrixQ::unflatten(L.dim(), L.dim(), row)});
  return out;
}

ColorAlgebra der_algebra_structure(const ColorAlgebra& L, const QuerySet& queries, DerAlgebraVariant variant) {
  auto S = operator_span(L, queries, variant);
  auto basis = der_algebra_basis(L, queries, variant);
  const auto m = basis.size();
  auto coords = [&](const MatrixQ& M, const std::string& what) {
    auto c = S.coordinates(M.flatten());
    if (!c) throw PreconditionError("operator space is not closed under " + what);
    return *c;
  };
  std::vector<GroupElement> degrees;
  MatrixQ omega(m, m), Omega(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    degrees.push_back(basis[j].degree);
    omega.set_column(j, coords(basis[j].matrix * L.alpha(), "omega (basis element " + std::to_string(j) + ")"));
    Omega.set_column(j, coords(basis[j].matrix * L.beta(), "Omega (basis element " + std::to_string(j) + ")"));
  }
  auto T = MultilinearTable::uniform(m, 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto br = eps_commutator(L.eps(), basis[i], basis[j]).matrix;
      std::vector<std::size_t> idx{i, j};
      T.set(idx, coords(br, "the bracket (" + std::to_string(i) + ", " + std::to_string(j) + ")"));
    }
  return ColorAlgebra(L.eps(), 2, std::move(degrees), std::move(omega), std::move(Omega), std::move(T));
}

Report tensor_centroid_check(const AssocAlgebra& A, const ColorAlgebra& L, const MatrixQ& f, const HomogeneousMap& g,
                             unsigned k, unsigned r) {
  const auto da = A.dim();
  if (f.rows() != da || f.cols() != da) throw DimensionError("f has the wrong shape");
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      auto ab = A.multiply(unit_vector(da, i), unit_vector(da, j));
      auto fab = f.apply(ab);
      if (fab != A.multiply(f.column(i), unit_vector(da, j)) || fab != A.multiply(unit_vector(da, i), f.column(j))) {
        throw PreconditionError("f is not in the centroid of the associative algebra");
      }
    }
  auto Cg = solve_operator_space(L, {k, r, g.degree, OperatorKind::Centroid});
  if (!Cg.contains(g.matrix)) throw PreconditionError("g is not in the solved centroid");
  auto T = tensor_with_commutative(A, L);
  HomogeneousMap fg{g.degree, kronecker(f, g.matrix)};
  Report rep;
  rep.subject = "tensor_centroid";
  std::vector<HomogeneousMap> one{fg};
  auto res = operator_residual(T, IdentityKind::Centroid, k, r, one);
  res.name = "residual";
  rep.checks.push_back(std::move(res));
  auto CT = solve_operator_space(T, {k, r, g.degree, OperatorKind::Centroid});
  ResultBuilder rb("membership");
  rb.check(CT.contains(fg.matrix), {}, std::nullopt, fg.matrix.flatten(), {},
           "solved centroid of the tensor algebra has dim " + std::to_string(CT.dim()));
  rep.checks.push_back(std::move(rb).finish());
  return rep;
}

}  // namespace nbihom
