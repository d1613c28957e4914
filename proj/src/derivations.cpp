#include "nbihom/derivations.hpp"

#include <set>

#include "internal.hpp"
#include "nbihom/errors.hpp"

namespace nbihom {

using detail::cube;
using detail::sparse_columns;

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Der:
      return "der";
    case OperatorKind::ZDer:
      return "zder";
    case OperatorKind::Centroid:
      return "c";
    case OperatorKind::QuasiCentroid:
      return "qc";
    case OperatorKind::Commuting:
      return "end";
  }
  return "?";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view s) {
  for (auto k : {OperatorKind::Der, OperatorKind::ZDer, OperatorKind::Centroid, OperatorKind::QuasiCentroid,
                 OperatorKind::Commuting}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<GroupElement> candidate_degrees(const ColorAlgebra& L) {
  std::set<GroupElement> out;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) out.insert(L.group().subtract(L.degree(j), L.degree(i)));
  return {out.begin(), out.end()};
}

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void require_multiplicative(const ColorAlgebra& L) {
  if (!is_multiplicative(L)) throw PreconditionError("operator spaces are defined for multiplicative algebras only");
}

// Linear constraints on nmaps unknown degree-d matrices sharing one sparsity pattern.
class ConstraintBuilder {
 public:
  ConstraintBuilder(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d, std::size_t nmaps)
      : L_(L), d_(d), nmaps_(nmaps), dim_(L.dim()), pos_(dim_ * dim_, npos), rows_for_col_(dim_),
        eps_(L.eps()), red_(0) {
    const auto& G = L.group();
    for (std::size_t row = 0; row < dim_; ++row)
      for (std::size_t col = 0; col < dim_; ++col)
        if (L.degree(row) == G.add(L.degree(col), d)) {
          pos_[row * dim_ + col] = per_map_++;
          rows_for_col_[col].push_back(row);
        }
    nvars_ = per_map_ * nmaps_;
    red_ = RowReducer(nvars_);
    rows_.assign(dim_, Vector(nvars_));
    phi_ = sparse_columns(L.alpha().pow(k) * L.beta().pow(r));
  }

  std::size_t per_map() const { return per_map_; }
  std::size_t nvars() const { return nvars_; }
  bool saturated() const { return red_.full_rank(); }
  std::size_t var(std::size_t m, std::size_t row, std::size_t col) const { return m * per_map_ + pos_[row * dim_ + col]; }

  void add_commutation() {
    for (const MatrixQ* T : {&L_.alpha(), &L_.beta()}) {
      for (std::size_t m = 0; m < nmaps_; ++m) {
        for (std::size_t o = 0; o < dim_; ++o) {
          for (std::size_t c = 0; c < dim_; ++c) {
            Vector row(nvars_);
            bool nz = false;
            // (D T)[o][c] − (T D)[o][c]
            for (std::size_t j = 0; j < dim_; ++j) {
              if (pos_[o * dim_ + j] != npos && sgn((*T)(j, c)) != 0) {
                row[var(m, o, j)] += (*T)(j, c);
                nz = true;
              }
              if (pos_[j * dim_ + c] != npos && sgn((*T)(o, j)) != 0) {
                row[var(m, j, c)] -= (*T)(o, j);
                nz = true;
              }
            }
            if (nz) red_.add_row(std::move(row));
          }
        }
      }
    }
  }

  void begin_tuple(const std::vector<std::size_t>& x) {
    x_ = x;
    bracket_ = L_.bracket().get(x);
    const auto& G = L_.group();
    prefix_.assign(x.size(), G.identity());
    for (std::size_t i = 1; i < x.size(); ++i) prefix_[i] = G.add(prefix_[i - 1], L_.degree(x[i - 1]));
  }

  // ε(d, X_i) with X_i the degree sum of the arguments before slot i.
  const Rational& eps_prefix(std::size_t slot) { return eps_(d_, prefix_[slot]); }

  // rows += coef · D_m([x])
  void apply_to_bracket(std::size_t m, const Rational& coef) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (sgn(bracket_[c]) == 0) continue;
      for (auto o : rows_for_col_[c]) rows_[o][var(m, o, c)] += coef * bracket_[c];
    }
  }

  // rows += coef · [φx_1, …, D_m x_slot, …, φx_n]
  void insert(std::size_t m, std::size_t slot, const Rational& coef) {
    const auto n = x_.size();
    std::vector<SparseVector> args(n);
    for (std::size_t j = 0; j < n; ++j)
      if (j != slot) args[j] = phi_[x_[j]];
    Vector val(dim_);
    for (auto row : rows_for_col_[x_[slot]]) {
      args[slot] = SparseVector{{row, Rational(1)}};
      std::fill(val.begin(), val.end(), Rational(0));
      L_.bracket().accumulate(args, coef, val);
      const auto v = var(m, row, x_[slot]);
      for (std::size_t o = 0; o < dim_; ++o)
        if (sgn(val[o]) != 0) rows_[o][v] += val[o];
    }
  }

  void flush() {
    for (auto& row : rows_) {
      bool nz = false;
      for (auto& e : row)
        if (sgn(e) != 0) {
          nz = true;
          break;
        }
      if (nz) {
        red_.add_row(row);
        for (auto& e : row) e = 0;
      }
    }
  }

  SubspaceQ kernel() const { return red_.kernel(); }

  // Kernel basis vector → one flattened matrix per unknown map.
  std::vector<Vector> split(const Vector& v) const {
    std::vector<Vector> out(nmaps_, Vector(dim_ * dim_));
    for (std::size_t f = 0; f < dim_ * dim_; ++f) {
      if (pos_[f] == npos) continue;
      for (std::size_t m = 0; m < nmaps_; ++m) out[m][f] = v[m * per_map_ + pos_[f]];
    }
    return out;
  }

 private:
  const ColorAlgebra& L_;
  GroupElement d_;
  std::size_t nmaps_;
  std::size_t dim_;
  std::size_t per_map_ = 0;
  std::size_t nvars_ = 0;
  std::vector<std::size_t> pos_;
  std::vector<std::vector<std::size_t>> rows_for_col_;
  detail::EpsCache eps_;
  RowReducer red_;
  std::vector<Vector> rows_;
  std::vector<SparseVector> phi_;
  std::vector<std::size_t> x_;
  Vector bracket_;
  std::vector<GroupElement> prefix_;
};

enum class JointKind { Single, QDer, GDer };

// Runs the identity emitter over every basis tuple until the system saturates.
template <class Emit>
void assemble(const ColorAlgebra& L, ConstraintBuilder& cb, Emit&& emit) {
  cb.add_commutation();
  for_each_tuple(cube(L.dim(), L.arity()), [&](const std::vector<std::size_t>& x) {
    if (cb.saturated()) return;
    cb.begin_tuple(x);
    emit(cb);
  });
}

std::vector<std::size_t> slots_for(OperatorKind kind, SlotMode mode, std::size_t n) {
  std::vector<std::size_t> s;
  if (kind == OperatorKind::QuasiCentroid) {
    if (mode == SlotMode::SingleSlot) return {1};
    for (std::size_t i = 1; i < n; ++i) s.push_back(i);
    return s;
  }
  if (mode == SlotMode::SingleSlot) return {0};
  for (std::size_t i = 0; i < n; ++i) s.push_back(i);
  return s;
}

SubspaceQ embed(const ConstraintBuilder& cb, const SubspaceQ& kernel, std::size_t nmaps, std::size_t dim) {
  std::vector<Vector> rows;
  for (const auto& v : kernel.basis()) {
    auto parts = cb.split(v);
    Vector joint;
    joint.reserve(nmaps * dim * dim);
    for (auto& p : parts) joint.insert(joint.end(), p.begin(), p.end());
    rows.push_back(std::move(joint));
  }
  // The embedding preserves column order, so the rows stay in canonical RREF.
  return SubspaceQ::span(nmaps * dim * dim, rows);
}

SubspaceQ solve_joint(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d, JointKind joint,
                      OperatorKind kind, SlotMode mode) {
  require_multiplicative(L);
  if (!L.group().contains(d)) throw DimensionError("degree " + to_string(d) + " is not in the grading group");
  const auto n = L.arity();
  const std::size_t nmaps = joint == JointKind::Single ? 1 : joint == JointKind::QDer ? 2 : n + 1;
  ConstraintBuilder cb(L, k, r, d, nmaps);
  if (cb.nvars() == 0) return SubspaceQ(nmaps * L.dim() * L.dim());
  const auto slots = slots_for(kind, mode, n);
  assemble(L, cb, [&](ConstraintBuilder& b) {
    if (joint == JointKind::QDer) {
      b.apply_to_bracket(1, 1);
      for (std::size_t i = 0; i < n; ++i) b.insert(0, i, -b.eps_prefix(i));
      b.flush();
      return;
    }
    if (joint == JointKind::GDer) {
      b.apply_to_bracket(n, 1);
      for (std::size_t i = 0; i < n; ++i) b.insert(i, i, -b.eps_prefix(i));
      b.flush();
      return;
    }
    switch (kind) {
      case OperatorKind::Der:
        b.apply_to_bracket(0, 1);
        for (std::size_t i = 0; i < n; ++i) b.insert(0, i, -b.eps_prefix(i));
        b.flush();
        break;
      case OperatorKind::ZDer:
        b.apply_to_bracket(0, 1);
        b.flush();
        for (std::size_t i = 0; i < n; ++i) {
          b.insert(0, i, 1);
          b.flush();
        }
        break;
      case OperatorKind::Centroid:
        for (auto i : slots) {
          b.apply_to_bracket(0, 1);
          b.insert(0, i, -b.eps_prefix(i));
          b.flush();
        }
        break;
      case OperatorKind::QuasiCentroid:
        for (auto i : slots) {
          b.insert(0, 0, 1);
          b.insert(0, i, -b.eps_prefix(i));
          b.flush();
        }
        break;
      case OperatorKind::Commuting:
        break;
    }
  });
  return embed(cb, cb.kernel(), nmaps, L.dim());
}

std::vector<HomogeneousMap> maps_of(const SubspaceQ& s, std::size_t dim, const GroupElement& d) {
  std::vector<HomogeneousMap> out;
  for (const auto& v : s.basis()) out.push_back({d, MatrixQ::unflatten(dim, dim, v)});
  return out;
}

SubspaceQ project_first(const SubspaceQ& joint, std::size_t dim) {
  std::vector<Vector> rows;
  for (const auto& v : joint.basis()) rows.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim * dim));
  return SubspaceQ::span(dim * dim, rows);
}

}  // namespace

OperatorBasis solve_operator_space(const ColorAlgebra& L, const OperatorQuery& q, SlotMode mode) {
  auto space = solve_joint(L, q.k, q.r, q.degree, JointKind::Single, q.kind, mode);
  return OperatorBasis{q, maps_of(space, L.dim(), q.degree), space};
}

SubspaceQ qder_joint_space(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d) {
  return solve_joint(L, k, r, d, JointKind::QDer, OperatorKind::Der, SlotMode::AllSlots);
}

SubspaceQ gder_joint_space(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d) {
  return solve_joint(L, k, r, d, JointKind::GDer, OperatorKind::Der, SlotMode::AllSlots);
}

std::vector<QDerPair> solve_qder(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d) {
  const auto dim = L.dim();
  std::vector<QDerPair> out;
  const auto joint = qder_joint_space(L, k, r, d);
  for (const auto& v : joint.basis()) {
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(dim * dim);
    out.push_back({{d, MatrixQ::unflatten(dim, dim, Vector(v.begin(), mid))},
                   {d, MatrixQ::unflatten(dim, dim, Vector(mid, v.end()))}});
  }
  return out;
}

std::vector<GDerTuple> solve_gder(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d) {
  const auto dim = L.dim();
  std::vector<GDerTuple> out;
  const auto joint = gder_joint_space(L, k, r, d);
  for (const auto& v : joint.basis()) {
    GDerTuple t;
    for (std::size_t m = 0; m <= L.arity(); ++m) {
      auto b = v.begin() + static_cast<std::ptrdiff_t>(m * dim * dim);
      t.maps.push_back({d, MatrixQ::unflatten(dim, dim, Vector(b, b + static_cast<std::ptrdiff_t>(dim * dim)))});
    }
    out.push_back(std::move(t));
  }
  return out;
}

OperatorBasis qder_projection(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d) {
  auto s = project_first(qder_joint_space(L, k, r, d), L.dim());
  return OperatorBasis{{k, r, d, OperatorKind::Der}, maps_of(s, L.dim(), d), s};
}

OperatorBasis gder_projection(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d) {
  auto s = project_first(gder_joint_space(L, k, r, d), L.dim());
  return OperatorBasis{{k, r, d, OperatorKind::Der}, maps_of(s, L.dim(), d), s};
}

HomogeneousMap eps_commutator(const Bicharacter& eps, const HomogeneousMap& D, const HomogeneousMap& E) {
  if (D.matrix.rows() != E.matrix.rows() || D.matrix.cols() != E.matrix.cols()) {
    throw DimensionError("commutator of maps on different spaces");
  }
  const auto& G = eps.group();
  return {G.add(D.degree, E.degree), D.matrix * E.matrix - eps(D.degree, E.degree) * (E.matrix * D.matrix)};
}

CheckResult operator_residual(const ColorAlgebra& L, IdentityKind kind, unsigned k, unsigned r,
                              std::span<const HomogeneousMap> maps, SlotMode mode) {
  const auto n = L.arity();
  const auto dim = L.dim();
  const std::size_t need = kind == IdentityKind::QDer ? 2 : kind == IdentityKind::GDer ? n + 1 : 1;
  if (maps.size() != need) throw DimensionError("wrong number of maps for the identity");
  ResultBuilder rb("residual");
  const auto& G = L.group();
  const auto d = maps[0].degree;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const auto& M = maps[m].matrix;
    if (M.rows() != dim || M.cols() != dim) throw DimensionError("map shape mismatch");
    rb.check(maps[m].degree == d && is_homogeneous_matrix(G, L.degrees(), M, d), {m}, std::nullopt, {}, {},
             "map is not homogeneous of the common degree");
    for (const MatrixQ* T : {&L.alpha(), &L.beta()}) {
      auto lhs = (M * *T).flatten();
      auto rhs = (*T * M).flatten();
      rb.check(lhs == rhs, {m}, std::nullopt, lhs, rhs, T == &L.alpha() ? "D∘α vs α∘D" : "D∘β vs β∘D");
    }
  }
  const MatrixQ phi = L.alpha().pow(k) * L.beta().pow(r);
  auto image = [&](const MatrixQ& M, std::size_t j) { return M.column(j); };
  // [φx_1, …, M x_slot, …, φx_n]
  auto ins = [&](const MatrixQ& M, const std::vector<std::size_t>& x, std::size_t slot) {
    std::vector<Vector> args(n);
    for (std::size_t j = 0; j < n; ++j) args[j] = j == slot ? image(M, x[j]) : image(phi, x[j]);
    return L.bracket().eval(args);
  };
  for_each_tuple(cube(dim, n), [&](const std::vector<std::size_t>& x) {
    std::vector<Rational> sign(n);
    auto X = G.identity();
    for (std::size_t i = 0; i < n; ++i) {
      sign[i] = L.eps()(d, X);
      X = G.add(X, L.degree(x[i]));
    }
    const auto b = L.bracket().get(x);
    auto leibniz = [&](auto map_for_slot) {
      Vector s(dim);
      for (std::size_t i = 0; i < n; ++i) axpy(s, sign[i], ins(map_for_slot(i), x, i));
      return s;
    };
    switch (kind) {
      case IdentityKind::Der: {
        auto lhs = maps[0].matrix.apply(b);
        auto rhs = leibniz([&](std::size_t) -> const MatrixQ& { return maps[0].matrix; });
        rb.check(lhs == rhs, x, std::nullopt, lhs, rhs);
        break;
      }
      case IdentityKind::QDer: {
        auto lhs = maps[1].matrix.apply(b);
        auto rhs = leibniz([&](std::size_t) -> const MatrixQ& { return maps[0].matrix; });
        rb.check(lhs == rhs, x, std::nullopt, lhs, rhs);
        break;
      }
      case IdentityKind::GDer: {
        auto lhs = maps[n].matrix.apply(b);
        auto rhs = leibniz([&](std::size_t i) -> const MatrixQ& { return maps[i].matrix; });
        rb.check(lhs == rhs, x, std::nullopt, lhs, rhs);
        break;
      }
      case IdentityKind::ZDer: {
        auto lhs = maps[0].matrix.apply(b);
        rb.check(is_zero(lhs), x, std::nullopt, lhs, Vector(dim), "D([x]) = 0");
        for (std::size_t i = 0; i < n; ++i) {
          auto v = ins(maps[0].matrix, x, i);
          rb.check(is_zero(v), x, i, v, Vector(dim), "insertion vanishes");
        }
        break;
      }
      case IdentityKind::Centroid: {
        auto lhs = maps[0].matrix.apply(b);
        for (auto i : slots_for(OperatorKind::Centroid, mode, n)) {
          auto rhs = ins(maps[0].matrix, x, i);
          for (auto& e : rhs) e *= sign[i];
          rb.check(lhs == rhs, x, i, lhs, rhs);
        }
        break;
      }
      case IdentityKind::QuasiCentroid: {
        auto lhs = ins(maps[0].matrix, x, 0);
        for (auto i : slots_for(OperatorKind::QuasiCentroid, mode, n)) {
          auto rhs = ins(maps[0].matrix, x, i);
          for (auto& e : rhs) e *= sign[i];
          rb.check(lhs == rhs, x, i, lhs, rhs);
        }
        break;
      }
    }
  });
  return std::move(rb).finish();
}

}  // namespace nbihom
