#include <functional>

#include "internal.hpp"
#include "nbihom/algebra.hpp"
#include "nbihom/errors.hpp"

namespace nbihom {

using detail::cube;
using detail::sparse_columns;

namespace {

// Kernel of x ↦ (image(c) · x_c summed over c), solved separately on each degree block.
GradedSubspace graded_kernel(const ColorAlgebra& L, const std::vector<Vector>& columns) {
  std::map<GroupElement, std::vector<std::size_t>> blocks;
  for (std::size_t c = 0; c < L.dim(); ++c) blocks[L.degree(c)].push_back(c);
  std::vector<Vector> basis;
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& [deg, idx] : blocks) {
    RowReducer red(idx.size());
    for (std::size_t r = 0; r < rows && !red.full_rank(); ++r) {
      Vector row(idx.size());
      bool nonzero = false;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        row[j] = columns[idx[j]][r];
        nonzero = nonzero || sgn(row[j]) != 0;
      }
      if (nonzero) red.add_row(std::move(row));
    }
    const auto ker = red.kernel();
    for (const auto& k : ker.basis()) {
      Vector v(L.dim());
      for (std::size_t j = 0; j < idx.size(); ++j) v[idx[j]] = k[j];
      basis.push_back(std::move(v));
    }
  }
  return GradedSubspace::span(L, basis);
}

void append(Vector& dst, const Vector& src) { dst.insert(dst.end(), src.begin(), src.end()); }

// Column c: concatenation of [e_c, a_1, …, a_{n−1}] over all tuples drawn from `others`.
std::vector<Vector> first_slot_columns(const ColorAlgebra& L, const std::vector<std::vector<SparseVector>>& slots) {
  std::vector<Vector> cols(L.dim());
  std::vector<std::size_t> dims;
  for (const auto& s : slots) dims.push_back(s.size());
  std::vector<SparseVector> args(L.arity());
  for (std::size_t c = 0; c < L.dim(); ++c) {
    args[0] = SparseVector{{c, Rational(1)}};
    for_each_tuple(dims, [&](const std::vector<std::size_t>& t) {
      for (std::size_t s = 0; s < t.size(); ++s) args[s + 1] = slots[s][t[s]];
      append(cols[c], L.bracket().eval_sparse(args));
    });
  }
  return cols;
}

std::vector<SparseVector> sparse_basis(const std::vector<Vector>& vs) {
  std::vector<SparseVector> out;
  for (const auto& v : vs) out.push_back(sparsify(v));
  return out;
}

std::vector<SparseVector> standard_basis(std::size_t dim) {
  std::vector<SparseVector> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = SparseVector{{i, Rational(1)}};
  return out;
}

bool twist_invariant(const ColorAlgebra& L, const GradedSubspace& H) {
  for (const auto& v : H.basis())
    if (!H.contains(L.alpha().apply(v)) || !H.contains(L.beta().apply(v))) return false;
  return true;
}

}  // namespace

bool is_subalgebra(const ColorAlgebra& L, const GradedSubspace& H) {
  if (!twist_invariant(L, H)) return false;
  auto hb = sparse_basis(H.basis());
  bool ok = true;
  std::vector<SparseVector> args(L.arity());
  for_each_tuple(cube(hb.size(), L.arity()), [&](const std::vector<std::size_t>& t) {
    if (!ok) return;
    for (std::size_t s = 0; s < t.size(); ++s) args[s] = hb[t[s]];
    if (!H.contains(L.bracket().eval_sparse(args))) ok = false;
  });
  return ok;
}

bool is_ideal(const ColorAlgebra& L, const GradedSubspace& I, IdealMode mode) {
  if (!twist_invariant(L, I)) return false;
  auto ib = sparse_basis(I.basis());
  auto eb = standard_basis(L.dim());
  const auto n = L.arity();
  const std::size_t positions = mode == IdealMode::AllPositions ? n : 1;
  std::vector<SparseVector> args(n);
  for (std::size_t p = 0; p < positions; ++p) {
    for (const auto& x : ib) {
      bool ok = true;
      for_each_tuple(cube(L.dim(), n - 1), [&](const std::vector<std::size_t>& y) {
        if (!ok) return;
        std::size_t q = 0;
        for (std::size_t s = 0; s < n; ++s) args[s] = s == p ? x : eb[y[q++]];
        if (!I.contains(L.bracket().eval_sparse(args))) ok = false;
      });
      if (!ok) return false;
    }
  }
  return true;
}

GradedSubspace center(const ColorAlgebra& L) {
  std::vector<std::vector<SparseVector>> slots(L.arity() - 1, standard_basis(L.dim()));
  return graded_kernel(L, first_slot_columns(L, slots));
}

GradedSubspace ab_center(const ColorAlgebra& L) {
  std::vector<std::vector<SparseVector>> slots(L.arity() - 1, sparse_columns(L.alpha() * L.beta()));
  return graded_kernel(L, first_slot_columns(L, slots));
}

GradedSubspace centralizer(const ColorAlgebra& L, const GradedSubspace& H) {
  if (H.dim() == 0) return GradedSubspace::whole(L);
  std::vector<std::vector<SparseVector>> slots(L.arity() - 1, standard_basis(L.dim()));
  slots[0] = sparse_basis(H.basis());
  return graded_kernel(L, first_slot_columns(L, slots));
}

std::vector<GradedSubspace> derived_sequence(const ColorAlgebra& L, std::size_t depth) {
  std::vector<GradedSubspace> out{GradedSubspace::whole(L)};
  std::vector<SparseVector> args(L.arity());
  for (std::size_t m = 0; m < depth; ++m) {
    auto b = sparse_basis(out.back().basis());
    RowReducer red(L.dim());
    for_each_tuple(cube(b.size(), L.arity()), [&](const std::vector<std::size_t>& t) {
      if (red.full_rank()) return;
      for (std::size_t s = 0; s < t.size(); ++s) args[s] = b[t[s]];
      red.add_row(L.bracket().eval_sparse(args));
    });
    out.emplace_back(L.degrees(), red.row_space());
  }
  return out;
}

std::vector<GradedSubspace> central_sequence(const ColorAlgebra& L, std::size_t depth) {
  std::vector<GradedSubspace> out{GradedSubspace::whole(L)};
  auto eb = standard_basis(L.dim());
  std::vector<SparseVector> args(L.arity());
  for (std::size_t m = 0; m < depth; ++m) {
    auto b = sparse_basis(out.back().basis());
    RowReducer red(L.dim());
    for (const auto& x : b) {
      args[0] = x;
      for_each_tuple(cube(L.dim(), L.arity() - 1), [&](const std::vector<std::size_t>& y) {
        if (red.full_rank()) return;
        for (std::size_t s = 0; s < y.size(); ++s) args[s + 1] = eb[y[s]];
        red.add_row(L.bracket().eval_sparse(args));
      });
    }
    out.emplace_back(L.degrees(), red.row_space());
  }
  return out;
}

Report check_ideal_theorem(const ColorAlgebra& L, std::size_t depth) {
  Report rep;
  rep.subject = "ideal_theorem";
  const bool hyp = is_involutive(L);
  auto record = [&](const std::string& name, const GradedSubspace& S) {
    CheckResult r;
    r.name = name;
    r.instances = 1;
    const bool ideal = is_ideal(L, S);
    r.note = "dim " + std::to_string(S.dim()) + ", is_ideal = " + (ideal ? "true" : "false");
    if (!hyp) {
      r.status = Status::HypothesisNotMet;
      r.note += " (alpha^2 = beta^2 = id does not hold)";
    } else if (!ideal) {
      r.status = Status::Fail;
      r.failures.push_back(Witness{{}, std::nullopt, {}, {}, name + " is not an ideal"});
    }
    rep.checks.push_back(std::move(r));
  };
  auto ds = derived_sequence(L, depth);
  auto cs = central_sequence(L, depth);
  for (std::size_t m = 1; m <= depth; ++m) record("derived_" + std::to_string(m), ds[m]);
  for (std::size_t m = 1; m <= depth; ++m) record("central_" + std::to_string(m), cs[m]);
  record("center", center(L));
  return rep;
}

}  // namespace nbihom
