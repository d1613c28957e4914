#include "oracle.hpp"

#include <utility>

namespace oracle {

using nbihom::for_each_tuple;
using nbihom::operator*;
using nbihom::operator-;

Rows gauss_jordan(Rows rows, std::size_t cols) {
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
    std::size_t p = lead;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[lead], rows[p]);
    Rational inv = 1 / rows[lead][c];
    for (auto& x : rows[lead]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == lead || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[lead][j];
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

std::size_t rank(const Rows& rows, std::size_t cols) { return gauss_jordan(rows, cols).size(); }

Rows nullspace(const Rows& rows, std::size_t cols) {
  auto R = gauss_jordan(rows, cols);
  std::vector<int> pivot_of(cols, -1);
  for (std::size_t i = 0; i < R.size(); ++i) {
    std::size_t c = 0;
    while (R[i][c] == 0) ++c;
    pivot_of[c] = static_cast<int>(i);
  }
  Rows out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_of[f] >= 0) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of[c] >= 0) v[c] = -R[static_cast<std::size_t>(pivot_of[c])][f];
    out.push_back(std::move(v));
  }
  return out;
}

bool same_span(const Rows& a, const Rows& b, std::size_t cols) {
  auto ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  auto r = rank(ab, cols);
  return r == rank(a, cols) && r == rank(b, cols);
}

bool in_span(const Rows& a, const Vector& v, std::size_t cols) {
  auto av = a;
  av.push_back(v);
  return rank(av, cols) == rank(a, cols);
}

Vector mat_vec(const MatrixQ& m, const Vector& v) {
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

namespace {

void expand(const ColorAlgebra& L, const std::vector<Vector>& args, std::size_t slot, std::vector<std::size_t>& idx,
            const Rational& coef, Vector& out) {
  if (slot == args.size()) {
    auto v = L.bracket().get(idx);
    for (std::size_t o = 0; o < out.size(); ++o) out[o] += coef * v[o];
    return;
  }
  for (std::size_t i = 0; i < args[slot].size(); ++i) {
    if (args[slot][i] == 0) continue;
    idx[slot] = i;
    expand(L, args, slot + 1, idx, coef * args[slot][i], out);
  }
}

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

Rows identity_rows(std::size_t n) {
  Rows out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(unit(n, i));
  return out;
}

Rows image_rows(const MatrixQ& m) {
  Rows out;
  for (std::size_t i = 0; i < m.cols(); ++i) out.push_back(mat_vec(m, unit(m.rows(), i)));
  return out;
}

// Kernel of x ↦ ([x, a_1, …, a_{n−1}]) over all a_s ∈ choices[s].
Rows first_slot_kernel(const ColorAlgebra& L, const std::vector<Rows>& choices) {
  const auto n = L.dim();
  Rows constraints;
  std::vector<std::size_t> dims;
  for (const auto& c : choices) dims.push_back(c.size());
  for_each_tuple(dims, [&](const std::vector<std::size_t>& t) {
    // one row per output coordinate: x_c coefficient = [e_c, a…][o]
    Rows block(n, Vector(n));
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<Vector> args{unit(n, c)};
      for (std::size_t s = 0; s < t.size(); ++s) args.push_back(choices[s][t[s]]);
      auto v = bracket(L, args);
      for (std::size_t o = 0; o < n; ++o) block[o][c] = v[o];
    }
    constraints.insert(constraints.end(), block.begin(), block.end());
  });
  return nullspace(constraints, n);
}

Rational eps(const ColorAlgebra& L, const GroupElement& a, const GroupElement& b) { return L.eps()(a, b); }

}  // namespace

Vector bracket(const ColorAlgebra& L, const std::vector<Vector>& args) {
  Vector out(L.dim());
  std::vector<std::size_t> idx(args.size());
  expand(L, args, 0, idx, Rational(1), out);
  return out;
}

Rows center(const ColorAlgebra& L) {
  return first_slot_kernel(L, std::vector<Rows>(L.arity() - 1, identity_rows(L.dim())));
}

Rows ab_center(const ColorAlgebra& L) {
  return first_slot_kernel(L, std::vector<Rows>(L.arity() - 1, image_rows(L.alpha() * L.beta())));
}

Rows centralizer(const ColorAlgebra& L, const Rows& H) {
  if (H.empty()) return identity_rows(L.dim());
  std::vector<Rows> choices(L.arity() - 1, identity_rows(L.dim()));
  choices[0] = H;
  return first_slot_kernel(L, choices);
}

std::vector<Rows> derived_sequence(const ColorAlgebra& L, std::size_t depth) {
  std::vector<Rows> out{identity_rows(L.dim())};
  for (std::size_t m = 0; m < depth; ++m) {
    const auto& prev = out.back();
    Rows gen;
    for_each_tuple(std::vector<std::size_t>(L.arity(), prev.size()), [&](const std::vector<std::size_t>& t) {
      std::vector<Vector> args;
      for (auto i : t) args.push_back(prev[i]);
      gen.push_back(bracket(L, args));
    });
    out.push_back(gauss_jordan(gen, L.dim()));
  }
  return out;
}

std::vector<Rows> central_sequence(const ColorAlgebra& L, std::size_t depth) {
  std::vector<Rows> out{identity_rows(L.dim())};
  const auto E = identity_rows(L.dim());
  for (std::size_t m = 0; m < depth; ++m) {
    const auto& prev = out.back();
    Rows gen;
    for (const auto& x : prev) {
      for_each_tuple(std::vector<std::size_t>(L.arity() - 1, L.dim()), [&](const std::vector<std::size_t>& t) {
        std::vector<Vector> args{x};
        for (auto i : t) args.push_back(E[i]);
        gen.push_back(bracket(L, args));
      });
    }
    out.push_back(gauss_jordan(gen, L.dim()));
  }
  return out;
}

std::size_t map_count(Kind kind, std::size_t arity) {
  switch (kind) {
    case Kind::QDer:
      return 2;
    case Kind::GDer:
      return arity + 1;
    default:
      return 1;
  }
}

Vector residual(const ColorAlgebra& L, Kind kind, unsigned k, unsigned r, const GroupElement& d,
                const std::vector<MatrixQ>& maps) {
  const auto n = L.arity();
  const auto dim = L.dim();
  const auto& G = L.group();
  Vector res;
  auto push = [&](const Vector& v) { res.insert(res.end(), v.begin(), v.end()); };

  MatrixQ phi = MatrixQ::identity(dim);
  for (unsigned i = 0; i < k; ++i) phi = phi * L.alpha();
  for (unsigned i = 0; i < r; ++i) phi = phi * L.beta();

  for (const auto& M : maps) {
    for (std::size_t o = 0; o < dim; ++o)
      for (std::size_t c = 0; c < dim; ++c)
        if (L.degree(o) != G.add(L.degree(c), d)) res.push_back(M(o, c));
    for (const MatrixQ* T : {&L.alpha(), &L.beta()}) {
      for (std::size_t o = 0; o < dim; ++o)
        for (std::size_t c = 0; c < dim; ++c) {
          Rational s = 0;
          for (std::size_t j = 0; j < dim; ++j) s += M(o, j) * (*T)(j, c) - (*T)(o, j) * M(j, c);
          res.push_back(s);
        }
    }
  }

  for_each_tuple(std::vector<std::size_t>(n, dim), [&](const std::vector<std::size_t>& x) {
    std::vector<Vector> ex, px;
    for (auto i : x) {
      ex.push_back(unit(dim, i));
      px.push_back(mat_vec(phi, unit(dim, i)));
    }
    auto insert = [&](const MatrixQ& M, std::size_t slot) {
      auto args = px;
      args[slot] = mat_vec(M, ex[slot]);
      return bracket(L, args);
    };
    auto sign = [&](std::size_t slot) {
      GroupElement X = G.identity();
      for (std::size_t j = 0; j < slot; ++j) X = G.add(X, L.degree(x[j]));
      return eps(L, d, X);
    };
    const auto b = bracket(L, ex);
    auto leibniz = [&](auto map_at) {
      Vector s(dim);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = insert(map_at(i), i);
        auto e = sign(i);
        for (std::size_t o = 0; o < dim; ++o) s[o] += e * v[o];
      }
      return s;
    };
    switch (kind) {
      case Kind::Der:
        push(mat_vec(maps[0], b) - leibniz([&](std::size_t) { return maps[0]; }));
        break;
      case Kind::QDer:
        push(mat_vec(maps[1], b) - leibniz([&](std::size_t) { return maps[0]; }));
        break;
      case Kind::GDer:
        push(mat_vec(maps[n], b) - leibniz([&](std::size_t i) { return maps[i]; }));
        break;
      case Kind::ZDer:
        push(mat_vec(maps[0], b));
        for (std::size_t i = 0; i < n; ++i) push(insert(maps[0], i));
        break;
      case Kind::Centroid:
        for (std::size_t i = 0; i < n; ++i) push(mat_vec(maps[0], b) - sign(i) * insert(maps[0], i));
        break;
      case Kind::QuasiCentroid:
        for (std::size_t i = 1; i < n; ++i) push(insert(maps[0], 0) - sign(i) * insert(maps[0], i));
        break;
      case Kind::Commuting:
        break;
    }
  });
  return res;
}

Rows operator_space(const ColorAlgebra& L, Kind kind, unsigned k, unsigned r, const GroupElement& d) {
  const auto dim = L.dim();
  const auto nm = map_count(kind, L.arity());
  const auto nvars = nm * dim * dim;
  // Column j of the constraint matrix is the residual of the j-th unit tuple.
  Rows columns;
  for (std::size_t j = 0; j < nvars; ++j) {
    std::vector<MatrixQ> maps(nm, MatrixQ(dim, dim));
    const auto m = j / (dim * dim);
    const auto f = j % (dim * dim);
    maps[m](f / dim, f % dim) = 1;
    columns.push_back(residual(L, kind, k, r, d, maps));
  }
  Rows constraints;
  const auto len = columns.front().size();
  for (std::size_t i = 0; i < len; ++i) {
    Vector row(nvars);
    bool nz = false;
    for (std::size_t j = 0; j < nvars; ++j) {
      row[j] = columns[j][i];
      nz = nz || row[j] != 0;
    }
    if (nz) constraints.push_back(std::move(row));
  }
  return nullspace(constraints, nvars);
}

Rows first_component(const Rows& joint, std::size_t dim) {
  Rows out;
  for (const auto& v : joint) out.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim * dim));
  return out;
}

std::set<std::vector<std::size_t>> jacobi_failures(const ColorAlgebra& L) {
  const auto n = L.arity();
  const auto dim = L.dim();
  const auto& G = L.group();
  const auto& A = L.alpha();
  const auto& B = L.beta();
  const auto B2 = B * B;
  std::set<std::vector<std::size_t>> out;
  for_each_tuple(std::vector<std::size_t>(2 * n - 1, dim), [&](const std::vector<std::size_t>& t) {
    std::vector<std::size_t> x(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n - 1));
    std::vector<std::size_t> y(t.begin() + static_cast<std::ptrdiff_t>(n - 1), t.end());
    GroupElement X = G.identity();
    for (auto i : x) X = G.add(X, L.degree(i));
    auto inner_of = [&](std::size_t last) {
      std::vector<Vector> args;
      for (auto i : x) args.push_back(mat_vec(B, unit(dim, i)));
      args.push_back(mat_vec(A, unit(dim, last)));
      return bracket(L, args);
    };
    std::vector<Vector> args;
    for (auto i : x) args.push_back(mat_vec(B2, unit(dim, i)));
    {
      std::vector<Vector> in;
      for (std::size_t s = 0; s + 1 < n; ++s) in.push_back(mat_vec(B, unit(dim, y[s])));
      in.push_back(mat_vec(A, unit(dim, y[n - 1])));
      args.push_back(bracket(L, in));
    }
    auto lhs = bracket(L, args);
    Vector rhs(dim);
    GroupElement Yk = G.identity();
    for (std::size_t kk = 0; kk < n; ++kk) {
      std::vector<Vector> a;
      for (std::size_t s = 0; s < n; ++s) a.push_back(s == kk ? inner_of(y[kk]) : mat_vec(B2, unit(dim, y[s])));
      auto v = bracket(L, a);
      auto e = eps(L, X, Yk);
      for (std::size_t o = 0; o < dim; ++o) rhs[o] += e * v[o];
      Yk = G.add(Yk, L.degree(y[kk]));
    }
    if (lhs != rhs) out.insert(t);
  });
  return out;
}

std::set<std::vector<std::size_t>> skew_failures(const ColorAlgebra& L) {
  const auto n = L.arity();
  const auto dim = L.dim();
  auto twisted = [&](const std::vector<std::size_t>& x) {
    std::vector<Vector> args;
    for (std::size_t s = 0; s < n; ++s) args.push_back(mat_vec(s + 1 < n ? L.beta() : L.alpha(), unit(dim, x[s])));
    return bracket(L, args);
  };
  std::set<std::vector<std::size_t>> out;
  for_each_tuple(std::vector<std::size_t>(n, dim), [&](const std::vector<std::size_t>& x) {
    auto lhs = twisted(x);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      auto y = x;
      std::swap(y[k], y[k + 1]);
      auto rhs = twisted(y);
      Rational e = -eps(L, L.degree(x[k]), L.degree(x[k + 1]));
      for (auto& v : rhs) v *= e;
      if (lhs != rhs) {
        auto w = x;
        w.push_back(k);
        out.insert(w);
      }
    }
  });
  return out;
}

}  // namespace oracle
