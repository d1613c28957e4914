#include "nbihom/exactla.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nbihom/errors.hpp"

namespace nbihom {

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::invalid_argument(problems.empty() ? std::string("validation failed") : problems.front()),
      problems_(std::move(problems)) {}

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
  while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
  auto slash = trimmed.find('/');
  std::string_view num = trimmed.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : trimmed.substr(slash + 1);
  if (!is_integer_text(num) || (slash != std::string_view::npos && !is_integer_text(den))) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class p(n, 10);
  mpz_class q(1);
  if (slash != std::string_view::npos) {
    std::string d(den);
    if (d.front() == '+') d.erase(0, 1);
    q = mpz_class(d, 10);
    if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

void axpy(Vector& y, const Rational& a, const Vector& x) {
  require_same(y.size(), x.size(), "axpy");
  if (sgn(a) == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sgn(x[i]) != 0) y[i] += a * x[i];
  }
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector out = a;
  axpy(out, 1, b);
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector out = a;
  axpy(out, -1, b);
  return out;
}

Vector operator*(const Rational& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

MatrixQ::MatrixQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

MatrixQ MatrixQ::identity(std::size_t n) {
  MatrixQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixQ MatrixQ::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return MatrixQ();
  MatrixQ m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_same(rows[r].size(), m.cols_, "from_rows");
    std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
  }
  return m;
}

MatrixQ MatrixQ::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  MatrixQ m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Vector MatrixQ::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector MatrixQ::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void MatrixQ::set_column(std::size_t c, const Vector& v) {
  require_same(v.size(), rows_, "set_column");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vector MatrixQ::apply(const Vector& v) const {
  require_same(v.size(), cols_, "matrix-vector product");
  Vector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(v[c]) == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& e = (*this)(r, c);
      if (sgn(e) != 0) out[r] += e * v[c];
    }
  }
  return out;
}

MatrixQ MatrixQ::transpose() const {
  MatrixQ t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

MatrixQ MatrixQ::pow(unsigned k) const {
  if (!square()) throw DimensionError("pow of non-square matrix");
  MatrixQ result = identity(rows_);
  MatrixQ base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

bool MatrixQ::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::optional<MatrixQ> MatrixQ::inverse() const {
  if (!square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = rows_;
  MatrixQ aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = 1;
  }
  auto red = rref(aug);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= red.pivots.size() || red.pivots[i] != i) return std::nullopt;
  }
  MatrixQ inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.reduced(r, n + c);
  return inv;
}

Vector MatrixQ::flatten() const { return entries_; }

MatrixQ MatrixQ::unflatten(std::size_t rows, std::size_t cols, const Vector& v) {
  require_same(v.size(), rows * cols, "unflatten");
  MatrixQ m(rows, cols);
  m.entries_ = v;
  return m;
}

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b) {
  require_same(a.cols(), b.rows(), "matrix product");
  MatrixQ out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto& bkj = b(k, j);
        if (sgn(bkj) != 0) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

MatrixQ operator+(const MatrixQ& a, const MatrixQ& b) {
  require_same(a.rows(), b.rows(), "matrix sum rows");
  require_same(a.cols(), b.cols(), "matrix sum cols");
  MatrixQ out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

MatrixQ operator-(const MatrixQ& a, const MatrixQ& b) { return a + Rational(-1) * b; }

MatrixQ operator*(const Rational& s, const MatrixQ& m) {
  MatrixQ out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) *= s;
  return out;
}

MatrixQ direct_sum(const MatrixQ& a, const MatrixQ& b) {
  MatrixQ out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

MatrixQ kronecker(const MatrixQ& a, const MatrixQ& b) {
  MatrixQ out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

RrefResult rref(const MatrixQ& m) {
  RrefResult res{m, 0, {}};
  auto& a = res.reduced;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
    std::size_t p = lead;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(lead, j));
    Rational inv = 1 / a(lead, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(lead, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == lead || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(lead, j)) != 0) a(i, j) -= f * a(lead, j);
    }
    res.pivots.push_back(c);
    ++lead;
  }
  res.rank = res.pivots.size();
  return res;
}

RowReducer::RowReducer(std::size_t cols) : cols_(cols) {}

bool RowReducer::add_row(Vector row) {
  require_same(row.size(), cols_, "row length");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto p = pivots_[i];
    if (sgn(row[p]) == 0) continue;
    Rational f = row[p];
    const auto& src = rows_[i];
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(src[j]) != 0) row[j] -= f * src[j];
  }
  std::size_t p = 0;
  while (p < cols_ && sgn(row[p]) == 0) ++p;
  if (p == cols_) return false;
  Rational inv = 1 / row[p];
  for (std::size_t j = p; j < cols_; ++j)
    if (sgn(row[j]) != 0) row[j] *= inv;
  for (auto& other : rows_) {
    if (sgn(other[p]) == 0) continue;
    Rational f = other[p];
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(row[j]) != 0) other[j] -= f * row[j];
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(p);
  return true;
}

std::vector<Vector> RowReducer::sorted_rows() const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
  std::vector<Vector> out;
  out.reserve(order.size());
  for (auto i : order) out.push_back(rows_[i]);
  return out;
}

std::vector<std::size_t> RowReducer::sorted_pivots() const {
  auto p = pivots_;
  std::sort(p.begin(), p.end());
  return p;
}

SubspaceQ RowReducer::row_space() const {
  SubspaceQ s(cols_);
  s.basis_ = sorted_rows();
  s.pivots_ = sorted_pivots();
  return s;
}

SubspaceQ RowReducer::kernel() const {
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  RowReducer out(cols_);
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols_);
    v[f] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) v[pivots_[i]] = -rows_[i][f];
    out.add_row(std::move(v));
  }
  return out.row_space();
}

SubspaceQ SubspaceQ::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  RowReducer red(ambient_dim);
  for (const auto& v : vectors) red.add_row(v);
  return red.row_space();
}

SubspaceQ SubspaceQ::full(std::size_t ambient_dim) {
  SubspaceQ s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.basis_.push_back(unit_vector(ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Vector SubspaceQ::reduce(const Vector& v) const {
  require_same(v.size(), ambient_, "subspace ambient dimension");
  Vector out = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Rational f = out[pivots_[i]];
    if (sgn(f) != 0) axpy(out, -f, basis_[i]);
  }
  return out;
}

bool SubspaceQ::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool SubspaceQ::contains(const SubspaceQ& other) const {
  require_same(other.ambient_, ambient_, "subspace ambient dimension");
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vector& v) { return contains(v); });
}

std::optional<Vector> SubspaceQ::coordinates(const Vector& v) const {
  if (!contains(v)) return std::nullopt;
  Vector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

SubspaceQ SubspaceQ::sum(const SubspaceQ& other) const {
  require_same(other.ambient_, ambient_, "subspace ambient dimension");
  RowReducer red(ambient_);
  for (const auto& v : basis_) red.add_row(v);
  for (const auto& v : other.basis_) red.add_row(v);
  return red.row_space();
}

SubspaceQ nullspace(const MatrixQ& m) {
  RowReducer red(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add_row(m.row(r));
  return red.kernel();
}

std::optional<Vector> solve_linear(const MatrixQ& m, const Vector& b) {
  require_same(b.size(), m.rows(), "right-hand side length");
  MatrixQ aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  auto red = rref(aug);
  Vector x(m.cols());
  for (std::size_t i = 0; i < red.rank; ++i) {
    if (red.pivots[i] == m.cols()) return std::nullopt;
    x[red.pivots[i]] = red.reduced(i, m.cols());
  }
  return x;
}

bool subspace_membership(const SubspaceQ& s, const Vector& v) { return s.contains(v); }

SubspaceQ annihilator(const SubspaceQ& s) {
  RowReducer red(s.ambient_dim());
  for (const auto& v : s.basis()) red.add_row(v);
  return red.kernel();
}

SubspaceQ subspace_intersect(const SubspaceQ& a, const SubspaceQ& b) {
  require_same(a.ambient_dim(), b.ambient_dim(), "subspace ambient dimension");
  RowReducer red(a.ambient_dim());
  const auto ann_a = annihilator(a);
  const auto ann_b = annihilator(b);
  for (const auto& v : ann_a.basis()) red.add_row(v);
  for (const auto& v : ann_b.basis()) red.add_row(v);
  return red.kernel();
}

}  // namespace nbihom
