#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nbihom {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
// y += a * x
void axpy(Vector& y, const Rational& a, const Vector& x);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);

class MatrixQ {
 public:
  MatrixQ() = default;
  MatrixQ(std::size_t rows, std::size_t cols);

  static MatrixQ identity(std::size_t n);
  static MatrixQ from_rows(const std::vector<Vector>& rows);
  static MatrixQ from_columns(std::size_t rows, const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);

  Vector apply(const Vector& v) const;
  MatrixQ transpose() const;
  MatrixQ pow(unsigned k) const;
  bool is_zero() const;
  // Inverse of a square matrix, or nullopt when singular.
  std::optional<MatrixQ> inverse() const;
  // Row-major flattening, the coordinate system used for operator spaces.
  Vector flatten() const;
  static MatrixQ unflatten(std::size_t rows, std::size_t cols, const Vector& v);

  friend bool operator==(const MatrixQ&, const MatrixQ&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);
MatrixQ operator+(const MatrixQ& a, const MatrixQ& b);
MatrixQ operator-(const MatrixQ& a, const MatrixQ& b);
MatrixQ operator*(const Rational& s, const MatrixQ& m);
// Block diagonal a ⊕ b.
MatrixQ direct_sum(const MatrixQ& a, const MatrixQ& b);
// Kronecker product; the index of (p, q) is p * b.rows() + q.
MatrixQ kronecker(const MatrixQ& a, const MatrixQ& b);

struct RrefResult {
  MatrixQ reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const MatrixQ& m);

class SubspaceQ;

// Incremental reduced row echelon form of a growing set of rows.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols);

  // Returns true when the row was independent of the rows seen so far.
  bool add_row(Vector row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool full_rank() const { return rows_.size() == cols_; }

  // Rows sorted by pivot column: the canonical RREF basis.
  std::vector<Vector> sorted_rows() const;
  std::vector<std::size_t> sorted_pivots() const;
  SubspaceQ row_space() const;
  SubspaceQ kernel() const;

 private:
  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

class SubspaceQ {
 public:
  explicit SubspaceQ(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

  static SubspaceQ span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static SubspaceQ full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const SubspaceQ& other) const;
  // Coordinates with respect to basis(), or nullopt when v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;
  // v minus its pivot-column component: zero iff v is inside.
  Vector reduce(const Vector& v) const;
  SubspaceQ sum(const SubspaceQ& other) const;

  friend bool operator==(const SubspaceQ&, const SubspaceQ&) = default;

 private:
  friend class RowReducer;
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

SubspaceQ nullspace(const MatrixQ& m);
std::optional<Vector> solve_linear(const MatrixQ& m, const Vector& b);
bool subspace_membership(const SubspaceQ& s, const Vector& v);
SubspaceQ subspace_intersect(const SubspaceQ& a, const SubspaceQ& b);
// {w : w·v = 0 for all v in s}
SubspaceQ annihilator(const SubspaceQ& s);

std::string to_string(const Vector& v);

}  // namespace nbihom
