#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nbihom/exactla.hpp"

namespace nbihom {

using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

SparseVector sparsify(const Vector& v);
Vector densify(const SparseVector& v, std::size_t n);

// Structure constants of a multilinear map V_1 × … × V_n → W on basis tuples.
// Absent tuples are zero; values are stored exactly as given.
class MultilinearTable {
 public:
  MultilinearTable() = default;
  MultilinearTable(std::vector<std::size_t> slot_dims, std::size_t out_dim);
  static MultilinearTable uniform(std::size_t dim, std::size_t arity);

  std::size_t arity() const { return slot_dims_.size(); }
  const std::vector<std::size_t>& slot_dims() const { return slot_dims_; }
  std::size_t out_dim() const { return out_dim_; }
  std::size_t cell_count() const { return cells_.size(); }

  void set(std::span<const std::size_t> idx, const Vector& value);
  Vector get(std::span<const std::size_t> idx) const;
  const SparseVector& cell(std::span<const std::size_t> idx) const;
  const SparseVector& cell_at(std::size_t flat) const { return cells_[flat]; }
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> idx) const;

  Vector eval(std::span<const Vector> args) const;
  Vector eval_sparse(std::span<const SparseVector> args) const;
  // Adds coef * T(args) into out.
  void accumulate(std::span<const SparseVector> args, const Rational& coef, Vector& out) const;

  // Nonzero entries in lexicographic tuple order.
  template <class F>
  void for_each_nonzero(F&& f) const {
    for (std::size_t flat = 0; flat < cells_.size(); ++flat) {
      if (!cells_[flat].empty()) f(unflatten(flat), cells_[flat]);
    }
  }

  friend bool operator==(const MultilinearTable&, const MultilinearTable&) = default;

 private:
  std::vector<std::size_t> slot_dims_;
  std::size_t out_dim_ = 0;
  std::vector<SparseVector> cells_;
};

// Calls f(tuple) for every tuple in [0,dims[0]) × … in lexicographic order.
template <class F>
void for_each_tuple(const std::vector<std::size_t>& dims, F&& f) {
  std::vector<std::size_t> t(dims.size(), 0);
  for (auto d : dims)
    if (d == 0) return;
  while (true) {
    f(std::as_const(t));
    std::size_t k = dims.size();
    while (k > 0) {
      --k;
      if (++t[k] < dims[k]) break;
      t[k] = 0;
      if (k == 0) return;
    }
    if (dims.empty()) return;
  }
}

}  // namespace nbihom
