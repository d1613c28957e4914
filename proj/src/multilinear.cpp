#include "nbihom/multilinear.hpp"

#include <limits>
#include <string>

#include "nbihom/errors.hpp"

namespace nbihom {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 24;

}  // namespace

SparseVector sparsify(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

Vector densify(const SparseVector& v, std::size_t n) {
  Vector out(n);
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

MultilinearTable::MultilinearTable(std::vector<std::size_t> slot_dims, std::size_t out_dim)
    : slot_dims_(std::move(slot_dims)), out_dim_(out_dim) {
  std::size_t cells = 1;
  for (auto d : slot_dims_) {
    if (d != 0 && cells > kMaxCells / d) throw DimensionError("structure table too large");
    cells *= d;
  }
  cells_.resize(cells);
}

MultilinearTable MultilinearTable::uniform(std::size_t dim, std::size_t arity) {
  return MultilinearTable(std::vector<std::size_t>(arity, dim), dim);
}

std::size_t MultilinearTable::flatten(std::span<const std::size_t> idx) const {
  if (idx.size() != slot_dims_.size()) {
    throw DimensionError("tuple of length " + std::to_string(idx.size()) + " for arity " +
                         std::to_string(slot_dims_.size()));
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= slot_dims_[k]) throw DimensionError("basis index " + std::to_string(idx[k]) + " out of range");
    flat = flat * slot_dims_[k] + idx[k];
  }
  return flat;
}

std::vector<std::size_t> MultilinearTable::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(slot_dims_.size());
  for (std::size_t k = slot_dims_.size(); k-- > 0;) {
    idx[k] = flat % slot_dims_[k];
    flat /= slot_dims_[k];
  }
  return idx;
}

void MultilinearTable::set(std::span<const std::size_t> idx, const Vector& value) {
  if (value.size() != out_dim_) throw DimensionError("value has wrong length");
  cells_[flatten(idx)] = sparsify(value);
}

Vector MultilinearTable::get(std::span<const std::size_t> idx) const { return densify(cell(idx), out_dim_); }

const SparseVector& MultilinearTable::cell(std::span<const std::size_t> idx) const { return cells_[flatten(idx)]; }

void MultilinearTable::accumulate(std::span<const SparseVector> args, const Rational& coef, Vector& out) const {
  const std::size_t n = slot_dims_.size();
  if (args.size() != n) throw DimensionError("wrong number of arguments");
  if (out.size() != out_dim_) throw DimensionError("output has wrong length");
  for (const auto& a : args)
    if (a.empty()) return;
  std::vector<std::size_t> pos(n, 0);
  std::vector<Rational> prefix(n + 1);
  prefix[0] = coef;
  std::size_t k = 0;
  // Depth-first walk over the nonzero coordinates of every argument.
  while (true) {
    if (k == n) {
      std::size_t flat = 0;
      for (std::size_t s = 0; s < n; ++s) flat = flat * slot_dims_[s] + args[s][pos[s]].first;
      for (const auto& [o, v] : cells_[flat]) out[o] += prefix[n] * v;
      while (k > 0) {
        --k;
        if (++pos[k] < args[k].size()) break;
        pos[k] = 0;
        if (k == 0) return;
      }
      if (n == 0) return;
    }
    if (args[k][pos[k]].first >= slot_dims_[k]) throw DimensionError("argument index out of range");
    prefix[k + 1] = prefix[k] * args[k][pos[k]].second;
    ++k;
  }
}

Vector MultilinearTable::eval_sparse(std::span<const SparseVector> args) const {
  Vector out(out_dim_);
  accumulate(args, 1, out);
  return out;
}

Vector MultilinearTable::eval(std::span<const Vector> args) const {
  if (args.size() != slot_dims_.size()) throw DimensionError("wrong number of arguments");
  std::vector<SparseVector> sp;
  sp.reserve(args.size());
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k].size() != slot_dims_[k]) {
      throw DimensionError("argument " + std::to_string(k + 1) + " has length " + std::to_string(args[k].size()) +
                           ", expected " + std::to_string(slot_dims_[k]));
    }
    sp.push_back(sparsify(args[k]));
  }
  return eval_sparse(sp);
}

}  // namespace nbihom
