#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nbihom/exactla.hpp"

namespace nbihom {

struct GroupElement {
  std::vector<std::int64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& g);

// Γ = ℤ^free_rank × ℤ_{m_1} × … × ℤ_{m_k}. Coordinates list the free part first.
class GradingGroup {
 public:
  GradingGroup() = default;
  GradingGroup(std::size_t free_rank, std::vector<std::int64_t> torsion_orders);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<std::int64_t>& torsion_orders() const { return torsion_; }
  std::size_t rank() const { return free_rank_ + torsion_.size(); }
  bool is_trivial() const { return rank() == 0; }
  // 0 for a free generator.
  std::int64_t order_of_generator(std::size_t i) const;

  GroupElement identity() const;
  GroupElement generator(std::size_t i) const;
  // Reduces torsion coordinates; throws DimensionError on length mismatch.
  GroupElement element(std::vector<std::int64_t> coords) const;
  bool contains(const GroupElement& g) const;

  GroupElement add(const GroupElement& g, const GroupElement& h) const;
  GroupElement negate(const GroupElement& g) const;
  GroupElement subtract(const GroupElement& g, const GroupElement& h) const;

  friend bool operator==(const GradingGroup&, const GradingGroup&) = default;

 private:
  void require(const GroupElement& g) const;

  std::size_t free_rank_ = 0;
  std::vector<std::int64_t> torsion_;
};

struct BicharViolation {
  std::string axiom;
  std::string witness;
};

// Skew-symmetric bicharacter given on generator pairs and extended bimultiplicatively.
class Bicharacter {
 public:
  Bicharacter() = default;
  // Validates eagerly; throws ValidationError listing every violation.
  Bicharacter(GradingGroup group, MatrixQ generator_values);
  // No validation. Used to inspect ill-formed tables with bichar_validate.
  static Bicharacter unchecked(GradingGroup group, MatrixQ generator_values);

  const GradingGroup& group() const { return group_; }
  const MatrixQ& generator_values() const { return values_; }

  Rational operator()(const GroupElement& a, const GroupElement& b) const;

  friend bool operator==(const Bicharacter&, const Bicharacter&) = default;

 private:
  GradingGroup group_;
  MatrixQ values_;
};

Rational bichar_eval(const Bicharacter& eps, const GroupElement& a, const GroupElement& b);
std::vector<BicharViolation> bichar_validate(const Bicharacter& eps);

// Names: Z2, Z2^n (param n ≥ 1), Z2xZ2, ZxZ, signs, trivial.
Bicharacter builtin_bicharacter(std::string_view name, int param = 0);

}  // namespace nbihom
