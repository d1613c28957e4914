#pragma once

#include <optional>
#include <vector>

#include "nbihom/algebra.hpp"

namespace nbihom {

// Finite-dimensional commutative associative algebra (ungraded).
class AssocAlgebra {
 public:
  AssocAlgebra() = default;
  // Validates commutativity and associativity on basis tuples; throws ValidationError.
  AssocAlgebra(std::size_t dim, MultilinearTable product);
  static AssocAlgebra unchecked(std::size_t dim, MultilinearTable product);

  std::size_t dim() const { return dim_; }
  const MultilinearTable& product() const { return product_; }
  Vector multiply(const Vector& a, const Vector& b) const;

  friend bool operator==(const AssocAlgebra&, const AssocAlgebra&) = default;

 private:
  std::size_t dim_ = 0;
  MultilinearTable product_;
};

std::vector<std::string> assoc_violations(const AssocAlgebra& A);

// Graded algebra with binary product and twists α, β.
struct BiHomAssocColorAlgebra {
  Bicharacter eps;
  std::vector<GroupElement> degrees;
  MatrixQ alpha;
  MatrixQ beta;
  MultilinearTable product;

  std::size_t dim() const { return degrees.size(); }
};

// "commutation", "evenness", "multiplicative", "bihom_associativity":
// α(x)(yz) = (xy)β(z).
Report check_bihom_associative(const BiHomAssocColorAlgebra& A);

ColorAlgebra quotient(const ColorAlgebra& L, const GradedSubspace& I);
ColorAlgebra reduce_arity(const ColorAlgebra& L, const std::vector<Vector>& us);
ColorAlgebra yau_twist(const ColorAlgebra& L, const HomogeneousMap& a2, const HomogeneousMap& b2);
ColorAlgebra power_twist(const ColorAlgebra& L, unsigned k);
// Basis a_p ⊗ e_q has index p * dim L + q.
ColorAlgebra tensor_with_commutative(const AssocAlgebra& A, const ColorAlgebra& L);
ColorAlgebra direct_sum(const ColorAlgebra& L, const ColorAlgebra& L2);

// slot = nullopt checks every slot. Slots are 0-based.
bool check_semi_morphism(const ColorAlgebra& L, const HomogeneousMap& g,
                         std::optional<std::size_t> slot = std::nullopt);
ColorAlgebra semi_morphism_twist(const ColorAlgebra& L, const HomogeneousMap& g, std::size_t slot);
bool check_averaging(const ColorAlgebra& L, const HomogeneousMap& g);
// One slot or two distinct slots.
ColorAlgebra averaging_twist(const ColorAlgebra& L, const HomogeneousMap& g, const std::vector<std::size_t>& slots);

bool graph_is_subalgebra(const HomogeneousMap& f, const ColorAlgebra& L, const ColorAlgebra& L2);
ColorAlgebra lie_from_bihom_assoc(const BiHomAssocColorAlgebra& A);

// Basis: e_q ⊗ t for q < dim, then e_q ⊗ t^n.
ColorAlgebra t_extension(const ColorAlgebra& L);

// Checks "degree", "well_defined", "derivation" for φ(D) on t_extension(L). With no U
// the coordinate complement of [L, …, L] given by its RREF non-pivot columns is used.
Report qder_embedding_check(const ColorAlgebra& L, const HomogeneousMap& D, const HomogeneousMap& D2, unsigned k,
                            unsigned r, const std::optional<GradedSubspace>& U = std::nullopt);
// The matrix of φ(D) on the t-extension.
MatrixQ qder_embedding(const ColorAlgebra& L, const HomogeneousMap& D, const HomogeneousMap& D2,
                       const std::optional<GradedSubspace>& U = std::nullopt);

}  // namespace nbihom
