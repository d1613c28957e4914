#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nbihom/algebra.hpp"

namespace nbihom {

// Module over an n-ary algebra. actions[i] has the module in slot i (0-based) and
// the algebra in every other slot. Like ColorAlgebra, construction checks shapes
// only; evenness and α_Mβ_M = β_Mα_M are reported by module_invariant_violations.
class BiHomModule {
 public:
  BiHomModule() = default;
  BiHomModule(std::shared_ptr<const ColorAlgebra> algebra, std::vector<GroupElement> degrees, MatrixQ alpha,
              MatrixQ beta, std::vector<MultilinearTable> actions);

  const ColorAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const ColorAlgebra>& algebra_ptr() const { return algebra_; }
  std::size_t dim() const { return degrees_.size(); }
  const std::vector<GroupElement>& degrees() const { return degrees_; }
  const GroupElement& degree(std::size_t i) const { return degrees_.at(i); }
  const MatrixQ& alpha() const { return alpha_; }
  const MatrixQ& beta() const { return beta_; }
  const std::vector<MultilinearTable>& actions() const { return actions_; }
  const MultilinearTable& action(std::size_t i) const { return actions_.at(i); }

  // Slot dims of action i.
  static std::vector<std::size_t> action_shape(std::size_t n, std::size_t i, std::size_t dim_l, std::size_t dim_m);

  friend bool operator==(const BiHomModule& a, const BiHomModule& b) {
    return *a.algebra_ == *b.algebra_ && a.degrees_ == b.degrees_ && a.alpha_ == b.alpha_ && a.beta_ == b.beta_ &&
           a.actions_ == b.actions_;
  }

 private:
  std::shared_ptr<const ColorAlgebra> algebra_;
  std::vector<GroupElement> degrees_;
  MatrixQ alpha_, beta_;
  std::vector<MultilinearTable> actions_;
};

std::vector<std::string> module_invariant_violations(const BiHomModule& M);

// Checks a_skew_symmetry, b_exchange, c_compatibility, d_bracket_argument.
// Twisted placement: algebra slots get β except the last slot, which gets α; the
// module element gets β_M, or α_M when it sits in the last slot.
// Witness indices: a, b → the slot tuple (module index at its slot), position = swap
// slot; c → x (n−1), y (n−1), m; d → x (n−2), m, y (n).
Report check_module_axioms(const BiHomModule& M);

BiHomModule adjoint_module(const ColorAlgebra& L);
BiHomModule adjoint_module(std::shared_ptr<const ColorAlgebra> L);
// g must be an even endomorphism of L commuting with α and β.
BiHomModule twist_module(const BiHomModule& M, const HomogeneousMap& g);
BiHomModule direct_sum_modules(const BiHomModule& M1, const BiHomModule& M2);
BiHomModule zero_module(std::shared_ptr<const ColorAlgebra> L, std::vector<GroupElement> degrees);

enum class SemidirectMode { Split, Summed };

// L ⊕ M. Throws PreconditionError for nontrivial Γ unless override_grading.
ColorAlgebra semidirect_algebra(const BiHomModule& M, SemidirectMode mode = SemidirectMode::Split,
                                bool override_grading = false);

}  // namespace nbihom
