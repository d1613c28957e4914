#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbihom/exactla.hpp"
#include "nbihom/grading.hpp"
#include "nbihom/multilinear.hpp"
#include "nbihom/report.hpp"

namespace nbihom {

struct HomogeneousMap {
  GroupElement degree;
  MatrixQ matrix;

  friend bool operator==(const HomogeneousMap&, const HomogeneousMap&) = default;
};

// True iff m sends each degree-γ coordinate line into the degree-(γ+d) lines.
bool is_homogeneous_matrix(const GradingGroup& G, const std::vector<GroupElement>& degrees, const MatrixQ& m,
                           const GroupElement& d);

// An n-ary color algebra given by structure constants with twists α, β.
// The constructor checks shapes only; evenness and αβ = βα are reported by
// invariant_violations() and check_axioms().
class ColorAlgebra {
 public:
  ColorAlgebra() = default;
  ColorAlgebra(Bicharacter eps, std::size_t arity, std::vector<GroupElement> degrees, MatrixQ alpha, MatrixQ beta,
               MultilinearTable bracket);

  const Bicharacter& eps() const { return eps_; }
  const GradingGroup& group() const { return eps_.group(); }
  std::size_t arity() const { return arity_; }
  std::size_t dim() const { return degrees_.size(); }
  const std::vector<GroupElement>& degrees() const { return degrees_; }
  const GroupElement& degree(std::size_t i) const { return degrees_.at(i); }
  const MatrixQ& alpha() const { return alpha_; }
  const MatrixQ& beta() const { return beta_; }
  const MultilinearTable& bracket() const { return bracket_; }

  // Degree of v if it is homogeneous and nonzero.
  std::optional<GroupElement> degree_of(const Vector& v) const;
  // Sum of basis degrees.
  GroupElement degree_sum(std::span<const std::size_t> idx) const;
  Rational eps_basis(std::size_t i, std::size_t j) const;

  friend bool operator==(const ColorAlgebra&, const ColorAlgebra&) = default;

 private:
  Bicharacter eps_;
  std::size_t arity_ = 2;
  std::vector<GroupElement> degrees_;
  MatrixQ alpha_;
  MatrixQ beta_;
  MultilinearTable bracket_;
};

// Evenness of α, β, bracket and αβ = βα, as messages.
std::vector<std::string> invariant_violations(const ColorAlgebra& L);

Vector eval_bracket(const ColorAlgebra& L, std::span<const Vector> args);
Vector eval_bracket_basis(const ColorAlgebra& L, std::span<const std::size_t> idx);

// Subspace of L spanned by homogeneous vectors, stored as one canonical RREF basis
// (every basis row is homogeneous).
class GradedSubspace {
 public:
  GradedSubspace() = default;
  // Throws ValidationError when space is not graded.
  GradedSubspace(std::vector<GroupElement> degrees, SubspaceQ space);
  static GradedSubspace span(const ColorAlgebra& L, const std::vector<Vector>& vectors);
  static GradedSubspace whole(const ColorAlgebra& L);
  static GradedSubspace zero(const ColorAlgebra& L);

  const SubspaceQ& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  const std::vector<Vector>& basis() const { return space_.basis(); }
  bool contains(const Vector& v) const { return space_.contains(v); }
  std::map<GroupElement, std::size_t> dims_by_degree() const;

  friend bool operator==(const GradedSubspace& a, const GradedSubspace& b) { return a.space_ == b.space_; }

 private:
  std::vector<GroupElement> degrees_;
  SubspaceQ space_;
};

// Axiom checks: "commutation", "evenness", "skew_symmetry", "jacobi".
Report check_axioms(const ColorAlgebra& L);

enum class AlternateSign {
  // (−1)^{n−k} ε(X, Ỹ_n) ε(y_k, Ȳ_{k+1}): equivalent to the Jacobi identity for skew tables.
  Reordered,
  // ε(X, Ỹ_n) ε(y_k, Ȳ_{k+1}) without the transposition count.
  Literal,
};

// Jacobi identity with the inner bracket moved to the last slot ("jacobi_alternate").
Report check_jacobi_alternate(const ColorAlgebra& L, AlternateSign sign = AlternateSign::Reordered);
// "alpha_multiplicative", "beta_multiplicative".
Report check_multiplicative(const ColorAlgebra& L);
bool is_multiplicative(const ColorAlgebra& L);

enum class IdealMode { AllPositions, FirstPosition };

bool is_subalgebra(const ColorAlgebra& L, const GradedSubspace& H);
bool is_ideal(const ColorAlgebra& L, const GradedSubspace& I, IdealMode mode = IdealMode::AllPositions);
GradedSubspace center(const ColorAlgebra& L);
GradedSubspace ab_center(const ColorAlgebra& L);
GradedSubspace centralizer(const ColorAlgebra& L, const GradedSubspace& H);
// Entries 0..depth.
std::vector<GradedSubspace> derived_sequence(const ColorAlgebra& L, std::size_t depth);
std::vector<GradedSubspace> central_sequence(const ColorAlgebra& L, std::size_t depth);
Report check_ideal_theorem(const ColorAlgebra& L, std::size_t depth = 3);

// Throws PreconditionError if f is not even.
bool is_morphism(const HomogeneousMap& f, const ColorAlgebra& L, const ColorAlgebra& L2);

bool is_involutive(const ColorAlgebra& L);
bool is_regular(const ColorAlgebra& L);

}  // namespace nbihom
