#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbihom/algebra.hpp"

namespace nbihom {

class AssocAlgebra;

// Commuting = every degree-d map commuting with α and β (the space End~ of
// operator algebras); the other kinds add the identities of their definitions.
enum class OperatorKind { Der, ZDer, Centroid, QuasiCentroid, Commuting };

// Centroid and quasicentroid identities hold in every slot (AllSlots) or only in
// slot 1 (resp. slot 2 for the quasicentroid).
enum class SlotMode { AllSlots, SingleSlot };

std::string to_string(OperatorKind k);
std::optional<OperatorKind> parse_operator_kind(std::string_view s);

struct OperatorQuery {
  unsigned k = 0;
  unsigned r = 0;
  GroupElement degree;
  OperatorKind kind = OperatorKind::Der;
};

struct OperatorBasis {
  OperatorQuery query;
  std::vector<HomogeneousMap> maps;
  // Canonical RREF span over row-major flattened matrices.
  SubspaceQ space;

  std::size_t dim() const { return maps.size(); }
  bool contains(const MatrixQ& m) const { return space.contains(m.flatten()); }
};

struct QDerPair {
  HomogeneousMap d;
  HomogeneousMap d_assoc;
};

struct GDerTuple {
  std::vector<HomogeneousMap> maps;
};

// Differences deg(e_j) − deg(e_i), sorted.
std::vector<GroupElement> candidate_degrees(const ColorAlgebra& L);

// Throws PreconditionError when L is not multiplicative.
OperatorBasis solve_operator_space(const ColorAlgebra& L, const OperatorQuery& q,
                                   SlotMode mode = SlotMode::AllSlots);
std::vector<QDerPair> solve_qder(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d);
std::vector<GDerTuple> solve_gder(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d);
// Projections of the joint spaces to the first component (kind field is Der).
OperatorBasis qder_projection(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d);
OperatorBasis gder_projection(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d);
// Joint spaces over the concatenated flattened matrices (D, D′) resp. (D, …, D^(n)).
SubspaceQ qder_joint_space(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d);
SubspaceQ gder_joint_space(const ColorAlgebra& L, unsigned k, unsigned r, const GroupElement& d);

HomogeneousMap eps_commutator(const Bicharacter& eps, const HomogeneousMap& D, const HomogeneousMap& E);

enum class IdentityKind { Der, ZDer, Centroid, QuasiCentroid, QDer, GDer };

// Substitutes concrete maps into the defining identities on all basis tuples,
// including commutation with α and β and homogeneity. maps holds 1 map, 2 for
// QDer (D, D′), n+1 for GDer.
CheckResult operator_residual(const ColorAlgebra& L, IdentityKind kind, unsigned k, unsigned r,
                              std::span<const HomogeneousMap> maps, SlotMode mode = SlotMode::AllSlots);

struct QuerySet {
  std::vector<std::pair<unsigned, unsigned>> powers{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  // Empty means every candidate degree.
  std::vector<GroupElement> degrees;
};

const std::vector<std::string>& closure_property_ids();
Report closure_check(const ColorAlgebra& L, const std::string& property_id, const QuerySet& queries = {});

enum class DerAlgebraVariant { Der, Commuting };

// Binary algebra on the span of the solved spaces with the ε-commutator and
// ω(D) = D∘α, Ω(D) = D∘β. Throws PreconditionError when the span is not closed.
ColorAlgebra der_algebra_structure(const ColorAlgebra& L, const QuerySet& queries,
                                   DerAlgebraVariant variant = DerAlgebraVariant::Der);
// The maps spanning the operator algebra, in basis order.
std::vector<HomogeneousMap> der_algebra_basis(const ColorAlgebra& L, const QuerySet& queries,
                                              DerAlgebraVariant variant = DerAlgebraVariant::Der);

// f ∈ C(A) (checked: f(ab) = f(a)b = a f(b)); g ∈ C_{(α^k, β^r)}(L) (checked
// against the solved space). Verifies f⊗g on the tensor algebra by residual and by
// membership in its solved centroid.
Report tensor_centroid_check(const AssocAlgebra& A, const ColorAlgebra& L, const MatrixQ& f, const HomogeneousMap& g,
                             unsigned k = 0, unsigned r = 0);

}  // namespace nbihom
