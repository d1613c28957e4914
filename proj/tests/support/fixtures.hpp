#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "nbihom/constructions.hpp"

namespace fx {

using nbihom::Bicharacter;
using nbihom::ColorAlgebra;
using nbihom::GroupElement;
using nbihom::MatrixQ;
using nbihom::Rational;
using nbihom::Vector;

using Entries = std::map<std::vector<std::size_t>, Vector>;

// num/den in lowest terms (the two-argument mpq constructor does not reduce).
Rational q(long num, long den);
Vector e(std::size_t n, std::size_t i);
MatrixQ diag(const std::vector<Rational>& d);
GroupElement z2(int g);
std::vector<GroupElement> z2_degrees(const std::vector<int>& ds);
std::vector<GroupElement> trivial_degrees(std::size_t n);

// Closes the listed entries under adjacent transpositions with sign −ε (α = β = id).
// Throws std::logic_error when two orbits disagree.
Entries skew_complete(const Bicharacter& eps, const std::vector<GroupElement>& degrees, const Entries& listed);

ColorAlgebra make_algebra(const Bicharacter& eps, std::size_t arity, std::vector<GroupElement> degrees,
                          const Entries& entries, const MatrixQ& alpha = {}, const MatrixQ& beta = {});

// e1..e4 are indices 0..3; degrees (1,0,1,0) over Z2.
ColorAlgebra color_ternary();
ColorAlgebra a4();
ColorAlgebra osp12();       // H E F X Y
ColorAlgebra sl2();         // H E F
ColorAlgebra heisenberg();  // x y z, [x,y] = z
ColorAlgebra nonabelian2(); // [a,b] = b
// Z2: odd a, b, even z; [a,b] = [b,a] = z.
ColorAlgebra super_heisenberg();
ColorAlgebra zero_ternary();  // Z2, degrees (1,0,1,0)
ColorAlgebra zero_binary();   // Z2, degrees (0,1)
nbihom::AssocAlgebra dual_numbers();

// Heisenberg twisted by the singular morphism x ↦ x, y, z ↦ 0 (α = β not surjective).
ColorAlgebra singular_twist_heisenberg();
// sl2 twisted by one torus on both sides: regular, not involutive.
ColorAlgebra twisted_sl2();
// sl2 twisted by two different tori; fails the Jacobi identity (12 tuples).
ColorAlgebra sl2_unequal_twist();
// Heisenberg twisted by two different tori: α ≠ β, regular, valid.
ColorAlgebra bihom_heisenberg();

// P⁻¹[P x_1, …, P x_n], P⁻¹αP, P⁻¹βP. P must be even and invertible.
ColorAlgebra change_basis(const ColorAlgebra& L, const MatrixQ& P);

struct RandomAlgebra {
  std::string label;
  ColorAlgebra algebra;
};

// A multiplicative algebra of dim ≤ 5 passing check_axioms: a catalog piece (or a
// direct sum of two), Yau-twisted by automorphisms, then conjugated by a random
// even basis change.
RandomAlgebra random_valid_algebra(std::mt19937& rng);

// Replaces a few skew orbits of a Z2, dim-4 ternary table with random values of
// the right degree. Skew-symmetry and evenness are kept (α = β = id).
ColorAlgebra perturb_ternary(const ColorAlgebra& base, std::mt19937& rng);

// The named test algebras used by the chain and closure sweeps.
std::vector<std::pair<std::string, ColorAlgebra>> catalog();

}  // namespace fx
