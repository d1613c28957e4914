#include "fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "nbihom/algebra.hpp"
#include "nbihom/errors.hpp"

namespace fx {

using namespace nbihom;

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Vector e(std::size_t n, std::size_t i) { return unit_vector(n, i); }

MatrixQ diag(const std::vector<Rational>& d) {
  MatrixQ m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

GroupElement z2(int g) { return GroupElement{{g}}; }

std::vector<GroupElement> z2_degrees(const std::vector<int>& ds) {
  std::vector<GroupElement> out;
  for (int d : ds) out.push_back(z2(d));
  return out;
}

std::vector<GroupElement> trivial_degrees(std::size_t n) { return std::vector<GroupElement>(n); }

Entries skew_complete(const Bicharacter& eps, const std::vector<GroupElement>& degrees, const Entries& listed) {
  Entries out;
  for (const auto& [t, v] : listed) {
    std::map<std::vector<std::size_t>, Rational> sign{{t, Rational(1)}};
    std::vector<std::vector<std::size_t>> frontier{t};
    bool vanishes = false;
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
        auto nxt = cur;
        std::swap(nxt[k], nxt[k + 1]);
        Rational s = -eps(degrees[cur[k]], degrees[cur[k + 1]]) * sign[cur];
        auto it = sign.find(nxt);
        if (it == sign.end()) {
          sign.emplace(nxt, s);
          frontier.push_back(nxt);
        } else if (it->second != s) {
          vanishes = true;
        }
      }
    }
    if (vanishes) {
      if (!is_zero(v)) throw std::logic_error("skew orbit forces this entry to vanish");
      continue;
    }
    for (const auto& [u, s] : sign) {
      auto w = s * v;
      auto it = out.find(u);
      if (it != out.end() && it->second != w) throw std::logic_error("conflicting skew orbits");
      out[u] = w;
    }
  }
  return out;
}

ColorAlgebra make_algebra(const Bicharacter& eps, std::size_t arity, std::vector<GroupElement> degrees,
                          const Entries& entries, const MatrixQ& alpha, const MatrixQ& beta) {
  const auto n = degrees.size();
  auto T = MultilinearTable::uniform(n, arity);
  for (const auto& [t, v] : entries) T.set(t, v);
  auto a = alpha.rows() == 0 ? MatrixQ::identity(n) : alpha;
  auto b = beta.rows() == 0 ? MatrixQ::identity(n) : beta;
  return ColorAlgebra(eps, arity, std::move(degrees), a, b, std::move(T));
}

namespace {

Vector vec(std::size_t n, std::initializer_list<std::pair<std::size_t, int>> coords) {
  Vector v(n);
  for (auto [i, c] : coords) v[i] = c;
  return v;
}

ColorAlgebra skew_algebra(const Bicharacter& eps, std::size_t arity, const std::vector<GroupElement>& degrees,
                          const Entries& listed) {
  return make_algebra(eps, arity, degrees, skew_complete(eps, degrees, listed));
}

Bicharacter Z2() { return builtin_bicharacter("Z2"); }
Bicharacter trivial() { return builtin_bicharacter("trivial"); }

int perm_sign(std::vector<std::size_t> p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace

ColorAlgebra color_ternary() {
  Entries listed{{{0, 1, 2}, vec(4, {{1, 1}})}, {{0, 1, 3}, vec(4, {{0, 1}})}};
  return skew_algebra(Z2(), 3, z2_degrees({1, 0, 1, 0}), listed);
}

ColorAlgebra a4() {
  Entries ent;
  for_each_tuple({4, 4, 4}, [&](const std::vector<std::size_t>& t) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) return;
    std::size_t l = 6 - t[0] - t[1] - t[2];
    ent[t] = perm_sign({t[0], t[1], t[2], l}) * e(4, l);
  });
  return make_algebra(trivial(), 3, trivial_degrees(4), ent);
}

ColorAlgebra osp12() {
  Entries listed{{{0, 1}, vec(5, {{1, 2}})},  {{0, 2}, vec(5, {{2, -2}})}, {{1, 2}, vec(5, {{0, 1}})},
                 {{0, 3}, vec(5, {{3, 1}})},  {{0, 4}, vec(5, {{4, -1}})}, {{1, 4}, vec(5, {{3, -1}})},
                 {{2, 3}, vec(5, {{4, -1}})}, {{3, 3}, vec(5, {{1, 2}})},  {{4, 4}, vec(5, {{2, -2}})},
                 {{3, 4}, vec(5, {{0, 1}})}};
  return skew_algebra(Z2(), 2, z2_degrees({0, 0, 0, 1, 1}), listed);
}

ColorAlgebra sl2() {
  Entries listed{{{0, 1}, vec(3, {{1, 2}})}, {{0, 2}, vec(3, {{2, -2}})}, {{1, 2}, vec(3, {{0, 1}})}};
  return skew_algebra(trivial(), 2, trivial_degrees(3), listed);
}

ColorAlgebra heisenberg() {
  return skew_algebra(trivial(), 2, trivial_degrees(3), {{{0, 1}, vec(3, {{2, 1}})}});
}

ColorAlgebra nonabelian2() {
  return skew_algebra(trivial(), 2, trivial_degrees(2), {{{0, 1}, vec(2, {{1, 1}})}});
}

ColorAlgebra super_heisenberg() {
  return skew_algebra(Z2(), 2, z2_degrees({1, 1, 0}), {{{0, 1}, vec(3, {{2, 1}})}});
}

ColorAlgebra zero_ternary() { return make_algebra(Z2(), 3, z2_degrees({1, 0, 1, 0}), {}); }
ColorAlgebra zero_binary() { return make_algebra(Z2(), 2, z2_degrees({0, 1}), {}); }

AssocAlgebra dual_numbers() {
  MultilinearTable p({2, 2}, 2);
  p.set(std::vector<std::size_t>{0, 0}, e(2, 0));
  p.set(std::vector<std::size_t>{0, 1}, e(2, 1));
  p.set(std::vector<std::size_t>{1, 0}, e(2, 1));
  return AssocAlgebra(2, p);
}

ColorAlgebra singular_twist_heisenberg() {
  auto H = heisenberg();
  HomogeneousMap f{GroupElement{}, diag({1, 0, 0})};
  return yau_twist(H, f, f);
}

ColorAlgebra twisted_sl2() {
  // weights H 0, E 1, F −1
  HomogeneousMap a{GroupElement{}, diag({1, 2, Rational(1, 2)})};
  return yau_twist(sl2(), a, a);
}

ColorAlgebra sl2_unequal_twist() {
  HomogeneousMap a{GroupElement{}, diag({1, 2, Rational(1, 2)})};
  HomogeneousMap b{GroupElement{}, diag({1, -3, Rational(-1, 3)})};
  return yau_twist(sl2(), a, b);
}

ColorAlgebra bihom_heisenberg() {
  // weights x 1, y 1, z 2
  HomogeneousMap a{GroupElement{}, diag({2, 3, 6})};
  HomogeneousMap b{GroupElement{}, diag({-1, Rational(1, 2), Rational(-1, 2)})};
  return yau_twist(heisenberg(), a, b);
}

ColorAlgebra change_basis(const ColorAlgebra& L, const MatrixQ& P) {
  auto Pinv = P.inverse();
  if (!Pinv) throw std::invalid_argument("change_basis: singular matrix");
  const auto n = L.dim();
  auto T = MultilinearTable::uniform(n, L.arity());
  for_each_tuple(std::vector<std::size_t>(L.arity(), n), [&](const std::vector<std::size_t>& t) {
    std::vector<Vector> args;
    for (auto i : t) args.push_back(P.column(i));
    auto v = Pinv->apply(L.bracket().eval(args));
    if (!is_zero(v)) T.set(t, v);
  });
  return ColorAlgebra(L.eps(), L.arity(), L.degrees(), *Pinv * L.alpha() * P, *Pinv * L.beta() * P, std::move(T));
}

namespace {

Rational pick(std::mt19937& rng, const std::vector<Rational>& from) {
  return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
}

Rational power(const Rational& base, int w) {
  Rational out = 1;
  for (int i = 0; i < std::abs(w); ++i) out *= base;
  return w < 0 ? Rational(1) / out : out;
}

MatrixQ torus(const Rational& lambda, const std::vector<int>& weights) {
  std::vector<Rational> d;
  for (int w : weights) d.push_back(power(lambda, w));
  return diag(d);
}

// Plane rotation by the rational angle with cosine c, sine s, on coordinates (i, j).
MatrixQ rotation(std::size_t n, std::size_t i, std::size_t j, const Rational& c, const Rational& s) {
  auto m = MatrixQ::identity(n);
  m(i, i) = c;
  m(i, j) = -s;
  m(j, i) = s;
  m(j, j) = c;
  return m;
}

MatrixQ random_even_basis_change(const ColorAlgebra& L, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-2, 2);
  while (true) {
    MatrixQ P(L.dim(), L.dim());
    for (std::size_t r = 0; r < L.dim(); ++r)
      for (std::size_t c = 0; c < L.dim(); ++c)
        if (L.degree(r) == L.degree(c)) P(r, c) = coef(rng);
    if (P.inverse()) return P;
  }
}

struct Piece {
  std::string label;
  ColorAlgebra algebra;
};

Piece twisted_piece(std::size_t which, std::mt19937& rng) {
  const std::vector<Rational> scalars{2, 3, -1, Rational(1, 2), Rational(-2, 3)};
  // Unequal twists only keep the Jacobi identity when double brackets vanish.
  auto twist = [&](const ColorAlgebra& L, const std::vector<int>& w, bool nilpotent = false) {
    HomogeneousMap a{L.group().identity(), torus(pick(rng, scalars), w)};
    HomogeneousMap b = nilpotent ? HomogeneousMap{L.group().identity(), torus(pick(rng, scalars), w)} : a;
    return yau_twist(L, a, b);
  };
  switch (which) {
    case 0:
      return {"sl2", twist(sl2(), {0, 1, -1})};
    case 1: {
      int a = std::uniform_int_distribution<int>(-2, 2)(rng);
      int b = std::uniform_int_distribution<int>(-2, 2)(rng);
      return {"heisenberg", twist(heisenberg(), {a, b, a + b}, true)};
    }
    case 2: {
      int b = std::uniform_int_distribution<int>(-2, 2)(rng);
      return {"nonabelian2", twist(nonabelian2(), {0, b})};
    }
    case 3:
      return {"osp12", twist(osp12(), {0, 2, -2, 1, -1})};
    case 4: {
      int a = std::uniform_int_distribution<int>(-2, 2)(rng);
      int b = std::uniform_int_distribution<int>(-2, 2)(rng);
      return {"super_heisenberg", twist(super_heisenberg(), {a, b, a + b}, true)};
    }
    case 5: {
      auto L = a4();
      HomogeneousMap r{GroupElement{}, rotation(4, 0, 1, Rational(3, 5), Rational(4, 5)) *
                                           rotation(4, 2, 3, Rational(5, 13), Rational(12, 13))};
      return {"a4", yau_twist(L, r, r)};
    }
    case 6: {
      // Singular twist x ↦ x, y, z ↦ 0 or the identity, mixed.
      auto L = heisenberg();
      HomogeneousMap f{GroupElement{}, diag({pick(rng, scalars), 0, 0})};
      HomogeneousMap id{GroupElement{}, MatrixQ::identity(3)};
      return {"heisenberg_singular", yau_twist(L, f, std::uniform_int_distribution<int>(0, 1)(rng) ? f : id)};
    }
    default: {
      auto L = zero_ternary();
      HomogeneousMap a{L.group().identity(), diag({pick(rng, scalars), pick(rng, scalars), 1, 2})};
      return {"zero_ternary", yau_twist(L, a, a)};
    }
  }
}

}  // namespace

RandomAlgebra random_valid_algebra(std::mt19937& rng) {
  while (true) {
    std::size_t which = std::uniform_int_distribution<std::size_t>(0, 7)(rng);
    auto p = twisted_piece(which, rng);
    // nonabelian2 leaves room for a second trivially graded piece
    if (which == 2 && std::uniform_int_distribution<int>(0, 1)(rng)) {
      std::size_t other = std::vector<std::size_t>{0, 1, 2}[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
      auto q = twisted_piece(other, rng);
      p = {p.label + "+" + q.label, direct_sum(p.algebra, q.algebra)};
    }
    auto L = change_basis(p.algebra, random_even_basis_change(p.algebra, rng));
    if (L.dim() > 5) continue;
    if (!check_axioms(L).passed() || !is_multiplicative(L)) continue;
    return {p.label, std::move(L)};
  }
}

ColorAlgebra perturb_ternary(const ColorAlgebra& base, std::mt19937& rng) {
  const auto n = base.dim();
  Entries ent;
  base.bracket().for_each_nonzero(
      [&](const std::vector<std::size_t>& t, const SparseVector& v) { ent[t] = densify(v, n); });
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  const int changes = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int c = 0; c < changes; ++c) {
    std::vector<std::size_t> t{idx(rng), idx(rng), idx(rng)};
    std::sort(t.begin(), t.end());
    auto d = base.degree_sum(t);
    Vector v(n);
    for (std::size_t o = 0; o < n; ++o)
      if (base.degree(o) == d) v[o] = coef(rng);
    Entries one{{t, v}};
    Entries orbit;
    try {
      orbit = skew_complete(base.eps(), base.degrees(), one);
    } catch (const std::logic_error&) {
      // Orbit forced to vanish; zero it instead.
      std::vector<std::size_t> p = t;
      do {
        ent.erase(p);
      } while (std::next_permutation(p.begin(), p.end()));
      continue;
    }
    std::vector<std::size_t> p = t;
    do {
      ent.erase(p);
    } while (std::next_permutation(p.begin(), p.end()));
    for (auto& [u, w] : orbit)
      if (!is_zero(w)) ent[u] = w;
  }
  return make_algebra(base.eps(), base.arity(), base.degrees(), ent);
}

std::vector<std::pair<std::string, ColorAlgebra>> catalog() {
  return {{"color_ternary", color_ternary()},
          {"a4", a4()},
          {"osp12", osp12()},
          {"sl2", sl2()},
          {"heisenberg", heisenberg()},
          {"nonabelian2", nonabelian2()},
          {"super_heisenberg", super_heisenberg()},
          {"zero_ternary", zero_ternary()},
          {"zero_binary", zero_binary()},
          {"singular_twist_heisenberg", singular_twist_heisenberg()},
          {"twisted_sl2", twisted_sl2()},
          {"bihom_heisenberg", bihom_heisenberg()}};
}

}  // namespace fx
