#include "nbihom/grading.hpp"

#include "nbihom/errors.hpp"

namespace nbihom {

namespace {

Rational rational_pow(const Rational& base, std::int64_t e) {
  if (e == 0) return 1;
  Rational b = e < 0 ? Rational(1 / base) : base;
  auto k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), b.get_num_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), b.get_den_mpz_t(), k);
  Rational out(n, d);
  out.canonicalize();
  return out;
}

}  // namespace

std::string to_string(const GroupElement& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(g.coords[i]);
  }
  return out + ")";
}

GradingGroup::GradingGroup(std::size_t free_rank, std::vector<std::int64_t> torsion_orders)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
  for (auto m : torsion_) {
    if (m < 2) throw ValidationError({"torsion order " + std::to_string(m) + " < 2"});
  }
}

std::int64_t GradingGroup::order_of_generator(std::size_t i) const {
  return i < free_rank_ ? 0 : torsion_.at(i - free_rank_);
}

GroupElement GradingGroup::identity() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }

GroupElement GradingGroup::generator(std::size_t i) const {
  auto g = identity();
  g.coords.at(i) = 1;
  return g;
}

GroupElement GradingGroup::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != rank()) {
    throw DimensionError("group element has " + std::to_string(coords.size()) + " coordinates, group rank is " +
                         std::to_string(rank()));
  }
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto& c = coords[free_rank_ + i];
    c %= torsion_[i];
    if (c < 0) c += torsion_[i];
  }
  return GroupElement{std::move(coords)};
}

bool GradingGroup::contains(const GroupElement& g) const {
  if (g.coords.size() != rank()) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto c = g.coords[free_rank_ + i];
    if (c < 0 || c >= torsion_[i]) return false;
  }
  return true;
}

void GradingGroup::require(const GroupElement& g) const {
  if (!contains(g)) throw DimensionError("element " + to_string(g) + " is not in the grading group");
}

GroupElement GradingGroup::add(const GroupElement& g, const GroupElement& h) const {
  require(g);
  require(h);
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.coords[i] + h.coords[i];
  return element(std::move(c));
}

GroupElement GradingGroup::negate(const GroupElement& g) const {
  require(g);
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -g.coords[i];
  return element(std::move(c));
}

GroupElement GradingGroup::subtract(const GroupElement& g, const GroupElement& h) const { return add(g, negate(h)); }

Bicharacter Bicharacter::unchecked(GradingGroup group, MatrixQ generator_values) {
  if (generator_values.rows() != group.rank() || generator_values.cols() != group.rank()) {
    throw DimensionError("bicharacter table must be " + std::to_string(group.rank()) + "x" +
                         std::to_string(group.rank()));
  }
  Bicharacter b;
  b.group_ = std::move(group);
  b.values_ = std::move(generator_values);
  return b;
}

Bicharacter::Bicharacter(GradingGroup group, MatrixQ generator_values)
    : Bicharacter(unchecked(std::move(group), std::move(generator_values))) {
  auto violations = bichar_validate(*this);
  if (!violations.empty()) {
    std::vector<std::string> msgs;
    for (const auto& v : violations) msgs.push_back("bicharacter " + v.axiom + ": " + v.witness);
    throw ValidationError(std::move(msgs));
  }
}

Rational Bicharacter::operator()(const GroupElement& a, const GroupElement& b) const {
  if (!group_.contains(a) || !group_.contains(b)) {
    throw DimensionError("bicharacter evaluated outside its group: " + to_string(a) + ", " + to_string(b));
  }
  Rational out = 1;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < b.coords.size(); ++j) {
      if (b.coords[j] == 0) continue;
      const auto& v = values_(i, j);
      if (v == 1) continue;
      out *= rational_pow(v, a.coords[i] * b.coords[j]);
    }
  }
  return out;
}

Rational bichar_eval(const Bicharacter& eps, const GroupElement& a, const GroupElement& b) { return eps(a, b); }

std::vector<BicharViolation> bichar_validate(const Bicharacter& eps) {
  std::vector<BicharViolation> out;
  const auto& G = eps.group();
  const auto& t = eps.generator_values();
  const auto r = G.rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (sgn(t(i, j)) == 0) out.push_back({"nonzero", "ε(g" + std::to_string(i) + ",g" + std::to_string(j) + ") = 0"});
  if (!out.empty()) return out;

  auto gen = [&](std::size_t i) { return G.generator(i); };
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      if (t(i, j) * t(j, i) != 1) {
        out.push_back({"axiom 1", "ε(g" + std::to_string(i) + ",g" + std::to_string(j) + ")·ε(g" + std::to_string(j) +
                                      ",g" + std::to_string(i) + ") = " + to_string(Rational(t(i, j) * t(j, i)))});
      }
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    auto m = G.order_of_generator(i);
    if (m == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (rational_pow(t(i, j), m) != 1) {
        out.push_back({"torsion", "ε(g" + std::to_string(i) + ",g" + std::to_string(j) + ")^" + std::to_string(m) +
                                      " = " + to_string(rational_pow(t(i, j), m)) + " ≠ 1"});
      }
      if (rational_pow(t(j, i), m) != 1) {
        out.push_back({"torsion", "ε(g" + std::to_string(j) + ",g" + std::to_string(i) + ")^" + std::to_string(m) +
                                      " = " + to_string(rational_pow(t(j, i), m)) + " ≠ 1"});
      }
    }
  }
  // Axioms 2 and 3 on generator triples; these detect ill-defined extensions across torsion.
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        auto bc = G.add(gen(b), gen(c));
        auto ab = G.add(gen(a), gen(b));
        if (eps(gen(a), bc) != eps(gen(a), gen(b)) * eps(gen(a), gen(c))) {
          out.push_back({"axiom 2", "ε(g" + std::to_string(a) + ", g" + std::to_string(b) + "+g" + std::to_string(c) +
                                        ") is not multiplicative"});
        }
        if (eps(ab, gen(c)) != eps(gen(a), gen(c)) * eps(gen(b), gen(c))) {
          out.push_back({"axiom 3", "ε(g" + std::to_string(a) + "+g" + std::to_string(b) + ", g" + std::to_string(c) +
                                        ") is not multiplicative"});
        }
      }
  return out;
}

Bicharacter builtin_bicharacter(std::string_view name, int param) {
  if (name == "Z2" || name == "signs") {
    MatrixQ t(1, 1);
    t(0, 0) = -1;
    return Bicharacter(GradingGroup(0, {2}), t);
  }
  if (name == "Z2^n") {
    if (param < 1) throw std::invalid_argument("Z2^n needs n >= 1");
    auto n = static_cast<std::size_t>(param);
    MatrixQ t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = i == j ? -1 : 1;
    return Bicharacter(GradingGroup(0, std::vector<std::int64_t>(n, 2)), t);
  }
  if (name == "Z2xZ2") {
    MatrixQ t(2, 2);
    t(0, 0) = 1;
    t(0, 1) = -1;
    t(1, 0) = -1;
    t(1, 1) = 1;
    return Bicharacter(GradingGroup(0, {2, 2}), t);
  }
  if (name == "ZxZ") {
    MatrixQ t(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) t(i, j) = -1;
    return Bicharacter(GradingGroup(2, {}), t);
  }
  if (name == "trivial") return Bicharacter(GradingGroup(), MatrixQ());
  throw std::invalid_argument("unknown builtin bicharacter '" + std::string(name) + "'");
}

}  // namespace nbihom
