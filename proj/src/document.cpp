#include "nbihom/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "nbihom/errors.hpp"

namespace nbihom {

using nlohmann::json;

ParseError::ParseError(std::string path, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line), column_(column) {}

namespace {

std::string join_problems(const std::vector<std::string>& p) {
  std::string out;
  for (const auto& s : p) out += (out.empty() ? "" : "\n") + s;
  return out;
}

}  // namespace

DocumentError::DocumentError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

namespace {

template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw UnknownName(std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

}  // namespace

const ColorAlgebra& DefinitionDocument::algebra(const std::string& name) const {
  return *lookup(algebras, name, "algebra");
}
const HomogeneousMap& DefinitionDocument::map(const std::string& name) const { return lookup(maps, name, "map"); }
const BiHomModule& DefinitionDocument::module(const std::string& name) const {
  return lookup(modules, name, "module");
}
const AssocAlgebra& DefinitionDocument::assoc(const std::string& name) const {
  return lookup(assoc_algebras, name, "associative algebra");
}
const BiHomAssocColorAlgebra& DefinitionDocument::bihom_assoc(const std::string& name) const {
  return lookup(bihom_assoc_algebras, name, "BiHom-associative algebra");
}
const NamedSubspace& DefinitionDocument::subspace(const std::string& name) const {
  return lookup(subspaces, name, "subspace");
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json to_json(const MatrixQ& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

json to_json(const GroupElement& g) { return g.coords; }

json table_to_json(const MultilinearTable& t) {
  json a = json::array();
  t.for_each_nonzero([&](const std::vector<std::size_t>& idx, const SparseVector& v) {
    a.push_back({{"indices", idx}, {"value", to_json(densify(v, t.out_dim()))}});
  });
  return a;
}

namespace {

// Reader that accumulates problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& path, const std::string& what) { problems.push_back(path + ": " + what); }

  const json* field(const json& obj, const std::string& key, const std::string& path, bool required = true) {
    if (!obj.is_object()) {
      fail(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path, "missing field '" + key + "'");
      return nullptr;
    }
    return &*it;
  }

  std::optional<Rational> rational(const json& j, const std::string& path) {
    try {
      if (j.is_string()) return parse_rational(j.get<std::string>());
      if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
      return std::nullopt;
    }
    fail(path, "expected a rational string \"p/q\" or an integer");
    return std::nullopt;
  }

  std::optional<std::size_t> index(const json& j, const std::string& path) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
      return j.get<std::size_t>();
    }
    fail(path, "expected a nonnegative integer");
    return std::nullopt;
  }

  std::optional<Vector> vector(const json& j, std::size_t n, const std::string& path) {
    if (!j.is_array() || j.size() != n) {
      fail(path, "expected an array of " + std::to_string(n) + " rationals");
      return std::nullopt;
    }
    Vector v(n);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      auto q = rational(j[i], path + "[" + std::to_string(i) + "]");
      if (q) v[i] = *q;
      else ok = false;
    }
    return ok ? std::optional<Vector>(v) : std::nullopt;
  }

  // Rows, or the string "identity" / "zero".
  std::optional<MatrixQ> matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    if (j.is_string()) {
      auto s = j.get<std::string>();
      if (s == "identity" && rows == cols) return MatrixQ::identity(rows);
      if (s == "zero") return MatrixQ(rows, cols);
      fail(path, "unknown matrix shorthand '" + s + "'");
      return std::nullopt;
    }
    if (!j.is_array() || j.size() != rows) {
      fail(path, "expected " + std::to_string(rows) + " rows");
      return std::nullopt;
    }
    std::vector<Vector> rs;
    for (std::size_t r = 0; r < rows; ++r) {
      auto v = vector(j[r], cols, path + "[" + std::to_string(r) + "]");
      if (!v) return std::nullopt;
      rs.push_back(std::move(*v));
    }
    if (rows == 0) return MatrixQ(0, cols);
    return MatrixQ::from_rows(rs);
  }

  std::optional<GroupElement> degree(const json& j, const GradingGroup& G, const std::string& path) {
    std::vector<std::int64_t> coords;
    if (j.is_number_integer()) {
      coords.push_back(j.get<std::int64_t>());
    } else if (j.is_array()) {
      for (const auto& c : j) {
        if (!c.is_number_integer()) {
          fail(path, "degree coordinates must be integers");
          return std::nullopt;
        }
        coords.push_back(c.get<std::int64_t>());
      }
    } else {
      fail(path, "expected a degree (integer or coordinate array)");
      return std::nullopt;
    }
    if (coords.size() != G.rank()) {
      fail(path, "degree has " + std::to_string(coords.size()) + " coordinates, group rank is " +
                     std::to_string(G.rank()));
      return std::nullopt;
    }
    return G.element(std::move(coords));
  }

  std::optional<std::vector<GroupElement>> degrees(const json& j, const GradingGroup& G, const std::string& path) {
    if (!j.is_array()) {
      fail(path, "expected an array of degrees");
      return std::nullopt;
    }
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto d = degree(j[i], G, path + "[" + std::to_string(i) + "]");
      if (!d) return std::nullopt;
      out.push_back(std::move(*d));
    }
    return out;
  }

  // Entries {indices, value}; later entries for the same tuple are rejected.
  bool table(const json& j, MultilinearTable& T, const std::string& path) {
    if (!j.is_array()) {
      fail(path, "expected an array of {indices, value} entries");
      return false;
    }
    bool ok = true;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t e = 0; e < j.size(); ++e) {
      const auto p = path + "[" + std::to_string(e) + "]";
      const auto* idx = field(j[e], "indices", p);
      const auto* val = field(j[e], "value", p);
      if (!idx || !val) {
        ok = false;
        continue;
      }
      if (!idx->is_array() || idx->size() != T.arity()) {
        fail(p + ".indices", "expected " + std::to_string(T.arity()) + " indices");
        ok = false;
        continue;
      }
      std::vector<std::size_t> t;
      bool good = true;
      for (std::size_t s = 0; s < idx->size(); ++s) {
        auto i = index((*idx)[s], p + ".indices[" + std::to_string(s) + "]");
        if (!i || *i >= T.slot_dims()[s]) {
          if (i) fail(p + ".indices[" + std::to_string(s) + "]", "index out of range");
          good = false;
          break;
        }
        t.push_back(*i);
      }
      auto v = vector(*val, T.out_dim(), p + ".value");
      if (!good || !v) {
        ok = false;
        continue;
      }
      if (!seen.insert(t).second) {
        fail(p, "duplicate entry for this index tuple");
        ok = false;
        continue;
      }
      T.set(t, *v);
    }
    return ok;
  }
};

std::string located(const std::string& name, const char* section) { return std::string(section) + "." + name; }

void read_group_and_eps(Reader& rd, const json& root, DefinitionDocument& doc) {
  const auto* bj = root.contains("bicharacter") ? &root["bicharacter"] : nullptr;
  const auto* gj = root.contains("group") ? &root["group"] : nullptr;
  if (!bj) {
    if (gj) rd.fail("group", "a group needs a bicharacter");
    return;
  }
  std::optional<GradingGroup> G;
  if (gj) {
    const auto* fr = rd.field(*gj, "free_rank", "group", false);
    const auto* tor = rd.field(*gj, "torsion", "group", false);
    std::size_t free_rank = 0;
    std::vector<std::int64_t> torsion;
    if (fr) {
      if (auto v = rd.index(*fr, "group.free_rank")) free_rank = *v;
    }
    if (tor) {
      if (!tor->is_array()) {
        rd.fail("group.torsion", "expected an array of orders");
      } else {
        for (const auto& o : *tor) {
          if (!o.is_number_integer() || o.get<std::int64_t>() < 2) {
            rd.fail("group.torsion", "orders must be integers >= 2");
            return;
          }
          torsion.push_back(o.get<std::int64_t>());
        }
      }
    }
    G = GradingGroup(free_rank, torsion);
  }
  if (bj->contains("builtin")) {
    const auto& name = (*bj)["builtin"];
    int param = 0;
    if (bj->contains("param")) {
      if (!(*bj)["param"].is_number_integer()) {
        rd.fail("bicharacter.param", "expected an integer");
        return;
      }
      param = (*bj)["param"].get<int>();
    }
    if (!name.is_string()) {
      rd.fail("bicharacter.builtin", "expected a name");
      return;
    }
    try {
      doc.eps = builtin_bicharacter(name.get<std::string>(), param);
      doc.builtin = name.get<std::string>();
      doc.builtin_param = param;
    } catch (const std::exception& e) {
      rd.fail("bicharacter.builtin", e.what());
      return;
    }
    if (G && *G != doc.eps->group()) rd.fail("group", "does not match the builtin bicharacter's group");
    return;
  }
  if (!G) {
    rd.fail("group", "a generator table needs an explicit group");
    return;
  }
  const auto* tj = rd.field(*bj, "generators", "bicharacter");
  if (!tj) return;
  auto m = rd.matrix(*tj, G->rank(), G->rank(), "bicharacter.generators");
  if (!m) return;
  auto eps = Bicharacter::unchecked(*G, *m);
  auto v = bichar_validate(eps);
  for (const auto& b : v) rd.fail("bicharacter", b.axiom + " violated at " + b.witness);
  if (v.empty()) doc.eps = Bicharacter(*G, *m);
}

std::shared_ptr<const ColorAlgebra> read_algebra(Reader& rd, const json& j, const Bicharacter& eps,
                                                 const std::string& path) {
  const auto before = rd.problems.size();
  const auto* aj = rd.field(j, "arity", path);
  const auto* dj = rd.field(j, "degrees", path);
  const auto* bj = rd.field(j, "bracket", path);
  if (!aj || !dj || !bj) return nullptr;
  auto arity = rd.index(*aj, path + ".arity");
  auto degs = rd.degrees(*dj, eps.group(), path + ".degrees");
  if (!arity || !degs) return nullptr;
  if (*arity < 2) {
    rd.fail(path + ".arity", "arity must be at least 2");
    return nullptr;
  }
  const auto n = degs->size();
  const json id = "identity";
  auto alpha = rd.matrix(j.value("alpha", id), n, n, path + ".alpha");
  auto beta = rd.matrix(j.value("beta", id), n, n, path + ".beta");
  MultilinearTable T;
  try {
    T = MultilinearTable::uniform(n, *arity);
  } catch (const std::exception& e) {
    rd.fail(path, e.what());
    return nullptr;
  }
  rd.table(*bj, T, path + ".bracket");
  if (!alpha || !beta || rd.problems.size() != before) return nullptr;
  auto L = std::make_shared<const ColorAlgebra>(eps, *arity, std::move(*degs), std::move(*alpha), std::move(*beta),
                                                std::move(T));
  for (const auto& v : invariant_violations(*L)) rd.fail(path, v);
  return rd.problems.size() == before ? L : nullptr;
}

void read_sections(Reader& rd, const json& root, DefinitionDocument& doc) {
  static const std::set<std::string> known{"format", "group",   "bicharacter",   "algebras",
                                           "maps",   "modules", "assoc_algebras", "bihom_assoc_algebras",
                                           "subspaces"};
  for (const auto& [k, v] : root.items())
    if (!known.count(k)) rd.fail(k, "unknown section");
  if (root.contains("format") && root["format"] != "nbihom-document/1")
    rd.fail("format", "expected \"nbihom-document/1\"");

  auto section = [&](const char* name) -> const json* {
    if (!root.contains(name)) return nullptr;
    const auto& s = root[name];
    if (!s.is_object()) {
      rd.fail(name, "expected an object keyed by name");
      return nullptr;
    }
    return &s;
  };
  auto need_eps = [&](const char* name) {
    if (!doc.eps) rd.fail(name, "needs a bicharacter");
    return doc.eps.has_value();
  };

  if (const auto* s = section("algebras"); s && need_eps("algebras")) {
    for (const auto& [name, j] : s->items())
      if (auto L = read_algebra(rd, j, *doc.eps, located(name, "algebras"))) doc.algebras[name] = L;
  }

  if (const auto* s = section("maps")) {
    for (const auto& [name, j] : s->items()) {
      const auto path = located(name, "maps");
      const auto* mj = rd.field(j, "matrix", path);
      if (!mj) continue;
      if (!mj->is_array() || mj->empty() || !(*mj)[0].is_array()) {
        rd.fail(path + ".matrix", "expected a nonempty array of rows");
        continue;
      }
      auto m = rd.matrix(*mj, mj->size(), (*mj)[0].size(), path + ".matrix");
      if (!m) continue;
      GroupElement d;
      if (doc.eps) {
        d = doc.eps->group().identity();
        if (j.contains("degree")) {
          auto dd = rd.degree(j["degree"], doc.eps->group(), path + ".degree");
          if (!dd) continue;
          d = *dd;
        }
      }
      doc.maps[name] = HomogeneousMap{d, std::move(*m)};
    }
  }

  if (const auto* s = section("assoc_algebras")) {
    for (const auto& [name, j] : s->items()) {
      const auto path = located(name, "assoc_algebras");
      const auto* dj = rd.field(j, "dim", path);
      const auto* pj = rd.field(j, "product", path);
      if (!dj || !pj) continue;
      auto dim = rd.index(*dj, path + ".dim");
      if (!dim) continue;
      MultilinearTable T({*dim, *dim}, *dim);
      if (!rd.table(*pj, T, path + ".product")) continue;
      auto A = AssocAlgebra::unchecked(*dim, std::move(T));
      auto v = assoc_violations(A);
      for (const auto& p : v) rd.fail(path, p);
      if (v.empty()) doc.assoc_algebras[name] = std::move(A);
    }
  }

  if (const auto* s = section("bihom_assoc_algebras"); s && need_eps("bihom_assoc_algebras")) {
    for (const auto& [name, j] : s->items()) {
      const auto path = located(name, "bihom_assoc_algebras");
      const auto* dj = rd.field(j, "degrees", path);
      const auto* pj = rd.field(j, "product", path);
      if (!dj || !pj) continue;
      auto degs = rd.degrees(*dj, doc.eps->group(), path + ".degrees");
      if (!degs) continue;
      const auto n = degs->size();
      const json id = "identity";
      auto alpha = rd.matrix(j.value("alpha", id), n, n, path + ".alpha");
      auto beta = rd.matrix(j.value("beta", id), n, n, path + ".beta");
      MultilinearTable T({n, n}, n);
      if (!rd.table(*pj, T, path + ".product") || !alpha || !beta) continue;
      doc.bihom_assoc_algebras[name] =
          BiHomAssocColorAlgebra{*doc.eps, std::move(*degs), std::move(*alpha), std::move(*beta), std::move(T)};
    }
  }

  if (const auto* s = section("modules"); s && need_eps("modules")) {
    for (const auto& [name, j] : s->items()) {
      const auto path = located(name, "modules");
      if (j.contains("adjoint_of")) {
        const auto& a = j["adjoint_of"];
        if (!a.is_string() || !doc.algebras.count(a.get<std::string>())) {
          rd.fail(path + ".adjoint_of", "does not name a loaded algebra");
          continue;
        }
        doc.modules[name] = adjoint_module(doc.algebras.at(a.get<std::string>()));
        continue;
      }
      const auto* aj = rd.field(j, "algebra", path);
      const auto* dj = rd.field(j, "degrees", path);
      const auto* acts = rd.field(j, "actions", path);
      if (!aj || !dj || !acts) continue;
      if (!aj->is_string() || !doc.algebras.count(aj->get<std::string>())) {
        rd.fail(path + ".algebra", "does not name a loaded algebra");
        continue;
      }
      auto L = doc.algebras.at(aj->get<std::string>());
      auto degs = rd.degrees(*dj, L->group(), path + ".degrees");
      if (!degs) continue;
      const auto m = degs->size();
      const json id = "identity";
      auto alpha = rd.matrix(j.value("alpha", id), m, m, path + ".alpha");
      auto beta = rd.matrix(j.value("beta", id), m, m, path + ".beta");
      if (!acts->is_array() || acts->size() != L->arity()) {
        rd.fail(path + ".actions", "expected one action table per bracket slot");
        continue;
      }
      std::vector<MultilinearTable> tables;
      bool ok = alpha && beta;
      for (std::size_t i = 0; i < L->arity(); ++i) {
        MultilinearTable T(BiHomModule::action_shape(L->arity(), i, L->dim(), m), m);
        ok = rd.table((*acts)[i], T, path + ".actions[" + std::to_string(i) + "]") && ok;
        tables.push_back(std::move(T));
      }
      if (!ok) continue;
      BiHomModule M(L, std::move(*degs), std::move(*alpha), std::move(*beta), std::move(tables));
      auto v = module_invariant_violations(M);
      for (const auto& p : v) rd.fail(path, p);
      if (v.empty()) doc.modules[name] = std::move(M);
    }
  }

  if (const auto* s = section("subspaces")) {
    for (const auto& [name, j] : s->items()) {
      const auto path = located(name, "subspaces");
      const auto* aj = rd.field(j, "algebra", path);
      const auto* vj = rd.field(j, "vectors", path);
      if (!aj || !vj) continue;
      if (!aj->is_string() || !doc.algebras.count(aj->get<std::string>())) {
        rd.fail(path + ".algebra", "does not name a loaded algebra");
        continue;
      }
      const auto& L = *doc.algebras.at(aj->get<std::string>());
      if (!vj->is_array()) {
        rd.fail(path + ".vectors", "expected an array of vectors");
        continue;
      }
      std::vector<Vector> vs;
      bool ok = true;
      for (std::size_t i = 0; i < vj->size(); ++i) {
        auto v = rd.vector((*vj)[i], L.dim(), path + ".vectors[" + std::to_string(i) + "]");
        if (v) vs.push_back(std::move(*v));
        else ok = false;
      }
      if (!ok) continue;
      try {
        doc.subspaces[name] = NamedSubspace{aj->get<std::string>(), GradedSubspace::span(L, vs)};
      } catch (const std::exception& e) {
        rd.fail(path, e.what());
      }
    }
  }
}

}  // namespace

DefinitionDocument parse_document(const std::string& text, const std::string& path) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path, line, col, e.what());
  }
  if (!root.is_object()) throw DocumentError({"<root>: expected an object"});
  Reader rd;
  DefinitionDocument doc;
  read_group_and_eps(rd, root, doc);
  read_sections(rd, root, doc);
  if (!rd.problems.empty()) throw DocumentError(std::move(rd.problems));
  return doc;
}

DefinitionDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

void merge_documents(DefinitionDocument& a, const DefinitionDocument& b) {
  std::vector<std::string> problems;
  if (b.eps) {
    if (!a.eps) {
      a.eps = b.eps;
      a.builtin = b.builtin;
      a.builtin_param = b.builtin_param;
    } else if (!(*a.eps == *b.eps)) {
      problems.push_back("bicharacter: inputs use different bicharacters");
    }
  }
  auto take = [&](auto& dst, const auto& src, const char* section) {
    for (const auto& [k, v] : src)
      if (!dst.emplace(k, v).second) problems.push_back(located(k, section) + ": defined in more than one input");
  };
  take(a.algebras, b.algebras, "algebras");
  take(a.maps, b.maps, "maps");
  take(a.modules, b.modules, "modules");
  take(a.assoc_algebras, b.assoc_algebras, "assoc_algebras");
  take(a.bihom_assoc_algebras, b.bihom_assoc_algebras, "bihom_assoc_algebras");
  take(a.subspaces, b.subspaces, "subspaces");
  if (!problems.empty()) throw DocumentError(std::move(problems));
}

json document_to_json(const DefinitionDocument& doc) {
  json root;
  root["format"] = "nbihom-document/1";
  if (doc.eps) {
    const auto& G = doc.eps->group();
    root["group"] = {{"free_rank", G.free_rank()}, {"torsion", G.torsion_orders()}};
    if (!doc.builtin.empty()) {
      root["bicharacter"] = {{"builtin", doc.builtin}};
      if (doc.builtin_param != 0) root["bicharacter"]["param"] = doc.builtin_param;
    } else {
      root["bicharacter"] = {{"generators", to_json(doc.eps->generator_values())}};
    }
  }
  auto degrees_json = [](const std::vector<GroupElement>& ds) {
    json a = json::array();
    for (const auto& d : ds) a.push_back(to_json(d));
    return a;
  };
  std::map<const ColorAlgebra*, std::string> names;
  for (const auto& [name, L] : doc.algebras) {
    names[L.get()] = name;
    root["algebras"][name] = {{"arity", L->arity()},
                              {"degrees", degrees_json(L->degrees())},
                              {"alpha", to_json(L->alpha())},
                              {"beta", to_json(L->beta())},
                              {"bracket", table_to_json(L->bracket())}};
  }
  for (const auto& [name, f] : doc.maps) root["maps"][name] = {{"degree", to_json(f.degree)}, {"matrix", to_json(f.matrix)}};
  for (const auto& [name, M] : doc.modules) {
    std::string alg;
    for (const auto& [an, L] : doc.algebras)
      if (*L == M.algebra()) alg = an;
    if (alg.empty()) throw PreconditionError("module '" + name + "' refers to an algebra missing from the document");
    json acts = json::array();
    for (const auto& W : M.actions()) acts.push_back(table_to_json(W));
    root["modules"][name] = {{"algebra", alg},
                             {"degrees", degrees_json(M.degrees())},
                             {"alpha", to_json(M.alpha())},
                             {"beta", to_json(M.beta())},
                             {"actions", acts}};
  }
  for (const auto& [name, A] : doc.assoc_algebras)
    root["assoc_algebras"][name] = {{"dim", A.dim()}, {"product", table_to_json(A.product())}};
  for (const auto& [name, A] : doc.bihom_assoc_algebras)
    root["bihom_assoc_algebras"][name] = {{"degrees", degrees_json(A.degrees)},
                                          {"alpha", to_json(A.alpha)},
                                          {"beta", to_json(A.beta)},
                                          {"product", table_to_json(A.product)}};
  for (const auto& [name, S] : doc.subspaces) {
    json vs = json::array();
    for (const auto& v : S.space.basis()) vs.push_back(to_json(v));
    root["subspaces"][name] = {{"algebra", S.algebra}, {"vectors", vs}};
  }
  return root;
}

std::string dump_document(const DefinitionDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

}  // namespace nbihom
