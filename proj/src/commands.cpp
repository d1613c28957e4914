#include "nbihom/commands.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nbihom/constructions.hpp"
#include "nbihom/document.hpp"
#include "nbihom/errors.hpp"
#include "nbihom/repmod.hpp"
#include "nbihom/report_io.hpp"

namespace nbihom {

using nlohmann::json;

namespace {

// Bad command-line usage: unknown names, missing options, malformed arguments.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && s.front() == ' ') s.erase(0, 1);
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

unsigned parse_unsigned(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("expected a nonnegative integer, got '" + s + "'");
  }
  return static_cast<unsigned>(std::stoul(s));
}

GroupElement parse_degree(const std::string& s, const GradingGroup& G) {
  std::vector<std::int64_t> coords;
  if (G.rank() > 0) {
    for (const auto& part : split(s, '.')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("bad degree '" + s + "'");
      }
    }
  } else if (!s.empty() && s != "e" && s != "0") {
    throw std::invalid_argument("the grading group is trivial; degree must be e");
  }
  if (coords.size() != G.rank()) throw std::invalid_argument("degree '" + s + "' has the wrong number of coordinates");
  return G.element(std::move(coords));
}

}  // namespace

std::vector<QuerySpec> parse_queries(const std::string& text, const GradingGroup& G) {
  if (trim(text).empty()) return {{0, 0, {}}, {0, 1, {}}, {1, 0, {}}, {1, 1, {}}};
  std::vector<QuerySpec> out;
  for (auto entry : split(text, ';')) {
    entry = trim(entry);
    if (entry.empty()) continue;
    auto parts = split(entry, ',');
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("query '" + entry + "' is not k,r[,degrees]");
    QuerySpec q{parse_unsigned(trim(parts[0])), parse_unsigned(trim(parts[1])), {}};
    if (parts.size() == 3)
      for (const auto& d : split(trim(parts[2]), '|')) q.degrees.push_back(parse_degree(trim(d), G));
    out.push_back(std::move(q));
  }
  if (out.empty()) throw std::invalid_argument("empty query list");
  return out;
}

QuerySet to_query_set(const std::vector<QuerySpec>& specs) {
  QuerySet qs;
  qs.powers.clear();
  bool all_degrees = false;
  for (const auto& s : specs) {
    std::pair<unsigned, unsigned> p{s.k, s.r};
    if (std::find(qs.powers.begin(), qs.powers.end(), p) == qs.powers.end()) qs.powers.push_back(p);
    if (s.degrees.empty()) all_degrees = true;
    for (const auto& d : s.degrees)
      if (std::find(qs.degrees.begin(), qs.degrees.end(), d) == qs.degrees.end()) qs.degrees.push_back(d);
  }
  if (all_degrees) qs.degrees.clear();
  std::sort(qs.degrees.begin(), qs.degrees.end());
  return qs;
}

namespace {

struct Session {
  const CommandOptions& opts;
  DefinitionDocument doc;
  std::string digest;
  json results = json::array();
  int worst = kExitOk;

  void record(const Report& r, json extra = json::object()) {
    extra["report"] = report_to_json(r);
    results.push_back(std::move(extra));
    const auto s = overall_status(r);
    if (s == Status::Fail) worst = kExitFailure;
    else if (s == Status::HypothesisNotMet && worst == kExitOk) worst = kExitHypothesis;
  }

  const std::string& need(const std::string& value, const char* flag) const {
    if (value.empty()) throw UsageError(std::string("missing option ") + flag);
    return value;
  }

  const ColorAlgebra& algebra() const { return doc.algebra(need(opts.algebra, "--algebra")); }

  std::vector<std::string> algebra_names() const {
    std::vector<std::string> names;
    if (!opts.algebra.empty()) {
      doc.algebra(opts.algebra);
      names.push_back(opts.algebra);
    } else {
      for (const auto& [n, L] : doc.algebras) names.push_back(n);
    }
    return names;
  }

  SlotMode slot_mode() const { return opts.relaxed_slot ? SlotMode::SingleSlot : SlotMode::AllSlots; }
};

json maps_json(const std::vector<HomogeneousMap>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(to_json(m.matrix));
  return a;
}

json subspace_json(const GradedSubspace& S) {
  json basis = json::array();
  for (const auto& v : S.basis()) basis.push_back(to_json(v));
  json by_degree = json::object();
  for (const auto& [d, n] : S.dims_by_degree()) by_degree[to_string(d)] = n;
  return {{"dim", S.dim()}, {"basis", basis}, {"dims_by_degree", by_degree}};
}

void cmd_check(Session& s) {
  for (const auto& name : s.algebra_names()) {
    const auto& L = s.doc.algebra(name);
    s.record(check_axioms(L), {{"algebra", name}});
  }
}

void cmd_check_module(Session& s) {
  std::vector<std::string> names;
  if (!s.opts.module.empty()) {
    s.doc.module(s.opts.module);
    names.push_back(s.opts.module);
  } else {
    for (const auto& [n, M] : s.doc.modules) names.push_back(n);
  }
  for (const auto& n : names) s.record(check_module_axioms(s.doc.module(n)), {{"module", n}});
}

std::vector<GroupElement> degrees_for(const ColorAlgebra& L, const QuerySpec& q) {
  return q.degrees.empty() ? candidate_degrees(L) : q.degrees;
}

void cmd_solve(Session& s) {
  const auto& L = s.algebra();
  const auto specs = parse_queries(s.opts.queries, L.group());
  const auto& kind = s.opts.kind;
  auto single = parse_operator_kind(kind);
  if (!single && kind != "qder" && kind != "gder") throw UsageError("unknown operator kind '" + kind + "'");
  json spaces = json::array();
  for (const auto& q : specs)
    for (const auto& d : degrees_for(L, q)) {
      json e{{"kind", kind}, {"k", q.k}, {"r", q.r}, {"degree", to_string(d)}};
      if (single) {
        auto b = solve_operator_space(L, {q.k, q.r, d, *single}, s.slot_mode());
        e["dim"] = b.dim();
        e["basis"] = maps_json(b.maps);
      } else if (kind == "qder") {
        auto pairs = solve_qder(L, q.k, q.r, d);
        json basis = json::array();
        for (const auto& p : pairs) basis.push_back({{"D", to_json(p.d.matrix)}, {"D_assoc", to_json(p.d_assoc.matrix)}});
        e["dim"] = pairs.size();
        e["projection_dim"] = qder_projection(L, q.k, q.r, d).dim();
        e["basis"] = basis;
      } else {
        auto tuples = solve_gder(L, q.k, q.r, d);
        json basis = json::array();
        for (const auto& t : tuples) basis.push_back(maps_json(t.maps));
        e["dim"] = tuples.size();
        e["projection_dim"] = gder_projection(L, q.k, q.r, d).dim();
        e["basis"] = basis;
      }
      spaces.push_back(std::move(e));
    }
  s.results.push_back({{"algebra", s.opts.algebra}, {"spaces", spaces}});
}

void cmd_closure(Session& s) {
  const auto& L = s.algebra();
  const auto specs = parse_queries(s.opts.queries, L.group());
  const auto qs = to_query_set(specs);
  if (s.opts.property == "tensor_centroid") {
    const auto& A = s.doc.assoc(s.need(s.opts.assoc, "--assoc"));
    const auto& f = s.doc.map(s.need(s.opts.map, "--map"));
    const auto& g = s.doc.map(s.need(s.opts.map2, "--map2"));
    s.record(tensor_centroid_check(A, L, f.matrix, g, specs.front().k, specs.front().r),
             {{"algebra", s.opts.algebra}, {"property", "tensor_centroid"}});
    return;
  }
  std::vector<std::string> ids;
  if (s.opts.property == "all") {
    ids = closure_property_ids();
  } else {
    const auto& known = closure_property_ids();
    if (std::find(known.begin(), known.end(), s.opts.property) == known.end()) {
      throw UsageError("unknown closure property '" + s.opts.property + "'");
    }
    ids.push_back(s.opts.property);
  }
  for (const auto& id : ids) s.record(closure_check(L, id, qs), {{"algebra", s.opts.algebra}, {"property", id}});
}

void cmd_sequences(Session& s) {
  for (const auto& name : s.algebra_names()) {
    const auto& L = s.doc.algebra(name);
    json ds = json::array(), cs = json::array();
    for (const auto& S : derived_sequence(L, s.opts.depth)) ds.push_back(subspace_json(S));
    for (const auto& S : central_sequence(L, s.opts.depth)) cs.push_back(subspace_json(S));
    s.record(check_ideal_theorem(L, s.opts.depth), {{"algebra", name}, {"derived", ds}, {"central", cs}});
  }
}

void cmd_center(Session& s) {
  for (const auto& name : s.algebra_names()) {
    const auto& L = s.doc.algebra(name);
    json e{{"algebra", name}, {"center", subspace_json(center(L))}, {"ab_center", subspace_json(ab_center(L))}};
    if (!s.opts.subspace.empty()) {
      const auto& H = s.doc.subspace(s.opts.subspace);
      if (H.algebra != name) throw UsageError("subspace '" + s.opts.subspace + "' belongs to another algebra");
      e["centralizer"] = subspace_json(centralizer(L, H.space));
    }
    s.results.push_back(std::move(e));
  }
}

Vector parse_vector(const std::string& text, std::size_t n) {
  Vector v;
  for (const auto& p : split(text, ',')) v.push_back(parse_rational(trim(p)));
  if (v.size() != n) throw UsageError("vector '" + text + "' needs " + std::to_string(n) + " entries");
  return v;
}

std::size_t slot_index(std::size_t one_based, std::size_t n) {
  if (one_based < 1 || one_based > n) throw UsageError("slot must be between 1 and " + std::to_string(n));
  return one_based - 1;
}

void cmd_construct(Session& s) {
  const auto& o = s.opts;
  const auto& kind = s.need(o.construction, "construction kind");
  ColorAlgebra out;
  std::shared_ptr<const ColorAlgebra> base;
  if (kind == "quotient") {
    const auto& L = s.algebra();
    const auto& I = s.doc.subspace(s.need(o.subspace, "--subspace"));
    if (I.algebra != o.algebra) throw UsageError("subspace belongs to another algebra");
    out = quotient(L, I.space);
  } else if (kind == "reduce-arity") {
    const auto& L = s.algebra();
    std::vector<Vector> us;
    for (const auto& t : o.vectors) us.push_back(parse_vector(t, L.dim()));
    out = reduce_arity(L, us);
  } else if (kind == "yau-twist") {
    out = yau_twist(s.algebra(), s.doc.map(s.need(o.map, "--map")), s.doc.map(s.need(o.map2, "--map2")));
  } else if (kind == "power-twist") {
    out = power_twist(s.algebra(), o.power);
  } else if (kind == "tensor") {
    out = tensor_with_commutative(s.doc.assoc(s.need(o.assoc, "--assoc")), s.algebra());
  } else if (kind == "direct-sum") {
    const auto& L = s.algebra();
    out = direct_sum(L, o.algebra2.empty() ? L : s.doc.algebra(o.algebra2));
  } else if (kind == "semi-morphism") {
    const auto& L = s.algebra();
    if (o.slots.size() != 1) throw UsageError("semi-morphism needs exactly one --slot");
    out = semi_morphism_twist(L, s.doc.map(s.need(o.map, "--map")), slot_index(o.slots[0], L.arity()));
  } else if (kind == "averaging") {
    const auto& L = s.algebra();
    std::vector<std::size_t> slots;
    for (auto sl : o.slots) slots.push_back(slot_index(sl, L.arity()));
    out = averaging_twist(L, s.doc.map(s.need(o.map, "--map")), slots);
  } else if (kind == "t-extension") {
    out = t_extension(s.algebra());
  } else if (kind == "lie-from-assoc") {
    out = lie_from_bihom_assoc(s.doc.bihom_assoc(s.need(o.bihom_assoc, "--bihom-assoc")));
  } else if (kind == "semidirect") {
    auto mode = o.mode == "split" ? SemidirectMode::Split
                : o.mode == "summed"
                    ? SemidirectMode::Summed
                    : throw UsageError("--mode must be split or summed");
    out = semidirect_algebra(s.doc.module(s.need(o.module, "--module")), mode, o.override_grading);
  } else if (kind == "der-algebra") {
    const auto& L = s.algebra();
    auto variant = o.variant == "der"   ? DerAlgebraVariant::Der
                   : o.variant == "end" ? DerAlgebraVariant::Commuting
                                        : throw UsageError("--variant must be der or end");
    out = der_algebra_structure(L, to_query_set(parse_queries(o.queries, L.group())), variant);
  } else {
    throw UsageError("unknown construction '" + kind + "'");
  }
  DefinitionDocument result;
  result.eps = out.eps();
  result.builtin = s.doc.builtin;
  result.builtin_param = s.doc.builtin_param;
  const std::string name = o.name.empty() ? kind : o.name;
  result.algebras[name] = std::make_shared<const ColorAlgebra>(std::move(out));
  s.results.push_back({{"constructed", name},
                       {"dim", result.algebras[name]->dim()},
                       {"arity", result.algebras[name]->arity()},
                       {"document", document_to_json(result)}});
}

void cmd_report_all(Session& s) {
  for (const auto& [name, Lp] : s.doc.algebras) {
    const auto& L = *Lp;
    s.record(check_axioms(L), {{"algebra", name}});
    s.record(check_jacobi_alternate(L), {{"algebra", name}});
    s.record(check_multiplicative(L), {{"algebra", name}});
    s.record(check_ideal_theorem(L), {{"algebra", name}});
    s.results.push_back({{"algebra", name},
                         {"center", subspace_json(center(L))},
                         {"ab_center", subspace_json(ab_center(L))}});
    if (!is_multiplicative(L)) continue;
    const QuerySet qs;
    json dims = json::array();
    for (auto [k, r] : qs.powers)
      for (const auto& d : candidate_degrees(L)) {
        json e{{"k", k}, {"r", r}, {"degree", to_string(d)}};
        for (auto kd : {OperatorKind::Der, OperatorKind::ZDer, OperatorKind::Centroid, OperatorKind::QuasiCentroid})
          e[to_string(kd)] = solve_operator_space(L, {k, r, d, kd}).dim();
        e["qder"] = qder_projection(L, k, r, d).dim();
        e["gder"] = gder_projection(L, k, r, d).dim();
        dims.push_back(std::move(e));
      }
    s.results.push_back({{"algebra", name}, {"operator_dims", dims}});
    for (const auto& id : closure_property_ids()) s.record(closure_check(L, id, qs), {{"algebra", name}, {"property", id}});
  }
  for (const auto& [name, M] : s.doc.modules) s.record(check_module_axioms(M), {{"module", name}});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CommandResult run_command(const CommandOptions& opts) {
  CommandResult res;
  static const std::vector<std::string> commands{"check",     "check-module", "construct",  "solve",
                                                 "closure",   "sequences",    "center",     "report-all"};
  if (std::find(commands.begin(), commands.end(), opts.command) == commands.end()) {
    res.exit_code = kExitUsage;
    res.err = "unknown command '" + opts.command + "'";
    return res;
  }
  if (opts.format != "text" && opts.format != "json") {
    res.exit_code = kExitUsage;
    res.err = "--format must be text or json";
    return res;
  }
  if (opts.inputs.empty()) {
    res.exit_code = kExitUsage;
    res.err = "no --input given";
    return res;
  }
  Session s{opts, {}, {}};
  try {
    std::string all;
    bool first = true;
    for (const auto& path : opts.inputs) {
      auto text = read_file(path);
      all += sha256_hex(text);
      auto d = parse_document(text, path);
      if (first) {
        s.doc = std::move(d);
        first = false;
      } else {
        merge_documents(s.doc, d);
      }
    }
    s.digest = opts.inputs.size() == 1 ? all : sha256_hex(all);
  } catch (const ParseError& e) {
    res.exit_code = kExitParse;
    res.err = e.what();
    return res;
  } catch (const DocumentError& e) {
    res.exit_code = kExitValidation;
    res.err = e.what();
    return res;
  }

  try {
    if (opts.command == "check") cmd_check(s);
    else if (opts.command == "check-module") cmd_check_module(s);
    else if (opts.command == "construct") cmd_construct(s);
    else if (opts.command == "solve") cmd_solve(s);
    else if (opts.command == "closure") cmd_closure(s);
    else if (opts.command == "sequences") cmd_sequences(s);
    else if (opts.command == "center") cmd_center(s);
    else cmd_report_all(s);
  } catch (const UsageError& e) {
    res.exit_code = kExitUsage;
    res.err = e.what();
    return res;
  } catch (const UnknownName& e) {
    res.exit_code = kExitUsage;
    res.err = e.what();
    return res;
  } catch (const PreconditionError& e) {
    res.exit_code = kExitHypothesis;
    res.err = std::string("precondition failed: ") + e.what();
    return res;
  } catch (const ValidationError& e) {
    res.exit_code = kExitValidation;
    res.err = e.what();
    return res;
  } catch (const std::invalid_argument& e) {
    res.exit_code = kExitUsage;
    res.err = e.what();
    return res;
  }

  if (opts.command == "construct") {
    // The output is a definition document, reloadable as input.
    res.out = s.results.front()["document"].dump(2) + "\n";
  } else {
    json top{{"tool", "nbihom"},
             {"version", kToolVersion},
             {"input_digest", "sha256:" + s.digest},
             {"command", opts.command},
             {"results", s.results}};
    res.out = opts.format == "json" ? top.dump(2) + "\n" : render_text(top);
  }
  res.exit_code = s.worst;
  if (!opts.output.empty()) {
    std::ofstream f(opts.output, std::ios::binary);
    if (!f) {
      res.exit_code = kExitUsage;
      res.err = "cannot write " + opts.output;
      return res;
    }
    f << res.out;
    if (opts.command == "construct") {
      const auto& r = s.results.front();
      res.out = "constructed " + r["constructed"].get<std::string>() + " (dim " + r["dim"].dump() + ", arity " +
                r["arity"].dump() + ") -> " + opts.output + "\n";
    } else {
      res.out.clear();
    }
  }
  return res;
}

}  // namespace nbihom
