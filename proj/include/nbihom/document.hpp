#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nbihom/constructions.hpp"
#include "nbihom/repmod.hpp"

namespace nbihom {

// Malformed JSON, located by line and column (1-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Well-formed JSON that fails schema or invariant checks. Each problem starts with
// the JSON path of the failing entity, e.g. "algebras.ex.bracket[3]: ...".
class DocumentError : public std::runtime_error {
 public:
  explicit DocumentError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct NamedSubspace {
  std::string algebra;
  GradedSubspace space;
};

struct DefinitionDocument {
  std::optional<Bicharacter> eps;
  // Builtin name and parameter when the bicharacter was given that way.
  std::string builtin;
  int builtin_param = 0;

  std::map<std::string, std::shared_ptr<const ColorAlgebra>> algebras;
  std::map<std::string, HomogeneousMap> maps;
  std::map<std::string, BiHomModule> modules;
  std::map<std::string, AssocAlgebra> assoc_algebras;
  std::map<std::string, BiHomAssocColorAlgebra> bihom_assoc_algebras;
  std::map<std::string, NamedSubspace> subspaces;

  const ColorAlgebra& algebra(const std::string& name) const;
  const HomogeneousMap& map(const std::string& name) const;
  const BiHomModule& module(const std::string& name) const;
  const AssocAlgebra& assoc(const std::string& name) const;
  const BiHomAssocColorAlgebra& bihom_assoc(const std::string& name) const;
  const NamedSubspace& subspace(const std::string& name) const;
};

// Thrown by the accessors above for unknown names.
class UnknownName : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

DefinitionDocument parse_document(const std::string& text, const std::string& path = "<input>");
DefinitionDocument load_document(const std::string& path);
// Merges b into a; names must not collide and bicharacters must agree.
void merge_documents(DefinitionDocument& a, const DefinitionDocument& b);

nlohmann::json document_to_json(const DefinitionDocument& doc);
std::string dump_document(const DefinitionDocument& doc);

// Rationals as "p/q" strings.
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const MatrixQ& m);
nlohmann::json to_json(const GroupElement& g);
nlohmann::json table_to_json(const MultilinearTable& t);

}  // namespace nbihom
