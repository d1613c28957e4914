#include <iostream>

#include <CLI11.hpp>

#include "nbihom/commands.hpp"
#include "nbihom/report_io.hpp"

int main(int argc, char** argv) {
  nbihom::CommandOptions o;
  CLI::App app{"Checks, constructions and operator solvers for n-BiHom-Lie color algebras"};
  app.set_version_flag("--version", nbihom::kToolVersion);
  app.add_option("command", o.command,
                 "check | check-module | construct | solve | closure | sequences | center | report-all")
      ->required();
  app.add_option("construction", o.construction,
                 "for construct: quotient | reduce-arity | yau-twist | power-twist | tensor | direct-sum | "
                 "semi-morphism | averaging | t-extension | lie-from-assoc | semidirect | der-algebra");
  app.add_option("-i,--input", o.inputs, "definition document (repeatable; documents are merged)")->required();
  app.add_option("-o,--output", o.output, "write the report or constructed document here");
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-a,--algebra", o.algebra, "algebra name");
  app.add_option("--algebra2", o.algebra2, "second algebra (direct-sum)");
  app.add_option("-m,--module", o.module, "module name");
  app.add_option("--assoc", o.assoc, "commutative associative algebra name");
  app.add_option("--bihom-assoc", o.bihom_assoc, "BiHom-associative color algebra name");
  app.add_option("--subspace", o.subspace, "subspace name");
  app.add_option("--map", o.map, "map name");
  app.add_option("--map2", o.map2, "second map name");
  app.add_option("--name", o.name, "name of the constructed algebra");
  app.add_option("--kind", o.kind, "operator kind for solve: der | zder | c | qc | end | qder | gder");
  app.add_option("--queries", o.queries, "\"k,r[,d1|d2];...\" with degree coordinates separated by '.'");
  app.add_option("--property", o.property, "closure property id, 'all', or 'tensor_centroid'");
  app.add_option("--mode", o.mode, "semidirect bracket: split or summed");
  app.add_option("--variant", o.variant, "der-algebra space: der or end");
  app.add_option("--vector", o.vectors, "comma-separated rationals (reduce-arity; repeatable)");
  app.add_option("--slot", o.slots, "1-based bracket slot (repeatable)");
  app.add_option("--power", o.power, "power-twist exponent");
  app.add_option("--depth", o.depth, "sequence depth");
  app.add_flag("--relaxed-slot", o.relaxed_slot, "impose centroid/quasicentroid identities in one slot only");
  app.add_flag("--override-grading", o.override_grading, "allow semidirect products over a nontrivial group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : nbihom::kExitUsage;
  }
  auto res = nbihom::run_command(o);
  std::cout << res.out;
  if (!res.err.empty()) std::cerr << "nbihom: " << res.err << "\n";
  return res.exit_code;
}
