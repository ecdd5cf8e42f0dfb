#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mtpi/checks.h"
#include "mtpi/errors.h"
#include "mtpi/oracle.h"
#include "mtpi/pi_engine.h"
#include "mtpi/qa.h"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

mtpi::System SystemFrom(const std::string& s) {
  auto sys = mtpi::ParseSystem(s);
  if (!sys) throw mtpi::ShapeError("unknown system " + s);
  return *sys;
}

// Y from --theory, else the [theory] section of the KB, else the
// propositional clauses of X with --auto-theory, else true.
mtpi::Formula ResolveTheory(const mtpi::KnowledgeBaseFile& kb, const std::string& theory_path,
                            bool auto_theory) {
  if (!theory_path.empty()) return mtpi::LoadKb(theory_path).Conjunction();
  if (kb.theory) return mtpi::Conjoin(*kb.theory);
  if (auto_theory) return mtpi::DefaultTheory(kb.Conjunction());
  return mtpi::Formula::True();
}

void PrintList(const char* title, const std::vector<mtpi::Formula>& fs) {
  std::cout << title << " (" << fs.size() << "):\n";
  for (const auto& f : fs) std::cout << "  " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theory prime implicates and query answering for modal logics K and T"};
  app.require_subcommand(1);

  std::string system = "T";
  std::size_t node_budget = mtpi::ProverOptions{}.node_budget;
  std::size_t max_terms = mtpi::EngineOptions{}.max_terms;

  auto* compile = app.add_subcommand("compile", "Compile a knowledge base into Theta(X, []Y) + []Y");
  std::string kb_path, theory_path, out_path;
  bool auto_theory = false;
  compile->add_option("--kb", kb_path, "Knowledge base file")->required()->check(CLI::ExistingFile);
  auto* theory_opt = compile->add_option("--theory", theory_path, "File with the propositional theory Y");
  compile->add_flag("--auto-theory", auto_theory, "Use the propositional clauses of X as Y")
      ->excludes(theory_opt);
  compile->add_option("--system", system, "K or T")->check(CLI::IsMember({"K", "T"}));
  compile->add_option("--out", out_path, "Output JSON file")->required();
  compile->add_option("--max-terms", max_terms, "Cap on DNF terms and candidates");
  compile->add_option("--node-budget", node_budget, "Tableau node budget per call");

  auto* query = app.add_subcommand("query", "Answer a clausal query against a compilation");
  std::string comp_path, query_text;
  bool strict = false;
  query->add_option("--compilation", comp_path, "Compilation JSON")->required()->check(CLI::ExistingFile);
  query->add_option("--query", query_text, "Query clause")->required();
  query->add_flag("--strict-paper-qa", strict, "Require every member to entail the query");
  query->add_option("--node-budget", node_budget, "Tableau node budget per call");

  auto* pi = app.add_subcommand("pi", "Print the prime implicates of a knowledge base");
  pi->add_option("--kb", kb_path, "Knowledge base file")->required()->check(CLI::ExistingFile);
  pi->add_option("--system", system, "K or T")->check(CLI::IsMember({"K", "T"}));
  pi->add_option("--max-terms", max_terms, "Cap on DNF terms and candidates");
  pi->add_option("--node-budget", node_budget, "Tableau node budget per call");

  auto* check = app.add_subcommand("check", "Run the invariant checks on one instance");
  check->add_option("--kb", kb_path, "Knowledge base file")->required()->check(CLI::ExistingFile);
  check->add_option("--theory", theory_path, "File with the propositional theory Y");
  check->add_option("--system", system, "K or T")->check(CLI::IsMember({"K", "T"}));
  check->add_option("--node-budget", node_budget, "Tableau node budget per call");

  auto* oracle = app.add_subcommand("oracle", "Bounded tree-model search for a formula");
  std::string formula_text;
  int max_depth = -1, max_branching = -1;
  oracle->add_option("--formula", formula_text, "Formula")->required();
  oracle->add_option("--system", system, "K or T")->check(CLI::IsMember({"K", "T"}));
  oracle->add_option("--max-depth", max_depth, "Tree depth (default: modal depth)");
  oracle->add_option("--max-branching", max_branching, "Successors per world (default: <> count)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  mtpi::ProverOptions prover{node_budget};
  mtpi::EngineOptions engine_options{prover, max_terms};

  try {
    if (*compile) {
      const auto kb = mtpi::LoadKb(kb_path);
      const mtpi::Formula x = kb.Conjunction();
      const mtpi::Formula y = ResolveTheory(kb, theory_path, auto_theory);
      mtpi::Engine engine(SystemFrom(system), engine_options);
      const auto comp = engine.CompileOmega(x, y);
      mtpi::SaveCompilation(comp, out_path);
      std::cout << "X: " << comp.x << "\nY: " << comp.y << "\nsystem: " << mtpi::ToString(comp.system)
                << "\n";
      PrintList("candidates", comp.candidates);
      PrintList("theta", comp.theta);
      std::cout << "entailment calls: " << comp.stats.entailment_calls
                << "\nelapsed ms: " << comp.stats.elapsed_ms << "\n";
      if (!comp.horn_advisory) std::cout << "advisory: Y is not a Horn theory\n";
      return kExitTrue;
    }
    if (*query) {
      const auto comp = mtpi::LoadCompilation(comp_path);
      const mtpi::Formula q = mtpi::Parse(query_text);
      const auto cls = mtpi::Classify(mtpi::Nnf(q));
      if (cls != mtpi::FormulaClass::kLiteral && cls != mtpi::FormulaClass::kClause) {
        std::cerr << "advisory: query is not a clause; answering by direct entailment from X\n";
        const auto v = mtpi::QaDirectVerdict(comp.x, comp.y, q, comp.system, prover);
        std::cout << (v.answer ? "true" : "false") << "\nmethod: direct\n";
        if (v.countermodel) std::cout << "countermodel: " << mtpi::ToJson(*v.countermodel).dump() << "\n";
        return v.answer ? kExitTrue : kExitFalse;
      }
      const auto v =
          mtpi::Qa(comp, q, strict ? mtpi::QaMode::kStrict : mtpi::QaMode::kExistential, prover);
      std::cout << (v.answer ? "true" : "false") << "\nmethod: compiled\n";
      if (v.witness) std::cout << (v.answer ? "witness: " : "failing member: ") << *v.witness << "\n";
      return v.answer ? kExitTrue : kExitFalse;
    }
    if (*pi) {
      const auto kb = mtpi::LoadKb(kb_path);
      mtpi::Engine engine(SystemFrom(system), engine_options);
      for (const auto& c : engine.PrimeImplicates(kb.Conjunction())) std::cout << c << "\n";
      return kExitTrue;
    }
    if (*check) {
      const auto kb = mtpi::LoadKb(kb_path);
      const mtpi::Formula y = ResolveTheory(kb, theory_path, false);
      const auto rep = mtpi::RunInstanceChecks(kb.Conjunction(), y, SystemFrom(system), engine_options);
      for (const auto& l : rep.lines) {
        std::cout << (l.passed ? "PASS " : "FAIL ") << l.name << ": " << l.detail << "\n";
      }
      return rep.all_passed() ? kExitTrue : kExitFalse;
    }
    if (*oracle) {
      const mtpi::Formula f = mtpi::Parse(formula_text);
      mtpi::OracleBounds bounds = mtpi::SufficientBounds(f);
      if (max_depth >= 0) bounds.max_depth = max_depth;
      if (max_branching >= 0) bounds.max_branching = max_branching;
      const auto r = mtpi::SatByEnumeration(f, SystemFrom(system), bounds);
      const bool sat = r.verdict == mtpi::OracleVerdict::kSat;
      std::cout << (sat ? "sat" : "unsat-within-bounds") << "\ndefinitive: " << (r.definitive ? "yes" : "no")
                << "\nexplored: " << r.explored << "\n";
      if (r.witness) std::cout << "witness: " << mtpi::ToJson(*r.witness).dump() << "\n";
      return sat ? kExitTrue : kExitFalse;
    }
  } catch (const mtpi::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const mtpi::CapacityError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const mtpi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
