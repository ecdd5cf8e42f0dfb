#include "mtpi/checks.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "mtpi/oracle.h"
#include "mtpi/qa.h"

namespace mtpi {

bool InstanceReport::all_passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.passed; });
}

InstanceReport RunInstanceChecks(const Formula& x, const Formula& y, System sys,
                                 const EngineOptions& options) {
  Engine engine(sys, options);
  InstanceReport rep;
  rep.compilation = engine.ModalTpi(x, y);
  const CompilationResult& c = rep.compilation;
  Reasoner& r = engine.reasoner();
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.lines.push_back({std::move(name), ok, std::move(detail)});
  };

  std::vector<std::string> unsound;
  for (const auto& t : c.theta) {
    if (!r.EntailsMod(x, c.box_y, t)) unsound.push_back(t.str());
  }
  add("theta_sound", unsound.empty(),
      unsound.empty() ? "every member is a theory implicate" : "not implied: " + unsound.front());

  std::string pair;
  for (const auto& a : c.theta) {
    for (const auto& b : c.theta) {
      if (!(a == b) && pair.empty() && r.EntailsMod(a, c.box_y, b)) pair = a.str() + " |= " + b.str();
    }
  }
  add("theta_minimal", pair.empty(), pair.empty() ? "members pairwise incomparable" : pair);

  std::string bad_shape;
  for (const auto& t : c.theta) {
    const FormulaClass k = Classify(t);
    if (k != FormulaClass::kLiteral && k != FormulaClass::kClause && bad_shape.empty()) bad_shape = t.str();
  }
  add("theta_clausal", bad_shape.empty(), bad_shape.empty() ? "all clauses" : bad_shape);

  const Formula omega = Conjoin(c.Omega());
  add("omega_equivalent_global", r.EquivalentGlobally(omega, x), "Omega and X have the same models");
  add("omega_equivalent_mod_box_y", r.EquivalentMod(omega, x, c.box_y),
      "Omega and X agree at every world where []Y holds");

  const std::size_t pi_size = engine.PrimeImplicates(Formula::And(x, c.box_y)).size();
  std::ostringstream size_detail;
  size_detail << "nb_cl(Theta)=" << c.theta.size() << " nb_cl(Pi(X & []Y))=" << pi_size;
  add("size_bound", c.theta.size() <= pi_size, size_detail.str());

  std::set<std::string> vars = Vars(x);
  for (const auto& v : Vars(y)) vars.insert(v);
  ClauseVocabulary vocab{{vars.begin(), vars.end()}, 2, 1};
  const std::vector<Formula> queries = EnumerateClauses(vocab);
  std::size_t agree = 0;
  std::string first_miss;
  for (const auto& q : queries) {
    const bool compiled = Qa(c, q, QaMode::kExistential, options.prover).answer;
    const bool direct = r.EntailsMod(x, c.box_y, q);
    if (compiled == direct) {
      ++agree;
    } else if (first_miss.empty()) {
      first_miss = q.str();
    }
  }
  std::ostringstream qa_detail;
  qa_detail << agree << "/" << queries.size() << " queries agree";
  if (!first_miss.empty()) qa_detail << ", first mismatch " << first_miss;
  add("qa_agreement", agree == queries.size(), qa_detail.str());
  return rep;
}

}  // namespace mtpi
