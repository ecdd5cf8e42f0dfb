#pragma once

#include <cstddef>
#include <vector>

#include "mtpi/formula.h"
#include "mtpi/normal_forms.h"
#include "mtpi/semantics.h"

namespace mtpi {

struct EngineOptions {
  ProverOptions prover;
  // Cap on DNF terms and on the candidate set.
  std::size_t max_terms = 10'000;
};

struct CompilationStats {
  std::size_t nb_cl_candidates = 0;
  std::size_t nb_cl_theta = 0;
  std::size_t entailment_calls = 0;
  double elapsed_ms = 0.0;
};

// Theta and the compilation Omega = Theta(X, []Y) + []Y.
struct CompilationResult {
  Formula x;
  Formula y;
  System system = System::kT;
  std::vector<Formula> candidates;
  std::vector<Formula> theta;
  Formula box_y;
  CompilationStats stats;
  bool horn_advisory = false;

  // Theta together with []Y, as a list of clauses.
  std::vector<Formula> Omega() const;
};

// The per-term implicates of a consistent term: each propositional literal,
// <>(b & G) for every <> body b where G is the conjunction of the [] bodies,
// and []G when there is at least one [] body.
// Throws ShapeError when the propositional literals clash.
std::vector<Formula> TermCandidates(const TermParts& term);

// Computes candidate sets, residues and compilations in one modal system.
// Owns a Reasoner, so entailment results are shared across calls.
class Engine {
 public:
  explicit Engine(System sys, EngineOptions options = {});

  System system() const { return reasoner_.system(); }
  Reasoner& reasoner() { return reasoner_; }

  // CANDIDATES for f: distribute the per-term candidates over the DNF terms
  // of f. Returns {false} when f is inconsistent.
  std::vector<Formula> Candidates(const Formula& f);

  // Collapses |=_theory equivalence classes (canonical representative) and
  // removes every clause entailed modulo `theory` by another kept clause.
  std::vector<Formula> Residue(const std::vector<Formula>& clauses, const Formula& theory);

  // Pi(x).
  std::vector<Formula> PrimeImplicates(const Formula& x);

  // Theta(x, []y): the residue modulo []y of the candidates of x & []y.
  // Requires y propositional and x |= y.
  CompilationResult ModalTpi(const Formula& x, const Formula& y);

  // Omega_[]y(x); same as ModalTpi, kept as a separate entry point because
  // the result is what queries are answered against.
  CompilationResult CompileOmega(const Formula& x, const Formula& y) { return ModalTpi(x, y); }

 private:
  std::vector<Formula> SaturatedTerms(const Formula& f);
  std::vector<Formula> PruneEntailed(std::vector<Formula> clauses);

  Reasoner reasoner_;
  EngineOptions options_;
};

// Every clause of the CNF of y has at most one positive literal.
// Throws ShapeError when y is not propositional.
bool IsHorn(const Formula& y);

// The conjunction of the propositional clauses of ToCnf(x) (true if none).
Formula DefaultTheory(const Formula& x);

}  // namespace mtpi
