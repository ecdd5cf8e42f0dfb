#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mtpi/formula.h"
#include "mtpi/semantics.h"

namespace mtpi {

// Bounds for the finite tree-model search.
struct OracleBounds {
  int max_depth = 0;
  int max_branching = 0;
  // Valuations range over these; any other variable is false everywhere.
  std::vector<std::string> variables;
  // Cap on evaluated world configurations; ResourceLimitError beyond it.
  std::size_t budget = 20'000'000;
};

// Depth = modal depth, branching = number of distinct <> subformulas of the
// NNF, variables = Vars(f). Under these bounds an unsat verdict is final.
OracleBounds SufficientBounds(const Formula& f);

enum class OracleVerdict { kSat, kUnsatWithinBounds };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::kUnsatWithinBounds;
  // Always true for kSat; for kUnsatWithinBounds, true when the bounds are
  // at least SufficientBounds(f).
  bool definitive = false;
  // Smallest tree model found (closed under reflexivity for T).
  std::optional<PointedModel> witness;
  std::size_t explored = 0;
};

// Searches rooted tree models of depth <= max_depth where every world has at
// most max_branching successors (plus the reflexive loop in T). Worlds are
// abstracted by the truth values of the modal bodies of f, so each distinct
// behaviour is explored once. Independent of the tableau.
OracleResult SatByEnumeration(const Formula& f, System sys, const OracleBounds& bounds);

// Clause shapes for exhaustive enumeration.
struct ClauseVocabulary {
  std::vector<std::string> variables;
  int max_disjuncts = 2;
  // 0: propositional literals only; 1: also []l and <>l for each
  // propositional literal l.
  int max_depth = 1;
};

std::vector<Formula> VocabularyLiterals(const ClauseVocabulary& vocab);
// Every disjunction of 1..max_disjuncts distinct vocabulary literals, in
// canonical order.
std::vector<Formula> EnumerateClauses(const ClauseVocabulary& vocab);

// The clauses c of the vocabulary with x & theory & ~c unsatisfiable,
// decided by SatByEnumeration under sufficient bounds.
std::vector<Formula> EnumerateImplicates(const Formula& x, const Formula& theory, System sys,
                                         const ClauseVocabulary& vocab);

// Inputs of the seven-way decomposition of a []Y-inconsistent conjunction.
// alpha, psi and y must be propositional.
struct DecompositionInstance {
  std::vector<Formula> alpha;
  std::vector<Formula> beta;
  std::vector<Formula> gamma;
  std::vector<Formula> psi;
  std::vector<Formula> phi;
  std::vector<Formula> xi;
  Formula y;

  // The seven-conjunct left-hand formula (without []y).
  Formula Lhs() const;
  std::string ToString() const;
};

struct DecompositionReport {
  bool lhs_inconsistent = false;
  std::array<bool, 7> conditions{};

  bool any_condition() const;
  // lhs_inconsistent iff some condition holds.
  bool holds() const { return lhs_inconsistent == any_condition(); }
};

// Decides both sides with the tableau. Empty disjunctions are false, empty
// conjunctions true; conditions 3 and 5 hold when some xi_u satisfies them.
// Throws ShapeError when alpha, psi or y is not propositional.
DecompositionReport CheckDecomposition(const DecompositionInstance& inst, System sys = System::kK,
                                       const ProverOptions& options = {});

}  // namespace mtpi
