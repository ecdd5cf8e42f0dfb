#pragma once

#include <cstddef>
#include <vector>

#include "mtpi/formula.h"

namespace mtpi {

struct NormalFormOptions {
  // Upper bound on clauses (terms) kept at any point of the distribution.
  std::size_t max_size = 10'000;
};

// Conjunction of clauses. Modal bodies are kept as they are; only the outer
// boolean structure is distributed. Valid clauses and clauses subsumed by
// another clause are dropped.
struct Cnf {
  std::vector<Formula> clauses;

  Formula ToFormula() const { return Conjoin(clauses); }
};

// Disjunction of terms. Terms with complementary propositional literals and
// terms subsumed by another term are dropped; an empty Dnf is `false`.
struct Dnf {
  std::vector<Formula> terms;

  Formula ToFormula() const { return Disjoin(terms); }
};

// Both throw CapacityError when the size cap is exceeded.
Cnf ToCnf(const Formula& f, const NormalFormOptions& options = {});
Dnf ToDnf(const Formula& f, const NormalFormOptions& options = {});

inline std::size_t NbCl(const Cnf& cnf) { return cnf.clauses.size(); }

}  // namespace mtpi
