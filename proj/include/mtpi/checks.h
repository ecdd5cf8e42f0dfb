#pragma once

#include <string>
#include <vector>

#include "mtpi/formula.h"
#include "mtpi/pi_engine.h"
#include "mtpi/semantics.h"

namespace mtpi {

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct InstanceReport {
  CompilationResult compilation;
  std::vector<CheckLine> lines;

  bool all_passed() const;
};

// Compiles (x, y) and checks the compilation against the tableau:
// soundness and minimality of Theta, clause shape, Omega == X (global
// consequence, and locally modulo []Y), the size bound against
// Pi(X & []Y), and QA/direct agreement on every query with at most two
// disjuncts and modal depth <= 1 over the instance variables.
InstanceReport RunInstanceChecks(const Formula& x, const Formula& y, System sys,
                                 const EngineOptions& options = {});

}  // namespace mtpi
