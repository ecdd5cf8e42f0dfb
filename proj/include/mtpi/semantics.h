#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mtpi/formula.h"

namespace mtpi {

// K: no frame condition. T: the accessibility relation is reflexive.
enum class System { kK, kT };

const char* ToString(System sys);
std::optional<System> ParseSystem(std::string_view text);

using World = std::size_t;

// Finite Kripke model <W, R, v>. Worlds are 0..num_worlds()-1.
class KripkeModel {
 public:
  World AddWorld(std::set<std::string> true_vars = {});
  // Throws std::out_of_range when either world does not exist.
  void AddEdge(World from, World to);

  std::size_t num_worlds() const { return valuation_.size(); }
  const std::vector<World>& successors(World w) const { return successors_.at(w); }
  const std::set<std::string>& valuation(World w) const { return valuation_.at(w); }
  bool HasEdge(World from, World to) const;
  std::vector<std::pair<World, World>> Edges() const;

  bool IsReflexive() const;
  KripkeModel ReflexiveClosure() const;
  // The model as seen by `sys`: the reflexive closure for T, itself for K.
  KripkeModel ForSystem(System sys) const;

 private:
  std::vector<std::set<std::string>> valuation_;
  std::vector<std::vector<World>> successors_;
};

struct PointedModel {
  KripkeModel model;
  World world = 0;
};

// Truth of f at w. Throws std::out_of_range for an unknown world.
bool Eval(const KripkeModel& m, World w, const Formula& f);
// Same, after closing the relation under the frame condition of `sys`.
bool Eval(const KripkeModel& m, World w, const Formula& f, System sys);

struct ProverOptions {
  std::size_t node_budget = 1'000'000;
};

enum class Verdict { kSat, kUnsat, kUnknown };

struct TableauResult {
  Verdict verdict = Verdict::kUnknown;
  std::optional<PointedModel> model;
  std::size_t nodes = 0;
};

// Prefix-free labelled tableau for K and T. `f` must hold at the root world;
// every formula in `global` must hold at every world. With global axioms the
// search uses ancestor subset blocking and may build cyclic models.
// The returned model (when requested and kSat) is already closed under the
// frame condition of `sys`.
TableauResult RunTableau(const Formula& f, System sys, std::span<const Formula> global,
                         const ProverOptions& options, bool want_model);

// Decision procedures bound to one system. Keeps counters and memoizes
// satisfiability results by canonical formula text. Not thread-safe; give
// each thread its own Reasoner.
class Reasoner {
 public:
  explicit Reasoner(System sys, ProverOptions options = {});

  System system() const { return sys_; }
  const ProverOptions& options() const { return options_; }

  // All of these throw ResourceLimitError when the node budget runs out.
  bool IsSatisfiable(const Formula& f);
  std::optional<PointedModel> FindModel(const Formula& f);
  // Local consequence: premise & ~conclusion is unsatisfiable.
  bool Entails(const Formula& premise, const Formula& conclusion);
  // premise |=_theory conclusion, i.e. premise & theory |= conclusion.
  bool EntailsMod(const Formula& premise, const Formula& theory, const Formula& conclusion);
  bool Equivalent(const Formula& f, const Formula& g);
  bool EquivalentMod(const Formula& f, const Formula& g, const Formula& theory);
  // Global consequence: every model in which premise holds everywhere makes
  // conclusion hold everywhere.
  bool EntailsGlobally(const Formula& premise, const Formula& conclusion);
  bool EquivalentGlobally(const Formula& f, const Formula& g);

  std::size_t entailment_calls() const { return entailment_calls_; }
  std::size_t tableau_runs() const { return tableau_runs_; }

 private:
  bool Decide(const Formula& f, std::span<const Formula> global);

  System sys_;
  ProverOptions options_;
  std::unordered_map<std::string, bool> cache_;
  std::size_t entailment_calls_ = 0;
  std::size_t tableau_runs_ = 0;
};

// One-shot conveniences over a fresh Reasoner.
bool IsSatisfiable(const Formula& f, System sys, const ProverOptions& options = {});
std::optional<PointedModel> FindModel(const Formula& f, System sys,
                                      const ProverOptions& options = {});
bool Entails(const Formula& premise, const Formula& conclusion, System sys,
             const ProverOptions& options = {});
bool EntailsMod(const Formula& premise, const Formula& theory, const Formula& conclusion,
                System sys, const ProverOptions& options = {});
bool Equivalent(const Formula& f, const Formula& g, System sys,
                const ProverOptions& options = {});
bool EquivalentMod(const Formula& f, const Formula& g, const Formula& theory, System sys,
                   const ProverOptions& options = {});
bool EquivalentGlobally(const Formula& f, const Formula& g, System sys,
                        const ProverOptions& options = {});

}  // namespace mtpi
