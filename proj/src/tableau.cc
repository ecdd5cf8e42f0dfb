#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "mtpi/errors.h"
#include "mtpi/semantics.h"

namespace mtpi {

namespace {

// Fixed-size bit set over the interned subformulas of one tableau run.
class Label {
 public:
  Label() = default;
  explicit Label(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  // Returns true when the bit was newly set.
  bool set(int i) {
    auto& w = words_[i >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (w & mask) return false;
    w |= mask;
    return true;
  }

  bool SubsetOf(const Label& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  template <typename F>
  void ForEach(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int bit = std::countr_zero(w);
        f(static_cast<int>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  bool operator==(const Label& o) const { return words_ == o.words_; }

  std::size_t Hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : words_) h = (h ^ w) * 1099511628211ULL;
    return h;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const { return l.Hash(); }
};

struct Sub {
  Op op;
  int atom = -1;        // kVar, and kNot over a variable
  int complement = -1;  // id of the complementary literal, if interned
  std::vector<int> kids;
};

// Subformula closure of the NNF input, with integer ids.
class Closure {
 public:
  int Intern(const Formula& f) {
    if (auto it = index_.find(f.str()); it != index_.end()) return it->second;
    Sub s;
    s.op = f.op();
    if (f.is(Op::kVar)) {
      s.atom = Atom(f.name());
    } else if (f.is(Op::kNot)) {
      // NNF guarantees the operand is a variable.
      s.atom = Atom(f.child().name());
    } else {
      for (const auto& c : f.children()) s.kids.push_back(Intern(c));
    }
    const int id = static_cast<int>(subs_.size());
    subs_.push_back(std::move(s));
    index_.emplace(f.str(), id);
    if (subs_[id].atom >= 0) {
      auto& slot = literal_ids_[subs_[id].atom];
      int& mine = f.is(Op::kVar) ? slot.first : slot.second;
      int other = f.is(Op::kVar) ? slot.second : slot.first;
      mine = id;
      if (other >= 0) {
        subs_[id].complement = other;
        subs_[other].complement = id;
      }
    }
    return id;
  }

  const Sub& operator[](int id) const { return subs_[id]; }
  std::size_t size() const { return subs_.size(); }
  const std::string& atom_name(int atom) const { return atoms_[atom]; }

 private:
  int Atom(const std::string& name) {
    auto [it, inserted] = atom_index_.emplace(name, static_cast<int>(atoms_.size()));
    if (inserted) {
      atoms_.push_back(name);
      literal_ids_.push_back({-1, -1});
    }
    return it->second;
  }

  std::unordered_map<std::string, int> index_;
  std::vector<Sub> subs_;
  std::unordered_map<std::string, int> atom_index_;
  std::vector<std::string> atoms_;
  std::vector<std::pair<int, int>> literal_ids_;  // (positive id, negative id)
};

struct ModelNode {
  std::vector<int> atoms;
  std::vector<int> succ;
};

class Prover {
 public:
  Prover(System sys, const ProverOptions& options, bool global_mode)
      : sys_(sys), budget_(options.node_budget), global_mode_(global_mode) {}

  Closure& closure() { return closure_; }

  void SetGlobals(std::vector<int> globals) { globals_ = std::move(globals); }

  Verdict Solve(int root, int& model_root) {
    Label init(closure_.size());
    init.set(root);
    for (int g : globals_) init.set(g);
    int depends = kFree;
    const bool ok = SolveWorld(init, model_root, depends);
    if (exhausted_) return Verdict::kUnknown;
    return ok ? Verdict::kSat : Verdict::kUnsat;
  }

  std::size_t nodes() const { return nodes_; }

  PointedModel ExtractModel(int root) const {
    PointedModel pm;
    std::unordered_map<int, World> world_of;
    std::vector<int> order{root};
    world_of[root] = pm.model.AddWorld(Valuation(root));
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int s : arena_[order[i]].succ) {
        if (!world_of.count(s)) {
          world_of[s] = pm.model.AddWorld(Valuation(s));
          order.push_back(s);
        }
      }
    }
    for (int n : order) {
      for (int s : arena_[n].succ) pm.model.AddEdge(world_of[n], world_of[s]);
    }
    pm.model = pm.model.ForSystem(sys_);
    pm.world = 0;
    return pm;
  }

 private:
  static constexpr int kFree = 1 << 30;

  struct Ancestor {
    Label label;
    int node;
  };

  std::set<std::string> Valuation(int node) const {
    std::set<std::string> out;
    for (int a : arena_[node].atoms) out.insert(closure_.atom_name(a));
    return out;
  }

  bool Tick() {
    if (exhausted_) return false;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  // `depends` receives the shallowest ancestor index that the returned model
  // loops back to; kFree when the model does not depend on the ancestors.
  bool SolveWorld(const Label& init, int& model_node, int& depends) {
    depends = kFree;
    if (unsat_cache_.count(init)) return false;
    if (auto it = sat_cache_.find(init); it != sat_cache_.end()) {
      model_node = it->second;
      return true;
    }
    if (!Tick()) return false;
    const bool ok = Expand(init, model_node, depends);
    if (exhausted_) return false;
    if (ok) {
      // With global axioms a model that loops back to an ancestor is only
      // valid in this context.
      if (depends == kFree) sat_cache_.emplace(init, model_node);
    } else {
      unsat_cache_.insert(init);
    }
    return ok;
  }

  // Applies the deterministic rules to a fixpoint, then branches on the first
  // unsatisfied disjunction, then creates successors for the <> formulas.
  bool Expand(Label label, int& model_node, int& depends) {
    std::vector<int> work;
    label.ForEach([&](int id) { work.push_back(id); });
    auto add = [&](int id) {
      if (label.set(id)) work.push_back(id);
    };
    while (!work.empty()) {
      const int id = work.back();
      work.pop_back();
      const Sub& s = closure_[id];
      switch (s.op) {
        case Op::kFalse: return false;
        case Op::kVar:
        case Op::kNot:
          if (s.complement >= 0 && label.test(s.complement)) return false;
          break;
        case Op::kAnd:
          for (int k : s.kids) add(k);
          break;
        case Op::kBox:
          if (sys_ == System::kT) add(s.kids[0]);
          break;
        default:
          break;
      }
    }

    int open_or = -1;
    label.ForEach([&](int id) {
      if (open_or >= 0 || closure_[id].op != Op::kOr) return;
      const auto& kids = closure_[id].kids;
      if (std::none_of(kids.begin(), kids.end(), [&](int k) { return label.test(k); })) {
        open_or = id;
      }
    });
    if (open_or >= 0) {
      for (int k : closure_[open_or].kids) {
        if (!Tick()) return false;
        Label branch = label;
        branch.set(k);
        if (Expand(std::move(branch), model_node, depends)) return true;
        if (exhausted_) return false;
      }
      return false;
    }

    std::vector<int> boxes, dias, atoms;
    label.ForEach([&](int id) {
      const Sub& s = closure_[id];
      if (s.op == Op::kBox) boxes.push_back(s.kids[0]);
      if (s.op == Op::kDia) dias.push_back(s.kids[0]);
      if (s.op == Op::kVar) atoms.push_back(s.atom);
    });

    const int me = static_cast<int>(arena_.size());
    arena_.push_back({std::move(atoms), {}});
    const int my_index = static_cast<int>(ancestors_.size());
    if (global_mode_) ancestors_.push_back({label, me});
    int dep = kFree;
    bool ok = true;
    for (int body : dias) {
      Label succ(closure_.size());
      succ.set(body);
      for (int b : boxes) succ.set(b);
      for (int g : globals_) succ.set(g);
      int target = -1;
      if (global_mode_) {
        for (std::size_t i = 0; i < ancestors_.size(); ++i) {
          if (succ.SubsetOf(ancestors_[i].label)) {
            target = ancestors_[i].node;
            dep = std::min(dep, static_cast<int>(i));
            break;
          }
        }
      }
      if (target < 0) {
        int child_dep = kFree;
        if (!SolveWorld(succ, target, child_dep)) {
          ok = false;
          break;
        }
        dep = std::min(dep, child_dep);
      }
      arena_[me].succ.push_back(target);
    }
    if (global_mode_) ancestors_.pop_back();
    if (ok) {
      model_node = me;
      depends = dep >= my_index ? kFree : dep;
    }
    return ok;
  }

  System sys_;
  std::size_t budget_;
  bool global_mode_;
  Closure closure_;
  std::vector<int> globals_;
  std::vector<ModelNode> arena_;
  std::vector<Ancestor> ancestors_;
  std::unordered_set<Label, LabelHash> unsat_cache_;
  std::unordered_map<Label, int, LabelHash> sat_cache_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

TableauResult RunTableau(const Formula& f, System sys, std::span<const Formula> global,
                         const ProverOptions& options, bool want_model) {
  std::vector<Formula> globals;
  for (const auto& g : global) {
    Formula n = Nnf(g);
    if (!n.is(Op::kTrue)) globals.push_back(std::move(n));
  }
  Prover prover(sys, options, !globals.empty());
  const int root = prover.closure().Intern(Nnf(f));
  std::vector<int> global_ids;
  for (const auto& g : globals) global_ids.push_back(prover.closure().Intern(g));
  prover.SetGlobals(std::move(global_ids));

  TableauResult result;
  int model_root = -1;
  result.verdict = prover.Solve(root, model_root);
  result.nodes = prover.nodes();
  if (want_model && result.verdict == Verdict::kSat) result.model = prover.ExtractModel(model_root);
  return result;
}

Reasoner::Reasoner(System sys, ProverOptions options) : sys_(sys), options_(options) {}

bool Reasoner::Decide(const Formula& f, std::span<const Formula> global) {
  std::string key = f.str();
  for (const auto& g : global) key += "\n" + g.str();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  ++tableau_runs_;
  auto r = RunTableau(f, sys_, global, options_, false);
  if (r.verdict == Verdict::kUnknown) {
    throw ResourceLimitError("tableau node budget of " + std::to_string(options_.node_budget) +
                             " exhausted on " + f.str());
  }
  const bool sat = r.verdict == Verdict::kSat;
  cache_.emplace(std::move(key), sat);
  return sat;
}

bool Reasoner::IsSatisfiable(const Formula& f) { return Decide(f, {}); }

std::optional<PointedModel> Reasoner::FindModel(const Formula& f) {
  ++tableau_runs_;
  auto r = RunTableau(f, sys_, {}, options_, true);
  if (r.verdict == Verdict::kUnknown) {
    throw ResourceLimitError("tableau node budget exhausted on " + f.str());
  }
  return r.model;
}

bool Reasoner::Entails(const Formula& premise, const Formula& conclusion) {
  ++entailment_calls_;
  return !Decide(Formula::And(premise, Negate(conclusion)), {});
}

bool Reasoner::EntailsMod(const Formula& premise, const Formula& theory,
                          const Formula& conclusion) {
  return Entails(Formula::And(premise, theory), conclusion);
}

bool Reasoner::Equivalent(const Formula& f, const Formula& g) {
  return Entails(f, g) && Entails(g, f);
}

bool Reasoner::EquivalentMod(const Formula& f, const Formula& g, const Formula& theory) {
  return EntailsMod(f, theory, g) && EntailsMod(g, theory, f);
}

bool Reasoner::EntailsGlobally(const Formula& premise, const Formula& conclusion) {
  ++entailment_calls_;
  const Formula axioms[] = {premise};
  return !Decide(Negate(conclusion), axioms);
}

bool Reasoner::EquivalentGlobally(const Formula& f, const Formula& g) {
  return EntailsGlobally(f, g) && EntailsGlobally(g, f);
}

bool IsSatisfiable(const Formula& f, System sys, const ProverOptions& options) {
  return Reasoner(sys, options).IsSatisfiable(f);
}

std::optional<PointedModel> FindModel(const Formula& f, System sys, const ProverOptions& options) {
  return Reasoner(sys, options).FindModel(f);
}

bool Entails(const Formula& premise, const Formula& conclusion, System sys,
             const ProverOptions& options) {
  return Reasoner(sys, options).Entails(premise, conclusion);
}

bool EntailsMod(const Formula& premise, const Formula& theory, const Formula& conclusion,
                System sys, const ProverOptions& options) {
  return Reasoner(sys, options).EntailsMod(premise, theory, conclusion);
}

bool Equivalent(const Formula& f, const Formula& g, System sys, const ProverOptions& options) {
  return Reasoner(sys, options).Equivalent(f, g);
}

bool EquivalentMod(const Formula& f, const Formula& g, const Formula& theory, System sys,
                   const ProverOptions& options) {
  return Reasoner(sys, options).EquivalentMod(f, g, theory);
}

bool EquivalentGlobally(const Formula& f, const Formula& g, System sys,
                        const ProverOptions& options) {
  return Reasoner(sys, options).EquivalentGlobally(f, g);
}

}  // namespace mtpi
