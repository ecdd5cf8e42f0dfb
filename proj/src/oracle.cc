#include "mtpi/oracle.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mtpi/errors.h"

namespace mtpi {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
    return std::hash<std::uint64_t>()(p.first * 0x9E3779B97F4A7C15ull ^ p.second);
  }
};

// A world of a tree model up to the behaviour of its subtree.
struct Rep {
  std::size_t size = 1;
  std::uint32_t valuation = 0;
  std::vector<std::size_t> children;  // indices into the previous level
};

struct Level {
  std::vector<std::uint64_t> proj;
  std::vector<Rep> reps;
  std::unordered_map<std::uint64_t, std::size_t> index;
};

// Aggregated truth of the modal bodies over a set of children.
struct ChildSet {
  std::size_t size = 0;
  std::vector<std::size_t> children;
};

class Enumerator {
 public:
  Enumerator(const Formula& f, System sys, const OracleBounds& bounds)
      : sys_(sys), bounds_(bounds) {
    if (bounds.max_depth < 0 || bounds.max_branching < 0) {
      throw std::invalid_argument("oracle bounds must be non-negative");
    }
    if (bounds.variables.size() > 16) throw CapacityError("oracle supports at most 16 variables");
    Collect(f);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return subs_[a].size() < subs_[b].size(); });
    for (std::size_t i : order_) {
      const Formula& s = subs_[i];
      if (s.is(Op::kBox) || s.is(Op::kDia)) {
        const std::size_t body = index_.at(s.child().str());
        if (!bit_.count(body)) {
          if (bodies_.size() == 64) throw CapacityError("oracle supports at most 64 modal bodies");
          bit_[body] = bodies_.size();
          bodies_.push_back(body);
        }
      }
    }
    for (const auto& sub : subs_) {
      Node n{sub.op(), -1, {}, 0};
      for (const auto& c : sub.children()) n.kids.push_back(index_.at(c.str()));
      if (sub.is(Op::kVar)) {
        const auto& vars = bounds_.variables;
        auto it = std::find(vars.begin(), vars.end(), sub.name());
        if (it != vars.end()) n.var = static_cast<int>(it - vars.begin());
      }
      if (sub.is(Op::kBox) || sub.is(Op::kDia)) n.bit = bit_.at(n.kids[0]);
      nodes_.push_back(std::move(n));
    }
    root_ = index_.at(f.str());
    all_ = bodies_.size() == 64 ? ~0ull : (1ull << bodies_.size()) - 1;
  }

  OracleResult Run() {
    std::vector<Level> levels;
    for (int h = 0; h <= bounds_.max_depth; ++h) {
      levels.push_back(BuildLevel(h == 0 ? nullptr : &levels.back(), h == bounds_.max_depth));
    }
    OracleResult out;
    out.explored = explored_;
    if (best_) {
      out.verdict = OracleVerdict::kSat;
      out.definitive = true;
      KripkeModel m;
      const World root = Build(levels, levels.size() - 1, *best_, m);
      PointedModel pm{m.ForSystem(sys_), root};
      if (!Eval(pm.model, pm.world, subs_[root_])) {
        throw std::logic_error("oracle witness does not satisfy the formula");
      }
      out.witness = std::move(pm);
    }
    return out;
  }

 private:
  void Collect(const Formula& f) {
    if (index_.count(f.str())) return;
    for (const auto& c : f.children()) Collect(c);
    index_[f.str()] = subs_.size();
    order_.push_back(subs_.size());
    subs_.push_back(f);
  }

  void Tick() {
    if (++explored_ > bounds_.budget) {
      throw ResourceLimitError("oracle enumeration budget of " + std::to_string(bounds_.budget) +
                               " exceeded");
    }
  }

  // Truth vector of all subformulas at a world with the given valuation and
  // children aggregate (and_mask: bodies true at every child, or_mask: true
  // at some child).
  void Evaluate(std::uint32_t val, std::uint64_t and_mask, std::uint64_t or_mask,
                std::vector<char>& vec) const {
    vec.assign(nodes_.size(), 0);
    const bool refl = sys_ == System::kT;
    for (std::size_t i : order_) {
      const Node& n = nodes_[i];
      bool v = false;
      switch (n.op) {
        case Op::kVar: v = n.var >= 0 && ((val >> n.var) & 1u); break;
        case Op::kTrue: v = true; break;
        case Op::kFalse: v = false; break;
        case Op::kNot: v = !vec[n.kids[0]]; break;
        case Op::kAnd:
          v = std::all_of(n.kids.begin(), n.kids.end(), [&](std::size_t k) { return vec[k] != 0; });
          break;
        case Op::kOr:
          v = std::any_of(n.kids.begin(), n.kids.end(), [&](std::size_t k) { return vec[k] != 0; });
          break;
        case Op::kBox:
          v = ((and_mask >> n.bit) & 1u) && (!refl || vec[n.kids[0]]);
          break;
        case Op::kDia:
          v = ((or_mask >> n.bit) & 1u) || (refl && vec[n.kids[0]]);
          break;
      }
      vec[i] = v;
    }
  }

  std::uint64_t Project(const std::vector<char>& vec) const {
    std::uint64_t p = 0;
    for (std::size_t k = 0; k < bodies_.size(); ++k) {
      if (vec[bodies_[k]]) p |= 1ull << k;
    }
    return p;
  }

  // All (and, or) aggregates reachable with at most max_branching children
  // drawn from `prev`, in discovery order.
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, ChildSet>> Aggregates(
      const Level* prev) {
    using Key = std::pair<std::uint64_t, std::uint64_t>;
    std::vector<std::pair<Key, ChildSet>> states{{{all_, 0}, {}}};
    if (prev == nullptr) return states;
    std::unordered_map<Key, std::size_t, PairHash> seen{{{all_, 0}, 0}};
    std::size_t frontier_begin = 0;
    for (int step = 0; step < bounds_.max_branching; ++step) {
      const std::size_t frontier_end = states.size();
      for (std::size_t s = frontier_begin; s < frontier_end; ++s) {
        for (std::size_t c = 0; c < prev->proj.size(); ++c) {
          Tick();
          const Key key{states[s].first.first & prev->proj[c], states[s].first.second | prev->proj[c]};
          const std::size_t size = states[s].second.size + prev->reps[c].size;
          auto it = seen.find(key);
          if (it == seen.end()) {
            ChildSet cs{size, states[s].second.children};
            cs.children.push_back(c);
            seen.emplace(key, states.size());
            states.emplace_back(key, std::move(cs));
          } else if (size < states[it->second].second.size) {
            ChildSet& cs = states[it->second].second;
            cs.size = size;
            cs.children = states[s].second.children;
            cs.children.push_back(c);
          }
        }
      }
      if (states.size() == frontier_end) break;
      frontier_begin = frontier_end;
    }
    return states;
  }

  Level BuildLevel(const Level* prev, bool top) {
    Level level;
    const auto aggregates = Aggregates(prev);
    const std::uint32_t num_vals = 1u << bounds_.variables.size();
    std::vector<char> vec;
    for (const auto& [key, cs] : aggregates) {
      for (std::uint32_t val = 0; val < num_vals; ++val) {
        Tick();
        Evaluate(val, key.first, key.second, vec);
        Rep rep{cs.size + 1, val, cs.children};
        if (top && vec[root_]) {
          if (!best_ || rep.size < best_->size ||
              (rep.size == best_->size && rep.valuation < best_->valuation)) {
            best_ = rep;
          }
        }
        const std::uint64_t p = Project(vec);
        auto it = level.index.find(p);
        if (it == level.index.end()) {
          level.index.emplace(p, level.proj.size());
          level.proj.push_back(p);
          level.reps.push_back(std::move(rep));
        } else if (rep.size < level.reps[it->second].size) {
          level.reps[it->second] = std::move(rep);
        }
      }
    }
    return level;
  }

  World Build(const std::vector<Level>& levels, std::size_t h, const Rep& rep, KripkeModel& m) const {
    std::set<std::string> true_vars;
    for (std::size_t i = 0; i < bounds_.variables.size(); ++i) {
      if ((rep.valuation >> i) & 1u) true_vars.insert(bounds_.variables[i]);
    }
    const World w = m.AddWorld(std::move(true_vars));
    for (std::size_t c : rep.children) {
      const World v = Build(levels, h - 1, levels[h - 1].reps[c], m);
      m.AddEdge(w, v);
    }
    return w;
  }

  struct Node {
    Op op;
    int var;
    std::vector<std::size_t> kids;
    std::size_t bit;
  };

  System sys_;
  const OracleBounds& bounds_;
  std::vector<Formula> subs_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> order_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::size_t, std::size_t> bit_;
  std::vector<std::size_t> bodies_;
  std::size_t root_ = 0;
  std::uint64_t all_ = 0;
  std::size_t explored_ = 0;
  std::optional<Rep> best_;
};

void CountDiamonds(const Formula& f, std::set<std::string>& seen) {
  if (f.is(Op::kDia)) seen.insert(f.str());
  for (const auto& c : f.children()) CountDiamonds(c, seen);
}

}  // namespace

OracleBounds SufficientBounds(const Formula& f) {
  OracleBounds b;
  b.max_depth = f.modal_depth();
  std::set<std::string> dias;
  CountDiamonds(Nnf(f), dias);
  b.max_branching = static_cast<int>(dias.size());
  const auto vars = Vars(f);
  b.variables.assign(vars.begin(), vars.end());
  return b;
}

OracleResult SatByEnumeration(const Formula& f, System sys, const OracleBounds& bounds) {
  OracleResult r = Enumerator(f, sys, bounds).Run();
  if (r.verdict == OracleVerdict::kUnsatWithinBounds) {
    const OracleBounds need = SufficientBounds(f);
    bool vars_covered = std::all_of(need.variables.begin(), need.variables.end(), [&](const auto& v) {
      return std::find(bounds.variables.begin(), bounds.variables.end(), v) != bounds.variables.end();
    });
    r.definitive = bounds.max_depth >= need.max_depth && bounds.max_branching >= need.max_branching &&
                   vars_covered;
  }
  return r;
}

std::vector<Formula> VocabularyLiterals(const ClauseVocabulary& vocab) {
  std::vector<Formula> prop;
  for (const auto& v : vocab.variables) {
    prop.push_back(Formula::Var(v));
    prop.push_back(Formula::Not(Formula::Var(v)));
  }
  std::vector<Formula> out = prop;
  if (vocab.max_depth >= 1) {
    for (const auto& l : prop) {
      out.push_back(Formula::Box(l));
      out.push_back(Formula::Dia(l));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Formula> EnumerateClauses(const ClauseVocabulary& vocab) {
  const std::vector<Formula> lits = VocabularyLiterals(vocab);
  std::vector<Formula> out;
  std::vector<Formula> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!current.empty()) out.push_back(Disjoin(current));
    if (static_cast<int>(current.size()) == vocab.max_disjuncts) return;
    for (std::size_t i = start; i < lits.size(); ++i) {
      current.push_back(lits[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Formula> EnumerateImplicates(const Formula& x, const Formula& theory, System sys,
                                         const ClauseVocabulary& vocab) {
  std::vector<Formula> out;
  for (const auto& c : EnumerateClauses(vocab)) {
    const Formula probe = Formula::And({x, theory, Formula::Not(c)});
    const OracleResult r = SatByEnumeration(probe, sys, SufficientBounds(probe));
    if (r.verdict == OracleVerdict::kUnsatWithinBounds) out.push_back(c);
  }
  return out;
}

Formula DecompositionInstance::Lhs() const {
  std::vector<Formula> dia, box;
  for (const auto& b : beta) dia.push_back(Formula::Dia(b));
  for (const auto& g : gamma) box.push_back(Formula::Box(g));
  const Formula a = Disjoin(alpha), d = Disjoin(dia), g = Disjoin(box);
  std::vector<Formula> parts{a,
                             d,
                             g,
                             Formula::Or(a, d),
                             Formula::Or(a, g),
                             Formula::Or(d, g),
                             Formula::Or({a, d, g})};
  for (const auto& p : psi) parts.push_back(p);
  for (const auto& p : phi) parts.push_back(Formula::Box(p));
  for (const auto& x : xi) parts.push_back(Formula::Dia(x));
  return Formula::And(std::move(parts));
}

std::string DecompositionInstance::ToString() const {
  std::ostringstream os;
  auto list = [&](const char* name, const std::vector<Formula>& fs) {
    os << name << "=[";
    for (std::size_t i = 0; i < fs.size(); ++i) os << (i ? ", " : "") << fs[i];
    os << "] ";
  };
  list("alpha", alpha);
  list("beta", beta);
  list("gamma", gamma);
  list("psi", psi);
  list("phi", phi);
  list("xi", xi);
  os << "y=" << y;
  return os.str();
}

bool DecompositionReport::any_condition() const {
  return std::any_of(conditions.begin(), conditions.end(), [](bool b) { return b; });
}

DecompositionReport CheckDecomposition(const DecompositionInstance& inst, System sys,
                                       const ProverOptions& options) {
  auto require_prop = [](const std::vector<Formula>& fs, const char* what) {
    for (const auto& f : fs) {
      if (!IsPropositional(f)) throw ShapeError(std::string(what) + " must be propositional: " + f.str());
    }
  };
  require_prop(inst.alpha, "alpha");
  require_prop(inst.psi, "psi");
  require_prop({inst.y}, "y");

  Reasoner r(sys, options);
  auto inconsistent = [&](const Formula& f, const Formula& theory) {
    return !r.IsSatisfiable(Formula::And(f, theory));
  };
  const Formula a = Disjoin(inst.alpha), b = Disjoin(inst.beta), g = Disjoin(inst.gamma);
  const Formula phis = Conjoin(inst.phi), psis = Conjoin(inst.psi);
  auto some_xi = [&](const Formula& head) {
    return std::any_of(inst.xi.begin(), inst.xi.end(), [&](const Formula& x) {
      return inconsistent(Formula::And({head, x, phis}), inst.y);
    });
  };

  DecompositionReport rep;
  rep.lhs_inconsistent = inconsistent(inst.Lhs(), Formula::Box(inst.y));
  rep.conditions[0] = inconsistent(Formula::And(a, psis), inst.y);
  rep.conditions[1] = inconsistent(Formula::And(b, phis), inst.y);
  rep.conditions[2] = some_xi(g);
  rep.conditions[3] = inconsistent(Formula::And(Formula::Or(a, b), phis), inst.y);
  rep.conditions[4] = some_xi(Formula::Or(a, g));
  rep.conditions[5] = inconsistent(Formula::And(Formula::Or(b, g), phis), inst.y);
  rep.conditions[6] = inconsistent(Formula::And(Formula::Or({a, b, g}), phis), inst.y);
  return rep;
}

}  // namespace mtpi
