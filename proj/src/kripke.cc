#include <algorithm>
#include <stdexcept>

#include "mtpi/semantics.h"

namespace mtpi {

const char* ToString(System sys) { return sys == System::kK ? "K" : "T"; }

std::optional<System> ParseSystem(std::string_view text) {
  if (text == "K" || text == "k") return System::kK;
  if (text == "T" || text == "t") return System::kT;
  return std::nullopt;
}

World KripkeModel::AddWorld(std::set<std::string> true_vars) {
  valuation_.push_back(std::move(true_vars));
  successors_.emplace_back();
  return valuation_.size() - 1;
}

void KripkeModel::AddEdge(World from, World to) {
  if (from >= num_worlds() || to >= num_worlds()) {
    throw std::out_of_range("edge references an unknown world");
  }
  auto& succ = successors_[from];
  if (std::find(succ.begin(), succ.end(), to) == succ.end()) succ.push_back(to);
}

bool KripkeModel::HasEdge(World from, World to) const {
  const auto& succ = successors_.at(from);
  return std::find(succ.begin(), succ.end(), to) != succ.end();
}

std::vector<std::pair<World, World>> KripkeModel::Edges() const {
  std::vector<std::pair<World, World>> out;
  for (World w = 0; w < num_worlds(); ++w) {
    for (World v : successors_[w]) out.emplace_back(w, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool KripkeModel::IsReflexive() const {
  for (World w = 0; w < num_worlds(); ++w) {
    if (!HasEdge(w, w)) return false;
  }
  return true;
}

KripkeModel KripkeModel::ReflexiveClosure() const {
  KripkeModel m = *this;
  for (World w = 0; w < m.num_worlds(); ++w) m.AddEdge(w, w);
  return m;
}

KripkeModel KripkeModel::ForSystem(System sys) const {
  return sys == System::kT ? ReflexiveClosure() : *this;
}

bool Eval(const KripkeModel& m, World w, const Formula& f) {
  if (w >= m.num_worlds()) throw std::out_of_range("unknown world " + std::to_string(w));
  switch (f.op()) {
    case Op::kVar: return m.valuation(w).count(f.name()) > 0;
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kNot: return !Eval(m, w, f.child());
    case Op::kAnd:
      for (const auto& c : f.children()) {
        if (!Eval(m, w, c)) return false;
      }
      return true;
    case Op::kOr:
      for (const auto& c : f.children()) {
        if (Eval(m, w, c)) return true;
      }
      return false;
    case Op::kBox:
      for (World v : m.successors(w)) {
        if (!Eval(m, v, f.child())) return false;
      }
      return true;
    case Op::kDia:
      for (World v : m.successors(w)) {
        if (Eval(m, v, f.child())) return true;
      }
      return false;
  }
  return false;
}

bool Eval(const KripkeModel& m, World w, const Formula& f, System sys) {
  if (sys == System::kK || m.IsReflexive()) return Eval(m, w, f);
  return Eval(m.ReflexiveClosure(), w, f);
}

}  // namespace mtpi
