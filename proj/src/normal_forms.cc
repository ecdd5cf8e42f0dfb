#include "mtpi/normal_forms.h"

#include <algorithm>

#include "mtpi/errors.h"

namespace mtpi {

namespace {

// A clause or term as a sorted, duplicate-free list of literals.
using LiteralSet = std::vector<Formula>;
using SetFamily = std::vector<LiteralSet>;

bool HasComplementaryAtoms(const LiteralSet& lits) {
  for (const auto& l : lits) {
    if (l.is(Op::kNot) && std::binary_search(lits.begin(), lits.end(), l.child())) return true;
  }
  return false;
}

LiteralSet Merge(const LiteralSet& a, const LiteralSet& b) {
  LiteralSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Drops sets containing complementary atoms and sets that are supersets of
// another set. Both reductions preserve equivalence for a CNF (valid clause,
// subsumed clause) and for a DNF (contradictory term, absorbed term).
SetFamily Reduce(SetFamily family) {
  family.erase(std::remove_if(family.begin(), family.end(), HasComplementaryAtoms), family.end());
  std::sort(family.begin(), family.end(), [](const LiteralSet& a, const LiteralSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  SetFamily kept;
  for (auto& s : family) {
    const bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const LiteralSet& k) {
      return std::includes(s.begin(), s.end(), k.begin(), k.end());
    });
    if (!subsumed) kept.push_back(std::move(s));
  }
  return kept;
}

// Distributes `outer` over `inner` on an NNF formula. For CNF outer = And,
// inner = Or; for DNF the roles swap. Each returned set is read with the inner
// connective; the family is read with the outer one.
SetFamily Distribute(const Formula& f, Op outer, const NormalFormOptions& options) {
  const Op inner = outer == Op::kAnd ? Op::kOr : Op::kAnd;
  const Op unit = outer == Op::kAnd ? Op::kTrue : Op::kFalse;  // neutral for outer
  if (f.is(unit)) return {};
  if (f.is(outer == Op::kAnd ? Op::kFalse : Op::kTrue)) return {LiteralSet{}};
  if (f.is(outer)) {
    SetFamily all;
    for (const auto& c : f.children()) {
      auto part = Distribute(c, outer, options);
      all.insert(all.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
      if (all.size() > options.max_size) throw CapacityError("normal form exceeds size cap");
    }
    return Reduce(std::move(all));
  }
  if (f.is(inner)) {
    SetFamily acc{LiteralSet{}};
    for (const auto& c : f.children()) {
      const auto part = Distribute(c, outer, options);
      SetFamily next;
      if (acc.size() * part.size() > options.max_size * 4) {
        throw CapacityError("normal form exceeds size cap");
      }
      for (const auto& a : acc) {
        for (const auto& p : part) next.push_back(Merge(a, p));
      }
      acc = Reduce(std::move(next));
      if (acc.size() > options.max_size) throw CapacityError("normal form exceeds size cap");
    }
    return acc;
  }
  return {LiteralSet{f}};
}

}  // namespace

Cnf ToCnf(const Formula& f, const NormalFormOptions& options) {
  Cnf cnf;
  for (const auto& clause : Distribute(Nnf(f), Op::kAnd, options)) {
    cnf.clauses.push_back(Formula::Or(clause));
  }
  std::sort(cnf.clauses.begin(), cnf.clauses.end());
  return cnf;
}

Dnf ToDnf(const Formula& f, const NormalFormOptions& options) {
  Dnf dnf;
  for (const auto& term : Distribute(Nnf(f), Op::kOr, options)) {
    dnf.terms.push_back(Formula::And(term));
  }
  std::sort(dnf.terms.begin(), dnf.terms.end());
  return dnf;
}

}  // namespace mtpi
